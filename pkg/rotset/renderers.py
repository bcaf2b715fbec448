"""
Presentation of results: SVG pictures through matplotlib and text tables.

Nothing here feeds back into a computation; the JSON documents are the results.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .rational import fmt_fraction  # noqa: E402
from .unitable import UniTable  # noqa: E402


def _closed(vertices):
    xs = [float(v.x) for v in vertices]
    ys = [float(v.y) for v in vertices]
    if len(vertices) > 2:
        xs.append(xs[0])
        ys.append(ys[0])
    return xs, ys


def _label(v):
    return "(%s, %s)" % (fmt_fraction(v.x), fmt_fraction(v.y))


def polygon_svg(poly, path, points=None, title=None):
    """Draw the polygon with vertices labelled as p/q, plus optional extra points."""
    fig, ax = plt.subplots(figsize=(5, 5))
    if points is not None and len(points):
        ax.scatter(
            [float(p[0]) for p in points],
            [float(p[1]) for p in points],
            s=6,
            color="0.6",
            zorder=1,
        )
    xs, ys = _closed(poly.vertices)
    ax.plot(xs, ys, "-o", color="tab:blue", zorder=2)
    if poly.tag == "polygon":
        ax.fill(xs, ys, alpha=0.15, color="tab:blue")
    for v in poly.vertices:
        ax.annotate(
            _label(v),
            (float(v.x), float(v.y)),
            textcoords="offset points",
            xytext=(4, 4),
        )
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_title(title or "rotation polygon (%s)" % poly.tag)
    fig.savefig(path, format="svg")
    plt.close(fig)


def cloud_svg(cloud, hull, path, title=None):
    """Scatter of phi_n over the grid with the estimated hull."""
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(cloud[:, 0], cloud[:, 1], s=4, color="tab:orange")
    xs, ys = _closed(hull.vertices)
    ax.plot(xs, ys, "-", color="tab:blue")
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_title(title or "rotation set estimate")
    fig.savefig(path, format="svg")
    plt.close(fig)


def series_svg(ns, values, path, title=None):
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.plot(ns, values, linewidth=0.8)
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_title(title or "partial means")
    fig.savefig(path, format="svg")
    plt.close(fig)


def table(header, rows, align=None, ascii=False):
    t = UniTable(style="ascii" if ascii else "light")
    t.header(header)
    if align is not None:
        t.set_cols_align(align)
    for row in rows:
        t.add_row(row)
    return t.draw()


def polygon_table(poly):
    return table(
        ["#", "x", "y"],
        [
            [k, fmt_fraction(v.x), fmt_fraction(v.y)]
            for k, v in enumerate(poly.vertices)
        ],
        align=["r", "r", "r"],
    )


def oracle_table(report):
    rows = [
        [
            r["n"],
            r["contained"],
            fmt_fraction(r["max_distance2"]),
            fmt_fraction(r["bound2"]),
            r["within"],
        ]
        for r in report["rows"]
    ]
    return table(
        ["n", "inside", "dist^2", "bound^2", "ok"],
        rows,
        align=["r", "c", "r", "r", "c"],
    )


def checkpoint_table(rows):
    return table(
        ["n", "a_n", "S", "bound", "tight", "pass"],
        [
            [
                r["n"],
                r["a_n"],
                fmt_fraction(r["S"]),
                fmt_fraction(r["bound"]),
                r["tight"],
                r["pass"],
            ]
            for r in rows
        ],
        align=["r", "r", "r", "r", "c", "c"],
    )


def chart_table(report):
    return table(
        ["rect", "s", "samples", "violations"],
        [
            [r["rect"], "%d,%d" % tuple(r["s"]), r["samples"], r["violations"]]
            for r in report["rects"]
        ],
        align=["r", "c", "r", "r"],
    )
