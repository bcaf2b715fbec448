"""
JSON and CSV codecs.

Rationals travel as reduced "p/q" strings, integers that do not fit a double
as decimal strings, words as integer arrays.
"""

import csv
import json
import os
from fractions import Fraction

import numpy as np

from .errors import ParseError
from .polygon import Decomposition, RationalPolygon, convex_hull
from .rational import Rational2, fmt_fraction, to_fraction
from .sft import Cycle, SftSystem
from .torus import Rect, RectangleChart, make_lift

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")

BIG = 2 ** 53


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("malformed JSON: %s" % e)


def load_file(path):
    if not os.path.isfile(path):
        raise ParseError("file %s cannot be found" % path)
    with open(path, "r") as f:
        return loads(f.read())


def shipped_path(name):
    """Path of a JSON file shipped in rotset/data."""
    if not name.endswith(".json"):
        name += ".json"
    return os.path.join(DATA_DIR, name)


def jsonable(obj):
    """Turn results into plain JSON values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return fmt_fraction(obj)
    if isinstance(obj, Rational2):
        return obj.strings()
    if isinstance(obj, RationalPolygon):
        return polygon_to_dict(obj)
    if isinstance(obj, Cycle):
        return list(obj.word)
    if isinstance(obj, Decomposition):
        return decomposition_to_dict(obj)
    if isinstance(obj, SftSystem):
        return system_to_dict(obj)
    if isinstance(obj, RectangleChart):
        return chart_to_dict(obj)
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return jsonable(int(obj))
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= BIG else obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        if isinstance(obj, (set, frozenset)):
            items.sort(key=lambda v: json.dumps(v, sort_keys=True))
        return items
    raise TypeError("cannot serialize %r" % type(obj))


def dumps(doc):
    """Deterministic text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(jsonable(doc), indent=2, sort_keys=True) + "\n"


def _int(value, what):
    if isinstance(value, bool):
        raise ParseError("%s must be an integer, got a boolean" % what)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    raise ParseError("%s must be an integer, got %r" % (what, value))


def _list(value, what):
    if not isinstance(value, list):
        raise ParseError("%s must be an array" % what)
    return value


def _field(d, key):
    if not isinstance(d, dict):
        raise ParseError("expected a JSON object")
    try:
        return d[key]
    except KeyError:
        raise ParseError("missing field %r" % key)


# Systems


def system_to_dict(sys):
    d = {
        "alphabet": sys.alphabet_size,
        "transitions": [list(succ) for succ in sys.transitions],
        "displacements": [list(s) for s in sys.displacements],
    }
    if sys.labels is not None:
        d["labels"] = list(sys.labels)
    return d


def system_from_dict(d):
    alphabet = _int(_field(d, "alphabet"), "alphabet")
    transitions = [
        [_int(j, "transition target") for j in _list(succ, "successor set")]
        for succ in _list(_field(d, "transitions"), "transitions")
    ]
    displacements = []
    for s in _list(_field(d, "displacements"), "displacements"):
        s = _list(s, "displacement")
        if len(s) != 2:
            raise ParseError("displacement %r is not a pair" % (s,))
        displacements.append((_int(s[0], "displacement"), _int(s[1], "displacement")))
    labels = d.get("labels")
    if labels is not None:
        labels = [str(x) for x in _list(labels, "labels")]
    return SftSystem.build(alphabet, transitions, displacements, labels)


def load_system(path):
    return system_from_dict(load_file(path))


# Polygons


def polygon_to_dict(poly):
    return {"tag": poly.tag, "vertices": [v.strings() for v in poly.vertices]}


def polygon_from_dict(d):
    tag = _field(d, "tag")
    try:
        vertices = tuple(
            Rational2.of(_list(v, "vertex"))
            for v in _list(_field(d, "vertices"), "vertices")
        )
    except ValueError:
        raise ParseError("vertices must be pairs of rationals")
    poly = RationalPolygon(vertices, tag)
    if not vertices or convex_hull(vertices) != poly:
        raise ParseError("polygon is not in canonical form")
    return poly


def decomposition_to_dict(dec):
    return {
        "cycles": [list(c.word) for c in dec.cycles],
        "remainder": list(dec.remainder),
        "source_length": dec.source_length,
    }


# Torus inputs


def _pair(value, what, convert=float):
    value = _list(value, what)
    if len(value) != 2:
        raise ParseError("%s must be a pair" % what)
    try:
        return tuple(convert(to_fraction(c)) for c in value)
    except (ZeroDivisionError, ValueError):
        raise ParseError("%s must hold numbers" % what)


def chart_to_dict(chart):
    return {
        "domain": [list(chart.domain[0]), list(chart.domain[1])],
        "rectangles": [
            {"rect": [list(r.lo), list(r.hi)], "s": list(r.s)} for r in chart.rectangles
        ],
    }


def chart_from_dict(d):
    domain = _list(_field(d, "domain"), "domain")
    if len(domain) != 2:
        raise ParseError("domain must be two corners")
    rects = []
    for r in _list(_field(d, "rectangles"), "rectangles"):
        corners = _list(_field(r, "rect"), "rect")
        if len(corners) != 2:
            raise ParseError("rect must be two corners")
        s = _list(_field(r, "s"), "s")
        if len(s) != 2:
            raise ParseError("s must be a pair")
        rects.append(
            Rect(
                lo=_pair(corners[0], "corner"),
                hi=_pair(corners[1], "corner"),
                s=(_int(s[0], "s"), _int(s[1], "s")),
            )
        )
    return RectangleChart(
        domain=(_pair(domain[0], "corner"), _pair(domain[1], "corner")),
        rectangles=tuple(rects),
    )


def lift_to_dict(lift):
    return {"family": lift.family, "params": lift.params}


def lift_from_dict(d):
    family = _field(d, "family")
    params = d.get("params", {})
    if not isinstance(params, dict):
        raise ParseError("params must be an object")
    try:
        return make_lift(family, params)
    except (ZeroDivisionError, ValueError, TypeError):
        raise ParseError("bad parameters for lift family %r" % family)


def write_cloud_csv(f, pts, cloud):
    writer = csv.writer(f)
    writer.writerow(["x", "y", "phi_x", "phi_y"])
    for (x, y), (px, py) in zip(pts, cloud):
        writer.writerow([repr(float(v)) for v in (x, y, px, py)])
