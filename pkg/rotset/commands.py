"""
The command implementations behind the rotset command line.

Every command takes a RunConfig plus its own arguments and returns a Result:
the JSON document, whether every enabled check passed, and a text summary
shown on stderr in verbose mode.
"""

import logging
import os
from typing import NamedTuple

import numpy as np

from . import renderers
from .almost_periodic import (
    TOEPLITZ,
    ap_params,
    checkpoint_bounds,
    checkpoints_pass,
    recurrence_window_check,
    rotation_points,
    step_bound_check,
    symbolic_rotation_points,
    window_length,
)
from .config import __version__
from .errors import ChartCheckFailed, ItineraryTooShort, ParseError, ValidationError
from .polygon import decompose, oracle_report, rotation_polygon, support_max
from .rational import Rational2, parse_fraction
from .serialize import (
    chart_from_dict,
    lift_from_dict,
    load_file,
    load_system,
    polygon_to_dict,
    system_to_dict,
    write_cloud_csv,
)
from .sft import (
    apply_integer_linear,
    full_shift,
    mean,
    parse_word,
    power_system,
    psi,
    require_valid,
)
from .torus import (
    cauchy_check,
    check_displacement_bound,
    estimate_rotation_set,
    grid_points,
    in_chart_orbit_segments,
    periodicity_check,
    verify_rotational_chart,
)

log = logging.getLogger(__name__)

RECURRENCE_SCAN = 100_000
SEGMENT_LENGTH = 50


class Result(NamedTuple):
    doc: dict
    ok: bool
    summary: str = ""


def _stamp(config, doc):
    out = dict(config.stamp())
    out["version"] = __version__
    out.update(doc)
    return out


def _sibling(config, suffix, default):
    """A path next to the JSON output, or in the working directory."""
    if config.output:
        return os.path.splitext(config.output)[0] + suffix
    return default


def _load_valid_system(path):
    return require_valid(load_system(path))


def parse_direction(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError("direction must look like p/q,p/q, got %r" % text)
    return Rational2(parse_fraction(parts[0]), parse_fraction(parts[1]))


def parse_matrix(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise ParseError("matrix must look like a,b,c,d, got %r" % text)
    try:
        a, b, c, d = (int(p) for p in parts)
    except ValueError:
        raise ParseError("matrix entries must be integers, got %r" % text)
    return ((a, b), (c, d))


def cmd_polygon(config, system_path):
    sys = _load_valid_system(system_path)
    poly = rotation_polygon(sys)
    log.info("polygon of %s: %s with %d vertices", system_path, poly.tag, len(poly))
    if config.svg:
        renderers.polygon_svg(poly, _sibling(config, ".svg", "polygon.svg"))
    return Result(
        _stamp(config, polygon_to_dict(poly)), True, renderers.polygon_table(poly)
    )


def cmd_support(config, system_path, direction):
    sys = _load_valid_system(system_path)
    w = parse_direction(direction)
    value, witness = support_max(sys, w)
    doc = {
        "direction": w,
        "value": value,
        "witness": witness,
        "witness_mean": mean(sys, witness),
    }
    return Result(_stamp(config, doc), True)


def cmd_oracle(config, system_path, n_max):
    sys = _load_valid_system(system_path)
    report = oracle_report(sys, n_max, cap=config.cap_words)
    if config.svg:
        renderers.polygon_svg(report["polygon"], _sibling(config, ".svg", "oracle.svg"))
    return Result(
        _stamp(config, report), report["pass"], renderers.oracle_table(report)
    )


def cmd_decompose(config, system_path, word):
    sys = _load_valid_system(system_path)
    try:
        w = parse_word(word)
    except ValueError:
        raise ParseError(
            "word must be digits or comma separated symbols, got %r" % word
        )
    dec = decompose(sys, w)
    doc = {
        "decomposition": dec,
        "psi": psi(sys, w),
        "psi_total": dec.psi_total(sys),
        "conserved": dec.psi_total(sys) == psi(sys, w)
        and dec.length_total() == len(w),
    }
    return Result(_stamp(config, doc), doc["conserved"])


def cmd_power(config, system_path, n):
    sys = _load_valid_system(system_path)
    block = power_system(sys, n, cap=config.cap_words)
    return Result(_stamp(config, system_to_dict(block)), True)


def cmd_affine(config, system_path, matrix):
    sys = _load_valid_system(system_path)
    moved = apply_integer_linear(sys, parse_matrix(matrix))
    return Result(_stamp(config, system_to_dict(moved)), True)


def _checkpoint_depth(params, cap):
    n = 0
    while n < params.depth and params.a(n + 1) <= cap:
        n += 1
    return n


def cmd_ap(config, delta, horizon=None, variant="literal", stride=1):
    """Checkpoints, recurrence windows and rotation points of xi."""
    params = ap_params(delta, depth=config.depth, variant=variant)
    top = _checkpoint_depth(params, config.cap_sum)
    rows = checkpoint_bounds(params, top, cap=config.cap_sum)

    recurrence = []
    for n0 in (0, 1):
        window = window_length(params, n0)
        scan = min(RECURRENCE_SCAN, params.limit + 1, config.cap_sum)
        recurrence.append(
            recurrence_window_check(
                params, n0, max(scan, 2 * window), cap=config.cap_sum
            )
        )

    if horizon is None:
        horizon = params.a(top)
    system = full_shift([(0, 0), (1, 0)])
    points = symbolic_rotation_points(
        params, system, horizon, stride=stride, cap=config.cap_sum
    )
    steps = step_bound_check(params, max(horizon, 2), cap=config.cap_sum)

    ok = checkpoints_pass(rows) and points["dense"] and steps["pass"]
    if params.variant == TOEPLITZ:
        ok = ok and all(r["pass"] for r in recurrence)

    doc = {
        "delta": params.delta,
        "t": params.t,
        "variant": params.variant,
        "schedule": [str(a) for a in params.schedule],
        "checkpoints": [dict(r, a_n=str(r["a_n"])) for r in rows],
        "verified_to_depth": top,
        "recurrence": recurrence,
        "density": points,
        "step_bound": steps,
    }
    if config.svg:
        sample = list(
            rotation_points(params, system, horizon, stride=stride, cap=config.cap_sum)
        )
        renderers.series_svg(
            [n for n, _ in sample],
            [float(p.x) for _, p in sample],
            _sibling(config, ".svg", "ap.svg"),
        )
    return Result(_stamp(config, doc), ok, renderers.checkpoint_table(rows))


def cmd_simulate(
    config, lift_path, chart_path=None, grid=32, n=1000, segment=SEGMENT_LENGTH
):
    """Estimate the rotation set of a lift; with a chart, also check displacements."""
    lift = lift_from_dict(load_file(lift_path))
    estimate = estimate_rotation_set(lift, grid, n)
    cauchy = cauchy_check(lift, grid_points(grid), n)
    rng = np.random.default_rng(config.seed)
    doc = {
        "lift": {"family": lift.family, "params": lift.params, "D": lift.bound},
        "estimate": {
            "tag": estimate["tag"],
            "hull": estimate["hull"],
            "diameter": estimate["diameter"],
            "grid": grid,
            "n": n,
        },
        "cauchy": cauchy,
        "periodicity_error": periodicity_check(lift, rng),
    }
    ok = cauchy["pass"]
    summary = ""

    if chart_path is not None:
        chart = chart_from_dict(load_file(chart_path))
        chart_report = verify_rotational_chart(lift, chart)
        if not chart_report["pass"]:
            raise ChartCheckFailed(
                "chart is not rotational for this lift",
                [
                    "rectangle %d: %d of %d samples leave D + s"
                    % (r["rect"], r["violations"], r["samples"])
                    for r in chart_report["rects"]
                    if r["violations"]
                ],
            )
        starts = in_chart_orbit_segments(lift, chart, grid, segment)
        worst = 0.0
        all_ok = True
        for x in starts:
            try:
                rep = check_displacement_bound(lift, chart, x, segment)
            except ItineraryTooShort:
                continue
            worst = max(worst, rep["max_residual"])
            all_ok = all_ok and rep["pass"]
        doc["chart"] = chart_report
        doc["displacement"] = {
            "segments": len(starts),
            "length": segment,
            "max_residual": worst,
            "bound": 2 * chart.d_s,
            "pass": all_ok,
        }
        ok = ok and all_ok
        summary = renderers.chart_table(chart_report)

    with open(_sibling(config, ".csv", "cloud.csv"), "w", newline="") as f:
        write_cloud_csv(f, grid_points(grid), estimate["cloud"])
    if config.svg:
        renderers.cloud_svg(
            estimate["cloud"], estimate["hull"], _sibling(config, ".svg", "cloud.svg")
        )
    return Result(_stamp(config, doc), ok, summary)


def run(config, args):
    """Dispatch a parsed command line to its command."""
    name = config.command
    if name == "polygon":
        return cmd_polygon(config, args.system)
    if name == "support":
        return cmd_support(config, args.system, args.direction)
    if name == "oracle":
        return cmd_oracle(config, args.system, args.n_max)
    if name == "decompose":
        return cmd_decompose(config, args.system, args.word)
    if name == "power":
        return cmd_power(config, args.system, args.n)
    if name == "affine":
        return cmd_affine(config, args.system, args.matrix)
    if name == "ap":
        return cmd_ap(config, args.delta, args.horizon, args.variant, args.stride)
    if name == "simulate":
        return cmd_simulate(
            config, args.lift, args.chart, args.grid, args.n, args.segment
        )
    raise ValidationError("unknown command %r" % name)


__all__ = [
    "Result",
    "cmd_polygon",
    "cmd_support",
    "cmd_oracle",
    "cmd_decompose",
    "cmd_power",
    "cmd_affine",
    "cmd_ap",
    "cmd_simulate",
    "run",
]
