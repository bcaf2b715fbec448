"""
Exact rotation polygons of subshifts of finite type, almost-periodic codings
and finite-horizon rotation set estimates for torus maps.
"""

import argparse
import logging
import sys

from . import commands
from .almost_periodic import (
    ApParams,
    ap_params,
    checkpoint_bounds,
    level,
    partial_mean,
    recurrence_window_check,
    symbolic_rotation_points,
    xi,
    xi_prefix,
)
from .config import CAP_SUM, CAP_WORDS, DEPTH, RunConfig, __version__
from .errors import (
    CapExceeded,
    EmptySystem,
    NoCycles,
    NonFinite,
    ParseError,
    RotsetError,
    ValidationError,
)
from .polygon import (
    RationalPolygon,
    convex_hull,
    decompose,
    oracle_hull,
    rotation_polygon,
    simple_cycles,
    support_max,
)
from .rational import Rational2
from .serialize import dumps, load_system, shipped_path
from .sft import (
    Cycle,
    SftSystem,
    apply_integer_linear,
    full_shift,
    mean,
    power_system,
    psi,
    reverse_system,
    trim_to_biextendable,
)
from .torus import (
    RectangleChart,
    TorusLift,
    cauchy_check,
    estimate_rotation_set,
    make_lift,
    verify_rotational_chart,
)

log = logging.getLogger(__name__)


def _add_common(parser):
    parser.add_argument(
        "-o",
        "--output",
        help="Write the JSON document to this file instead of stdout. SVG and CSV files go next to it.",
    )
    parser.add_argument(
        "--cap-words",
        type=int,
        default=CAP_WORDS,
        help="Largest number of words an oracle or power system may enumerate.",
    )
    parser.add_argument(
        "--cap-sum",
        type=int,
        default=CAP_SUM,
        help="Largest number of terms of an almost-periodic partial sum.",
    )
    parser.add_argument(
        "--depth",
        type=int,
        default=DEPTH,
        help="Number of schedule levels a_1..a_depth to materialize.",
    )
    parser.add_argument(
        "--seed", type=int, default=0, help="Seed for randomized sampling."
    )
    parser.add_argument(
        "--svg", action="store_true", help="Also draw the result as SVG."
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress to stderr and print a summary table. Repeat for debug output.",
    )


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common)

    parser = argparse.ArgumentParser(
        description="Rotation sets of symbolic systems and torus maps.", prog="rotset"
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser(
        "polygon", parents=[common], help="Exact rotation polygon of a system."
    )
    p.add_argument("system", help="System JSON file.")

    p = sub.add_parser(
        "support", parents=[common], help="Support function and a witness cycle."
    )
    p.add_argument("system", help="System JSON file.")
    p.add_argument("direction", help="Direction as p/q,p/q.")

    p = sub.add_parser(
        "oracle", parents=[common], help="Check the polygon against word enumeration."
    )
    p.add_argument("system", help="System JSON file.")
    p.add_argument("--n-max", type=int, default=12, help="Longest word length.")

    p = sub.add_parser(
        "decompose", parents=[common], help="Split a word into cycles and a remainder."
    )
    p.add_argument("system", help="System JSON file.")
    p.add_argument("word", help="Symbols as digits or separated by commas.")

    p = sub.add_parser("power", parents=[common], help="The n-block system.")
    p.add_argument("system", help="System JSON file.")
    p.add_argument("n", type=int, help="Block length.")

    p = sub.add_parser(
        "affine", parents=[common], help="Apply an integer matrix to the displacements."
    )
    p.add_argument("system", help="System JSON file.")
    p.add_argument("matrix", help="Row-major entries a,b,c,d.")

    p = sub.add_parser(
        "ap", parents=[common], help="Checkpoints and recurrence of the sequence xi."
    )
    p.add_argument("delta", help="delta in (0, 1], as p/q.")
    p.add_argument(
        "--horizon",
        type=int,
        help="Last n of the rotation point set. Defaults to the last verified checkpoint.",
    )
    p.add_argument(
        "--variant",
        choices=["literal", "toeplitz"],
        default="literal",
        help="Sequence variant.",
    )
    p.add_argument("--stride", type=int, default=1, help="Sample every stride-th n.")

    p = sub.add_parser(
        "simulate",
        parents=[common],
        help="Estimate the rotation set of a torus lift; the cloud goes to a CSV file.",
    )
    p.add_argument("lift", help="Lift JSON file.")
    p.add_argument("--chart", help="Rectangle chart JSON file.")
    p.add_argument("--grid", type=int, default=32, help="Grid points per side.")
    p.add_argument("-n", type=int, default=1000, help="Number of iterates.")
    p.add_argument(
        "--segment",
        type=int,
        default=commands.SEGMENT_LENGTH,
        help="Length of the in-chart orbit segments.",
    )
    return parser


def _inputs(args):
    return [
        getattr(args, name)
        for name in ("system", "lift", "chart")
        if getattr(args, name, None) is not None
    ]


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    level_ = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(
        level=level_, stream=sys.stderr, format="%(name)s: %(levelname)s: %(message)s"
    )

    try:
        config = RunConfig(
            command=args.command,
            inputs=_inputs(args),
            output=args.output,
            cap_words=args.cap_words,
            cap_sum=args.cap_sum,
            depth=args.depth,
            seed=args.seed,
            svg=args.svg,
        )
        log.info("running %s on %s", config.command, ", ".join(config.inputs) or "-")
        result = commands.run(config, args)
    except RotsetError as e:
        print("rotset: error: %s" % e, file=sys.stderr)
        sys.exit(e.exit_code)

    text = dumps(result.doc)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    if args.verbose and result.summary:
        print(result.summary, file=sys.stderr)
    log.info("%s finished, checks %s", config.command, "pass" if result.ok else "fail")
    sys.exit(0 if result.ok else 1)


__all__ = [
    "ApParams",
    "CapExceeded",
    "Cycle",
    "EmptySystem",
    "NoCycles",
    "NonFinite",
    "ParseError",
    "Rational2",
    "RationalPolygon",
    "RectangleChart",
    "RotsetError",
    "RunConfig",
    "SftSystem",
    "TorusLift",
    "ValidationError",
    "ap_params",
    "apply_integer_linear",
    "cauchy_check",
    "checkpoint_bounds",
    "convex_hull",
    "decompose",
    "estimate_rotation_set",
    "full_shift",
    "level",
    "load_system",
    "main",
    "make_lift",
    "mean",
    "oracle_hull",
    "partial_mean",
    "power_system",
    "psi",
    "recurrence_window_check",
    "reverse_system",
    "rotation_polygon",
    "shipped_path",
    "simple_cycles",
    "support_max",
    "symbolic_rotation_points",
    "trim_to_biextendable",
    "verify_rotational_chart",
    "xi",
    "xi_prefix",
    "__version__",
]
