"""Command-line entry point.

Usage:
    python -m src.cli gamma 0.3+0.2i 0.1+0.5i --digits 30
    python -m src.cli unit quartic-q2 --class 1 --digits 50
    python -m src.cli verify-all --digits 50 --skip-slow
    python -m src.cli nfield different --poly "x^3 - x^2 + 5x - 2" --units "z^2 + 2z - 1"

Exit codes: 0 success, 1 verification failure, 2 input or domain error.
"""

import argparse
import logging
import re
import sys
from typing import List, Optional

from src.errors import EllipticGammaError
from .commands import cmd_gamma, cmd_nfield, cmd_unit, cmd_verify_all

logger = logging.getLogger(__name__)

DEFAULT_DIGITS = 50
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

# "-0.2+0.7i", "-i", "-1e-3": values, not options
_NEGATIVE_LITERAL = re.compile(r"^-(\d|\.\d|[ij]$)")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def protect_negative_values(argv: List[str]) -> List[str]:
    """Keep argparse from reading negative complex literals of ``gamma`` as options.

    argparse only accepts plain negative reals such as ``-0.5`` as values.
    A leading space makes ``-0.2+0.7i`` a positional; the parsers strip it.
    """
    if "gamma" not in argv:
        return list(argv)
    start = argv.index("gamma") + 1
    return argv[:start] + [f" {a}" if _NEGATIVE_LITERAL.match(a) else a for a in argv[start:]]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellipgamma",
        description="Multiple elliptic Gamma functions and higher elliptic units.",
    )
    parser.add_argument("--log-level", choices=LOG_LEVELS, default="WARNING",
                        help="Logging level (default: WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    gamma = sub.add_parser("gamma", help="Evaluate G_r(z, tau_0, ..., tau_r)")
    gamma.add_argument("z", help="Argument, e.g. 0.3+0.2i")
    gamma.add_argument("taus", nargs="+", help="Parameters tau_0 ... tau_r")
    gamma.add_argument("--r", type=int, default=None, help="Expected r; checked against the parameter count")
    gamma.add_argument("--digits", type=_positive_int, default=DEFAULT_DIGITS)
    gamma.add_argument("--real-variant", action="store_true",
                       help="G_2 with one real parameter, by the trigonometric series")
    gamma.set_defaults(func=cmd_gamma)

    unit = sub.add_parser("unit", help="Evaluate units of an example configuration")
    unit.add_argument("config", help="Bundled configuration name or path to a JSON file")
    unit.add_argument("--class", dest="k", type=int, default=None, help="Class index k (default: all)")
    unit.add_argument("--label", default=None, help="Ideal class label (default: all)")
    unit.add_argument("--digits", type=_positive_int, default=DEFAULT_DIGITS)
    unit.add_argument("--recognize", type=_positive_int, default=None, metavar="MAXDEG",
                      help="Find a minimal polynomial over Q of degree <= MAXDEG")
    unit.add_argument("--relative", action="store_true",
                      help="Recognise prod (X - u) over the selected units as a polynomial over K")
    unit.add_argument("--sign-search", default=None, metavar="REFERENCE",
                      help="Choose the term signs matching this log|u|^2")
    unit.add_argument("--output", default=None, help="Write the JSON report here instead of stdout")
    unit.set_defaults(func=cmd_unit)

    verify = sub.add_parser("verify-all", help="Verify example configurations against printed data")
    verify.add_argument("--digits", type=_positive_int, default=DEFAULT_DIGITS)
    verify.add_argument("--oracle", action="store_true",
                        help="Also compare terms with truncated defining products")
    verify.add_argument("--examples", nargs="+", default=None, help="Bundled names (default: all)")
    verify.add_argument("--config", action="append", default=None,
                        help="Configuration file to verify instead of bundled examples; repeatable")
    verify.add_argument("--skip-slow", action="store_true", help="Skip examples marked slow")
    verify.set_defaults(func=cmd_verify_all)

    nfield = sub.add_parser("nfield", help="Exact number-field computations")
    nfield.add_argument("action", choices=("different", "lambda", "ttilde", "parallelepiped"))
    nfield.add_argument("--poly", default=None, help="Defining polynomial in x")
    nfield.add_argument("--basis", default=None, help="Integral basis in z, separated by ';'")
    nfield.add_argument("--units", default=None, help="Units eta_1 ... eta_(n-2) in z, separated by ';'")
    nfield.add_argument("--form", default=None, help="Linear form values on the integral basis, comma separated")
    nfield.add_argument("--trace", action="store_true", help="Use the trace form")
    nfield.add_argument("--alphas", default=None, help="Cone generators, e.g. '1,0,0;1,1,0'")
    nfield.add_argument("--line", default=None, help="Generator of the line in the cone, e.g. '0,3,1'")
    nfield.add_argument("--lattice", default=None, help="Rows of the matrix whose columns span the lattice")
    nfield.set_defaults(func=cmd_nfield)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(protect_negative_values(sys.argv[1:] if argv is None else argv))
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
    if args.command == "nfield" and args.action == "parallelepiped" and (args.alphas is None or args.line is None):
        parser.error("nfield parallelepiped needs --alphas and --line")

    try:
        return args.func(args)
    except EllipticGammaError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
