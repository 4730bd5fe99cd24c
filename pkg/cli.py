"""
Command-line front end.

    python cli.py solve "p^2 - 4*y" --point 0,0 --json
    python cli.py solve-infinity "p + y^2"
    echo "p - y" | python cli.py solve -

Exit codes: 1 parse or input error, 2 degenerate equation, 3 verification failure.
"""

import argparse
import logging
import sys

from algebra.errors import DegenerateEquationError, ParseError, SolverError, VerificationError
from algebra.parser import parse  # noqa: F401  (re-exported)
from config.log_setup import setup_logging
from solver.engine import SolverEngine
from solver.oracle import verify_solutions
from solver.render import render_json, render_text

try:
    from config.settings import EXPAND_CONJUGATES
except ImportError:
    EXPAND_CONJUGATES = True
    print("⚠️  Using fallback solver settings", file=sys.stderr)

logger = logging.getLogger(__name__)

EXIT_INPUT = 1
EXIT_DEGENERATE = 2
EXIT_VERIFICATION = 3


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with EXIT_INPUT; 2 is reserved for degenerate equations."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def build_parser():
    parser = _Parser(
        prog="puiseux-ode",
        description="Formal Puiseux series solutions of F(y, y') = 0 (write p for y').",
    )
    parser.add_argument("--log-level", default=None, help="logging level for stderr diagnostics")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("solve", "solutions expanded around a finite point"),
                            ("solve-infinity", "solutions expanded around x = oo")):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("equation", help='polynomial in y and p, or "-" to read stdin')
        sub.add_argument("--terms", type=positive_int, default=None,
                         help="number of terms (default: the degree bound of the algorithm)")
        sub.add_argument("--expand-conjugates", action=argparse.BooleanOptionalAction,
                         default=EXPAND_CONJUGATES,
                         help="list every conjugate truncation instead of one per place")
        sub.add_argument("--json", action="store_true", help="emit the JSON document")
        sub.add_argument("--verify", action="store_true",
                         help="check the residual of every truncation and fail on violation")
        sub.add_argument("--max-denominator-terms", type=positive_int, default=None, dest="max_terms",
                         help="safety cap on the number of terms")
        sub.add_argument("--x0", default="0", help="expansion point offset used for display only")
        if name == "solve":
            sub.add_argument("--point", default=None,
                             help='restrict to one center "y0,p0" (rationals, oo, or root(<poly in z>))')
    return parser


def _equation_text(argument):
    if argument == "-":
        return sys.stdin.read()
    return argument


def run(argv=None, stdout=None):
    """Execute one command; returns the process exit code."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code or 0
    setup_logging(args.log_level)
    text = _equation_text(args.equation)
    mode = "infinity" if args.command == "solve-infinity" else "finite"
    engine = SolverEngine(use_cache=False)

    try:
        parsed, result = engine.run(text, mode, args.terms, getattr(args, "point", None),
                                    args.expand_conjugates, max_terms=args.max_terms)
        if args.verify:
            verify_solutions(parsed.polynomial, result.solutions)
    except ParseError as e:
        print(f"❌ parse error: {e.message}", file=sys.stderr)
        print(e.pointer(), file=sys.stderr)
        return EXIT_INPUT
    except DegenerateEquationError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    except VerificationError as e:
        print(f"❌ {e}", file=sys.stderr)
        for failure in e.failures:
            print(f"   {failure}", file=sys.stderr)
        return EXIT_VERIFICATION
    except SolverError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INPUT

    source = parsed.source.strip()
    if args.json:
        print(render_json(result, source), file=stdout)
    else:
        print(render_text(result, source, x0=args.x0.strip() if args.x0.strip() != "0" else 0), file=stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
