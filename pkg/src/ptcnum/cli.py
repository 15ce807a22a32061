"""``ptcnum`` command: evaluate an expression to a guaranteed precision.

Exit status: 0 success, 2 parse or usage error, 3 possibly-zero divisor,
4 root certification exhausted, 1 anything else.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .closure import PrecisionExhausted
from .core import format_gaussian
from .expr import ParseError, lower, parse
from .field import DEFAULT_ZERO_CAP, PossiblyZero
from .kernel import GaussianRational

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_POSSIBLY_ZERO = 3
EXIT_PRECISION = 4

DEFAULT_DIGITS = 20


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _natural(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ptcnum",
        description="Evaluate an expression over computable complex numbers "
                    "with a guaranteed error bound.",
    )
    p.add_argument("expression", help="e.g. 'pi', '(1 + 2*i)/3', 'root(x^3 - 2, 1.3)'")
    prec = p.add_mutually_exclusive_group()
    prec.add_argument("--prec", type=_positive, metavar="N",
                      help="guarantee error <= 1/N in each printed part")
    prec.add_argument("--digits", type=_natural, metavar="D",
                      help=f"D correct decimals, i.e. N = 2*10^D (default {DEFAULT_DIGITS})")
    p.add_argument("--stats", action="store_true",
                   help="print operation counts and root certificates to stderr")
    p.add_argument("--rational", action="store_true",
                   help="print the exact rational approximation instead of a decimal")
    p.add_argument("--zero-cap", type=_positive, default=DEFAULT_ZERO_CAP, metavar="K",
                   help="search cap for the nonzero witness of a divisor (default 2^64)")
    p.add_argument("--seed-index", type=_natural, default=None, metavar="J",
                   help="which root to take for root(...) without a seed hint")
    return p


def decimal_places(n: int) -> int:
    """Fewest decimals ``d`` with ``10**-d <= 1/(2n)``."""
    d = 0
    while 10 ** d < 2 * n:
        d += 1
    return d


def format_rational(v: GaussianRational) -> str:
    def q(x: Fraction) -> str:
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    if not v.im:
        return q(v.re)
    sign = "-" if v.im < 0 else "+"
    return f"{q(v.re)} {sign} {q(abs(v.im))}i"


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    args = build_parser().parse_args(argv)

    # error budget: 1/(2N) from the oracle, at most 1/(2N) from decimal rounding
    if args.prec is not None:
        n = args.prec
        digits = decimal_places(n)
    else:
        digits = DEFAULT_DIGITS if args.digits is None else args.digits
        n = 2 * 10 ** digits

    try:
        tree = parse(args.expression)
    except ParseError as exc:
        print(f"ptcnum: parse error: {exc}", file=stderr)
        print(f"  {args.expression}\n  {' ' * exc.position}^", file=stderr)
        return EXIT_PARSE

    try:
        z = lower(tree, zero_cap=args.zero_cap, seed_index=args.seed_index)
        if args.rational:
            out = format_rational(z.eval(n))
        else:
            out = format_gaussian(z.eval(2 * n), digits)
    except PossiblyZero as exc:
        print(f"ptcnum: divisor {exc} (raise --zero-cap to search further)", file=stderr)
        return EXIT_POSSIBLY_ZERO
    except PrecisionExhausted as exc:
        print(f"ptcnum: root not certified: {exc}", file=stderr)
        return EXIT_PRECISION
    except (ValueError, IndexError, ArithmeticError) as exc:
        print(f"ptcnum: {exc}", file=stderr)
        return EXIT_ERROR

    print(out, file=stdout)
    if args.stats:
        s = z.stats
        print(f"precision denominator: {n if args.rational else 2 * n}", file=stderr)
        print(f"rational ops: {s.rational_ops}", file=stderr)
        print(f"bit-ops proxy: {s.bit_ops_proxy}", file=stderr)
        print(f"newton iterations: {s.newton_iterations}", file=stderr)
        seen = set()
        for cert in s.certificates:
            line = cert.dump()
            if line not in seen:
                seen.add(line)
                print(f"certificate: {line}", file=stderr)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
