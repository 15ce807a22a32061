"""Independent checking machinery for the test-suite.

Nothing here is used by the production path: bisection with exact sign
tests, a stored pi literal, high-precision brute-force roots and optimal
bottleneck matching of root sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np
from scipy.optimize import linear_sum_assignment

from .kernel import GaussianRational, as_fraction, sqrt_upper

__all__ = [
    "PI_100",
    "RootMatching",
    "bisect_real_root",
    "reference_pi",
    "brute_force_roots",
    "match_roots",
]

# 100 decimals of pi, transcribed from published tables
PI_100 = ("3."
          "1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679")


def reference_pi(digits: int) -> Fraction:
    """pi truncated (toward zero) to ``digits`` decimals."""
    if digits < 0:
        raise ValueError("digits must be non-negative")
    if digits > 100:
        raise ValueError("only 100 digits of pi are stored")
    return Fraction(PI_100[: 2 + digits] if digits else "3")


def _real_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def bisect_real_root(f, lo, hi, tol) -> Fraction:
    """Bisect a sign change of a real polynomial down to width ``tol``.

    ``f`` is a :class:`~ptcnum.closure.RationalPolynomial` with real
    coefficients or a sequence of rational coefficients, constant term first
    (leading coefficient included).  Returns the midpoint of the last bracket,
    or the exact root if a midpoint hits one.
    """
    if hasattr(f, "full"):
        full = f.full()
        if any(c.im for c in full):
            raise ValueError("bisection needs real coefficients")
        coeffs = [c.re for c in full]
    else:
        coeffs = [as_fraction(c) for c in f]
    lo, hi, tol = as_fraction(lo), as_fraction(hi), as_fraction(tol)
    flo, fhi = _real_eval(coeffs, lo), _real_eval(coeffs, hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("no sign change on the bracket")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = _real_eval(coeffs, mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def _mpf_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    man, exp = x.man_exp  # man carries no sign
    q = Fraction(int(man) << exp) if exp >= 0 else Fraction(int(man), 1 << -exp)
    return -q if x < 0 else q


def brute_force_roots(coeffs: Sequence, dps: int = 60) -> tuple[list[GaussianRational], Fraction]:
    """All complex roots of a monic polynomial (constant term first, leading 1 omitted).

    Returns the roots as exact dyadics and a residual-based error estimate:
    ``max |f(r)| / |f'(r)|`` times two, which bounds the distance to the true
    root for well-separated simple roots.
    """
    with mpmath.workdps(dps):
        cs = []
        for c in reversed(list(coeffs) + [1]):
            g = GaussianRational.coerce(c)
            cs.append(mpmath.mpc(mpmath.mpf(g.re.numerator) / g.re.denominator,
                                 mpmath.mpf(g.im.numerator) / g.im.denominator))
        roots = mpmath.polyroots(cs, maxsteps=400, extraprec=3 * dps)
        dcs = [c * (len(cs) - 1 - i) for i, c in enumerate(cs[:-1])]
        est = mpmath.mpf(0)
        out = []
        for r in roots:
            r = mpmath.mpc(r)
            fr = mpmath.polyval(cs, r)
            dfr = mpmath.polyval(dcs, r)
            est = max(est, 2 * abs(fr) / abs(dfr) if dfr else mpmath.inf)
            out.append(GaussianRational(_mpf_fraction(r.real), _mpf_fraction(r.imag)))
        err = Fraction(1) if not mpmath.isfinite(est) else _mpf_fraction(est) + Fraction(1, 10 ** (dps - 5))
    return out, err


@dataclass(frozen=True)
class RootMatching:
    pairs: tuple[tuple[GaussianRational, GaussianRational, Fraction], ...]
    max_distance: Fraction


def _bottleneck_perm_bruteforce(d2: list[list[Fraction]]) -> tuple[int, ...]:
    n = len(d2)
    return min(itertools.permutations(range(n)),
               key=lambda p: max(d2[i][p[i]] for i in range(n)))


def _bottleneck_perm_threshold(d2: list[list[Fraction]]) -> tuple[int, ...]:
    n = len(d2)
    levels = sorted({d for row in d2 for d in row})

    def feasible(t):
        cost = np.array([[0.0 if d2[i][j] <= t else 1.0 for j in range(n)] for i in range(n)])
        rows, cols = linear_sum_assignment(cost)
        return cost[rows, cols].sum() == 0, cols

    lo, hi = 0, len(levels) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(levels[mid])[0]:
            hi = mid
        else:
            lo = mid + 1
    return tuple(int(c) for c in feasible(levels[lo])[1])


def match_roots(roots_f: Sequence, roots_g: Sequence,
                tol: Fraction = Fraction(1, 1 << 96)) -> RootMatching:
    """Perfect matching minimizing the largest pair distance (bottleneck)."""
    if len(roots_f) != len(roots_g):
        raise ValueError(f"length mismatch: {len(roots_f)} != {len(roots_g)}")
    rf = [GaussianRational.coerce(z) for z in roots_f]
    rg = [GaussianRational.coerce(z) for z in roots_g]
    n = len(rf)
    if n == 0:
        return RootMatching((), Fraction(0))
    d2 = [[(rf[i] - rg[j]).abs2() for j in range(n)] for i in range(n)]
    perm = _bottleneck_perm_bruteforce(d2) if n <= 6 else _bottleneck_perm_threshold(d2)
    pairs = tuple((rf[i], rg[perm[i]], sqrt_upper(d2[i][perm[i]], tol)) for i in range(n))
    worst = max(d2[i][perm[i]] for i in range(n))
    return RootMatching(pairs, sqrt_upper(worst, tol))
