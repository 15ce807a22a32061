"""Computable complex numbers as lazy integer-approximation oracles.

A :class:`PTCNumber` wraps an oracle ``n -> (f(n), g(n))`` of integers such
that, for every ``n >= 1``, the represented value ``z`` satisfies::

    |z - (f(n) + g(n) i) / n| <= 1 / n

Oracles are pure; evaluations are memoized per exact ``n``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .kernel import (
    GaussianRational,
    OpCounter,
    as_fraction,
    counting,
    active_counter,
    round_nearest,
    sqrt_upper,
    tally,
)

__all__ = [
    "PTCNumber",
    "PolyIncreasingSequence",
    "SequenceExhausted",
    "const",
    "evaluate",
    "from_rational_oracle",
    "from_partial_oracle",
    "to_decimal",
    "format_decimal",
    "TWO_PLUS_SQRT2_UPPER",
]

IntOracle = Callable[[int], "tuple[int, int]"]

# rational upper bound of 2 + sqrt(2); overshooting only enlarges the chosen n
TWO_PLUS_SQRT2_UPPER = 2 + sqrt_upper(2, Fraction(1, 1 << 32))


class PTCNumber:
    """A complex number given by an integer-approximation oracle.

    Parameters
    ----------
    oracle:
        ``n -> (f, g)`` with ``|z - (f + g i)/n| <= 1/n`` for all ``n >= 1``.
    real:
        Set when ``g`` is identically zero by construction.
    exact:
        The exact value, when it is a known Gaussian rational.
    label:
        Short description used in reprs.
    """

    __slots__ = ("_oracle", "_memo", "_lock", "real", "exact", "label", "stats")

    def __init__(self, oracle: IntOracle, *, real: bool = False,
                 exact: GaussianRational | None = None, label: str = "?"):
        self._oracle = oracle
        self._memo: dict[int, tuple[int, int]] = {}
        self._lock = threading.Lock()
        self.real = real
        self.exact = exact
        self.label = label
        self.stats = OpCounter()

    # -- evaluation -------------------------------------------------------

    def numerators(self, n: int) -> tuple[int, int]:
        """Return ``(f(n), g(n))``, computing and caching on first use."""
        if n < 1:
            raise ValueError(f"precision denominator must be >= 1, got {n}")
        hit = self._memo.get(n)
        if hit is not None:
            return hit
        if active_counter() is None:
            with counting(self.stats):
                value = self._compute(n)
        else:
            value = self._compute(n)
        with self._lock:
            return self._memo.setdefault(n, value)

    def _compute(self, n: int) -> tuple[int, int]:
        f, g = self._oracle(n)
        if self.real and g:
            raise AssertionError(f"real oracle {self.label} produced an imaginary part")
        return int(f), int(g)

    def eval(self, n: int) -> GaussianRational:
        f, g = self.numerators(n)
        return GaussianRational(Fraction(f, n), Fraction(g, n))

    def is_cached(self, n: int) -> bool:
        return n in self._memo

    # -- operator sugar (implementations live in field.py) -------------------

    def __add__(self, other):
        from . import field
        return field.add(self, _lift(other))

    def __radd__(self, other):
        from . import field
        return field.add(_lift(other), self)

    def __neg__(self):
        from . import field
        return field.negate(self)

    def __sub__(self, other):
        from . import field
        return field.add(self, field.negate(_lift(other)))

    def __rsub__(self, other):
        from . import field
        return field.add(_lift(other), field.negate(self))

    def __mul__(self, other):
        from . import field
        if isinstance(other, int):
            return field.scale(self, other)
        return field.multiply(self, _lift(other))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        from . import field
        return field.divide(self, _lift(other))

    def __rtruediv__(self, other):
        from . import field
        return field.divide(_lift(other), self)

    def __pow__(self, k: int):
        from . import field
        return field.power(self, k)

    def __repr__(self):
        return f"PTCNumber({self.label})"


def _lift(value) -> PTCNumber:
    if isinstance(value, PTCNumber):
        return value
    return const(value)


def evaluate(z: PTCNumber, n: int) -> GaussianRational:
    """``(f(n) + g(n) i) / n`` for the oracle of ``z``."""
    return z.eval(n)


def const(value) -> PTCNumber:
    """Exact Gaussian-rational constant; numerators are ``round(n * value)``."""
    value = GaussianRational.coerce(value)
    re, im = value.re, value.im
    if re.denominator == 1 and im.denominator == 1:
        a, b = re.numerator, im.numerator

        def oracle(n):
            return a * n, b * n
    else:
        def oracle(n):
            return round_nearest(re * n), round_nearest(im * n)

    return PTCNumber(oracle, real=not im, exact=value, label=str(value))


# --------------------------------------------------------------------------
# rational-valued oracles
# --------------------------------------------------------------------------

def from_rational_oracle(F: Callable[[int], object],
                         G: Callable[[int], object] | None = None,
                         *, real: bool = False,
                         label: str = "rational-oracle") -> PTCNumber:
    """Integer oracle from rational approximations ``|z - (F(n)+G(n)i)| <= 1/n``.

    ``F`` may return a :class:`GaussianRational` (then ``G`` is omitted) or a
    rational real part.  The result uses ``f(n) = round(n * F(4n))`` and
    likewise for ``g``, whose error is at most ``1/(4n) + 1/(sqrt(2) n)``.
    """
    if G is None:
        def approx(n):
            return GaussianRational.coerce(F(n))
    else:
        def approx(n):
            return GaussianRational(as_fraction(F(n)), as_fraction(G(n)))

    def oracle(n):
        v = approx(4 * n)
        tally(v, n)
        return round_nearest(v.re * n), round_nearest(v.im * n)

    return PTCNumber(oracle, real=real, label=label)


@dataclass(frozen=True)
class PolyIncreasingSequence:
    """Strictly increasing naturals ``s_i`` with ``s_{i+1} <= p(s_i)``.

    ``gap_poly`` holds the non-negative integer coefficients of ``p`` from
    the constant term up.
    """

    enumerate: Callable[[int], int]
    gap_poly: Sequence[int]
    search_cap: int = 1 << 64

    def p(self, s: int) -> int:
        total = 0
        for c in reversed(self.gap_poly):
            total = total * s + c
        return total

    def check_prefix(self, count: int = 64) -> None:
        prev = self.enumerate(0)
        if prev < 1:
            raise ValueError("sequence elements must be positive naturals")
        for i in range(1, count):
            cur = self.enumerate(i)
            if not prev < cur <= self.p(prev):
                raise ValueError(
                    f"not polynomially increasing at index {i}: {prev} -> {cur}")
            prev = cur

    def first_at_least(self, bound) -> int:
        """Smallest element ``>= bound`` (galloping then bisection on the index)."""
        if self.enumerate(0) >= bound:
            return self.enumerate(0)
        lo, hi = 0, 1
        while self.enumerate(hi) < bound:
            lo, hi = hi, 2 * hi
            if hi > self.search_cap:
                raise SequenceExhausted(
                    f"no element >= {bound} within {self.search_cap} terms")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.enumerate(mid) >= bound:
                hi = mid
            else:
                lo = mid
        return self.enumerate(hi)

    def contains(self, m: int) -> bool:
        return self.first_at_least(m) == m

    @classmethod
    def arithmetic(cls, start: int, step: int) -> "PolyIncreasingSequence":
        if start < 1 or step < 1:
            raise ValueError("arithmetic sequence needs start >= 1 and step >= 1")
        return cls(lambda i: start + step * i, (step, 1))

    @classmethod
    def geometric(cls, start: int, ratio: int) -> "PolyIncreasingSequence":
        if start < 1 or ratio < 2:
            raise ValueError("geometric sequence needs start >= 1 and ratio >= 2")
        return cls(lambda i: start * ratio ** i, (0, ratio))


class SequenceExhausted(LookupError):
    pass


def from_partial_oracle(fh: Callable[[int], int], gh: Callable[[int], int] | None,
                        seq: PolyIncreasingSequence, *, real: bool | None = None,
                        label: str = "partial-oracle") -> PTCNumber:
    """Extend an oracle known only on ``seq`` to every ``m >= 1``.

    On members of ``seq`` the values pass through.  Elsewhere the smallest
    ``n`` in ``seq`` with ``n >= (2 + sqrt 2) m`` is used and the numerators
    are rescaled by ``m / n`` with nearest rounding.
    """
    if gh is None:
        gh = _zero
        real = True if real is None else real

    def oracle(m):
        n = seq.first_at_least(m)
        if n == m:
            return fh(m), gh(m)
        n = seq.first_at_least(-(-TWO_PLUS_SQRT2_UPPER * m // 1))
        a, b = fh(n), gh(n)
        tally(a, b, n)
        return round_nearest(Fraction(a * m, n)), round_nearest(Fraction(b * m, n))

    return PTCNumber(oracle, real=bool(real), label=label)


def _zero(n):
    return 0


# --------------------------------------------------------------------------
# decimal rendering
# --------------------------------------------------------------------------

def format_decimal(q: Fraction, digits: int) -> str:
    """Nearest fixed-point decimal of ``q`` with ``digits`` places."""
    scaled = round_nearest(q * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def to_decimal(z: PTCNumber, digits: int) -> str:
    """Fixed-point decimal within ``10**-digits`` of each part of ``z``.

    The oracle is queried at ``2 * 10**digits`` (error ``<= 10**-digits / 2``)
    and the result is rounded to the nearest ``digits``-place decimal (another
    ``10**-digits / 2`` at most).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    v = z.eval(2 * 10 ** digits)
    return format_gaussian(v, digits)


def format_gaussian(v: GaussianRational, digits: int) -> str:
    re_s = format_decimal(v.re, digits)
    im_scaled = round_nearest(v.im * 10 ** digits)
    if im_scaled == 0:
        return re_s
    im_s = format_decimal(abs(v.im), digits)
    sign = "-" if im_scaled < 0 else "+"
    return f"{re_s} {sign} {im_s}i"
