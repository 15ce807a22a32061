"""Exact arithmetic primitives: rationals, Gaussian rationals, rounding,
rational root enclosures and operation counting.

Rationals are :class:`fractions.Fraction` throughout.  Every enclosure
returned here is outward-rounded, so inequalities decided with it are sound.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Union

__all__ = [
    "GaussianRational",
    "OpCounter",
    "RoundingAdjustment",
    "counting",
    "active_counter",
    "tally",
    "round_nearest",
    "round_to_multiple",
    "sqrt_upper",
    "sqrt_lower",
    "root_upper",
    "root_lower",
    "iroot",
    "as_fraction",
    "dyadic_round",
]

RationalLike = Union[int, Fraction]


def as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    if isinstance(q, float):
        return Fraction(q)
    if isinstance(q, str):
        return Fraction(q)
    raise TypeError(f"cannot convert {type(q).__name__} to an exact rational")


# --------------------------------------------------------------------------
# operation counting
# --------------------------------------------------------------------------

@dataclass
class OpCounter:
    """Counts rational operations and a bit-length cost proxy.

    ``bit_ops_proxy`` adds the operand bit lengths of every counted op.
    Newton iteration counts and certificates are recorded for reporting.
    """

    rational_ops: int = 0
    bit_ops_proxy: int = 0
    newton_iterations: int = 0
    certificates: list = field(default_factory=list)

    def record(self, *operands) -> None:
        self.rational_ops += 1
        bits = 0
        for x in operands:
            if isinstance(x, int):
                bits += x.bit_length()
            elif isinstance(x, Fraction):
                bits += x.numerator.bit_length() + x.denominator.bit_length()
            elif isinstance(x, GaussianRational):
                bits += x.bit_length()
        self.bit_ops_proxy += bits

    def snapshot(self) -> tuple[int, int]:
        return self.rational_ops, self.bit_ops_proxy


_ACTIVE: contextvars.ContextVar[OpCounter | None] = contextvars.ContextVar(
    "ptcnum_active_counter", default=None
)


def active_counter() -> OpCounter | None:
    return _ACTIVE.get()


@contextlib.contextmanager
def counting(counter: OpCounter | None = None) -> Iterator[OpCounter]:
    """Route operation counts to ``counter`` (a fresh one by default)."""
    counter = OpCounter() if counter is None else counter
    token = _ACTIVE.set(counter)
    try:
        yield counter
    finally:
        _ACTIVE.reset(token)


def tally(*operands) -> None:
    counter = _ACTIVE.get()
    if counter is not None:
        counter.record(*operands)


# --------------------------------------------------------------------------
# rounding
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RoundingAdjustment:
    """An integer correction term together with the bound it is known to obey."""

    value: int
    bound: Fraction

    def __post_init__(self):
        if abs(self.value) > self.bound:
            raise ValueError(f"adjustment {self.value} exceeds its bound {self.bound}")


def round_nearest(q: RationalLike) -> int:
    """Nearest integer to ``q``; exact halves go to the even neighbour."""
    q = as_fraction(q)
    # Fraction.__round__ is exact and rounds half to even
    return round(q)


def round_to_multiple(v: int, d: int) -> tuple[int, RoundingAdjustment]:
    """Return ``(w, adj)`` with ``w = (v + adj.value) / d`` an exact integer.

    ``adj.value`` is the smallest-magnitude correction, so ``|adj| <= d // 2``.
    """
    r = v % d
    kappa = -r if 2 * r <= d else d - r
    return (v + kappa) // d, RoundingAdjustment(kappa, Fraction(d // 2))


def dyadic_round(q: RationalLike, bits: int) -> Fraction:
    """Round ``q`` to the nearest multiple of ``2**-bits``."""
    q = as_fraction(q)
    scale = 1 << bits
    return Fraction(round_nearest(q * scale), scale)


# --------------------------------------------------------------------------
# root enclosures
# --------------------------------------------------------------------------

def iroot(n: int, k: int) -> int:
    """Floor of the real ``k``-th root of a non-negative integer."""
    if n < 0:
        raise ValueError("iroot of a negative integer")
    if k < 1:
        raise ValueError("root index must be positive")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _exact_root(q: Fraction, k: int) -> Fraction | None:
    p = iroot(q.numerator, k)
    r = iroot(q.denominator, k)
    if p ** k == q.numerator and r ** k == q.denominator:
        return Fraction(p, r)
    return None


def _root_scale(tol: Fraction) -> int:
    # smallest power of two S with 1/S <= tol
    scale = 1
    while Fraction(1, scale) > tol:
        scale <<= 1
    return scale


def _root_bracket(q, k: int, tol) -> tuple[Fraction, Fraction]:
    q = as_fraction(q)
    tol = as_fraction(tol)
    if q < 0:
        raise ValueError("root of a negative rational")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    exact = _exact_root(q, k)
    if exact is not None:
        return exact, exact
    scale = _root_scale(tol)
    scaled = q * scale ** k
    s = iroot(scaled.numerator // scaled.denominator, k)
    return Fraction(s, scale), Fraction(s + 1, scale)


def root_upper(q, k: int, tol) -> Fraction:
    """Rational ``r`` with ``r**k >= q`` and ``r - q**(1/k) <= tol``."""
    return _root_bracket(q, k, tol)[1]


def root_lower(q, k: int, tol) -> Fraction:
    """Rational ``r >= 0`` with ``r**k <= q`` and ``q**(1/k) - r <= tol``."""
    return _root_bracket(q, k, tol)[0]


def sqrt_upper(q, tol) -> Fraction:
    return root_upper(q, 2, tol)


def sqrt_lower(q, tol) -> Fraction:
    return root_lower(q, 2, tol)


# --------------------------------------------------------------------------
# Gaussian rationals
# --------------------------------------------------------------------------

class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        return cls(as_fraction(value), 0)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _gr_or_none(other)
        if other is None:
            return NotImplemented
        tally(self, other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _gr_or_none(other)
        if other is None:
            return NotImplemented
        tally(self, other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _gr_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _gr_or_none(other)
        if other is None:
            return NotImplemented
        tally(self, other)
        if not other.im:
            return GaussianRational(self.re * other.re, self.im * other.re)
        if not self.im:
            return GaussianRational(self.re * other.re, self.re * other.im)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _gr_or_none(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero Gaussian rational")
        tally(self, other)
        if not other.im:
            return GaussianRational(self.re / other.re, self.im / other.re)
        d = other.abs2()
        num = self * other.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        other = _gr_or_none(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # queries --------------------------------------------------------------

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def abs_upper(self, tol=Fraction(1, 1 << 64)) -> Fraction:
        return sqrt_upper(self.abs2(), tol)

    def abs_lower(self, tol=Fraction(1, 1 << 64)) -> Fraction:
        return sqrt_lower(self.abs2(), tol)

    def is_real(self) -> bool:
        return self.im == 0

    def bit_length(self) -> int:
        return (self.re.numerator.bit_length() + self.re.denominator.bit_length()
                + self.im.numerator.bit_length() + self.im.denominator.bit_length())

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _gr_or_none(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __float__(self):
        if self.im:
            raise TypeError("cannot convert a non-real Gaussian rational to float")
        return float(self.re)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {abs(self.im)}i"


def _gr_or_none(value) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value, 0)
    return None
