"""Transcendental constants: ``arctan(1/k)`` by truncated Taylor series and
``pi`` by Machin's formula ``pi = 16 arctan(1/5) - 4 arctan(1/239)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import PTCNumber, from_rational_oracle
from .field import add, negate, scale
from .kernel import tally

__all__ = ["ArctanPlan", "MACHIN", "arctan_terms", "arctan_partial_sum", "arctan_inv", "pi"]


@dataclass(frozen=True)
class ArctanPlan:
    """``m`` Taylor terms of ``arctan(1/k)`` for a ``1/(2n)`` truncation budget."""

    k: int
    n: int
    m: int

    @staticmethod
    def tail_ok(k: int, n: int, m: int) -> bool:
        # k^-(2m+1) / (2m+1) <= 1/(2n)
        return k ** (2 * m + 1) * (2 * m + 1) >= 2 * n

    @classmethod
    def for_precision(cls, k: int, n: int) -> "ArctanPlan":
        return cls(k, n, arctan_terms(k, n))

    def tail_bound(self) -> Fraction:
        return Fraction(1, self.k ** (2 * self.m + 1) * (2 * self.m + 1))


def arctan_terms(k: int, n: int) -> int:
    """Smallest term count whose alternating-series tail is ``<= 1/(2n)``."""
    m = 0
    while not ArctanPlan.tail_ok(k, n, m):
        m += 1
    return m


def arctan_partial_sum(k: int, m: int) -> Fraction:
    """``sum_{i<m} (-1)^i / ((2i+1) k^(2i+1))`` over one common denominator."""
    if m == 0:
        return Fraction(0)
    odd = 1
    for j in range(m):
        odd *= 2 * j + 1
        tally(odd)
    k2 = k * k
    numerator = 0
    kpow = 1  # k^(2(m-1-i)) for i = m-1, m-2, ...
    for i in range(m - 1, -1, -1):
        term = (odd // (2 * i + 1)) * kpow
        tally(odd, kpow)
        numerator += -term if i % 2 else term
        tally(numerator, term)
        kpow *= k2
        tally(kpow)
    denominator = odd * k ** (2 * m - 1)
    tally(odd, denominator)
    return Fraction(numerator, denominator)


MACHIN = ((16, 5), (-4, 239))


def arctan_inv(k: int) -> PTCNumber:
    """``arctan(1/k)`` for an integer ``k >= 2``."""
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"arctan_inv needs an integer k >= 2, got {k!r}")

    def F(n):
        return arctan_partial_sum(k, arctan_terms(k, n))

    return from_rational_oracle(F, real=True, label=f"atan_inv({k})")


def pi() -> PTCNumber:
    (c1, k1), (c2, k2) = MACHIN
    first = scale(arctan_inv(k1), c1)
    second = scale(arctan_inv(k2), abs(c2))
    result = add(first, negate(second))
    result.label = "pi"
    return result
