"""Field operations on :class:`~ptcnum.core.PTCNumber`.

The real operations follow the explicit rational-oracle constructions:

* sum        ``S(n) = (f(2n) + g(2n)) / (2n)``
* product    ``P(n) = f(cn) g(cn) / (c n)^2`` with ``c = |f(1)| + |g(1)| + 4``
* inverse    ``I(n) = p(n) / f(p(n))`` with ``p(X) = 2k^2 X + k``, ``|f(k)| > 1``

each packaged into an integer oracle by :func:`~ptcnum.core.from_rational_oracle`.
Complex arithmetic is done on real and imaginary parts and reassembled with
:func:`combine_complex`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .core import PTCNumber, const, from_rational_oracle
from .kernel import GaussianRational, round_to_multiple, tally

__all__ = [
    "PossiblyZero",
    "NonRealOperand",
    "ProductScaling",
    "InversionWitness",
    "DEFAULT_ZERO_CAP",
    "add",
    "negate",
    "subtract",
    "multiply",
    "scale",
    "invert",
    "divide",
    "power",
    "combine_complex",
    "re",
    "im",
]

DEFAULT_ZERO_CAP = 1 << 64


class PossiblyZero(ArithmeticError):
    """No witness ``|f(k)| > 1`` was found for ``k`` up to the search cap."""

    def __init__(self, cap: int, label: str = "?"):
        super().__init__(f"{label} may be zero: |f(k)| <= 1 for every k <= {cap}")
        self.cap = cap


class NonRealOperand(ValueError):
    pass


@dataclass(frozen=True)
class ProductScaling:
    c: int

    def __post_init__(self):
        if self.c < 4:
            raise ValueError("product scaling constant is always >= 4")

    @classmethod
    def for_operands(cls, x: PTCNumber, y: PTCNumber) -> "ProductScaling":
        return cls(abs(x.numerators(1)[0]) + abs(y.numerators(1)[0]) + 4)


@dataclass(frozen=True)
class InversionWitness:
    k: int

    @property
    def p_coeffs(self) -> tuple[int, int]:
        return 2 * self.k * self.k, self.k

    def p(self, n: int) -> int:
        a, b = self.p_coeffs
        return a * n + b

    @classmethod
    def search(cls, x: PTCNumber, cap: int) -> "InversionWitness":
        """Doubling search ``k = 1, 2, 4, ...`` for ``|f(k)| > 1``."""
        k = 1
        while k <= cap:
            if abs(x.numerators(k)[0]) > 1:
                return cls(k)
            k <<= 1
        raise PossiblyZero(cap, x.label)


class _Once:
    """Thread-safe lazily computed value."""

    __slots__ = ("_fn", "_value", "_lock", "_done")

    def __init__(self, fn):
        self._fn = fn
        self._lock = threading.Lock()
        self._done = False
        self._value = None

    def get(self):
        if not self._done:
            with self._lock:
                if not self._done:
                    self._value = self._fn()
                    self._done = True
        return self._value


def _require_real(*xs: PTCNumber) -> None:
    for x in xs:
        if not x.real:
            raise NonRealOperand(f"{x.label} is not known to be real")


# --------------------------------------------------------------------------
# real operations
# --------------------------------------------------------------------------

def _real_add(x: PTCNumber, y: PTCNumber) -> PTCNumber:
    def S(n):
        a = x.numerators(2 * n)[0]
        b = y.numerators(2 * n)[0]
        tally(a, b)
        return Fraction(a + b, 2 * n)

    return from_rational_oracle(S, real=True, label=f"({x.label} + {y.label})")


def _real_mul(x: PTCNumber, y: PTCNumber) -> PTCNumber:
    scaling = _Once(lambda: ProductScaling.for_operands(x, y))

    def P(n):
        c = scaling.get().c
        a = x.numerators(c * n)[0]
        b = y.numerators(c * n)[0]
        tally(a, b)
        return Fraction(a * b, (c * n) ** 2)

    return from_rational_oracle(P, real=True, label=f"({x.label} * {y.label})")


def _real_inv(x: PTCNumber, cap: int) -> PTCNumber:
    witness = _Once(lambda: InversionWitness.search(x, cap))

    def I(n):
        pn = witness.get().p(n)
        a = x.numerators(pn)[0]
        tally(a, pn)
        return Fraction(pn, a)

    return from_rational_oracle(I, real=True, label=f"1/{x.label}")


# --------------------------------------------------------------------------
# complex lifting
# --------------------------------------------------------------------------

def combine_complex(x: PTCNumber, y: PTCNumber) -> PTCNumber:
    """The number ``x + y i`` from real ``x`` and ``y``.

    Numerators are ``(f(3n) + k1) / 3`` and ``(g(3n) + k2) / 3`` with the
    adjustments ``|k1|, |k2| <= 1`` chosen to make the divisions exact.
    """
    _require_real(x, y)

    def oracle(n):
        xi, _ = round_to_multiple(x.numerators(3 * n)[0], 3)
        eta, _ = round_to_multiple(y.numerators(3 * n)[0], 3)
        return xi, eta

    return PTCNumber(oracle, label=f"({x.label} + {y.label}i)")


def re(z: PTCNumber) -> PTCNumber:
    if z.real:
        return z
    exact = None if z.exact is None else GaussianRational(z.exact.re)
    return PTCNumber(lambda n: (z.numerators(n)[0], 0), real=True, exact=exact,
                     label=f"re({z.label})")


def im(z: PTCNumber) -> PTCNumber:
    if z.real:
        return const(0)
    exact = None if z.exact is None else GaussianRational(z.exact.im)
    return PTCNumber(lambda n: (z.numerators(n)[1], 0), real=True, exact=exact,
                     label=f"im({z.label})")


def _parts(z: PTCNumber) -> tuple[PTCNumber, PTCNumber | None]:
    if z.real:
        return z, None
    return re(z), im(z)


def negate(x: PTCNumber) -> PTCNumber:
    def oracle(n):
        f, g = x.numerators(n)
        return -f, -g

    exact = None if x.exact is None else -x.exact
    return PTCNumber(oracle, real=x.real, exact=exact, label=f"-{x.label}")


def add(x: PTCNumber, y: PTCNumber) -> PTCNumber:
    a, b = _parts(x)
    c, d = _parts(y)
    real_part = _real_add(a, c)
    if b is None and d is None:
        return real_part
    if b is None:
        imag_part = d
    elif d is None:
        imag_part = b
    else:
        imag_part = _real_add(b, d)
    return combine_complex(real_part, imag_part)


def subtract(x: PTCNumber, y: PTCNumber) -> PTCNumber:
    return add(x, negate(y))


def multiply(x: PTCNumber, y: PTCNumber) -> PTCNumber:
    """Complex product from four real products (fewer when a part is known zero)."""
    a, b = _parts(x)
    c, d = _parts(y)
    ac = _real_mul(a, c)
    if b is None and d is None:
        return ac
    if b is None:
        return combine_complex(ac, _real_mul(a, d))
    if d is None:
        return combine_complex(ac, _real_mul(b, c))
    real_part = _real_add(ac, negate(_real_mul(b, d)))
    imag_part = _real_add(_real_mul(a, d), _real_mul(b, c))
    return combine_complex(real_part, imag_part)


def scale(x: PTCNumber, k: int) -> PTCNumber:
    """Exact integer multiple: ``n -> sign(k) * f(|k| n)``."""
    if k == 0:
        return const(0)
    sign = 1 if k > 0 else -1
    ak = abs(k)

    def oracle(n):
        f, g = x.numerators(ak * n)
        return sign * f, sign * g

    exact = None if x.exact is None else x.exact * k
    return PTCNumber(oracle, real=x.real, exact=exact, label=f"{k}*{x.label}")


def invert(x: PTCNumber, k_search_cap: int = DEFAULT_ZERO_CAP) -> PTCNumber:
    """``1/x``; complex operands use ``conj(x) / |x|^2`` with one real inversion.

    The witness search runs on first evaluation and raises :class:`PossiblyZero`
    when no ``k <= k_search_cap`` has ``|f(k)| > 1``.
    """
    a, b = _parts(x)
    if b is None:
        return _real_inv(a, k_search_cap)
    inv_norm = _real_inv(_real_add(_real_mul(a, a), _real_mul(b, b)), k_search_cap)
    return combine_complex(_real_mul(a, inv_norm), negate(_real_mul(b, inv_norm)))


def divide(x: PTCNumber, y: PTCNumber, k_search_cap: int = DEFAULT_ZERO_CAP) -> PTCNumber:
    return multiply(x, invert(y, k_search_cap))


def power(x: PTCNumber, k: int) -> PTCNumber:
    if not isinstance(k, int) or k < 0:
        raise ValueError("exponent must be a non-negative integer")
    if k == 0:
        return const(1)
    result = x
    for _ in range(k - 1):
        result = multiply(result, x)
    return result
