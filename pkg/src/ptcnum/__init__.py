"""Computable complex numbers as lazy integer-approximation oracles.

A :class:`PTCNumber` answers ``n -> (f, g)`` with ``|z - (f + g i)/n| <= 1/n``.
Field operations, polynomial roots and the constants ``pi`` and
``arctan(1/k)`` all return new PTCNumbers with the same guarantee.
"""

from .closure import (
    KantorovichCertificate,
    NotSquarefree,
    Polynomial,
    PrecisionExhausted,
    RationalPolynomial,
    find_seeds,
    kantorovich_certify,
    newton_refine,
    ostrowski_bound,
    root_number,
)
from .constants import arctan_inv, pi
from .core import (
    PolyIncreasingSequence,
    PTCNumber,
    const,
    evaluate,
    from_partial_oracle,
    from_rational_oracle,
    to_decimal,
)
from .field import (
    PossiblyZero,
    add,
    divide,
    im,
    invert,
    multiply,
    negate,
    power,
    re,
    scale,
    subtract,
)
from .kernel import GaussianRational, OpCounter, counting

__version__ = "0.1.0"

__all__ = [
    "PTCNumber", "GaussianRational", "OpCounter", "counting", "const", "evaluate",
    "from_rational_oracle", "from_partial_oracle", "PolyIncreasingSequence", "to_decimal",
    "add", "subtract", "negate", "multiply", "scale", "invert", "divide", "power", "re", "im",
    "PossiblyZero", "arctan_inv", "pi", "Polynomial", "RationalPolynomial", "root_number",
    "find_seeds", "kantorovich_certify", "newton_refine", "ostrowski_bound",
    "KantorovichCertificate", "PrecisionExhausted", "NotSquarefree",
]
