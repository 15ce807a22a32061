"""Expression language over computable numbers.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' nat)?
    atom   := rational | 'i' | 'pi' | 'atan_inv(' nat ')' | 're(' expr ')'
            | 'im(' expr ')' | 'root(' poly (',' seed)? ')' | '(' expr ')'

``rational`` is a decimal (``1.25``) or an integer fraction written without
spaces (``3/7``).  Inside ``root(...)`` the variable ``x`` may appear; the
polynomial is expanded and made monic.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .closure import Polynomial, root_number
from .constants import arctan_inv, pi
from .core import PTCNumber, const
from .field import DEFAULT_ZERO_CAP, add, divide, im, multiply, negate, power, re
from .kernel import GaussianRational

__all__ = [
    "Expr", "RationalLit", "ImaginaryUnit", "Pi", "ArctanInv", "Var", "Neg", "Add", "Sub",
    "Mul", "Div", "IntPow", "Root", "Re", "Im", "ParseError", "parse", "to_source",
    "lower", "evaluate", "constant_value",
]


# --------------------------------------------------------------------------
# AST
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class ImaginaryUnit:
    pass


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class ArctanInv:
    k: int


@dataclass(frozen=True)
class Var:
    """The polynomial variable ``x``; only legal inside ``root(...)``."""


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class IntPow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Root:
    """Root of ``x^n + c[n-1] x^(n-1) + ... + c[0]``; ``coeffs`` runs from ``c[0]``."""

    coeffs: tuple
    seed_hint: GaussianRational | None = None

    def __post_init__(self):
        # constant coefficients are kept in one canonical literal form
        folded = []
        for c in self.coeffs:
            v = constant_value(c)
            folded.append(c if v is None else _gaussian_literal(v))
        object.__setattr__(self, "coeffs", tuple(folded))


@dataclass(frozen=True)
class Re:
    operand: "Expr"


@dataclass(frozen=True)
class Im:
    operand: "Expr"


Expr = Union[RationalLit, ImaginaryUnit, Pi, ArctanInv, Var, Neg, Add, Sub, Mul, Div,
             IntPow, Root, Re, Im]


# --------------------------------------------------------------------------
# lexer / parser
# --------------------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


_TOKEN = _re.compile(r"""
    (?P<ws>\s+)
  | (?P<frac>\d+/\d+(?![\d.]))
  | (?P<num>\d+\.\d*|\.\d+|\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
""", _re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> list[_Tok]:
    out, pos = [], 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    out.append(_Tok("end", "", len(src)))
    return out


_FUNCS = {"atan_inv", "re", "im", "root"}


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0
        self.allow_var = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.tok.pos)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            right = self.term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.tok.text in ("*", "/"):
            op = self.advance().text
            right = self.factor()
            left = Mul(left, right) if op == "*" else Div(left, right)
        return left

    def factor(self) -> Expr:
        if self.tok.text == "-":
            self.advance()
            if self.tok.kind in ("num", "frac") and self.toks[self.i + 1].text != "^":
                return RationalLit(-self.number())
            return Neg(self.factor())
        base = self.atom()
        if self.tok.text == "^":
            self.advance()
            if self.tok.kind != "num" or not self.tok.text.isdigit():
                raise ParseError("exponent must be a non-negative integer literal", self.tok.pos)
            return IntPow(base, int(self.advance().text))
        return base

    def number(self) -> Fraction:
        t = self.advance()
        return Fraction(t.text)

    def nat(self) -> int:
        if self.tok.kind != "num" or not self.tok.text.isdigit():
            raise ParseError("expected a natural number", self.tok.pos)
        return int(self.advance().text)

    def atom(self) -> Expr:
        t = self.tok
        if t.kind in ("num", "frac"):
            return RationalLit(self.number())
        if t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "name":
            self.advance()
            name = t.text
            if name == "i":
                return ImaginaryUnit()
            if name == "pi":
                return Pi()
            if name == "x":
                if not self.allow_var:
                    raise ParseError("'x' is only allowed inside root(...)", t.pos)
                return Var()
            if name in _FUNCS:
                self.expect("(")
                if name == "atan_inv":
                    k_pos = self.tok.pos
                    k = self.nat()
                    if k < 2:
                        raise ParseError("atan_inv needs k >= 2", k_pos)
                    node: Expr = ArctanInv(k)
                elif name == "re":
                    node = Re(self.expr())
                elif name == "im":
                    node = Im(self.expr())
                else:
                    node = self.root_args(t.pos)
                self.expect(")")
                return node
            raise ParseError(f"unknown identifier {name!r}", t.pos)
        found = t.text or "end of input"
        raise ParseError(f"unexpected {found!r}", t.pos)

    def root_args(self, pos: int) -> Root:
        self.allow_var += 1
        poly_pos = self.tok.pos
        body = self.expr()
        self.allow_var -= 1
        coeffs = _monic_coefficients(body, poly_pos)
        hint = None
        if self.tok.text == ",":
            self.advance()
            hint_pos = self.tok.pos
            hint = constant_value(self.expr())
            if hint is None:
                raise ParseError("root seed must be a Gaussian-rational constant", hint_pos)
        return Root(coeffs, hint)


def parse(src: str) -> Expr:
    return _Parser(src).parse()


# --------------------------------------------------------------------------
# polynomial expansion for root(...)
# --------------------------------------------------------------------------

_ONE = RationalLit(Fraction(1))
_ZERO = RationalLit(Fraction(0))


def _has_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Root):
        return False
    for child in (getattr(e, f, None) for f in ("operand", "left", "right", "base")):
        if child is not None and _has_var(child):
            return True
    return False


def _cmul(a: Expr, b: Expr) -> Expr:
    if a == _ONE:
        return b
    if b == _ONE:
        return a
    return Mul(a, b)


def _cadd(a: Expr | None, b: Expr) -> Expr:
    return b if a is None else Add(a, b)


def _expand(e: Expr, pos: int) -> dict[int, Expr]:
    """Polynomial in ``x`` as ``{degree: coefficient expression}``."""
    if not _has_var(e):
        return {0: e}
    if isinstance(e, Var):
        return {1: _ONE}
    if isinstance(e, Neg):
        return {d: _neg(c) for d, c in _expand(e.operand, pos).items()}
    if isinstance(e, (Add, Sub)):
        out = dict(_expand(e.left, pos))
        for d, c in _expand(e.right, pos).items():
            out[d] = _cadd(out.get(d), c if isinstance(e, Add) else _neg(c))
        return out
    if isinstance(e, Mul):
        return _poly_mul(_expand(e.left, pos), _expand(e.right, pos))
    if isinstance(e, Div):
        if _has_var(e.right):
            raise ParseError("cannot divide by a polynomial in x", pos)
        return {d: Div(c, e.right) for d, c in _expand(e.left, pos).items()}
    if isinstance(e, IntPow):
        base = _expand(e.base, pos)
        out = {0: _ONE}
        for _ in range(e.exponent):
            out = _poly_mul(out, base)
        return out
    raise ParseError(f"{type(e).__name__} of a polynomial is not allowed", pos)


def _poly_mul(lhs: dict[int, Expr], rhs: dict[int, Expr]) -> dict[int, Expr]:
    out: dict[int, Expr] = {}
    for d1, c1 in lhs.items():
        for d2, c2 in rhs.items():
            out[d1 + d2] = _cadd(out.get(d1 + d2), _cmul(c1, c2))
    return out


def _neg(c: Expr) -> Expr:
    if isinstance(c, RationalLit):
        return RationalLit(-c.value)
    return Neg(c)


def _monic_coefficients(body: Expr, pos: int) -> tuple:
    terms = _expand(body, pos)
    # drop terms that fold to an exact zero
    terms = {d: c for d, c in terms.items() if constant_value(c) != GaussianRational(0)}
    if not terms or max(terms) < 1:
        raise ParseError("root(...) needs a polynomial of degree >= 1 in x", pos)
    n = max(terms)
    lead = terms[n]
    lead_value = constant_value(lead)
    coeffs = []
    for d in range(n):
        c = terms.get(d, _ZERO)
        if lead_value == GaussianRational(1):
            coeffs.append(c)
        elif lead_value is not None and not lead_value.im and isinstance(c, RationalLit):
            coeffs.append(RationalLit(c.value / lead_value.re))
        else:
            coeffs.append(Div(c, lead))
    return tuple(coeffs)


def _gaussian_literal(v: GaussianRational) -> Expr:
    if not v.im:
        return RationalLit(v.re)
    return Add(RationalLit(v.re), Mul(RationalLit(v.im), ImaginaryUnit()))


def constant_value(e: Expr) -> GaussianRational | None:
    """Exact value of an expression built from rationals and ``i`` only, else ``None``."""
    if isinstance(e, RationalLit):
        return GaussianRational(e.value)
    if isinstance(e, ImaginaryUnit):
        return GaussianRational(0, 1)
    if isinstance(e, Neg):
        v = constant_value(e.operand)
        return None if v is None else -v
    if isinstance(e, (Add, Sub, Mul, Div)):
        a, b = constant_value(e.left), constant_value(e.right)
        if a is None or b is None:
            return None
        if isinstance(e, Add):
            return a + b
        if isinstance(e, Sub):
            return a - b
        if isinstance(e, Mul):
            return a * b
        return None if not b else a / b
    if isinstance(e, IntPow):
        v = constant_value(e.base)
        return None if v is None else v ** e.exponent
    if isinstance(e, Re):
        v = constant_value(e.operand)
        return None if v is None else GaussianRational(v.re)
    if isinstance(e, Im):
        v = constant_value(e.operand)
        return None if v is None else GaussianRational(v.im)
    return None


# --------------------------------------------------------------------------
# printing
# --------------------------------------------------------------------------

def _lit(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_source(e: Expr) -> str:
    """Fully parenthesized source text; ``parse(to_source(e)) == e``."""
    if isinstance(e, RationalLit):
        return _lit(e.value)
    if isinstance(e, ImaginaryUnit):
        return "i"
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Var):
        return "x"
    if isinstance(e, ArctanInv):
        return f"atan_inv({e.k})"
    if isinstance(e, Neg):
        return f"-({to_source(e.operand)})"
    if isinstance(e, (Add, Sub, Mul, Div)):
        op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
        return f"({to_source(e.left)} {op} {to_source(e.right)})"
    if isinstance(e, IntPow):
        return f"({to_source(e.base)})^{e.exponent}"
    if isinstance(e, Re):
        return f"re({to_source(e.operand)})"
    if isinstance(e, Im):
        return f"im({to_source(e.operand)})"
    if isinstance(e, Root):
        n = len(e.coeffs)
        parts = [f"x^{n}"] + [f"({to_source(e.coeffs[d])})*x^{d}" for d in range(n - 1, -1, -1)]
        src = "root(" + " + ".join(parts)
        if e.seed_hint is not None:
            h = e.seed_hint
            src += f", ({_lit(h.re)} + ({_lit(h.im)})*i)"
        return src + ")"
    raise TypeError(f"not an expression node: {e!r}")


# --------------------------------------------------------------------------
# lowering and evaluation
# --------------------------------------------------------------------------

def lower(e: Expr, *, zero_cap: int = DEFAULT_ZERO_CAP, seed_index: int | None = None) -> PTCNumber:
    """Build the PTCNumber for ``e``; nothing is evaluated yet."""

    def go(e: Expr) -> PTCNumber:
        if isinstance(e, RationalLit):
            return const(e.value)
        if isinstance(e, ImaginaryUnit):
            return const(GaussianRational(0, 1))
        if isinstance(e, Pi):
            return pi()
        if isinstance(e, ArctanInv):
            return arctan_inv(e.k)
        if isinstance(e, Neg):
            return negate(go(e.operand))
        if isinstance(e, Add):
            return add(go(e.left), go(e.right))
        if isinstance(e, Sub):
            return add(go(e.left), negate(go(e.right)))
        if isinstance(e, Mul):
            return multiply(go(e.left), go(e.right))
        if isinstance(e, Div):
            return divide(go(e.left), go(e.right), zero_cap)
        if isinstance(e, IntPow):
            return power(go(e.base), e.exponent)
        if isinstance(e, Re):
            return re(go(e.operand))
        if isinstance(e, Im):
            return im(go(e.operand))
        if isinstance(e, Root):
            poly = Polynomial([go(c) for c in e.coeffs])
            if e.seed_hint is not None:
                return root_number(poly, hint=e.seed_hint)
            return root_number(poly, which=seed_index or 0)
        if isinstance(e, Var):
            raise ValueError("'x' outside root(...)")
        raise TypeError(f"not an expression node: {e!r}")

    return go(e)


@dataclass
class EvalReport:
    value: GaussianRational
    number: PTCNumber


def evaluate(e: Expr | str, prec_denominator: int, **lower_opts) -> EvalReport:
    """Value within ``1/prec_denominator`` of ``e``; statistics in ``report.number.stats``."""
    if isinstance(e, str):
        e = parse(e)
    if prec_denominator < 1:
        raise ValueError("precision denominator must be >= 1")
    z = lower(e, **lower_opts)
    return EvalReport(z.eval(prec_denominator), z)
