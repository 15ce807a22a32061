"""Roots of monic polynomials with computable coefficients.

The pipeline for one root at precision ``1/M``:

1. truncate the coefficient oracles so that every root of the rational
   polynomial is within ``1/(2M)`` of a root of the exact one (Ostrowski);
2. re-check a Kantorovich certificate at a fixed seed for the truncation;
3. run exact Newton iteration until the Kantorovich error bound is
   below ``1/(2M)``.

Seeds are found once, by a floating-point heuristic followed by exact
certification, and reused at every higher precision.
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .core import PTCNumber, const, from_rational_oracle
from .kernel import (
    GaussianRational,
    active_counter,
    as_fraction,
    dyadic_round,
    root_upper,
    sqrt_lower,
    sqrt_upper,
)

__all__ = [
    "Polynomial",
    "RationalPolynomial",
    "OstrowskiBound",
    "CoefficientPrecisionPlan",
    "KantorovichCertificate",
    "Reject",
    "NewtonRun",
    "SeedCertificate",
    "PrecisionExhausted",
    "NotSquarefree",
    "truncate_coefficients",
    "ostrowski_bound",
    "kantorovich_certify",
    "newton_refine",
    "planned_steps",
    "find_seeds",
    "root_number",
    "is_squarefree",
    "ENCLOSURE_TOL",
]

log = logging.getLogger(__name__)

ENCLOSURE_TOL = Fraction(1, 1 << 96)

# heuristic working precisions (decimal digits); None means numpy float64
DPS_LADDER = (None, 30, 60, 120, 240)
# coefficient precision ladder for the seed search in root_number
SEED_PRECISION_START = 1 << 10
SEED_PRECISION_STEP = 1 << 12
SEED_LADDER_DEPTH = 6


class PrecisionExhausted(ArithmeticError):
    """Seed certification did not succeed within the configured retry ladder."""


class NotSquarefree(PrecisionExhausted):
    pass


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

def _gr(value) -> GaussianRational:
    return GaussianRational.coerce(value)


class RationalPolynomial:
    """Monic ``X^n + c[n-1] X^(n-1) + ... + c[0]`` over the Gaussian rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("a monic polynomial needs degree >= 1")
        object.__setattr__(self, "coeffs", tuple(_gr(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    @classmethod
    def from_roots(cls, roots) -> "RationalPolynomial":
        poly = [GaussianRational(1)]  # low -> high, includes the leading 1
        for r in roots:
            r = _gr(r)
            shifted = [GaussianRational(0)] + poly
            for i, c in enumerate(poly):
                shifted[i] = shifted[i] - r * c
            poly = shifted
        return cls(poly[:-1])

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def full(self) -> list[GaussianRational]:
        """All coefficients from the constant term up, leading 1 included."""
        return list(self.coeffs) + [GaussianRational(1)]

    def __call__(self, z) -> GaussianRational:
        return self.eval_with_derivative(z)[0]

    def eval_with_derivative(self, z) -> tuple[GaussianRational, GaussianRational]:
        z = _gr(z)
        p = GaussianRational(1)
        dp = GaussianRational(0)
        for c in reversed(self.coeffs):
            dp = dp * z + p
            p = p * z + c
        return p, dp

    def __eq__(self, other):
        return isinstance(other, RationalPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = [f"x^{self.degree}"]
        for j in range(self.degree - 1, -1, -1):
            c = self.coeffs[j]
            if c:
                terms.append(f"({c})" + (f"*x^{j}" if j else ""))
        return " + ".join(terms)


class Polynomial:
    """Monic polynomial whose coefficients ``a_0 .. a_{n-1}`` are PTCNumbers.

    Squarefreeness is the caller's promise; it cannot be decided from
    oracles.  A double root makes every seed search fail, so the root
    operator raises :class:`PrecisionExhausted` for such input.
    """

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("a monic polynomial needs degree >= 1")
        self.coeffs: tuple[PTCNumber, ...] = tuple(
            c if isinstance(c, PTCNumber) else const(c) for c in coeffs)
        self._seeds: SeedCertificate | None = None
        self._lock = threading.Lock()
        self._truncations: dict[int, tuple[RationalPolynomial, CoefficientPrecisionPlan]] = {}

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def truncation(self, m: int):
        hit = self._truncations.get(m)
        if hit is None:
            hit = truncate_coefficients(self, m)
            self._truncations[m] = hit
        return hit

    def seed_certificate(self) -> "SeedCertificate":
        with self._lock:
            if self._seeds is None:
                self._seeds = _seed_ladder(self, SEED_PRECISION_START)
            return self._seeds

    def refresh_seeds(self, floor: int) -> "SeedCertificate":
        with self._lock:
            if self._seeds is None or self._seeds.precision_floor < floor:
                self._seeds = _seed_ladder(self, floor)
            return self._seeds

    def root(self, which: int | None = None, hint=None) -> PTCNumber:
        return root_number(self, which, hint)

    def __repr__(self):
        return f"Polynomial({[c.label for c in self.coeffs]})"


# --------------------------------------------------------------------------
# coefficient truncation and the Ostrowski bound
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientPrecisionPlan:
    m: int
    k: int
    gamma_bar: Fraction
    per_coeff_error: tuple[Fraction, ...]
    eval_points: tuple[int, ...]

    @staticmethod
    def budget(n: int, m: int) -> int:
        return 2 ** n * n ** (n + 1) * m ** n


def truncate_coefficients(f: Polynomial, m: int) -> tuple[RationalPolynomial, CoefficientPrecisionPlan]:
    """Rational coefficients whose roots pair with those of ``f`` within ``1/m``.

    ``|a~_j - a_j| <= 1/(k gbar^j)`` with ``k = 2^n n^(n+1) m^n`` and
    ``gbar = 2 max_j (|a_(n-j)| + 1)^(1/j)`` taken from coarse evaluations.
    """
    n = f.degree
    # |a| <= |eval(a, 1)| + 1 by the oracle contract at n = 1
    mod_upper = []
    for a in f.coeffs:
        if a.exact is not None:
            mod_upper.append(a.exact.abs_upper())
        else:
            mod_upper.append(a.eval(1).abs_upper() + 1)
    gamma_bar = Fraction(1)
    for j in range(1, n + 1):
        gamma_bar = max(gamma_bar, 2 * root_upper(mod_upper[n - j] + 1, j, ENCLOSURE_TOL))
    k = CoefficientPrecisionPlan.budget(n, m)
    approx, errors, points = [], [], []
    for j, a in enumerate(f.coeffs):
        err = Fraction(1, k) / gamma_bar ** j
        errors.append(err)
        if a.exact is not None:
            approx.append(a.exact)
            points.append(0)
            continue
        N = -(-1 // err)  # ceil(1/err)
        points.append(N)
        approx.append(a.eval(N))
    plan = CoefficientPrecisionPlan(m, k, gamma_bar, tuple(errors), tuple(points))
    return RationalPolynomial(approx), plan


@dataclass(frozen=True)
class OstrowskiBound:
    gamma: Fraction
    epsilon: Fraction
    pairing_bound: Fraction


def ostrowski_bound(f: RationalPolynomial, g: RationalPolynomial,
                    tol: Fraction = ENCLOSURE_TOL) -> OstrowskiBound:
    """Upper enclosures of ``gamma``, ``epsilon`` and the root-pairing bound ``2 n epsilon``."""
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} != {g.degree}")
    n = f.degree
    gamma = Fraction(0)
    for poly in (f, g):
        for j in range(1, n + 1):
            # |c|^(1/j) = (|c|^2)^(1/(2j))
            gamma = max(gamma, root_upper(poly.coeffs[n - j].abs2(), 2 * j, tol))
    gamma *= 2
    total = Fraction(0)
    for j in range(n):
        diff = g.coeffs[j] - f.coeffs[j]
        if diff:
            total += sqrt_upper(diff.abs2(), tol) * gamma ** j
    epsilon = root_upper(total, n, tol)
    return OstrowskiBound(gamma, epsilon, 2 * n * epsilon)


# --------------------------------------------------------------------------
# Kantorovich certification and Newton refinement
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Reject:
    reason: str  # derivative-zero | h-too-large | disc-too-small
    detail: str = ""

    def __bool__(self):
        return False


@dataclass(frozen=True)
class KantorovichCertificate:
    """Exact witness that Newton's method converges from ``zeta``.

    ``shrink`` is an upper enclosure of ``1 - sqrt(1 - 2h)``; the radius of
    the convergence disc is ``t_star_upper = shrink / (a L)``.
    """

    zeta: GaussianRational
    disc_radius: Fraction
    L: Fraction
    a: Fraction
    b: Fraction
    h: Fraction
    t_star_upper: Fraction
    shrink: Fraction

    def error_bound_at(self, nu: int) -> Fraction:
        """``(1 - sqrt(1-2h))^(2^nu) / (2^nu a L)``, outward rounded."""
        return self.shrink ** (1 << nu) / ((1 << nu) * self.a * self.L)

    def contains(self, z: GaussianRational) -> bool:
        return (z - self.zeta).abs2() <= self.t_star_upper ** 2

    @property
    def uniqueness_radius(self) -> Fraction:
        """Lower bound of ``min(r, t**)`` with ``t** = (1 + sqrt(1-2h)) / (a L)``.

        The root is the only one in the open disc of this radius.
        """
        return min(self.disc_radius, (2 - self.shrink) / (self.a * self.L))

    def in_uniqueness_disc(self, z: GaussianRational) -> bool:
        return (z - self.zeta).abs2() < self.uniqueness_radius ** 2

    def dump(self) -> str:
        z = self.zeta
        return (f"zeta={z.re}{'+' if z.im >= 0 else '-'}{abs(z.im)}i a={self.a} b={self.b} "
                f"L={self.L} h={self.h} t*={self.t_star_upper}")

    def __bool__(self):
        return True


def _second_derivative_bound(f: RationalPolynomial, radius: Fraction, tol: Fraction) -> Fraction:
    total = Fraction(0)
    full = f.full()
    for j in range(2, len(full)):
        c = full[j]
        if c:
            mod = Fraction(1) if j == f.degree else sqrt_upper(c.abs2(), tol)
            total += j * (j - 1) * mod * radius ** (j - 2)
    return total


def kantorovich_certify(f: RationalPolynomial, zeta, disc_radius,
                        tol: Fraction = ENCLOSURE_TOL) -> KantorovichCertificate | Reject:
    """Decide the converging initial condition at ``zeta`` on the disc of ``disc_radius``.

    Every bound is an upper enclosure and the ``h <= 1/2`` and ``t* <= r``
    tests are exact rational comparisons, so acceptance is sound.
    """
    zeta = _gr(zeta)
    r = as_fraction(disc_radius)
    if r <= 0:
        raise ValueError("disc radius must be positive")
    fz, dfz = f.eval_with_derivative(zeta)
    if not dfz:
        return Reject("derivative-zero")
    d2 = dfz.abs2()
    a = sqrt_upper(1 / d2, tol)
    b = sqrt_upper(fz.abs2() / d2, tol)
    L = _second_derivative_bound(f, sqrt_upper(zeta.abs2(), tol) + r, tol)
    if L == 0:
        # f' is constant: any positive L is a Lipschitz constant
        L = Fraction(1) if a * b == 0 else min(Fraction(1), 1 / (4 * a * b))
    h = a * b * L
    if h > Fraction(1, 2):
        return Reject("h-too-large", f"h={float(h):.3g}")
    # 1 - sqrt(1-2h) = 2h / (1 + sqrt(1-2h)); this form keeps the enclosure
    # error relative, so t* = 2b / (1 + sqrt(1-2h)) stays sharp when b is tiny
    shrink = 2 * h / (1 + sqrt_lower(1 - 2 * h, tol))
    t_star = shrink / (a * L)
    if t_star > r:
        return Reject("disc-too-small", f"t*={float(t_star):.3g} > r={float(r):.3g}")
    return KantorovichCertificate(zeta, r, L, a, b, h, t_star, shrink)


@dataclass
class NewtonRun:
    """Iterates of one refinement.

    ``error_bound_at`` is the a-priori bound, which applies to exact
    iterates.  Rounded runs carry ``posterior``, a certificate at the final
    iterate whose ``t_star_upper`` bounds the final error.
    """

    certificate: KantorovichCertificate
    iterates: list[GaussianRational]
    target: Fraction
    posterior: KantorovichCertificate | None = None
    grid_bits: int | None = None

    @property
    def nu(self) -> int:
        return len(self.iterates) - 1

    @property
    def final(self) -> GaussianRational:
        return self.iterates[-1]

    @property
    def final_error_bound(self) -> Fraction:
        if self.posterior is not None:
            return self.posterior.t_star_upper
        return self.error_bound_at(self.nu)

    @property
    def c0(self) -> Fraction | None:
        """Upper estimate of ``1 / -log(1 - sqrt(1-2h))``; reporting only."""
        u = self.certificate.shrink
        if u == 0:
            return Fraction(0)
        if u >= 1:
            return None
        return Fraction(1.0 / -math.log(float(u))) * (1 + Fraction(1, 10 ** 9))

    def error_bound_at(self, nu: int) -> Fraction:
        return self.certificate.error_bound_at(nu)


def planned_steps(cert: KantorovichCertificate, m: int) -> int:
    """Smallest ``nu`` with ``error_bound_at(nu) <= 1/m``."""
    target = Fraction(1, m)
    nu = 0
    while cert.error_bound_at(nu) > target:
        nu += 1
    return nu


NEWTON_GUARD_BITS = 64
NEWTON_EXTRA_STEPS = 3


def newton_refine(f: RationalPolynomial, cert: KantorovichCertificate, m: int,
                  *, exact: bool = False) -> NewtonRun:
    """Newton iteration from the certified seed to a point within ``1/m`` of the root.

    The step count comes from the a-priori bound.  By default each iterate is
    rounded to a dyadic grid ``NEWTON_GUARD_BITS`` finer than ``1/m``; exact
    iterates grow by a factor of about ``4 deg f`` in bit size per step.  The
    rounded result is then proved by a second certificate at the final
    iterate whose disc lies strictly inside the uniqueness disc of the first,
    so it encloses the same root.  If that proof fails after a few extra steps the exact iteration
    is used instead.
    """
    target = Fraction(1, m)
    steps = planned_steps(cert, m)
    run = None if exact else _rounded_newton(f, cert, m, steps)
    if run is None:
        run = _exact_newton(f, cert, steps, target)
    counter = active_counter()
    if counter is not None:
        counter.newton_iterations += run.nu
    return run


def _newton_step(f: RationalPolynomial, rho: GaussianRational) -> GaussianRational | None:
    fz, dfz = f.eval_with_derivative(rho)
    if not fz:
        return None  # landed on the root exactly
    return rho - fz / dfz


def _exact_newton(f, cert, steps, target) -> NewtonRun:
    rho = cert.zeta
    iterates = [rho]
    for _ in range(steps):
        rho = _newton_step(f, rho)
        if rho is None:
            break
        iterates.append(rho)
        if not cert.contains(rho):
            raise AssertionError("Newton iterate left the certified disc")
    return NewtonRun(cert, iterates, target)


def _posterior(f, cert, rho, target) -> KantorovichCertificate | None:
    # a disc strictly inside the uniqueness disc of ``cert`` holds the same root
    room = cert.uniqueness_radius - sqrt_upper((rho - cert.zeta).abs2(), target / 4)
    if room <= 0:
        return None
    post = kantorovich_certify(f, rho, room, min(ENCLOSURE_TOL, target / 64))
    if post and post.t_star_upper <= target and post.t_star_upper < room:
        return post
    return None


def _rounded_newton(f, cert, m, steps) -> NewtonRun | None:
    target = Fraction(1, m)
    bits = m.bit_length() + NEWTON_GUARD_BITS
    rho = cert.zeta
    iterates = [rho]
    for k in range(steps + NEWTON_EXTRA_STEPS + 1):
        if k >= steps:
            post = _posterior(f, cert, rho, target)
            if post is not None:
                return NewtonRun(cert, iterates, target, post, bits)
            if k == steps + NEWTON_EXTRA_STEPS:
                break
        nxt = _newton_step(f, rho)
        if nxt is None:
            # exact root: the posterior certificate has b = 0
            post = _posterior(f, cert, rho, target)
            return None if post is None else NewtonRun(cert, iterates, target, post, bits)
        rho = GaussianRational(dyadic_round(nxt.re, bits), dyadic_round(nxt.im, bits))
        if not cert.in_uniqueness_disc(rho):
            break
        iterates.append(rho)
    log.info("rounded Newton not proved at 1/%d; falling back to exact iterates", m)
    return None


# --------------------------------------------------------------------------
# seed search
# --------------------------------------------------------------------------

def _poly_rem(a: list[GaussianRational], b: list[GaussianRational]) -> list[GaussianRational]:
    a = list(a)
    lead = b[-1]
    while len(a) >= len(b) and a:
        q = a[-1] / lead
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - q * c
        a.pop()
        while a and not a[-1]:
            a.pop()
    return a


def is_squarefree(f: RationalPolynomial) -> bool:
    """``gcd(f, f')`` is a nonzero constant, by exact Euclid over Q[i]."""
    full = f.full()
    a = full
    b = [c * j for j, c in enumerate(full)][1:]
    while b:
        a, b = b, _poly_rem(a, b)
    return len(a) == 1


@dataclass
class SeedCertificate:
    """Certified seeds, sorted by ``(re, im)``, with pairwise disjoint discs.

    ``margin`` is the extra gap enforced between the discs of radius
    ``disc_radius``; ``precision_floor`` is the coefficient precision of the
    truncation they were certified for.
    """

    seeds: list[tuple[GaussianRational, KantorovichCertificate]]
    precision_floor: int = 0
    margin: Fraction = Fraction(0)

    def __len__(self):
        return len(self.seeds)

    def center(self, i: int) -> GaussianRational:
        return self.seeds[i][0]

    def radius(self, i: int) -> Fraction:
        return self.seeds[i][1].disc_radius

    def discs_disjoint(self, use_t_star: bool = False) -> bool:
        for i in range(len(self.seeds)):
            for j in range(i + 1, len(self.seeds)):
                ci, cj = self.seeds[i][1], self.seeds[j][1]
                if use_t_star:
                    reach = ci.t_star_upper + cj.t_star_upper
                else:
                    reach = ci.disc_radius + cj.disc_radius + self.margin
                if (ci.zeta - cj.zeta).abs2() <= reach ** 2:
                    return False
        return True

    def nearest(self, z) -> int:
        z = _gr(z)
        return min(range(len(self.seeds)), key=lambda i: (self.seeds[i][0] - z).abs2())

    def dump(self) -> str:
        return "\n".join(cert.dump() for _, cert in self.seeds)


def _mpf_to_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    man, exp = x.man_exp  # man carries no sign
    q = Fraction(int(man) << exp) if exp >= 0 else Fraction(int(man), 1 << -exp)
    return -q if x < 0 else q


def _heuristic_roots(f: RationalPolynomial, dps: int | None) -> list[GaussianRational] | None:
    if dps is None:
        coeffs = [complex(c) for c in reversed(f.full())]
        if not all(np.isfinite([z.real for z in coeffs] + [z.imag for z in coeffs])):
            return None
        with np.errstate(all="ignore"):
            roots = np.roots(coeffs)
        if len(roots) != f.degree or not np.all(np.isfinite(roots)):
            return None
        return [GaussianRational(Fraction(float(z.real)), Fraction(float(z.imag))) for z in roots]
    bits = int(dps * 3.33) + 8
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                             mpmath.mpf(c.im.numerator) / c.im.denominator)
                  for c in reversed(f.full())]
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=50 + 4 * dps, extraprec=2 * dps,
                                     cleanup=True)
        except mpmath.libmp.NoConvergence:
            roots, _ = mpmath.polyroots(coeffs, maxsteps=50 + 4 * dps, extraprec=2 * dps,
                                        error=True)
        out = []
        for z in roots:
            z = mpmath.mpc(z)
            out.append(GaussianRational(dyadic_round(_mpf_to_fraction(z.real), bits),
                                        dyadic_round(_mpf_to_fraction(z.imag), bits)))
        return out


class _SeedFailure(Exception):
    def __init__(self, reason: str, definitive: bool = False):
        super().__init__(reason)
        self.definitive = definitive


def _round_radius(r: Fraction) -> Fraction:
    # largest power of two not above r keeps the certificate numbers short
    if r <= 0:
        return r
    e = r.numerator.bit_length() - r.denominator.bit_length()
    p = Fraction(2) ** e
    while p > r:
        p /= 2
    while 2 * p <= r:
        p *= 2
    return p


def _certify_one(f: RationalPolynomial, zeta: GaussianRational, r: Fraction):
    last = None
    for _ in range(12):
        cert = kantorovich_certify(f, zeta, r)
        if cert:
            return cert
        last = cert
        if cert.reason != "h-too-large":
            break
        r /= 4
    return last


def _certify_all(f: RationalPolynomial, cands: list[GaussianRational],
                 margin: Fraction) -> list[tuple[GaussianRational, KantorovichCertificate]]:
    n = len(cands)
    d2 = [[(cands[i] - cands[j]).abs2() for j in range(n)] for i in range(n)]
    radii = []
    for i in range(n):
        others = [d2[i][j] for j in range(n) if j != i]
        if not others:
            radii.append(max(Fraction(1), _round_radius(sqrt_upper(cands[i].abs2(), 1))))
            continue
        s = sqrt_lower(min(others), ENCLOSURE_TOL)
        if s <= margin:
            j = min((j for j in range(n) if j != i), key=lambda j: d2[i][j])
            close = s / 3
            if close > 0 and kantorovich_certify(f, cands[i], close) \
                    and kantorovich_certify(f, cands[j], close):
                raise _SeedFailure("two certified roots closer than the separation margin",
                                   definitive=True)
            raise _SeedFailure("candidates closer than the separation margin")
        radii.append(_round_radius((s - margin) / 3))
    seeds = []
    for zeta, r in zip(cands, radii):
        cert = _certify_one(f, zeta, r)
        if not cert:
            raise _SeedFailure(f"certification rejected: {cert.reason} {cert.detail}")
        seeds.append((zeta, cert))
    sc = SeedCertificate(seeds, margin=margin)
    if not sc.discs_disjoint():
        raise _SeedFailure("certified discs overlap")
    return seeds


def find_seeds(f: RationalPolynomial, *, margin=0, precision_floor: int = 0,
               ladder: Sequence[int | None] = DPS_LADDER) -> SeedCertificate:
    """Certified Newton seeds for every root of a squarefree ``f``.

    Candidates come from a floating-point heuristic (companion-matrix
    eigenvalues, then Durand-Kerner at rising working precision); each is
    accepted only through :func:`kantorovich_certify` in exact arithmetic.
    Discs of radius ``disc_radius`` are kept ``margin`` apart.
    """
    margin = as_fraction(margin)
    if not is_squarefree(f):
        raise NotSquarefree(f"{f} has a repeated root")
    if f.degree == 1:
        zeta = -f.coeffs[0]
        cert = kantorovich_certify(f, zeta, 1)
        return SeedCertificate([(zeta, cert)], precision_floor, margin)
    reason = "no candidates"
    for dps in ladder:
        cands = _heuristic_roots(f, dps)
        if cands is None:
            continue
        try:
            seeds = _certify_all(f, cands, margin)
        except _SeedFailure as exc:
            reason = str(exc)
            log.debug("seed search at dps=%s failed: %s", dps, reason)
            if exc.definitive:
                break
            continue
        seeds.sort(key=lambda s: (s[0].re, s[0].im))
        return SeedCertificate(seeds, precision_floor, margin)
    raise PrecisionExhausted(f"seed search failed: {reason}")


def _seed_ladder(f: Polynomial, start: int) -> SeedCertificate:
    """Seeds certified for a truncation at precision ``mt``, with margin ``2/mt``.

    Truncated roots lie within ``1/mt`` of the exact ones, so a double root
    always splits into two truncated roots at most ``2/mt`` apart and can
    never pass the margin test.
    """
    mt = start
    reason = ""
    for _ in range(SEED_LADDER_DEPTH):
        ft, _ = f.truncation(mt)
        try:
            return find_seeds(ft, margin=Fraction(2, mt), precision_floor=mt)
        except PrecisionExhausted as exc:
            reason = str(exc)
            log.debug("seed ladder at precision %d failed: %s", mt, reason)
        mt *= SEED_PRECISION_STEP
    raise PrecisionExhausted(
        f"no certified seeds up to coefficient precision {mt // SEED_PRECISION_STEP}: {reason}")


# --------------------------------------------------------------------------
# the root operator
# --------------------------------------------------------------------------

def root_number(f: Polynomial, which: int | None = None, hint=None) -> PTCNumber:
    """The root of ``f`` selected by seed index ``which`` or nearest to ``hint``.

    Rational approximations at ``M``: truncate at ``max(2M, floor)``, re-check
    the seed's certificate, and refine to ``1/(2M)``; the two halves sum to
    ``1/M``.  Seeds are resolved on first evaluation.
    """
    if not isinstance(f, Polynomial):
        f = Polynomial(f)
    if which is None and hint is None:
        which = 0
    state: dict = {}
    lock = threading.Lock()

    def select() -> tuple[GaussianRational, Fraction, int]:
        with lock:
            if "zeta" not in state:
                sc = f.seed_certificate()
                idx = sc.nearest(hint) if hint is not None else which
                if not 0 <= idx < len(sc):
                    raise IndexError(f"seed index {idx} out of range for {len(sc)} roots")
                state.update(zeta=sc.center(idx), r=sc.radius(idx), floor=sc.precision_floor)
            return state["zeta"], state["r"], state["floor"]

    def R(M):
        zeta, r, floor = select()
        mt = max(2 * M, floor)
        ft, _ = f.truncation(mt)
        cert = kantorovich_certify(ft, zeta, r)
        if not cert:
            zeta, r = _reselect(f, zeta, r, mt)
            cert = kantorovich_certify(ft, zeta, r)
            if not cert:
                raise PrecisionExhausted(f"seed lost its certificate at precision {mt}")
        counter = active_counter()
        if counter is not None:
            counter.certificates.append(cert)
        return newton_refine(ft, cert, 2 * M).final

    label = f"root[{which if hint is None else hint}]({f!r})"
    return from_rational_oracle(R, label=label)


def _reselect(f: Polynomial, zeta, r, mt):
    sc = f.refresh_seeds(mt)
    idx = sc.nearest(zeta)
    log.info("re-seeded root near %s at precision %d", zeta, mt)
    return sc.center(idx), sc.radius(idx)
