import random
from fractions import Fraction as F

import pytest

from ptcnum.closure import (
    CoefficientPrecisionPlan,
    KantorovichCertificate,
    NotSquarefree,
    Polynomial,
    PrecisionExhausted,
    RationalPolynomial,
    Reject,
    find_seeds,
    is_squarefree,
    kantorovich_certify,
    newton_refine,
    planned_steps,
    ostrowski_bound,
    root_number,
    truncate_coefficients,
)
from ptcnum.constants import pi
from ptcnum.core import const
from ptcnum.field import multiply, scale
from ptcnum.kernel import GaussianRational as G, counting, sqrt_upper
from ptcnum.reference import bisect_real_root, brute_force_roots, match_roots, reference_pi

X2_MINUS_2 = RationalPolynomial([-2, 0])


def test_rational_polynomial_basics():
    f = RationalPolynomial.from_roots([1, 2, G(0, 1)])
    assert f.degree == 3
    for r in (1, 2, G(0, 1)):
        assert f(r) == 0
    v, dv = X2_MINUS_2.eval_with_derivative(F(3, 2))
    assert (v, dv) == (G(F(1, 4)), G(3))
    assert str(X2_MINUS_2) == "x^2 + (-2)"
    with pytest.raises(ValueError):
        RationalPolynomial([])


def test_is_squarefree():
    assert is_squarefree(X2_MINUS_2)
    assert not is_squarefree(RationalPolynomial.from_roots([1, 1, 2]))
    assert not is_squarefree(RationalPolynomial.from_roots([G(1, 1), G(1, 1)]))
    assert is_squarefree(RationalPolynomial.from_roots([G(1, 1), G(1, -1)]))


def test_hand_certificate():
    cert = kantorovich_certify(X2_MINUS_2, F(3, 2), F(1, 2))
    assert isinstance(cert, KantorovichCertificate)
    assert (cert.a, cert.b, cert.L, cert.h) == (F(1, 3), F(1, 12), 2, F(1, 18))
    assert cert.error_bound_at(0) == cert.t_star_upper
    # t* = (3 - 2 sqrt 2)/2: upper enclosure, tight to 1e-12
    t = cert.t_star_upper
    assert (3 - 2 * t) ** 2 <= 8
    assert (3 - 2 * (t - F(1, 10 ** 12))) ** 2 >= 8
    assert cert.dump().startswith("zeta=3/2+0i a=1/3 b=1/12 L=2 h=1/18 t*=")


def test_rejections():
    assert kantorovich_certify(X2_MINUS_2, 0, 1) == Reject("derivative-zero")
    r = kantorovich_certify(X2_MINUS_2, F(1, 2), 1)
    assert not r and r.reason == "h-too-large"
    r = kantorovich_certify(X2_MINUS_2, F(3, 2), F(1, 100))
    assert not r and r.reason == "disc-too-small"
    with pytest.raises(ValueError):
        kantorovich_certify(X2_MINUS_2, 1, 0)


def test_linear_polynomial_certifies():
    f = RationalPolynomial([F(-1, 3)])
    cert = kantorovich_certify(f, 0, 1)
    assert cert and cert.contains(G(F(1, 3)))
    assert newton_refine(f, cert, 10 ** 9, exact=True).final == G(F(1, 3))
    run = newton_refine(f, cert, 10 ** 9)
    assert abs(run.final.re - F(1, 3)) <= run.final_error_bound <= F(1, 10 ** 9)


def test_newton_hand_case():
    cert = kantorovich_certify(X2_MINUS_2, F(3, 2), F(1, 2))
    run = newton_refine(X2_MINUS_2, cert, 10 ** 6, exact=True)
    assert run.iterates[:3] == [G(F(3, 2)), G(F(17, 12)), G(F(577, 408))]
    counts = [newton_refine(X2_MINUS_2, cert, 10 ** (2 ** j)).nu for j in range(5)]
    assert counts == [0, 1, 2, 3, 4]
    assert run.c0 is not None and run.c0 > 0
    with counting() as c:
        newton_refine(X2_MINUS_2, cert, 10 ** 16)
    assert c.newton_iterations == 4


def test_newton_iterates_obey_the_bound():
    cert = kantorovich_certify(X2_MINUS_2, F(3, 2), F(1, 2))
    run = newton_refine(X2_MINUS_2, cert, 10 ** 40, exact=True)
    for nu, rho in enumerate(run.iterates):
        # |rho - sqrt 2| <= bound  <=>  sqrt 2 in [rho - e, rho + e]
        e = run.error_bound_at(nu)
        lo, hi = rho.re - e, rho.re + e
        assert lo <= 0 or lo * lo <= 2
        assert hi * hi >= 2


def test_rounded_newton_is_proved_and_short():
    f = RationalPolynomial.from_roots([G(F(1, 3), 2), G(-1, 1), G(F(1, 3), F(-1, 5)), 3, G(0, -2)])
    cert = kantorovich_certify(f, G(F(3331, 10000), 2), F(1, 8))
    assert cert
    m = 10 ** 300
    run = newton_refine(f, cert, m)
    assert run.posterior is not None and run.posterior.t_star_upper <= F(1, m)
    assert run.nu == planned_steps(cert, m)
    assert all(cert.in_uniqueness_disc(rho) for rho in run.iterates)
    assert (run.final - G(F(1, 3), 2)).abs2() <= run.final_error_bound ** 2
    # iterates stay near the grid size instead of growing with every step
    assert run.final.bit_length() <= 4 * (m.bit_length() + 64)


def test_rounded_newton_exact_hit():
    f = RationalPolynomial([F(-1, 4), 0])
    cert = kantorovich_certify(f, F(3, 4), F(1, 2))
    run = newton_refine(f, cert, 10 ** 50)
    assert abs(run.final.re - F(1, 2)) <= F(1, 10 ** 50)


def test_ostrowski_bound_example():
    f = RationalPolynomial([-1, 0])
    g = RationalPolynomial([F(-101, 100), 0])
    ob = ostrowski_bound(f, g)
    assert ob.gamma >= 2
    m = match_roots([1, -1], brute_force_roots(g.coeffs)[0])
    assert m.max_distance <= ob.pairing_bound


def test_ostrowski_identical_polynomials():
    f = RationalPolynomial.from_roots([1, 2, 3])
    assert ostrowski_bound(f, f).pairing_bound == 0


def test_truncation_plan():
    p = pi()
    f = Polynomial([multiply(p, p), scale(p, -3), const(F(1, 2))])
    ft, plan = truncate_coefficients(f, 100)
    assert plan.k == CoefficientPrecisionPlan.budget(3, 100) == 2 ** 3 * 3 ** 4 * 100 ** 3
    assert plan.gamma_bar >= 1
    assert plan.eval_points[2] == 0  # exact constant used as is
    assert ft.coeffs[2] == G(F(1, 2))
    lo = reference_pi(100)
    assert abs(ft.coeffs[1].re + 3 * lo) <= plan.per_coeff_error[1] + F(3, 10 ** 100)


def test_find_seeds_random_products():
    rng = random.Random(3)
    for _ in range(20):
        deg = rng.randint(1, 5)
        roots = set()
        while len(roots) < deg:
            roots.add(G(F(rng.randint(-40, 40), 8), F(rng.randint(-40, 40), 8)))
        roots = sorted(roots, key=lambda z: (z.re, z.im))
        f = RationalPolynomial.from_roots(roots)
        sc = find_seeds(f)
        assert len(sc) == deg
        assert sc.discs_disjoint() and sc.discs_disjoint(use_t_star=True)
        centers = [sc.center(i) for i in range(deg)]
        assert centers == sorted(centers, key=lambda z: (z.re, z.im))
        for r in roots:
            assert sc.seeds[sc.nearest(r)][1].contains(r)
        assert len({sc.nearest(r) for r in roots}) == deg
        assert len(sc.dump().splitlines()) == deg


def test_find_seeds_rejects_repeated_roots():
    with pytest.raises(NotSquarefree):
        find_seeds(RationalPolynomial.from_roots([1, 1]))


def test_root_of_rational_polynomial():
    for which, sign in ((0, -1), (1, 1)):
        z = root_number(Polynomial([-2, 0]), which=which)
        for n in (1, 10, 10 ** 6, 10 ** 30):
            v = z.eval(n).re * sign
            assert (v - F(1, n)) ** 2 <= 2 or v - F(1, n) < 0
            assert (v + F(1, n)) ** 2 >= 2


def test_root_hint_selects_nearest():
    z = Polynomial([1, 0]).root(hint=G(0, -1))
    v = z.eval(10 ** 8)
    assert (v - G(0, -1)).abs2() <= F(1, 10 ** 16)


def test_root_with_computable_coefficients():
    # sqrt(pi) via root(x^2 - pi)
    z = root_number(Polynomial([scale(pi(), -1), 0]), which=1)
    lo = reference_pi(100)
    hi = lo + F(1, 10 ** 100)
    for n in (10, 10 ** 6, 10 ** 15):
        v = z.eval(n).re
        assert (v - F(1, n)) ** 2 <= lo and (v + F(1, n)) ** 2 >= hi


def test_root_contract_matches_bisection():
    z = Polynomial([-2, 0, 0]).root(hint=1)
    ref = bisect_real_root([-2, 0, 0, 1], 1, 2, F(1, 10 ** 40))
    for n in (10, 10 ** 9, 10 ** 20):
        assert abs(z.eval(n).re - ref) <= F(1, n) + F(1, 10 ** 40)


def test_double_root_exhausts():
    p = pi()
    f = Polynomial([multiply(p, p), scale(p, -2)])
    with pytest.raises(PrecisionExhausted):
        f.root().eval(10)


def test_seed_index_out_of_range():
    with pytest.raises(IndexError):
        root_number(Polynomial([-2, 0]), which=2).eval(1)
