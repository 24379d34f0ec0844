from fractions import Fraction as F
import math
import time

import mpmath
import pytest

from hyperforms import ball
from hyperforms.ball import BallReal, const_eval, evaluate_form
from hyperforms.exact import bernoulli
from hyperforms.linforms import ConstantLinearForm
from hyperforms.zetaforms import (P_ball, ZetaFormSpec, asymptotics, build_R, coefficients, direct_value,
                                  integrality_check, kappa_from_forms, root_enclosure, theorem_coefficients,
                                  vanishing_points, zeta_form)

VARIANTS = [("R", False), ("R", True), ("WT", False), ("WT", True)]


def mp_value(spec, dps=60):
    """mpmath oracle: sum R(nu-1/2) or -R'(nu-1/2) from the factored function."""
    R = build_R(spec)

    def mpq(q):
        return mpmath.mpf(q.numerator) / q.denominator

    with mpmath.workdps(dps):
        def f(t):
            v = mpq(R.scalar)
            for r, m in R.numerator.items():
                v *= (t - mpq(r)) ** m
            for r, m in R.denominator.items():
                v /= (t - mpq(r)) ** m
            return v

        def term(nu):
            t = nu - mpmath.mpf(1) / 2
            return -mpmath.diff(f, t) if spec.derivative else f(t)
        return mpmath.nsum(term, [1, mpmath.inf])


def test_spec_validation():
    with pytest.raises(ValueError):
        ZetaFormSpec(7, 1)
    with pytest.raises(ValueError):
        ZetaFormSpec(6, 1)
    with pytest.raises(ValueError):
        ZetaFormSpec(8, 1, "X")
    assert ZetaFormSpec(8, 2).degree_drop() == 11
    assert ZetaFormSpec(8, 2, "WT").degree_drop() == 12


def test_n0_reduces_to_power():
    R = build_R(ZetaFormSpec(8, 0))
    for t in (F(1), F(3, 2), F(-7, 3)):
        assert R(t) == 2 / t ** 7
    assert zeta_form(ZetaFormSpec(8, 0)) == ConstantLinearForm({"zeta(7)": 254})


@pytest.mark.parametrize("s", [8, 10, 12])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_vanishing_clause(s, n):
    pts = vanishing_points(n)
    assert len(pts) == 3 * n
    for variant in ("R", "WT"):
        R = build_R(ZetaFormSpec(s, n, variant))
        for t in pts:
            assert R(t) == 0 and R.derivative_at(t) == 0


def test_vanishing_at_minus_half():
    R = build_R(ZetaFormSpec(8, 1, "WT"))
    assert R(F(-1, 2)) == 0 and R.derivative_at(F(-1, 2)) == 0


def test_symmetry_about_centre():
    for n in (1, 2, 3):
        R = build_R(ZetaFormSpec(8, n, "R"))
        W = build_R(ZetaFormSpec(8, n, "WT"))
        for t in (F(1, 3), F(5, 7), F(11, 2)):
            u = -n - t
            assert R(u) == -R(t) and W(u) == W(t)


@pytest.mark.parametrize("s", [8, 10])
@pytest.mark.parametrize("n", range(5))
def test_parity(s, n):
    for variant, deriv in VARIANTS:
        form = zeta_form(ZetaFormSpec(s, n, variant, deriv))
        odd_wanted = (variant == "R") != deriv
        for lab in form.labels():
            if lab == "one":
                assert (variant == "R" and not deriv) or (variant == "WT" and deriv)
            else:
                assert lab.startswith("zeta(")
                assert (int(lab[5:-1]) % 2 == 1) == odd_wanted


@pytest.mark.parametrize("variant, deriv", VARIANTS)
def test_against_mpmath(variant, deriv):
    spec = ZetaFormSpec(8, 1, variant, deriv)
    b = evaluate_form(zeta_form(spec), 45)
    ref = mp_value(spec)
    with mpmath.workdps(60):
        assert abs(ref - mpmath.mpf(b.mid)) < mpmath.mpf(10) ** -40 * max(1, abs(ref))


@pytest.mark.parametrize("n", range(5))
def test_oracle_equivalence(n):
    for variant, deriv in VARIANTS:
        spec = ZetaFormSpec(8, n, variant, deriv)
        assert evaluate_form(zeta_form(spec), 40).overlaps(direct_value(spec, 40))


@pytest.mark.parametrize("n", [2, 3])
def test_extending_start_changes_nothing(n):
    for variant, deriv in VARIANTS:
        spec = ZetaFormSpec(8, n, variant, deriv)
        assert direct_value(spec, 40, start=-(n - 1)).overlaps(direct_value(spec, 40))


@pytest.mark.parametrize("n", range(5))
def test_integrality(n):
    rep = integrality_check(8, n)
    assert rep.passed
    assert len(rep.items) == 2 * 8


def test_integrality_n0_trivial():
    rep = integrality_check(8, 0)
    assert rep.d_n == 1 and rep.passed
    co = coefficients(8, 0, "R")
    assert co["a"][7] == 2 and co["a0"] == 0


def test_ahat0_needs_extra_power():
    # d^s suffices for small n, but n = 5 really needs d^(s+1)
    for n in range(1, 6):
        d = math.lcm(*range(1, n + 1))
        a0 = coefficients(8, n, "WT")["a0"]
        assert (a0 * d ** 9).denominator == 1
        assert ((a0 * d ** 8).denominator == 1) == (n < 5)


def test_root_enclosures():
    for s, which in [(8, "positive"), (8, "negative"), (40, "negative")]:
        lo, hi = root_enclosure(s, which, 40)
        assert hi - lo <= F(1, 10 ** 37)
        x = BallReal.from_fraction((lo + hi) / 2, (hi - lo) / 2, 50)
        assert P_ball(s, x).contains_zero()
        assert (lo > 0) if which == "positive" else (-1 < lo < hi < 0)


def test_asymptotics_s8():
    res = asymptotics(8, 40)
    assert res.x0.is_positive() and res.separated


@pytest.mark.parametrize("s, g0, g1", [(40, "-40.54232882", "-40.54234026"),
                                       (42, "-43.31492040", "-43.31492612")])
def test_asymptotics_published(s, g0, g1):
    t = time.time()
    res = asymptotics(s, 60)
    assert time.time() - t < 10
    tol = F(1, 10 ** 7)
    assert res.ln_g_x0.distance(BallReal.exact(F(g0), 60)) <= tol
    assert res.ln_g_x0p.distance(BallReal.exact(F(g1), 60)) <= tol
    assert res.separated
    assert res.ln_g_x0.rad_le(F(1, 10 ** 50))


def test_growth_trend():
    target = float(asymptotics(8, 30).ln_g_x0.mid)
    seq = []
    for n in range(4, 11):
        v = direct_value(ZetaFormSpec(8, n), 30)
        seq.append(float(ball.ln(abs(v)).mid) / n)
    assert all(a < b for a, b in zip(seq, seq[1:]))
    assert all(x < target for x in seq)


def test_kappa_values():
    assert theorem_coefficients(1, 1).kappa == F(1, 14)
    assert theorem_coefficients(1, 2).kappa == F(1, 7)
    assert theorem_coefficients(19, 1).listed and not theorem_coefficients(20, 1).listed
    assert theorem_coefficients(21, 2).listed
    with pytest.raises(ValueError):
        theorem_coefficients(22, 1)
    with pytest.raises(ValueError):
        theorem_coefficients(1, 3)


@pytest.mark.parametrize("m", range(1, 22))
def test_kappa_positive_and_rederived(m):
    k1 = theorem_coefficients(m, 1).kappa
    assert k1 > 0 and theorem_coefficients(m, 2).kappa > 0
    assert kappa_from_forms(m) == k1


@pytest.mark.parametrize("m", range(1, 7))
def test_bernoulli_zeta_ball(m):
    q = F(2 ** (2 * m - 1)) * abs(bernoulli(2 * m)) / math.factorial(2 * m)
    val = const_eval(f"zeta({2 * m})", 40) / ball.pow_int(const_eval("pi", 40), 2 * m)
    assert val.contains(q)
    assert val.rad_le(F(1, 10 ** 38))
