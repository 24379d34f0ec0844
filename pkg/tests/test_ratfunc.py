from fractions import Fraction as F
import random

import mpmath
import pytest
from hypothesis import given, strategies as st

from hyperforms.ball import evaluate_form
from hyperforms.hyper import sum_rational_series
from hyperforms.ratfunc import (DivergentSumError, FactoredRationalFunction, PartialFractionExpansion,
                                PoleOnGridError, analyze_symmetry, derivative, lemma_linear_form,
                                partial_fractions, poly_eval, poly_from_roots, poly_shift, sum_linear_form)
from hyperforms.zetaforms import ZetaFormSpec, build_R

H = F(1, 2)


def pfe(terms):
    return PartialFractionExpansion({(F(c), i): F(a) for (c, i), a in terms.items()}, ())


def test_partial_fractions_telescoping():
    R = FactoredRationalFunction(1, {}, {F(0): 1, F(-1): 1})
    assert partial_fractions(R).terms == {(F(0), 1): 1, (F(-1), 1): -1}


def test_partial_fractions_double():
    R = FactoredRationalFunction(2, {F(-1, 2): 1}, {F(0): 2, F(-1): 2})
    assert partial_fractions(R).terms == {(F(0), 2): 1, (F(-1), 2): -1}


def test_improper_rejected():
    with pytest.raises(ValueError):
        partial_fractions(FactoredRationalFunction(1, {F(1): 2}, {F(0): 1}))


small = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@given(st.dictionaries(small, st.integers(1, 4), min_size=1, max_size=6),
       st.dictionaries(small, st.integers(1, 3), max_size=4),
       st.fractions(min_value=-20, max_value=20, max_denominator=50).filter(lambda x: x != 0),
       st.randoms(use_true_random=False))
def test_partial_fraction_recombination(den, num, scalar, rnd):
    R = FactoredRationalFunction(scalar, num, den)
    if not R.is_proper():
        return
    pf = partial_fractions(R)
    for _ in range(20):
        t = F(rnd.randint(-300, 300), rnd.randint(1, 37))
        if t in R.poles():
            continue
        assert pf.evaluate(t) == R(t)


def test_cancellation_of_common_roots():
    R = FactoredRationalFunction(1, {F(2): 1}, {F(2): 2, F(0): 1})
    assert R.denominator == {F(2): 1, F(0): 1} and not R.numerator


def test_shift_and_polynomials():
    a = poly_from_roots({F(1): 1, F(-2): 1})
    assert poly_eval(poly_shift(a, 3), F(5)) == poly_eval(a, F(8))


def test_derivative_rule():
    assert derivative(pfe({(0, 1): 1})).terms == {(F(0), 2): -1}
    assert derivative(pfe({(0, 2): 1, (-1, 2): -1})).terms == {(F(0), 3): -2, (F(-1), 3): 2}


@given(st.fractions(min_value=F(1, 3), max_value=9, max_denominator=7))
def test_derivative_matches_difference_quotient_bound(t):
    R = FactoredRationalFunction(3, {F(1, 2): 1}, {F(0): 2, F(-1): 3})
    pf = partial_fractions(R)
    assert derivative(pf).evaluate(t) == R.derivative_at(t)


# -- symmetry ------------------------------------------------------------------

def test_symmetry_example():
    rep = analyze_symmetry(pfe({(0, 2): 1, (-1, 2): 1}), 1)
    assert rep.verified and rep.a == {2: 2} and rep.a0 == 4


def test_symmetry_violation():
    rep = analyze_symmetry(pfe({(0, 2): 1, (-1, 2): 2}), 1)
    assert not rep.verified and rep.counterexample is not None


def test_symmetry_of_even_zeta_function():
    pf = partial_fractions(build_R(ZetaFormSpec(8, 1, "WT")))
    rep = analyze_symmetry(pf, 1)
    assert rep.verified and rep.sign == 1
    assert all(v == 0 for i, v in rep.a.items() if i % 2)


def test_antisymmetric_detected():
    pf = partial_fractions(build_R(ZetaFormSpec(8, 2, "R")))
    rep = analyze_symmetry(pf, 2)
    assert rep.sign == -1 and rep.verified
    assert all(v == 0 for i, v in rep.a.items() if i % 2 == 0)


# -- summation -----------------------------------------------------------------

def test_sum_zeta2_half_grid():
    assert sum_linear_form(pfe({(0, 2): 1}), -H, 1).to_json() == {"basis": ["zeta(2)"], "coeffs": ["3/1"]}


def test_sum_alternating_log2():
    # sum_{t>=0} (-1)^t / (t+1)
    assert sum_linear_form(pfe({(-1, 1): 1}), 0, 0, True).to_json() == {"basis": ["log2"], "coeffs": ["1/1"]}


def test_sum_quarter_catalan():
    # sum_{t>=0} 1/(t+1/4)^2 - 1/(t+3/4)^2 = 16 G
    form = sum_linear_form(pfe({(F(-1, 4), 2): 1, (F(-3, 4), 2): -1}), 0, 0)
    assert form.to_json() == {"basis": ["G"], "coeffs": ["16/1"]}


def test_sum_telescoping_rational():
    # sum_{t>=1} 1/(t^2 (t+1)^2) = pi^2/3 - 3
    pf = partial_fractions(FactoredRationalFunction(1, {}, {F(0): 2, F(-1): 2}))
    form = sum_linear_form(pf, 0, 1).to_pi_basis()
    assert form["pi2"] == F(1, 3) and form["one"] == -3


def test_divergent_and_pole_errors():
    with pytest.raises(DivergentSumError):
        sum_linear_form(pfe({(0, 1): 1}), 0, 1)
    with pytest.raises(PoleOnGridError):
        sum_linear_form(pfe({(0, 2): 1}), 0, 0)


grid_pole = st.sampled_from([F(0), F(-1), F(-2), F(1, 2), F(-1, 2), F(-1, 4), F(-3, 4)])


@given(st.lists(st.tuples(grid_pole, st.integers(2, 4), st.integers(-5, 5)), min_size=1, max_size=5),
       st.lists(st.tuples(grid_pole, st.integers(-5, 5)), max_size=3))
def test_sum_matches_direct_summation(higher, simple):
    terms = {}
    for c, i, a in higher:
        if (c, i) not in (None,) and not (c.denominator == 4 and i % 2 == 0 and i > 2):
            terms[(c, i)] = terms.get((c, i), F(0)) + a
    # simple poles with zero total
    tot = F(0)
    for c, a in simple:
        terms[(c, 1)] = terms.get((c, 1), F(0)) + a
        tot += a
    if simple:
        c0 = simple[0][0]
        terms[(c0, 1)] -= tot
    terms = {k: v for k, v in terms.items() if v}
    if not terms:
        return
    pf = PartialFractionExpansion(terms, ())
    form = sum_linear_form(pf, 0, 3)
    direct = sum_rational_series(pf, 3, 0, False, 30)
    assert evaluate_form(form, 30).overlaps(direct)


def _random_symmetric(rnd: random.Random):
    n = rnd.randint(1, 5)
    shift = F(rnd.randint(-3, 3), rnd.choice([1, 2]))
    terms = {}
    for i in range(1, 7):
        for k in range(n + 1):
            if (i, n - k) in terms or rnd.random() < 0.3:
                continue
            a = F(rnd.randint(-9, 9), rnd.randint(1, 5))
            terms[(i, k)] = a
            terms[(i, n - k)] = a * (-1) ** i
            if k == n - k and i % 2:
                terms[(i, k)] = F(0)
    pf = PartialFractionExpansion({(shift - k, i): a for (i, k), a in terms.items() if a}, ())
    return pf, n, shift


def test_lemma_form_matches_direct_sum_random():
    rnd = random.Random(7)
    for _ in range(15):
        pf, n, shift = _random_symmetric(rnd)
        if not pf.terms:
            continue
        rep = analyze_symmetry(pf, n)
        assert rep.verified and rep.sign == 1
        m = (n - 1) // 2
        norm = pf.shifted(shift)
        direct = sum_rational_series(norm, -m, -H, False, 30)
        assert evaluate_form(lemma_linear_form(rep), 30).overlaps(direct)
