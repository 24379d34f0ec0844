from fractions import Fraction as F

import mpmath
import pytest

from hyperforms.ball import evaluate_form
from hyperforms.linforms import (ConstantLinearForm, UnsupportedResidueError, alternating_block, beta_odd,
                                 euler_number, hurwitz_block, zeta_even_over_pi)

Q, H, T = F(1, 4), F(1, 2), F(3, 4)


def _mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


@pytest.mark.parametrize("i", [2, 3, 4, 5, 7])
@pytest.mark.parametrize("f", [F(1), H])
def test_hurwitz_block_against_mpmath(i, f):
    with mpmath.workdps(70):
        assert evaluate_form(hurwitz_block(i, f), 40).contains(mpmath.zeta(i, _mp(f)))


@pytest.mark.parametrize("i", [2, 3, 5])
@pytest.mark.parametrize("f", [Q, T])
def test_hurwitz_quarter_against_mpmath(i, f):
    with mpmath.workdps(70):
        assert evaluate_form(hurwitz_block(i, f), 40).contains(mpmath.zeta(i, _mp(f)))


@pytest.mark.parametrize("f", [F(1), H, Q, T])
def test_hurwitz_order_one_is_digamma(f):
    with mpmath.workdps(70):
        ref = -mpmath.digamma(_mp(f)) - mpmath.euler
        assert evaluate_form(hurwitz_block(1, f), 40).contains(ref)


def test_quarter_even_order_needs_beta():
    with pytest.raises(UnsupportedResidueError):
        hurwitz_block(4, Q)


def _alt(i, f):
    # sum (-1)^j (j+f)^-i = 2^-i (zeta(i, f/2) - zeta(i, (f+1)/2))
    f = _mp(f)
    if i == 1:
        return (mpmath.digamma((f + 1) / 2) - mpmath.digamma(f / 2)) / 2
    return (mpmath.zeta(i, f / 2) - mpmath.zeta(i, (f + 1) / 2)) / 2 ** i


@pytest.mark.parametrize("i, f", [(1, F(1)), (2, F(1)), (3, F(1)), (6, F(1)), (1, H), (2, H), (3, H), (5, H)])
def test_alternating_block_against_mpmath(i, f):
    with mpmath.workdps(70):
        assert evaluate_form(alternating_block(i, f), 40).contains(_alt(i, f))


def test_euler_numbers():
    assert [euler_number(k) for k in range(0, 11, 2)] == [1, -1, 5, -61, 1385, -50521]


def test_beta_three():
    # beta(3) = pi^3 / 32
    assert beta_odd(3) == F(1, 32)


def test_zeta_even_over_pi():
    assert zeta_even_over_pi(2) == F(1, 6)
    assert zeta_even_over_pi(4) == F(1, 90)


def test_form_algebra_and_json():
    a = ConstantLinearForm({"one": 1, "zeta(3)": F(1, 2)})
    b = ConstantLinearForm({"zeta(3)": F(-1, 2), "G": 2})
    s = a + b
    assert s.labels() == ["one", "G"]
    assert (a - a).is_zero()
    assert ConstantLinearForm.from_json(s.to_json()) == s
    assert (s * 3)["G"] == 6


def test_to_pi_basis():
    f = ConstantLinearForm({"zeta(2)": 6, "zeta(4)": 90, "zeta(3)": 1})
    g = f.to_pi_basis()
    assert g["pi2"] == 1 and g["pi4"] == 1 and g["zeta(3)"] == 1
    assert g.restricted_to(["pi2", "pi4"]) == ["zeta(3)"]
