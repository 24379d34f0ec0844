from collections import Counter
from fractions import Fraction as F

import pytest

from hyperforms import sequences
from hyperforms.ball import pi_power
from hyperforms.hyper import PfqSpec, eval_pfq
from hyperforms.identities import (IDENTITIES, InadmissibleError, admissibility, chain_check, get_identity,
                                   sample_points, sweep, verify_identity)

H = F(1, 2)


def test_catalan_identity_point():
    assert verify_identity("TH_CAT", {"n": 1, "c": F(3, 2), "d": F(5, 2)}, 40).passed


def test_catalan_identity_specialises_to_both_families():
    n = 1
    p = {"n": F(n), "c": n + H, "d": n + H}
    ident = get_identity("TH_CAT")
    lhs, rhs = ident.lhs(p), ident.rhs(p)
    r_side = sequences.get_family("CATALAN_R").series(n)
    w_side = sequences.get_family("CATALAN_WT").series(n)
    # same series on each side, different Gamma normalisations
    assert Counter(lhs.upper) == Counter(r_side.upper) and Counter(lhs.lower) == Counter(r_side.lower)
    assert Counter(rhs.upper) == Counter(w_side.upper) and Counter(rhs.lower) == Counter(w_side.lower)
    rep = verify_identity(ident, p, 50)
    assert rep.passed
    pref = r_side.prefactor()
    scaled = rep.lhs * pi_power(pref.half_pi_exponent, 50) * pref.coeff
    assert scaled.overlaps(sequences.direct_sum("CATALAN_WT", n, 50))


def test_apery_like_identity_rhs_is_plain_3f2():
    rep = verify_identity("EQ_2N1_4N2", {"n": 1}, 40)
    assert rep.passed
    assert rep.rhs.overlaps(eval_pfq(PfqSpec((3, 3, 3), (6, 6), 1), 40))


@pytest.mark.parametrize("n", range(4))
def test_pi2_identity_diagonal_matches_apery_like(n):
    a = verify_identity("TH_PI2", {"a": 2 * n + 1, "b": 2 * n + 1, "c": 2 * n + 1}, 40)
    b = verify_identity("EQ_2N1_4N2", {"n": n}, 40)
    assert a.passed and b.passed
    assert a.lhs.overlaps(b.lhs) or a.lhs.overlaps(b.rhs)


def test_log2_sweep_25_points():
    ranges = {"x": (H, 8), "a": (H, 8), "b": (H, 8)}
    res = sweep("TH_LN2", 25, 40, seed=3, ranges=ranges)
    assert len(res.reports) == 25 and res.all_pass


def test_vwp_sweep_10_points():
    res = sweep("T7635", 10, 30, seed=5)
    assert len(res.reports) == 10 and res.all_pass


def test_samples_are_deterministic():
    a = sample_points("T3240", 8, seed=11)
    b = sample_points("T3240", 8, seed=11)
    assert a == b
    c = sample_points("T3240", 8, seed=12)
    assert a[0] != c[0]


def test_sample_points_are_admissible():
    for name in IDENTITIES:
        pts, _, _ = sample_points(name, 5, seed=2)
        assert pts, name
        for p in pts:
            assert admissibility(name, p) is None


def test_refusals():
    # off-lattice parameter
    assert admissibility("TH_LN2", {"x": F(1, 3), "a": 1, "b": 2})[0].startswith("x on lattice")
    # third-integer would be rejected by the lattice too
    with pytest.raises(InadmissibleError):
        verify_identity("TH_CAT", {"n": 1, "c": F(1, 3), "d": 1}, 30)
    prob = admissibility("EQ_3F2_7F6", {"a": 1, "b": 1, "c": H, "d": 1})
    assert prob is not None and "c+d" in prob[0]


def test_unknown_identity():
    with pytest.raises(KeyError):
        get_identity("bogus")


def test_aliases():
    assert get_identity("th-cat").name == "TH_CAT"
    assert get_identity("t7635").name == "T7635"


def test_chain_consistency():
    pts, _, _ = sample_points("EQ_3F2_7F6", 2, seed=4)
    for p in pts:
        rep = chain_check(p, 30)
        assert rep.passed, rep.to_json()


def test_report_json():
    d = verify_identity("TH_LN2", {"x": 1, "a": 1, "b": 2}, 30).to_json()
    assert d["pass"] is True and d["params"]["x"] == "1/1"
