from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acslab.obstructions import (ChernNumbers, Dim4Invariants, ObstructionError, degenerate_codim,
                                 dim4_value, four_mfd_classify, jet_min_k, mni_necessary_dim4,
                                 mni_necessary_dim6, mni_necessary_dim8, signature_dim8)

ints = st.integers(-200, 200)


def test_dim4_examples():
    assert mni_necessary_dim4(0, 0)
    assert not mni_necessary_dim4(3, 1) and dim4_value(3, 1) == 21
    assert not mni_necessary_dim4(24, -16) and dim4_value(24, -16) == 24


def test_dim6_examples():
    assert mni_necessary_dim6(ChernNumbers(3, 0, 0, 17))["pass"]
    r = mni_necessary_dim6(ChernNumbers(3, 8, 4, 0))
    assert not any(r["checks"].values())
    r = mni_necessary_dim6(ChernNumbers(3, 0, 2, 0))
    assert r["checks"] == {"c1^3 = 0": True, "c1c2 = 0": False}
    assert "class-level" in r["note"]


def test_dim8_examples():
    z = mni_necessary_dim8(ChernNumbers(4))
    assert z["pass"] and z["sigma"] == "0" and z["chi_div6"]
    x = mni_necessary_dim8(ChernNumbers(4, c2sq=45, c4=6))
    assert x["check1"] and not x["check2"] and not x["pass"]
    assert signature_dim8(ChernNumbers(4, c2sq=45, c4=6)) == Fraction(135 + 84, 45)
    assert not x["sigma_integral"]
    y = mni_necessary_dim8(ChernNumbers(4, c1p4=1, c4=0))
    assert not y["derived_c4"]


@given(ints, ints)
def test_dim8_checks_force_derived_relation(a, b):
    # check1 and check2 pin c1c3 and c4 in terms of c1^4 and c1^2 c2
    c1c3 = -8 * a - b
    c4 = c1c3 - b
    r = mni_necessary_dim8(ChernNumbers(4, c1p4=a, c1sq_c2=b, c1c3=c1c3, c4=c4))
    assert r["check1"] and r["check2"]
    assert r["derived_c4"] and c4 % 2 == 0


def test_four_manifold_examples():
    v = four_mfd_classify(Dim4Invariants(0, 0, 0, 0))
    assert v["condC"] and v["case_used"] == "b2-zero" and v["condB"] is None
    cp2 = Dim4Invariants(3, 1, 1, 0)
    assert cp2.definiteness == "positive-definite"
    v = four_mfd_classify(cp2, admits_acs_known=False)
    assert not v["condC"] and v["condB"] is False and v["agree"]
    # 5*chi + 6*sigma = 0 with sigma = 10, which is 2 mod 4
    v = four_mfd_classify(Dim4Invariants(-12, 10, 12, 2))
    assert v["value_5chi_6sigma"] == 0 and not v["condC"] and v["case_used"] == "indefinite"


def test_four_manifold_cases_and_errors():
    assert four_mfd_classify(Dim4Invariants(-24, 20, 20, 0))["case_used"] is None
    assert four_mfd_classify(Dim4Invariants(12, -10, 0, 10))["case_used"] == "negative-definite"
    with pytest.raises(ObstructionError):
        Dim4Invariants(0, 1, 0, 0)
    with pytest.raises(ObstructionError):
        Dim4Invariants(0, 0, 1, 1, "positive-definite")
    with pytest.raises(ObstructionError):
        Dim4Invariants(0, 0, -1, -1)


@given(st.integers(-60, 60), st.integers(0, 30), st.integers(0, 30), st.booleans())
def test_condb_implies_sigma_divisible_by_four(chi, bp, bm, admits):
    inv = Dim4Invariants(chi, bp - bm, bp, bm)
    v = four_mfd_classify(inv, admits)
    if v["condB"] and v["condC"]:
        assert inv.sigma % 4 == 0
    if v["condC"]:
        assert v["value_5chi_6sigma"] == 0


def test_codim_examples():
    assert degenerate_codim(5) == {"n": 5, "codim": 6, "margin": "1", "margin_positive": True}
    r = degenerate_codim(4)
    assert r["codim"] == 3 and r["margin"] == "-1" and not r["margin_positive"]
    assert degenerate_codim(2)["codim"] == 0
    with pytest.raises(ObstructionError):
        degenerate_codim(1)


def test_codim_properties():
    for n in range(2, 60):
        r = degenerate_codim(n)
        assert r["margin_positive"] == (n >= 5)
        assert (r["codim"] >= 1) == (n >= 3)


def test_jet_examples():
    got = [(jet_min_k(n)["k"], jet_min_k(n)["lhs"], jet_min_k(n)["rhs"]) for n in (3, 4, 5)]
    assert got == [(6, 252, 240), (4, 280, 252), (3, 280, 252)]
    with pytest.raises(ObstructionError):
        jet_min_k(2)


def test_jet_threshold_closed_form():
    for n in range(3, 60):
        t = Fraction(n + 2, n - 2)
        k = jet_min_k(n)["k"]
        assert k > t and k - 1 <= t
