import random

import pytest
import sympy

from _helpers import perturb_checks
from acslab.acmodel import abelian_lie, c2_example, kodaira_thurston, rotation_J
from acslab.fourcomplex import (ComplexError, FourComplex, betti, complex_from_dict, conjugate_complex,
                                conjugation_symmetric, diagram_maps, double_complex, frolicher,
                                from_left_invariant, h_aeppli, h_aeppli_double, h_bc, h_bc_double,
                                h_dbar_direct, h_derham, h_dol, h_dolbar, pairing, product_complex,
                                quotient_double, sub_double, verify_relations)
from acslab.fourcomplex.cohomology import composite
from acslab.paper import iwasawa, kt_nonintegrable
from acslab.randomize import random_ce_model, random_double_complex
from acslab.scalar import ONE


def dbar_line():
    """x at (0,0), y at (0,1), dbar x = y, everything else zero."""
    return double_complex({(0, 0): 1, (0, 1): 1}, dbar={(0, 0): [[1]]}, bound=1)


def single():
    return double_complex({(0, 0): 1}, bound=0)


def ce(m):
    return from_left_invariant(m)


def all_zero(A, name):
    return all(x == 0 for m in A.maps[name].values() for r in m for x in r)


# ------------------------------------------------------------ relations

def test_double_complex_relations_hold():
    rng = random.Random(0)
    for _ in range(10):
        assert verify_relations(random_double_complex(rng))[0]


def test_ce_complexes_satisfy_relations():
    rng = random.Random(1)
    for _ in range(10):
        assert verify_relations(ce(random_ce_model(rng)))[0]
    assert verify_relations(ce(iwasawa()))[0]


def test_random_matrices_fail_with_named_relation():
    A = FourComplex({(0, 0): 1, (0, 1): 1, (0, 2): 1},
                    {"dbar": {(0, 0): [[1]], (0, 1): [[1]]}}, bound=2)
    ok, bad = verify_relations(A)
    assert not ok
    assert bad == ("mubar del + del mubar + dbar^2", (0, 0))


def test_abelian_ce_is_zero():
    A = ce(abelian_lie(4))
    for name in ("mubar", "dbar", "del", "mu"):
        assert all_zero(A, name)


def test_kt_integrable_has_no_mu():
    A = ce(kodaira_thurston())
    assert all_zero(A, "mubar") and all_zero(A, "mu")
    assert not all_zero(A, "dbar")


def test_kt_nonintegrable_has_mubar():
    assert not all_zero(ce(kt_nonintegrable()), "mubar")


def test_non_constant_model_rejected():
    with pytest.raises(ComplexError):
        from_left_invariant(c2_example())


# ------------------------------------------------------------ Dolbeault

def test_dolbeault_small_cases():
    zero = FourComplex({}, {}, bound=0)
    assert h_dol(zero).to_json()["table"] == {}
    assert h_dol(single()).table.get((0, 0)) == 1


def test_mu_isomorphism_cancels():
    A = FourComplex({(0, 1): 1, (2, 0): 1}, {"mu": {(0, 1): [[1]]}}, bound=2)
    assert verify_relations(A)[0]
    assert sum(h_dolbar(A).table.values()) == 0


def test_double_complex_dol_is_dbar_cohomology():
    rng = random.Random(2)
    for _ in range(20):
        D = random_double_complex(rng)
        assert h_dol(D).table == h_dbar_direct(D).table


def test_dolbar_is_conjugate_of_dol():
    rng = random.Random(3)
    for A in [ce(random_ce_model(rng)) for _ in range(8)] + [ce(kt_nonintegrable()), ce(iwasawa())]:
        dol, dolbar = h_dol(A), h_dolbar(A)
        assert all(dolbar.get((q, p)) == d for (p, q), d in dol.table.items())
        assert h_dol(conjugate_complex(A)).table == {(q, p): d for (p, q), d in dolbar.table.items()}


# ------------------------------------------------------------ sub / quotient

def test_double_complex_sub_and_quotient_are_everything():
    rng = random.Random(4)
    for _ in range(10):
        D = random_double_complex(rng)
        assert sub_double(D).dims == D.dims == quotient_double(D).dims


def test_mubar_injective_kills_source():
    A = FourComplex({(1, 0): 1, (0, 2): 1}, {"mubar": {(1, 0): [[1]]}}, bound=2)
    assert verify_relations(A)[0]
    assert sub_double(A).dim(1, 0) == 0
    assert quotient_double(A).dim(0, 2) == 0


def _sym(m):
    return sympy.Matrix([[sympy.Rational(x.re.numerator, x.re.denominator)
                          + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator) for x in r] for r in m])


def _oracle_sub_dim(A, p, q):
    blocks = []
    for names in (("mubar",), ("mu",), ("dbar", "dbar"), ("del", "del")):
        m, _ = composite(A, names, p, q)
        if m:
            blocks.append(_sym(m))
    n = A.dim(p, q)
    if not blocks:
        return n
    return n - sympy.Matrix.vstack(*blocks).rank()


def _oracle_quot_dim(A, p, q):
    cols = []
    for names in (("mubar",), ("mu",), ("dbar", "dbar"), ("del", "del")):
        dp = sum({"mubar": -1, "mu": 2, "dbar": 0, "del": 1}[x] for x in names)
        dq = sum({"mubar": 2, "mu": -1, "dbar": 1, "del": 0}[x] for x in names)
        s = (p - dp, q - dq)
        if A.dim(*s):
            m, _ = composite(A, names, *s)
            if m:
                cols.append(_sym(m))
    n = A.dim(p, q)
    if not cols:
        return n
    return n - sympy.Matrix.hstack(*cols).rank()


def test_sub_and_quotient_match_rank_oracle():
    rng = random.Random(5)
    models = [kt_nonintegrable(), iwasawa()] + [random_ce_model(rng, 4) for _ in range(3)]
    for m in models:
        A = ce(m)
        S, Q = sub_double(A), quotient_double(A)
        for bd in A.bidegrees():
            assert S.dim(*bd) == _oracle_sub_dim(A, *bd), (m.label, bd)
            assert Q.dim(*bd) == _oracle_quot_dim(A, *bd), (m.label, bd)


# ------------------------------------------------------------ BC / Aeppli

def test_bc_aeppli_dbar_line():
    A = dbar_line()
    bc, ae = h_bc(A), h_aeppli(A)
    assert bc.get((0, 0)) == 0 and bc.get((0, 1)) == 1
    # x is del-dbar-closed and nothing lands in (0,0), so it survives in Aeppli
    assert ae.get((0, 0)) == 1 and ae.get((0, 1)) == 0


def test_bc_aeppli_on_double_complex_agree_with_wrappers():
    rng = random.Random(6)
    for _ in range(10):
        D = random_double_complex(rng)
        assert h_bc(D).table == h_bc_double(D).table
        assert h_aeppli(D).table == h_aeppli_double(D).table


def test_bc_aeppli_conjugation_symmetry_on_ce():
    rng = random.Random(7)
    for m in [kodaira_thurston(), kt_nonintegrable(), iwasawa()] + [random_ce_model(rng) for _ in range(5)]:
        A = ce(m)
        assert conjugation_symmetric(h_bc(A)) and conjugation_symmetric(h_aeppli(A))


def test_iwasawa_tables():
    A = ce(iwasawa())
    assert h_bc(A).totals(6) == [1, 4, 10, 14, 12, 6, 1]
    assert h_aeppli(A).totals(6) == [1, 6, 12, 14, 10, 4, 1]
    assert h_dol(A).totals(6) == [1, 5, 11, 14, 11, 5, 1]


# ------------------------------------------------------------ de Rham

def test_derham_examples():
    assert betti(ce(abelian_lie(4))) == [1, 4, 6, 4, 1]
    assert betti(ce(kodaira_thurston())) == [1, 3, 4, 3, 1]
    assert betti(ce(kt_nonintegrable())) == [1, 3, 4, 3, 1]
    assert betti(ce(iwasawa())) == [1, 4, 8, 10, 8, 4, 1]
    assert h_derham(ce(abelian_lie(4))).table[2] == 6


def test_product_kunneth():
    A = ce(kodaira_thurston())
    B = ce(abelian_lie(2))
    P = product_complex(A, B)
    assert verify_relations(P)[0]
    a, b = betti(A), betti(B)
    want = [sum(a[i] * b[k - i] for i in range(len(a)) if 0 <= k - i < len(b)) for k in range(len(a) + len(b) - 1)]
    assert betti(P) == want


# ------------------------------------------------------------ Frolicher

def test_frolicher_no_del_degenerates_at_one():
    A = double_complex({(0, 0): 2, (0, 1): 2, (1, 0): 1, (1, 1): 1},
                       dbar={(0, 0): [[1, 0], [0, 0]], (1, 0): [[1]]}, bound=1)
    pages = frolicher(A)
    assert pages[0].dims == pages[-1].dims
    assert pages[-1].degenerate_from == 1


def test_frolicher_pages_shrink_and_converge():
    rng = random.Random(8)
    inputs = [random_double_complex(rng) for _ in range(10)] + [ce(random_ce_model(rng)) for _ in range(10)]
    for A in inputs:
        pages = frolicher(A)
        for a, b in zip(pages[:-2], pages[1:-1]):
            assert all(b.dims.get(k, 0) <= d for k, d in a.dims.items())
            assert set(b.dims) <= set(a.dims)
        top = 2 * A.bound
        assert pages[-1].totals(top) == betti(A)
        assert pages[-1].degenerate_from is not None


def test_frolicher_kt_and_iwasawa():
    for m in (kodaira_thurston(), kt_nonintegrable()):
        pages = frolicher(ce(m))
        assert pages[0].dims == pages[-1].dims
        assert pages[-1].totals(4) == [1, 3, 4, 3, 1]
    pages = frolicher(ce(iwasawa()))
    assert pages[-1].degenerate_from == 2
    assert pages[0].totals(6) == [1, 5, 11, 14, 11, 5, 1]


# ------------------------------------------------------------ diagram

def test_diagram_small_cases():
    d = diagram_maps(single())
    assert d["commutes"] and d["ddbar_property"]
    assert d["maps"]["bc->dr"][0] == [[ONE]]
    d = diagram_maps(dbar_line())
    assert d["commutes"] and not d["ddbar_property"]


def test_diagram_ce():
    assert diagram_maps(ce(abelian_lie(4)))["ddbar_property"]
    res = diagram_maps(ce(iwasawa()))
    assert res["commutes"] and not res["ddbar_property"]
    rng = random.Random(9)
    for _ in range(5):
        assert diagram_maps(ce(random_ce_model(rng)))["commutes"]


# ------------------------------------------------------------ pairing

def test_pairing_unit_acts_as_identity():
    A = ce(abelian_lie(4))
    ae = h_aeppli(A)
    unit = h_bc(A).reps[(0, 0)][0]
    for bd, reps in ae.reps.items():
        for i, y in enumerate(reps):
            got = pairing(A, unit, (0, 0), y, bd)
            assert got == [ONE if j == i else 0 for j in range(len(reps))]


def test_pairing_independent_of_representatives():
    rng = random.Random(10)
    assert perturb_checks(ce(kt_nonintegrable()), rng, trials=5) > 0


def test_pairing_lands_in_summed_bidegree():
    A = ce(kodaira_thurston())
    bc, ae = h_bc(A), h_aeppli(A)
    x, y = bc.reps[(1, 0)][0], ae.reps[(0, 1)][0]
    assert len(pairing(A, x, (1, 0), y, (0, 1))) == ae.get((1, 1))


def test_pairing_needs_product():
    with pytest.raises(ComplexError):
        pairing(dbar_line(), [1], (0, 0), [1], (0, 0))


# ------------------------------------------------------------ JSON

def test_complex_json_round_trip_and_errors():
    A = dbar_line()
    B = complex_from_dict(A.to_json())
    assert h_bc(B).table == h_bc(A).table
    with pytest.raises(ComplexError):
        complex_from_dict({"dims": {"0,0": 1}, "maps": {}})
    with pytest.raises(ComplexError):
        complex_from_dict({"dims": {"zero": 1}})
    with pytest.raises(ComplexError):
        complex_from_dict({"dims": {"0,0": 1.5}})
