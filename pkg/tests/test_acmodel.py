import math
from fractions import Fraction
import random

import numpy as np
import pytest

from acslab.acmodel import (JacobiError, ModelError, abelian_lie, abelian_torus, c2_example,
                            check_identification, check_jacobi, d_squared_zero, dbar_function,
                            from_lie_algebra, generic_rank, kodaira_thurston, mapping_torus_leading,
                            mapping_torus_s1s3, mubar_matrix, nijenhuis_vec, product, rotation_J,
                            t6_rank2, torus_a, torus_mni)
from acslab.exterior import Form
from acslab.scalar import GaussianRational, ScalarFraction, evaluate, parse_scalar

H = 1e-5
TOL = 1e-6


def fd_direction(f, a, n, angles):
    """Finite-difference oracle: u_j = exp(i x_j) so d/dz_j = d/dzb_j = (1/2) d/dx_j."""
    j = a % n
    if j >= len(angles):
        return 0j
    up, dn = list(angles), list(angles)
    up[j] += H
    dn[j] -= H
    return 0.5 * (evaluate(f, up) - evaluate(f, dn)) / (2 * H)


def random_point(rng, m):
    return [rng.uniform(0, 2 * math.pi) for _ in range(m)]


# ------------------------------------------------------------ derivations

@pytest.mark.parametrize("make", [c2_example, lambda: torus_mni(3, 3), t6_rank2])
def test_derivation_tables_match_finite_differences(make):
    m = make()
    rng = random.Random(0)
    gens = [ScalarFraction.gen(m.env, name) for name in m.env.oscillators]
    for _ in range(5):
        pt = random_point(rng, len(gens))
        for g in gens + [gens[0] * gens[-1] + 3, gens[0] ** -2]:
            for a in range(m.dim):
                exact = evaluate(m.direction(a, g), pt)
                assert abs(exact - fd_direction(g, a, m.n, pt)) < TOL


def test_derivative_sign_is_plus_half_i():
    m = c2_example()
    u1 = ScalarFraction.gen(m.env, "u1")
    half_i = ScalarFraction.const(m.env, GaussianRational(0, Fraction(1, 2)))
    assert m.direction(0, u1) == half_i * u1   # d/dz1
    assert m.direction(2, u1) == half_i * u1   # d/dzb1


# ------------------------------------------------------------ C^2 example

def test_c2_mubar_closed_form():
    m = c2_example("u1")
    mb = mubar_matrix(m)
    assert mb[0][0] == parse_scalar("1/2*i*u1", m.env)
    assert mb[1][0].is_zero()
    rng = random.Random(2)
    f = ScalarFraction.gen(m.env, "u1")
    for _ in range(10):
        pt = random_point(rng, 2)
        assert abs(evaluate(mb[0][0], pt) - fd_direction(f, 2, 2, pt)) < TOL


def test_c2_variants():
    assert generic_rank(c2_example("1")) == 0
    m = c2_example("u1^2")
    assert mubar_matrix(m)[0][0] == parse_scalar("i*u1^2", m.env)
    with pytest.raises(ModelError):
        c2_example("u2")


def test_c2_dbar_function():
    m = c2_example("u1")
    g = ScalarFraction.gen(m.env, "u1")
    expected = (Form.generator(2, 2, m.env, parse_scalar("1/2*i*u1", m.env))
                + Form.generator(2, 3, m.env, parse_scalar("-1/2*i*u1^2", m.env)))
    assert dbar_function(m, g) == expected
    f = m.P[0][3]
    for text in ("u2", "u1*u2^-1", "u1^2 + 3*u2", "(u1+3)^-1"):
        g = parse_scalar(text, m.env)
        expected = (Form.generator(2, 2, m.env, m.direction(2, g))
                    + Form.generator(2, 3, m.env, m.direction(3, g) - f * m.direction(0, g)))
        assert dbar_function(m, g) == expected


# ------------------------------------------------------------ torus construction

def test_torus_bounds():
    with pytest.raises(ModelError):
        torus_mni(2, 1)
    with pytest.raises(ModelError):
        torus_mni(3, "1+i")
    torus_mni(3, "2i")


@pytest.mark.parametrize("n", [3, 4])
def test_torus_generic_rank(n):
    assert generic_rank(torus_mni(n, 2)) == n


def test_torus_mubar_formula_n3():
    m = torus_mni(3, 2)
    mb = mubar_matrix(m)
    # mubar(w1) lives on wb1^wb2 only; coefficient (i/8) u2^2 u3 / ((u2+1)^2 (u3+1))
    expected = parse_scalar("1/8*i*u2^2*u3/((u2+1)^2*(u3+1))", m.env)
    assert mb[0][0] == expected
    assert mb[0][1].is_zero() and mb[0][2].is_zero()


def test_torus_reexpression_identity():
    """b_i (w_i - a_i wb_i) = dz_i with b_i = 1/(1 - |a_i|^2)."""
    m = torus_mni(3, 3)
    for i in range(1, 4):
        a = torus_a(m, i)
        b = (ScalarFraction.const(m.env, 1) - a * a.conjugate()).inverse()
        form = (m.omega(i) - m.omegabar(i).scale(a)).scale(b)
        assert m.to_background(form) == Form.generator(3, i - 1, m.env)


def test_t6_rank2():
    m = t6_rank2()
    assert generic_rank(m) == 2
    assert check_identification(m)


def test_product_block_additivity():
    for a, b in [(c2_example(), c2_example()), (c2_example(), abelian_torus(1)),
                 (t6_rank2(), c2_example())]:
        p = product(a, b)
        assert p.n == a.n + b.n
        assert generic_rank(p) == generic_rank(a) + generic_rank(b)


def test_generic_rank_bounded():
    for m in (c2_example(), t6_rank2(), torus_mni(3, 3), kodaira_thurston()):
        assert generic_rank(m) <= min(m.n, m.n * (m.n - 1) // 2)


# ------------------------------------------------------------ Nijenhuis tensor

BUILTINS = [c2_example, lambda: c2_example("u1^2"), lambda: torus_mni(3, 2), lambda: torus_mni(4, 3),
            t6_rank2, lambda: mapping_torus_s1s3(3), kodaira_thurston,
            lambda: kodaira_thurston(rotation_J(4, [(1, 3), (2, 4)])), lambda: abelian_lie(4),
            lambda: product(c2_example(), c2_example())]


@pytest.mark.parametrize("make", BUILTINS)
def test_identification_and_background(make):
    m = make()
    assert check_identification(m)
    assert d_squared_zero(m)
    m.check_background(seed=3)


@pytest.mark.parametrize("make", [c2_example, kodaira_thurston,
                                  lambda: kodaira_thurston(rotation_J(4, [(1, 3), (2, 4)]))])
def test_nijenhuis_tensor_identities(make):
    m = make()
    for a in range(m.dim):
        for b in range(m.dim):
            Nab = nijenhuis_vec(m, a, b)
            Nba = nijenhuis_vec(m, b, a)
            assert all((x + y).is_zero() for x, y in zip(Nab, Nba))
            JNab = m.apply_J(Nab)
            NJab = nijenhuis_vec(m, m.apply_J(m.frame_vector(a)), b)
            assert all((x + y).is_zero() for x, y in zip(NJab, JNab))


def _real_nijenhuis(c, J):
    """Brute-force oracle on a Lie algebra: N(x,y) with numpy, from structure constants."""
    dim = J.shape[0]

    def br(x, y):
        return np.einsum("i,j,ijk->k", x, y, c)

    out = np.zeros((dim, dim, dim))
    for a in range(dim):
        for b in range(dim):
            x, y = np.eye(dim)[a], np.eye(dim)[b]
            out[a, b] = br(J @ x, J @ y) - br(x, y) - J @ (br(J @ x, y) + br(x, J @ y))
    return out


def test_kodaira_thurston_rank_oracle():
    # [e1, e2] = -e4 from de4 = e1^e2
    c = np.zeros((4, 4, 4))
    c[0, 1, 3], c[1, 0, 3] = -1, 1
    for pairs, want in (([(1, 2), (3, 4)], 0), ([(1, 3), (2, 4)], 1)):
        J = np.array([[float(x) for x in r] for r in rotation_J(4, pairs)])
        N = _real_nijenhuis(c, J)
        m = kodaira_thurston(rotation_J(4, pairs))
        assert (np.abs(N).max() > 1e-12) == bool(want)
        assert generic_rank(m) == want


def test_lie_validation():
    J = rotation_J(4, [(1, 2), (3, 4)])
    bad = [{"i": 1, "j": 2, "out": {"3": "1"}}, {"i": 3, "j": 4, "out": {"1": "1"}}]
    with pytest.raises(JacobiError) as e:
        from_lie_algebra(bad, J)
    assert e.value.witness == (1, 2, 4)
    with pytest.raises(ModelError):
        from_lie_algebra([], [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert generic_rank(from_lie_algebra([], J)) == 0


# ------------------------------------------------------------ mapping torus

def test_mapping_torus_frame_relations():
    m = mapping_torus_s1s3(2)
    # [U,V] = 2Z, [V,Z] = 2U, [Z,U] = 2V, T central
    def br(a, b):
        return [x.constant_value() if x.is_constant() else x for x in m.bracket_frame(a, b)]
    assert br(1, 2) == [0, 0, 0, 2]
    assert br(2, 3) == [0, 2, 0, 0]
    assert br(3, 1) == [0, 0, 2, 0]
    assert all(x == 0 for a in range(4) for x in br(0, a))


@pytest.mark.parametrize("n", [10, 100])
def test_mapping_torus_leading_term(n):
    _, _, ratio = mapping_torus_leading(mapping_torus_s1s3(n))
    assert ratio <= 10 / n
