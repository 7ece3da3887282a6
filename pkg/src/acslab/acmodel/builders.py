"""Constructors for the explicit almost complex structures."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from ..exterior import Form
from ..linalg import matmul, nullspace, to_gauss_matrix
from ..scalar import (I_UNIT, GaussianRational, Laurent, ScalarEnv, ScalarFraction,
                      as_fraction, gauss_from_any)
from .model import FramedModel, ModelError, nijenhuis_vec


# ----------------------------------------------------------- coordinate tori

def coordinate_background(n: int, env: ScalarEnv, torus_oscillators=None):
    """Flat background dz_1..dz_n, dzb_1..dzb_n on a torus.

    ``torus_oscillators`` maps oscillator name -> coordinate index j (1-based)
    for u = exp(i Re z_j); both d/dz_j and d/dzb_j send u to (i/2) u.
    """
    names = [f"dz{j}" for j in range(1, n + 1)] + [f"dzb{j}" for j in range(1, n + 1)]
    conj = [a + n if a < n else a - n for a in range(2 * n)]
    dbg = [Form.zero(n, env) for _ in range(2 * n)]
    derivs = [dict() for _ in range(2 * n)]
    half_i = ScalarFraction.const(env, GaussianRational(0, Fraction(1, 2)))
    for name, j in (torus_oscillators or {}).items():
        slot = env.index(name)
        u = ScalarFraction.gen(env, name)
        derivs[j - 1][slot] = half_i * u
        derivs[n + j - 1][slot] = half_i * u
    return names, conj, dbg, derivs


def coordinate_model(n: int, env: ScalarEnv, coframe, derivations=None, label="coordinate",
                     torus_oscillators=None):
    """Model over dz/dzb with explicit derivations {osc: {"dz1": expr, ...}}."""
    names, conj, dbg, derivs = coordinate_background(n, env, torus_oscillators)
    for osc, table in (derivations or {}).items():
        slot = env.index(osc)
        for bname, expr in table.items():
            if bname not in names:
                raise ModelError(f"unknown background direction {bname!r}")
            derivs[names.index(bname)][slot] = as_fraction(expr, env)
    return FramedModel(n, env, names, conj, dbg, derivs, coframe, label=label)


def _torus_env(m: int) -> ScalarEnv:
    return ScalarEnv(tuple(f"u{j}" for j in range(1, m + 1)))


def _torus(n, m, coframe, label):
    env = _torus_env(m)
    rows = [[as_fraction(x, env) for x in r] for r in coframe(env)]
    return coordinate_model(n, env, rows, label=label,
                            torus_oscillators={f"u{j}": j for j in range(1, m + 1)})


def abelian_torus(n: int, coframe=None) -> FramedModel:
    """Constant-coefficient structure on the flat torus (default w_i = dz_i)."""
    if coframe is None:
        coframe = [[1 if a == i else 0 for a in range(2 * n)] for i in range(n)]
    env = ScalarEnv()
    return coordinate_model(n, env, coframe, label=f"abelian_T{2 * n}")


def c2_example(f="u1") -> FramedModel:
    """T^4 with w_1 = dz_1 + f dzb_2, w_2 = dz_2, f a function of u1 = exp(i Re z_1)."""
    env = _torus_env(2)
    f = as_fraction(f, env)
    for part in (f.num, f.den):
        if any(e[1] for e in part.terms):
            raise ModelError("f must only involve the z_1 oscillator u1")
    zero = ScalarFraction.zero(env)
    one = ScalarFraction.const(env, 1)
    rows = [[one, zero, zero, f], [zero, one, zero, zero]]
    return coordinate_model(2, env, rows, label="c2_example",
                            torus_oscillators={"u1": 1, "u2": 2})


def torus_mni(n: int, A=2) -> FramedModel:
    """w_i = dz_i + a_i dzb_i, a_i = u_{i+1} + A (indices mod n); n = 2 is c2_example(u1 + A)."""
    if n < 2:
        raise ModelError("torus_mni needs n >= 2")
    A = gauss_from_any(A)
    if A.norm2() < 4:
        raise ModelError(f"parameter bound |A| >= 2 violated (|A|^2 = {A.norm2()})")
    if n == 2:
        m = c2_example(ScalarFraction.gen(_torus_env(2), "u1") + A)
        m.label = f"torus_mni(2,{A})"
        return m

    def rows(env):
        out = []
        for i in range(n):
            r = [0] * (2 * n)
            r[i] = 1
            r[n + i] = ScalarFraction.gen(env, f"u{(i + 1) % n + 1}") + A
            out.append(r)
        return out

    m = _torus(n, n, rows, f"torus_mni({n},{A})")
    m.A = A
    return m


def torus_a(model: FramedModel, i: int) -> ScalarFraction:
    """a_i of a torus_mni model (1-based)."""
    return model.P[i - 1][model.n + i - 1]


def t6_rank2() -> FramedModel:
    """w_1 = dz_1 + u1 dzb_3, w_2 = dz_2 + u2 dzb_3, w_3 = dz_3."""
    def rows(env):
        u1 = ScalarFraction.gen(env, "u1")
        u2 = ScalarFraction.gen(env, "u2")
        return [[1, 0, 0, 0, 0, u1], [0, 1, 0, 0, 0, u2], [0, 0, 1, 0, 0, 0]]
    return _torus(3, 2, rows, "t6_rank2")


# ------------------------------------------------------------------ products

def product(m1: FramedModel, m2: FramedModel) -> FramedModel:
    """Direct sum of backgrounds, coframes concatenated; generators renamed apart."""
    o1, o2 = len(m1.env.oscillators), len(m2.env.oscillators)
    p1, p2 = len(m1.env.params), len(m2.env.params)
    env = ScalarEnv(tuple(f"u{j}" for j in range(1, o1 + o2 + 1)),
                    tuple(f"A{j}" for j in range(1, p1 + p2 + 1)))
    m = o1 + o2
    map1 = list(range(o1)) + [m + k for k in range(2 * p1)]
    map2 = [o1 + k for k in range(o2)] + [m + 2 * p1 + k for k in range(2 * p2)]
    n1, n2 = m1.n, m2.n
    n = n1 + n2
    N1 = 2 * n1

    def emb(x, which):
        return x.embed(env, map1 if which == 1 else map2)

    names = list(m1.bg_names)
    for nm in m2.bg_names:
        names.append(nm if nm not in names else nm + "'")
    conj = list(m1.bg_conj) + [N1 + c for c in m2.bg_conj]
    dbg = []
    for f in m1.dbg:
        dbg.append(Form(n, env, {k: emb(c, 1) for k, c in f.terms.items()}))
    for f in m2.dbg:
        dbg.append(Form(n, env, {tuple(N1 + x for x in k): emb(c, 2) for k, c in f.terms.items()}))
    derivs = [{map1[s]: emb(v, 1) for s, v in t.items()} for t in m1.derivs]
    derivs += [{map2[s]: emb(v, 2) for s, v in t.items()} for t in m2.derivs]
    zero = ScalarFraction.zero(env)
    rows = []
    for r in m1.P[:n1]:
        rows.append([emb(x, 1) for x in r] + [zero] * (2 * n2))
    for r in m2.P[:n2]:
        rows.append([zero] * N1 + [emb(x, 2) for x in r])
    out = FramedModel(n, env, names, conj, dbg, derivs, rows, label=f"{m1.label}x{m2.label}")
    out.factors = (m1, m2)
    return out


# ---------------------------------------------------------- Lie algebra models

def _read_brackets(dim, brackets):
    """Normalise bracket data to c[i][j] = {k: GaussianRational} (0-based, antisymmetric)."""
    c = [[dict() for _ in range(dim)] for _ in range(dim)]
    items = brackets.items() if isinstance(brackets, dict) else (
        ((b["i"], b["j"]), b["out"]) for b in brackets)
    for (i, j), out in items:
        i, j = int(i) - 1, int(j) - 1
        if not (0 <= i < dim and 0 <= j < dim) or i == j:
            raise ModelError(f"bad bracket indices ({i + 1},{j + 1})")
        for k, v in out.items():
            k = int(k) - 1
            if not 0 <= k < dim:
                raise ModelError(f"bad bracket output index {k + 1}")
            v = gauss_from_any(v)
            if v.im != 0:
                raise ModelError("structure constants must be rational")
            prev = c[i][j].get(k)
            if prev is not None and prev != v:
                raise ModelError(f"conflicting values for [e{i + 1},e{j + 1}]")
            c[i][j][k] = v
            c[j][i][k] = -v
    return c


def _bracket_vec(c, x, y, dim):
    out = [GaussianRational(0)] * dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            for k, v in c[i][j].items():
                out[k] = out[k] + xi * yj * v
    return out


def check_jacobi(c, dim):
    """Return the first triple (i,j,k), 1-based, violating Jacobi, or None."""
    basis = [[GaussianRational(1 if a == b else 0) for a in range(dim)] for b in range(dim)]
    for i, j, k in combinations(range(dim), 3):
        x, y, z = basis[i], basis[j], basis[k]
        s = [a + b + d for a, b, d in zip(_bracket_vec(c, _bracket_vec(c, x, y, dim), z, dim),
                                          _bracket_vec(c, _bracket_vec(c, y, z, dim), x, dim),
                                          _bracket_vec(c, _bracket_vec(c, z, x, dim), y, dim))]
        if any(s):
            return (i + 1, j + 1, k + 1)
    return None


class JacobiError(ModelError):
    pass


def lie_differentials(c, dim, env=None):
    """d beta^k = -sum_{i<j} c^k_ij beta^i ^ beta^j on a real frame."""
    env = env or ScalarEnv()
    n = dim // 2
    out = []
    for k in range(dim):
        terms = {}
        for i, j in combinations(range(dim), 2):
            v = c[i][j].get(k)
            if v:
                terms[(i, j)] = ScalarFraction.const(env, -v)
        out.append(Form(n, env, terms))
    return out


def from_lie_algebra(brackets, J, label="lie_algebra") -> FramedModel:
    """Left-invariant structure from structure constants and a rational J.

    ``brackets``: {(i, j): {k: value}} or [{"i":..,"j":..,"out":{k: value}}],
    1-based, meaning [e_i, e_j] = sum value e_k.  ``J``: matrix whose column a
    holds the components of J e_a.
    """
    J = to_gauss_matrix(J)
    dim = len(J)
    if dim % 2 or any(len(r) != dim for r in J):
        raise ModelError("J must be an even-dimensional square matrix")
    if any(x.im != 0 for r in J for x in r):
        raise ModelError("J must be real")
    J2 = matmul(J, J)
    for a in range(dim):
        for b in range(dim):
            if J2[a][b] != (-1 if a == b else 0):
                raise ModelError("J^2 != -1", witness=(a + 1, b + 1))
    c = _read_brackets(dim, brackets)
    bad = check_jacobi(c, dim)
    if bad:
        raise JacobiError(f"Jacobi identity fails for (e{bad[0]}, e{bad[1]}, e{bad[2]})",
                          witness=bad)
    return _lie_model(dim, lie_differentials(c, dim), J, label, brackets=c)


def lie_from_differentials(diffs, J, label="lie_algebra") -> FramedModel:
    """Same, but with d beta^k given directly as {k: {(i, j): value}} (1-based, i<j)."""
    J = to_gauss_matrix(J)
    dim = len(J)
    c = [[dict() for _ in range(dim)] for _ in range(dim)]
    for k, table in diffs.items():
        for (i, j), v in table.items():
            v = gauss_from_any(v)
            i, j, k0 = int(i) - 1, int(j) - 1, int(k) - 1
            if i == j:
                raise ModelError("repeated index in a differential")
            if i > j:
                i, j, v = j, i, -v
            c[i][j][k0] = -v
            c[j][i][k0] = v
    brackets = {(i + 1, j + 1): {k + 1: v for k, v in c[i][j].items()}
                for i in range(dim) for j in range(i + 1, dim) if c[i][j]}
    return from_lie_algebra(brackets, J, label=label)


def _lie_model(dim, dbg, J, label, brackets=None):
    n = dim // 2
    env = ScalarEnv()
    # (1,0)-forms: rows w with w J = i w
    M = [[J[b][a] - (I_UNIT if a == b else 0) for b in range(dim)] for a in range(dim)]
    rows = nullspace(M, dim)
    if len(rows) != n:
        raise ModelError("J has unbalanced eigenspaces")
    names = [f"e{k}" for k in range(1, dim + 1)]
    out = FramedModel(n, env, names, list(range(dim)), dbg, [dict() for _ in range(dim)],
                      [[as_fraction(x, env) for x in r] for r in rows], label=label)
    out.J_input = J
    out.structure = brackets
    return out


def kodaira_thurston(J=None) -> FramedModel:
    """de^4 = e^1 ^ e^2, i.e. [e_1, e_2] = -e_4; default J: e_1 -> e_2, e_3 -> e_4."""
    if J is None:
        J = rotation_J(4, [(1, 2), (3, 4)])
    return lie_from_differentials({4: {(1, 2): 1}}, J, label="kodaira_thurston")


def rotation_J(dim, pairs):
    """J e_a = e_b, J e_b = -e_a for each (a, b), 1-based."""
    J = [[0] * dim for _ in range(dim)]
    for a, b in pairs:
        J[b - 1][a - 1] = 1
        J[a - 1][b - 1] = -1
    return J


def abelian_lie(dim, J=None) -> FramedModel:
    if J is None:
        J = rotation_J(dim, [(2 * k + 1, 2 * k + 2) for k in range(dim // 2)])
    return from_lie_algebra({}, J, label=f"abelian_R{dim}")


# -------------------------------------------------------- S^1 x S^3 mapping torus

def mapping_torus_s1s3(n: int) -> FramedModel:
    """Frame T, U, V, Z on S^1 x S^3 with [U,V]=2Z, [V,Z]=2U, [Z,U]=2V, T central.

    u1 stands for exp(i n^2 t), so dir_T(u1) = i n^2 u1.  J is fixed by
    J A_n = C_n, J B_n = D_n with
      A_n = T + (s/n) U - (c/n) V,  B_n = Z + (c/n) U + (s/n) V,
      C_n = U/n,  D_n = V/n,  s = sin(n^2 t), c = cos(n^2 t).
    """
    if n < 1:
        raise ModelError("n must be >= 1")
    env = ScalarEnv(("u1",))
    u = ScalarFraction.gen(env, "u1")
    ui = u.inverse()
    s = (u - ui) / (2 * I_UNIT)
    c = (u + ui) / 2
    one = ScalarFraction.const(env, 1)
    ii = ScalarFraction.const(env, I_UNIT)
    # indices T=0, U=1, V=2, Z=3
    dbg = [Form.zero(2, env),
           Form(2, env, {(2, 3): -2}),
           Form(2, env, {(1, 3): 2}),
           Form(2, env, {(1, 2): -2})]
    derivs = [{0: ii * (n * n) * u}, {}, {}, {}]
    rows = [[one - ii * s, ii * n, 0, -(ii * c)],
            [ii * c, 0, ii * n, one - ii * s]]
    out = FramedModel(2, env, ["T", "U", "V", "Z"], [0, 1, 2, 3], dbg, derivs,
                      [[as_fraction(x, env) for x in r] for r in rows],
                      label=f"mapping_torus_s1s3({n})")
    out.n_param = n
    return out


def mapping_torus_vectors(model: FramedModel):
    """A_n, B_n, C_n, D_n as background component lists."""
    n = model.n_param
    env = model.env
    u = ScalarFraction.gen(env, "u1")
    ui = u.inverse()
    s = (u - ui) / (2 * I_UNIT)
    c = (u + ui) / 2
    z = ScalarFraction.zero(env)
    one = ScalarFraction.const(env, 1)
    A = [one, s / n, -(c / n), z]
    B = [z, c / n, s / n, one]
    C = [z, one / n, z, z]
    D = [z, z, one / n, z]
    return A, B, C, D


def mapping_torus_leading(model: FramedModel, samples: int = 64):
    """Compare N(A_n,B_n)/n with its leading term -[A_n,B_n]/n on a circle of angles.

    Returns (error, size, ratio): the sup-norm of the difference, the sup-norm
    of the leading term and their quotient.  The quotient should be O(1/n).
    """
    import numpy as np

    n = model.n_param
    A, B, _, _ = mapping_torus_vectors(model)
    N = nijenhuis_vec(model, A, B)
    L = model.bracket(A, B)
    angles = (2 * np.pi * np.arange(samples) / samples).reshape(samples, 1)
    diff = np.array([(x + y).evaluate_many(angles) / n for x, y in zip(N, L)])
    lead = np.array([y.evaluate_many(angles) / n for y in L])
    err = float(np.max(np.linalg.norm(diff, axis=0)))
    size = float(np.max(np.linalg.norm(lead, axis=0)))
    return err, size, err / size


BUILTINS = {
    "torus_mni": torus_mni,
    "c2_example": c2_example,
    "t6_rank2": t6_rank2,
    "abelian_torus": abelian_torus,
    "abelian_lie": abelian_lie,
    "kodaira_thurston": kodaira_thurston,
    "mapping_torus_s1s3": mapping_torus_s1s3,
}
