"""FramedModel: an almost complex structure on a framed background.

A model carries a background coframe beta^0..beta^{2n-1} with known exterior
derivatives, one derivation per dual frame vector e_a acting on the scalar
generators, and n (1,0)-forms written over the background.  Everything else
(the differential on the (1,0)/(0,1) coframe, mubar, the Nijenhuis tensor, J)
is derived from that data by exact arithmetic.

Conventions:
  * d f = sum_a dir_a(f) beta^a.
  * The bracket of frame vectors is read off from d beta by
    d beta^k(e_a, e_b) = -beta^k([e_a, e_b]).
  * J acts on background component columns as J = Q diag(i.., -i..) P where
    the rows of P are the 2n forms (w_1..w_n, wb_1..wb_n) and Q = P^-1.
"""

from __future__ import annotations

import random
from itertools import combinations
from math import comb
from typing import Sequence

from ..exterior import Form, basis_keys, change_basis, conjugate_form, project, wedge
from ..scalar import I_UNIT, Laurent, ScalarEnv, ScalarFraction, as_fraction
from ..symbolic import cancel


class ModelError(ValueError):
    """Invalid model data; ``witness`` names what failed."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _frac_inverse(m):
    """Gauss-Jordan inverse over the fraction field; None when singular."""
    k = len(m)
    env = m[0][0].env
    one = ScalarFraction.const(env, 1)
    zero = ScalarFraction.zero(env)
    aug = [list(row) + [one if i == j else zero for j in range(k)] for i, row in enumerate(m)]
    for c in range(k):
        cands = [r for r in range(c, k) if not aug[r][c].is_zero()]
        if not cands:
            return None
        p = min(cands, key=lambda r: len(aug[r][c].num.terms) + len(aug[r][c].den.terms))
        aug[c], aug[p] = aug[p], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [cancel(x * inv) if not x.is_zero() else x for x in aug[c]]
        for r in range(k):
            if r != c and not aug[r][c].is_zero():
                f = aug[r][c]
                aug[r] = [cancel(x - f * y) if not y.is_zero() else x
                          for x, y in zip(aug[r], aug[c])]
    return [row[k:] for row in aug]


class FramedModel:
    """See the module docstring.

    Parameters
    ----------
    n : complex dimension
    env : scalar generator environment
    bg_names : 2n labels for the background coframe
    bg_conj : permutation with conj(beta^a) = beta^{bg_conj[a]}
    dbg : 2n background 2-forms, dbg[k] = d beta^k
    derivs : 2n dicts, derivs[a][slot] = dir_a(generator at slot)
    coframe : n rows of 2n coefficients, w_i = sum_a coframe[i][a] beta^a
    """

    def __init__(self, n: int, env: ScalarEnv, bg_names: Sequence[str], bg_conj: Sequence[int],
                 dbg: Sequence[Form], derivs: Sequence[dict], coframe, label: str = "model",
                 check: bool = True):
        self.n = n
        self.env = env
        self.label = label
        N = 2 * n
        if len(bg_names) != N or len(bg_conj) != N or len(dbg) != N or len(derivs) != N:
            raise ModelError(f"background data must have length {N}")
        if sorted(bg_conj) != list(range(N)) or any(bg_conj[bg_conj[a]] != a for a in range(N)):
            raise ModelError("background conjugation is not an involutive permutation")
        if len(coframe) != n or any(len(r) != N for r in coframe):
            raise ModelError(f"coframe must be {n} rows of {N} coefficients")
        self.bg_names = tuple(bg_names)
        self.bg_conj = tuple(bg_conj)
        self.dbg = list(dbg)
        for f in self.dbg:
            if f.n != n or f.env != env or f.degrees() - {2}:
                raise ModelError("background differentials must be 2-forms on the background")
        self.derivs = [{k: as_fraction(v, env) for k, v in t.items()} for t in derivs]
        for t in self.derivs:
            for k in t:
                if env.is_param_slot(k) and not t[k].is_zero():
                    raise ModelError("parameters are constants and cannot be differentiated")
        rows = [[as_fraction(x, env) for x in r] for r in coframe]
        bar = []
        for r in rows:
            b = [None] * N
            for a, x in enumerate(r):
                b[self.bg_conj[a]] = x.conjugate()
            bar.append(b)
        self.P = rows + bar
        Q = _frac_inverse(self.P)
        if Q is None:
            raise ModelError("the (1,0)-coframe and its conjugate do not span the coframe")
        self.Q = Q
        self._dtheta = None
        if check:
            self.check_background()

    # ------------------------------------------------------------------ basics
    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def max_rank(self) -> int:
        return min(self.n, comb(self.n, 2))

    def has_constant_coefficients(self) -> bool:
        return not self.env.oscillators and not self.env.params

    def scalar(self, x) -> ScalarFraction:
        return as_fraction(x, self.env)

    def direction(self, a: int, f) -> ScalarFraction:
        """dir_a(f) for a scalar f."""
        f = self.scalar(f)
        return f.derive(self.derivs[a])

    def vector_apply(self, X, f) -> ScalarFraction:
        """X(f) for a vector with background components X."""
        out = ScalarFraction.zero(self.env)
        for a, x in enumerate(X):
            if not x.is_zero():
                d = self.direction(a, f)
                if not d.is_zero():
                    out = out + x * d
        return out

    # ------------------------------------------------------- background calculus
    def d_scalar_bg(self, f) -> Form:
        f = self.scalar(f)
        return Form(self.n, self.env, {(a,): self.direction(a, f) for a in range(self.dim)})

    def d_bg(self, a: Form) -> Form:
        """Exterior derivative of a background form."""
        out = Form.zero(self.n, self.env)
        for key, c in a.terms.items():
            mono = Form(self.n, self.env, {key: 1})
            out = out + wedge(self.d_scalar_bg(c), mono)
            dm = Form.zero(self.n, self.env)
            for j, k in enumerate(key):
                rest_l = Form(self.n, self.env, {key[:j]: 1})
                rest_r = Form(self.n, self.env, {key[j + 1:]: 1})
                term = wedge(wedge(rest_l, self.dbg[k]), rest_r)
                dm = dm + (term if j % 2 == 0 else -term)
            out = out + dm.scale(c)
        return out

    def bracket_frame(self, a: int, b: int):
        """Components of [e_a, e_b]: -d beta^k(e_a, e_b)."""
        out = []
        for k in range(self.dim):
            if a == b:
                out.append(ScalarFraction.zero(self.env))
                continue
            key = (min(a, b), max(a, b))
            c = self.dbg[k].terms.get(key)
            if c is None:
                out.append(ScalarFraction.zero(self.env))
            else:
                out.append(-c if a < b else c)
        return out

    def bracket(self, X, Y):
        """Lie bracket of vector fields given by background components."""
        N = self.dim
        zero = ScalarFraction.zero(self.env)
        out = [zero] * N
        for a in range(N):
            if X[a].is_zero():
                continue
            for b in range(N):
                if b == a or Y[b].is_zero():
                    continue
                f = X[a] * Y[b]
                for k, c in enumerate(self.bracket_frame(a, b)):
                    if not c.is_zero():
                        out[k] = out[k] + f * c
        for b in range(N):
            t = self.vector_apply(X, Y[b]) - self.vector_apply(Y, X[b])
            if not t.is_zero():
                out[b] = out[b] + t
        return out

    def frame_vector(self, a: int):
        return [self.scalar(1 if b == a else 0) for b in range(self.dim)]

    def J_matrix(self):
        """J on background components (column convention)."""
        N, n = self.dim, self.n
        DP = [[x * (I_UNIT if c < n else -I_UNIT) for x in self.P[c]] for c in range(N)]
        out = []
        for a in range(N):
            row = []
            for b in range(N):
                s = ScalarFraction.zero(self.env)
                for c in range(N):
                    if not self.Q[a][c].is_zero() and not DP[c][b].is_zero():
                        s = s + self.Q[a][c] * DP[c][b]
                row.append(cancel(s))
            out.append(row)
        return out

    def apply_J(self, X):
        if not hasattr(self, "_J"):
            self._J = self.J_matrix()
        out = []
        for row in self._J:
            s = ScalarFraction.zero(self.env)
            for x, y in zip(row, X):
                if not x.is_zero() and not y.is_zero():
                    s = s + x * y
            out.append(s)
        return out

    # ------------------------------------------------------------- theta calculus
    def theta_images(self):
        """beta^a as 1-forms in the theta basis (w, wb)."""
        return [Form(self.n, self.env, {(c,): self.Q[a][c] for c in range(self.dim)})
                for a in range(self.dim)]

    def to_theta(self, a: Form) -> Form:
        """Re-express a background form in the theta basis."""
        if not hasattr(self, "_timg"):
            self._timg = self.theta_images()
        return change_basis(a, self._timg)

    def to_background(self, a: Form) -> Form:
        imgs = [Form(self.n, self.env, {(b,): self.P[c][b] for b in range(self.dim)})
                for c in range(self.dim)]
        return change_basis(a, imgs)

    def dtheta(self):
        """d theta^c in the theta basis for c = 0..2n-1 (cached)."""
        if self._dtheta is None:
            out = []
            for c in range(self.dim):
                row = Form(self.n, self.env, {(a,): self.P[c][a] for a in range(self.dim)})
                out.append(self.to_theta(self.d_bg(row)).map_coefficients(cancel))
            self._dtheta = out
        return self._dtheta

    def d_scalar(self, f) -> Form:
        """d f in the theta basis."""
        f = self.scalar(f)
        dirs = [self.direction(a, f) for a in range(self.dim)]
        terms = {}
        for c in range(self.dim):
            s = ScalarFraction.zero(self.env)
            for a in range(self.dim):
                if not dirs[a].is_zero() and not self.Q[a][c].is_zero():
                    s = s + dirs[a] * self.Q[a][c]
            terms[(c,)] = s
        return Form(self.n, self.env, terms)

    def d(self, a: Form) -> Form:
        """Exterior derivative in the theta basis."""
        dth = self.dtheta()
        out = Form.zero(self.n, self.env)
        for key, c in a.terms.items():
            out = out + wedge(self.d_scalar(c), Form(self.n, self.env, {key: 1}))
            dm = Form.zero(self.n, self.env)
            for j, k in enumerate(key):
                term = wedge(wedge(Form(self.n, self.env, {key[:j]: 1}), dth[k]),
                             Form(self.n, self.env, {key[j + 1:]: 1}))
                dm = dm + (term if j % 2 == 0 else -term)
            out = out + dm.scale(c)
        return out

    def omega(self, i: int) -> Form:
        """w_i (1-based) in the theta basis."""
        return Form.generator(self.n, i - 1, self.env)

    def omegabar(self, i: int) -> Form:
        return Form.generator(self.n, self.n + i - 1, self.env)

    # ------------------------------------------------------------------ checks
    def check_background(self, seed: int = 0):
        """d^2 = 0 on background and generators, Leibniz, reality of the data."""
        env, n = self.env, self.n
        for k, f in enumerate(self.dbg):
            if not self.d_bg(f).is_zero():
                raise ModelError(f"d(d {self.bg_names[k]}) != 0", witness=self.bg_names[k])
        m = len(env.oscillators)
        for slot in range(m):
            g = ScalarFraction.gen(env, env.oscillators[slot])
            if not self.d_bg(self.d_scalar_bg(g)).is_zero():
                raise ModelError(f"d(d {env.oscillators[slot]}) != 0", witness=env.oscillators[slot])
        # reality: conj(dir_a g) = dir_{sigma a}(conj g), conj(d beta^k) = d beta^{sigma k}
        for slot in range(m):
            g = ScalarFraction.gen(env, env.oscillators[slot])
            for a in range(self.dim):
                lhs = self.direction(a, g).conjugate()
                rhs = self.direction(self.bg_conj[a], g.conjugate())
                if lhs != rhs:
                    raise ModelError(f"derivation along {self.bg_names[a]} is not real on "
                                     f"{env.oscillators[slot]}", witness=(a, slot))
        for k in range(self.dim):
            if conjugate_form(self.dbg[k], self.bg_conj) != self.dbg[self.bg_conj[k]]:
                raise ModelError(f"d {self.bg_names[k]} is incompatible with conjugation",
                                 witness=self.bg_names[k])
        # Leibniz on random products of generators
        if m:
            rng = random.Random(seed)
            for _ in range(3):
                f = _random_laurent(env, rng)
                g = _random_laurent(env, rng)
                for a in range(self.dim):
                    lhs = self.direction(a, f * g)
                    rhs = f * self.direction(a, g) + g * self.direction(a, f)
                    if lhs != rhs:
                        raise ModelError(f"Leibniz rule fails along {self.bg_names[a]}", witness=a)
        return True

    def __repr__(self):
        return f"FramedModel({self.label!r}, n={self.n}, generators={self.env.names})"


def _random_laurent(env, rng):
    m = len(env.oscillators)
    terms = {}
    for _ in range(3):
        e = [rng.randint(-2, 2) for _ in range(m)] + [rng.randint(0, 1) for _ in range(env.nvars - m)]
        terms[tuple(e)] = rng.randint(-3, 3) or 1
    return ScalarFraction(Laurent(env, terms))


# ---------------------------------------------------------------- operations

def exterior_d(model: FramedModel, a: Form, basis: str = "coframe") -> Form:
    """d of a form in the theta basis (default) or the background basis."""
    if basis == "background":
        return model.d_bg(a)
    if basis != "coframe":
        raise ValueError("basis must be 'coframe' or 'background'")
    return model.d(a)


def mubar_matrix(model: FramedModel):
    """Row i: the (0,2)-part of d w_i in the basis wb_j^wb_k, j < k."""
    n = model.n
    keys = basis_keys(n, 0, 2)
    dth = model.dtheta()
    zero = ScalarFraction.zero(model.env)
    return [[project(dth[i], (0, 2)).terms.get(k, zero) for k in keys] for i in range(n)]


def mubar_columns(n: int):
    return [(j + 1, k + 1) for j, k in combinations(range(n), 2)]


def _as_vector(model, v):
    if isinstance(v, int):
        return model.frame_vector(v)
    return [model.scalar(x) for x in v]


def nijenhuis_vec(model: FramedModel, X, Y):
    """N(X,Y) = [JX,JY] - [X,Y] - J([JX,Y] + [X,JY]) in background components.

    X and Y are frame indices or component lists.  With this sign the
    identification with mubar below holds without a stray minus.
    """
    X = _as_vector(model, X)
    Y = _as_vector(model, Y)
    JX, JY = model.apply_J(X), model.apply_J(Y)
    t1 = model.bracket(JX, JY)
    t2 = model.bracket(X, Y)
    s = [p + q for p, q in zip(model.bracket(JX, Y), model.bracket(X, JY))]
    t3 = model.apply_J(s)
    return [a - b - c for a, b, c in zip(t1, t2, t3)]


def theta_dual_vector(model: FramedModel, c: int):
    """Vector field dual to theta^c: column c of Q."""
    return [model.Q[a][c] for a in range(model.dim)]


def theta_components(model: FramedModel, X):
    return [sum((model.P[c][a] * X[a] for a in range(model.dim) if not X[a].is_zero()),
                ScalarFraction.zero(model.env)) for c in range(model.dim)]


def check_identification(model: FramedModel, detail: bool = False):
    """N = 4 mubar: w_i(N(Vb_j, Vb_k)) equals 4x the wb_j^wb_k coefficient of mubar(w_i).

    Also requires N(Vb_j, Vb_k) to have no (0,1)-part and N to vanish when one
    argument is of type (1,0).
    """
    n = model.n
    mb = mubar_matrix(model)
    mismatches = []
    for col, (j, k) in enumerate(combinations(range(n), 2)):
        Nv = nijenhuis_vec(model, theta_dual_vector(model, n + j), theta_dual_vector(model, n + k))
        comps = theta_components(model, Nv)
        for i in range(n):
            if comps[i] != mb[i][col] * 4:
                mismatches.append(("w", i + 1, j + 1, k + 1))
        for i in range(n, 2 * n):
            if not comps[i].is_zero():
                mismatches.append(("wb", i - n + 1, j + 1, k + 1))
    for j in range(n):
        for k in range(n):
            Nv = nijenhuis_vec(model, theta_dual_vector(model, j), theta_dual_vector(model, n + k))
            if any(not x.is_zero() for x in Nv):
                mismatches.append(("mixed", j + 1, k + 1))
    ok = not mismatches
    return (ok, mismatches) if detail else ok


def dbar_function(model: FramedModel, g) -> Form:
    """(0,1)-part of d g."""
    return project(model.d_scalar(g), (0, 1))


def d_squared_zero(model: FramedModel, forms=None) -> bool:
    """d(d a) = 0 for the given theta-basis forms (default: the coframe)."""
    if forms is None:
        forms = [Form.generator(model.n, c, model.env) for c in range(model.dim)]
    return all(model.d(model.d(a)).is_zero() for a in forms)
