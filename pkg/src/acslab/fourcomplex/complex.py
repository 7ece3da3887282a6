"""Bounded bigraded 4-complexes over Q(i)."""

from __future__ import annotations

import json
from itertools import product as cartesian

from ..exterior import Form, basis_keys, conjugate_form, merge_sign
from ..linalg import is_zero_matrix, matmul, to_gauss_matrix, zeros
from ..scalar import GaussianRational, format_gauss, gauss_from_any

# component name -> bidegree shift
SHIFTS = {"mubar": (-1, 2), "dbar": (0, 1), "del": (1, 0), "mu": (2, -1)}
COMPONENTS = ("mubar", "dbar", "del", "mu")

# the seven relations, grouped by total shift; each is a list of (first, second)
# pairs meaning second o first
RELATIONS = [
    ("mubar^2", [("mubar", "mubar")]),
    ("mubar dbar + dbar mubar", [("dbar", "mubar"), ("mubar", "dbar")]),
    ("mubar del + del mubar + dbar^2", [("del", "mubar"), ("mubar", "del"), ("dbar", "dbar")]),
    ("mubar mu + dbar del + del dbar + mu mubar",
     [("mu", "mubar"), ("del", "dbar"), ("dbar", "del"), ("mubar", "mu")]),
    ("mu dbar + dbar mu + del^2", [("dbar", "mu"), ("mu", "dbar"), ("del", "del")]),
    ("mu del + del mu", [("del", "mu"), ("mu", "del")]),
    ("mu^2", [("mu", "mu")]),
]


class ComplexError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


class FourComplex:
    """dims[(p,q)] and maps[name][(p,q)]: matrix from A^{p,q} to A^{(p,q)+shift}.

    Matrices act on column vectors (rows index the target basis).  Missing
    entries are zero.  ``basis`` (optional) names basis elements by exterior
    keys so that a product is available; ``conj`` (optional) holds matrices
    C[(p,q)] with conj(x) = C . conj(coords of x), landing in (q,p).
    """

    def __init__(self, dims, maps=None, bound=None, basis=None, conj=None, label="complex"):
        self.dims = {tuple(k): int(v) for k, v in dims.items() if int(v) > 0}
        if any(v < 0 for v in dims.values()):
            raise ComplexError("negative dimension")
        if bound is None:
            bound = max([max(k) for k in self.dims] + [0])
        self.bound = bound
        for p, q in self.dims:
            if not (0 <= p <= bound and 0 <= q <= bound):
                raise ComplexError(f"bidegree ({p},{q}) outside [0,{bound}]^2")
        self.label = label
        self.maps = {c: {} for c in COMPONENTS}
        for name, table in (maps or {}).items():
            if name not in SHIFTS:
                raise ComplexError(f"unknown differential {name!r}")
            dp, dq = SHIFTS[name]
            for (p, q), m in table.items():
                src = self.dim(p, q)
                tgt = self.dim(p + dp, q + dq)
                m = to_gauss_matrix(m)
                if tgt == 0 or src == 0:
                    if any(any(x for x in r) for r in m):
                        raise ComplexError(f"{name} at ({p},{q}) maps from or into a zero space")
                    continue
                if len(m) != tgt or any(len(r) != src for r in m):
                    raise ComplexError(f"{name} at ({p},{q}) must be {tgt}x{src}")
                if not is_zero_matrix(m):
                    self.maps[name][(p, q)] = m
        self.basis = basis
        self.conj = conj

    def dim(self, p, q) -> int:
        return self.dims.get((p, q), 0)

    def bidegrees(self):
        return sorted(self.dims)

    def mat(self, name, p, q):
        dp, dq = SHIFTS[name]
        m = self.maps[name].get((p, q))
        if m is None:
            return zeros(self.dim(p + dp, q + dq), self.dim(p, q))
        return m

    def is_double(self) -> bool:
        return not self.maps["mubar"] and not self.maps["mu"]

    def total_degrees(self):
        return range(0, 2 * self.bound + 1)

    def total_layout(self, k):
        """[(p, q, offset)] for the summands of total degree k, and total dimension."""
        out, off = [], 0
        for p in range(0, self.bound + 1):
            q = k - p
            if self.dim(p, q):
                out.append((p, q, off))
                off += self.dim(p, q)
        return out, off

    def total_d(self, k):
        """Matrix of d = mubar + dbar + del + mu from degree k to k+1."""
        src, ns = self.total_layout(k)
        tgt, nt = self.total_layout(k + 1)
        where = {(p, q): off for p, q, off in tgt}
        M = zeros(nt, ns)
        for p, q, off in src:
            for name in COMPONENTS:
                dp, dq = SHIFTS[name]
                m = self.maps[name].get((p, q))
                if m is None:
                    continue
                to = where[(p + dp, q + dq)]
                for i, row in enumerate(m):
                    for j, x in enumerate(row):
                        if x:
                            M[to + i][off + j] = x
        return M

    def to_json(self):
        def mat(m):
            return [[format_gauss(x) for x in r] for r in m]
        return {
            "dims": {f"{p},{q}": d for (p, q), d in sorted(self.dims.items())},
            **{name: {f"{p},{q}": mat(m) for (p, q), m in sorted(self.maps[name].items())}
               for name in COMPONENTS},
        }

    def __repr__(self):
        return f"FourComplex({self.label!r}, dims={self.dims})"


def verify_relations(A: FourComplex):
    """(True, None) or (False, (relation name, (p,q))) for the first violation."""
    for name, pairs in RELATIONS:
        for (p, q) in A.bidegrees():
            total = None
            for first, second in pairs:
                d1 = SHIFTS[first]
                m1 = A.maps[first].get((p, q))
                mid = (p + d1[0], q + d1[1])
                m2 = A.maps[second].get(mid)
                if m1 is None or m2 is None:
                    continue
                prod = matmul(m2, m1)
                total = prod if total is None else _add(total, prod)
            if total is not None and not is_zero_matrix(total):
                return False, (name, (p, q))
    return True, None


# --------------------------------------------------------------- CE complexes

def from_left_invariant(model) -> FourComplex:
    """Bigraded Chevalley-Eilenberg complex of a constant-coefficient model."""
    if not model.has_constant_coefficients():
        raise ComplexError("from_left_invariant needs constant coefficients")
    n = model.n
    basis = {(p, q): basis_keys(n, p, q) for p in range(n + 1) for q in range(n + 1)}
    index = {bd: {k: i for i, k in enumerate(keys)} for bd, keys in basis.items()}
    dims = {bd: len(keys) for bd, keys in basis.items()}
    maps = {c: {} for c in COMPONENTS}
    for (p, q), keys in basis.items():
        cols = {c: zeros(dims.get((p + SHIFTS[c][0], q + SHIFTS[c][1]), 0), len(keys))
                for c in COMPONENTS}
        for j, key in enumerate(keys):
            dx = model.d(Form(n, model.env, {key: 1}))
            for k2, coeff in dx.terms.items():
                bd = (sum(1 for x in k2 if x < n), sum(1 for x in k2 if x >= n))
                shift = (bd[0] - p, bd[1] - q)
                name = next((c for c, s in SHIFTS.items() if s == shift), None)
                if name is None:
                    raise ComplexError(f"d has a component of bidegree {shift}")
                cols[name][index[bd][k2]][j] = coeff.constant_value()
        for c in COMPONENTS:
            maps[c][(p, q)] = cols[c]
    return FourComplex(dims, maps, bound=n, basis=basis, conj=conj_matrices(basis, n),
                       label=f"CE({model.label})")


def conj_matrices(basis, n):
    out = {}
    for (p, q), keys in basis.items():
        tgt = {k: i for i, k in enumerate(basis[(q, p)])}
        C = zeros(len(basis[(q, p)]), len(keys))
        for j, key in enumerate(keys):
            cx = conjugate_form(Form(n, terms={key: 1}))
            for k2, coeff in cx.terms.items():
                C[tgt[k2]][j] = coeff.constant_value()
        out[(p, q)] = C
    return out


def wedge_vectors(A: FourComplex, x, bx, y, by):
    """Product of coordinate vectors x in A^{bx} and y in A^{by} (CE complexes only)."""
    if A.basis is None:
        raise ComplexError("this complex carries no product")
    tb = (bx[0] + by[0], bx[1] + by[1])
    out = [GaussianRational(0)] * A.dim(*tb)
    if not out:
        return out
    index = {k: i for i, k in enumerate(A.basis[tb])}
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            s, key = merge_sign(A.basis[bx][i], A.basis[by][j])
            if s:
                out[index[key]] = out[index[key]] + (xi * yj if s > 0 else -(xi * yj))
    return out


# ------------------------------------------------------------------ builders

def double_complex(dims, dbar=None, dell=None, bound=None, label="double"):
    return FourComplex(dims, {"dbar": dbar or {}, "del": dell or {}}, bound=bound, label=label)


def conjugate_complex(A: FourComplex) -> FourComplex:
    """The complex with bidegrees swapped and (mubar, dbar, del, mu) -> (mu, del, dbar, mubar).

    Over the swapped spaces the matrices are entrywise conjugated.
    """
    swap = {"mubar": "mu", "mu": "mubar", "dbar": "del", "del": "dbar"}
    dims = {(q, p): d for (p, q), d in A.dims.items()}
    maps = {}
    for name, table in A.maps.items():
        maps[swap[name]] = {(q, p): [[x.conjugate() for x in r] for r in m]
                            for (p, q), m in table.items()}
    return FourComplex(dims, maps, bound=A.bound, label=f"conj({A.label})")


def product_complex(A: FourComplex, B: FourComplex) -> FourComplex:
    """Tensor product with the Koszul sign on the second factor."""
    dims = {}
    layout = {}
    for (p1, q1), d1 in A.dims.items():
        for (p2, q2), d2 in B.dims.items():
            bd = (p1 + p2, q1 + q2)
            layout.setdefault(bd, []).append(((p1, q1), (p2, q2), dims.get(bd, 0)))
            dims[bd] = dims.get(bd, 0) + d1 * d2
    offsets = {bd: {(a, b): off for a, b, off in lst} for bd, lst in layout.items()}
    maps = {c: {} for c in COMPONENTS}
    for c in COMPONENTS:
        dp, dq = SHIFTS[c]
        for bd, lst in layout.items():
            tb = (bd[0] + dp, bd[1] + dq)
            if tb not in dims:
                continue
            M = zeros(dims[tb], dims[bd])
            for a, b, off in lst:
                da, db = A.dim(*a), B.dim(*b)
                ma = A.maps[c].get(a)
                ta = (a[0] + dp, a[1] + dq)
                if ma is not None:
                    to = offsets[tb][(ta, b)]
                    for i, row in enumerate(ma):
                        for j, x in enumerate(row):
                            if x:
                                for t in range(db):
                                    M[to + i * db + t][off + j * db + t] = x
                mb = B.maps[c].get(b)
                tbb = (b[0] + dp, b[1] + dq)
                if mb is not None:
                    sign = -1 if (a[0] + a[1]) % 2 else 1
                    to = offsets[tb][(a, tbb)]
                    dtb = B.dim(*tbb)
                    for s in range(da):
                        for i, row in enumerate(mb):
                            for j, x in enumerate(row):
                                if x:
                                    M[to + s * dtb + i][off + s * db + j] = x if sign > 0 else -x
            maps[c][bd] = M
    return FourComplex(dims, maps, bound=A.bound + B.bound, label=f"{A.label}x{B.label}")


# ----------------------------------------------------------------------- JSON

def complex_from_dict(d) -> FourComplex:
    if not isinstance(d, dict) or not isinstance(d.get("dims"), dict):
        raise ComplexError("4-complex JSON needs a 'dims' object")

    def bd(s):
        try:
            p, q = (int(t) for t in s.split(","))
        except (ValueError, AttributeError):
            raise ComplexError(f"bad bidegree key {s!r}") from None
        return p, q

    dims = {bd(k): v for k, v in d["dims"].items()}
    for v in dims.values():
        if isinstance(v, bool) or not isinstance(v, int):
            raise ComplexError("dimensions must be integers")
    maps = {}
    for name in COMPONENTS:
        table = d.get(name, {})
        if not isinstance(table, dict):
            raise ComplexError(f"{name} must map 'p,q' keys to matrices")
        maps[name] = {bd(k): [[gauss_from_any(x) for x in r] for r in m] for k, m in table.items()}
    for key in d:
        if key not in ("dims", "bound", "label") + COMPONENTS:
            raise ComplexError(f"unknown field {key!r}")
    return FourComplex(dims, maps, bound=d.get("bound"), label=d.get("label", "complex"))


def load_complex(path) -> FourComplex:
    with open(path, encoding="utf-8") as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as e:
            raise ComplexError(f"{path}: malformed JSON ({e})") from None
    return complex_from_dict(d)


def is_complex_json(d) -> bool:
    return isinstance(d, dict) and "dims" in d and "kind" not in d


def all_bidegrees(bound):
    return list(cartesian(range(bound + 1), repeat=2))
