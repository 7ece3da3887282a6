"""Cohomologies of 4-complexes: Dolbeault, Bott-Chern, Aeppli, de Rham, Froelicher.

Every subquotient is held as a ``Quotient(Z, B)`` of ambient subspaces, so
classes have explicit representatives and induced maps are computed (and
checked) on ambient vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..linalg import (LinearAlgebraError, Quotient, Subspace, identity, image, induced_map,
                      is_zero_matrix, kernel, matmul, matvec, preimage, rank, zeros)
from ..scalar import ONE, ZERO
from .complex import SHIFTS, ComplexError, FourComplex, verify_relations, wedge_vectors


@dataclass
class CohomologyTable:
    theory: str
    table: dict
    reps: dict = field(default_factory=dict)

    def get(self, key, default=0):
        return self.table.get(key, default)

    def to_json(self):
        def k(x):
            return f"{x[0]},{x[1]}" if isinstance(x, tuple) else str(x)
        return {"theory": self.theory,
                "table": {k(x): d for x, d in sorted(self.table.items()) if d}}

    def totals(self, top):
        out = [0] * (top + 1)
        for (p, q), d in self.table.items():
            out[p + q] += d
        return out


@dataclass
class SpectralPage:
    r: int
    dims: dict
    degenerate_from: int | None = None

    def totals(self, top):
        out = [0] * (top + 1)
        for (p, q), d in self.dims.items():
            out[p + q] += d
        return out

    def to_json(self):
        return {"r": self.r, "dims": {f"{p},{q}": d for (p, q), d in sorted(self.dims.items()) if d},
                "degenerate_from": self.degenerate_from}


def _require(A):
    ok, bad = verify_relations(A)
    if not ok:
        raise ComplexError(f"relation {bad[0]} fails at bidegree {bad[1]}", witness=bad)


def _table(theory, quotients):
    return CohomologyTable(theory, {k: q.dim for k, q in quotients.items() if q.dim},
                           {k: q.reps for k, q in quotients.items() if q.dim})


# --------------------------------------------------------------- basic spaces

def ker(A, name, p, q) -> Subspace:
    return kernel(A.mat(name, p, q), A.dim(p, q))


def im_into(A, name, p, q, source: Subspace | None = None) -> Subspace:
    """Image of ``name`` landing in A^{p,q} (optionally from a subspace of its source)."""
    dp, dq = SHIFTS[name]
    sp, sq = p - dp, q - dq
    if A.dim(sp, sq) == 0:
        return Subspace(A.dim(p, q))
    return image(A.mat(name, sp, sq), A.dim(p, q), source)


def composite(A, names, p, q):
    """Matrix of names[-1] o ... o names[0] starting at (p,q)."""
    m = identity(A.dim(p, q))
    cur = (p, q)
    for name in names:
        m = matmul(A.mat(name, *cur), m, ncols=A.dim(p, q))
        dp, dq = SHIFTS[name]
        cur = (cur[0] + dp, cur[1] + dq)
    return m, cur


# ------------------------------------------------------------- Dolbeault types

def _dolbeault_spaces(A, first, second, theory):
    """H_second(H_first(A)) as ambient Z/B per bidegree, with checks."""
    out = {}
    for (p, q) in A.bidegrees():
        n = A.dim(p, q)
        d1 = SHIFTS[first]
        d2 = SHIFTS[second]
        K = ker(A, first, p, q)
        Bf = im_into(A, first, p, q)
        # the induced map H_first -> H_first must be well defined
        tp, tq = p + d2[0], q + d2[1]
        if A.dim(tp, tq):
            try:
                induced_map(A.mat(second, p, q), Quotient(K, Bf),
                            Quotient(ker(A, first, tp, tq), im_into(A, first, tp, tq)),
                            name=f"{second} on H_{first}")
            except LinearAlgebraError as e:
                raise ComplexError(f"{theory}: {e.args[0]} at ({p},{q})", witness=e.args[1:])
            Z = K.intersect(preimage(A.mat(second, p, q), n, im_into(A, first, tp, tq)))
        else:
            Z = K
        sp, sq = p - d2[0], q - d2[1]
        Bs = im_into(A, second, p, q, ker(A, first, sp, sq)) if A.dim(sp, sq) else Subspace(n)
        out[(p, q)] = Quotient(Z, Bf + Bs)
    return out


def h_dol(A: FourComplex) -> CohomologyTable:
    """H_dbar(H_mubar(A))."""
    _require(A)
    return _table("dol", _dolbeault_spaces(A, "mubar", "dbar", "dol"))


def h_dolbar(A: FourComplex) -> CohomologyTable:
    """H_del(H_mu(A))."""
    _require(A)
    return _table("dolbar", _dolbeault_spaces(A, "mu", "del", "dolbar"))


def h_dbar_direct(A: FourComplex) -> CohomologyTable:
    """Plain dbar-cohomology; only meaningful when dbar^2 = 0."""
    qs = {}
    for (p, q) in A.bidegrees():
        qs[(p, q)] = Quotient(ker(A, "dbar", p, q), im_into(A, "dbar", p, q))
    return _table("dbar", qs)


# --------------------------------------------------------- sub/quotient complexes

def sub_double(A: FourComplex) -> FourComplex:
    """A_s = ker mubar n ker dbar^2 n ker del^2 n ker mu, with del and dbar restricted."""
    _require(A)
    spaces = {}
    for (p, q) in A.bidegrees():
        n = A.dim(p, q)
        S = ker(A, "mubar", p, q).intersect(ker(A, "mu", p, q))
        for names in (("dbar", "dbar"), ("del", "del")):
            m, _ = composite(A, names, p, q)
            S = S.intersect(kernel(m, n))
        spaces[(p, q)] = S
    maps = {"dbar": {}, "del": {}}
    for (p, q), S in spaces.items():
        for name in ("dbar", "del"):
            dp, dq = SHIFTS[name]
            T = spaces.get((p + dp, q + dq))
            cols = []
            for v in S.rows:
                w = matvec(A.mat(name, p, q), v)
                if T is None:
                    if any(w):
                        raise ComplexError(f"A_s is not closed under {name}", witness=v)
                    continue
                if not T.contains(w):
                    raise ComplexError(f"A_s is not closed under {name}", witness=v)
                cols.append([w[c] for c in T.pivots])
            if T is not None and cols and T.dim:
                maps[name][(p, q)] = [list(r) for r in zip(*cols)]
    # the simplified relations on A_s, checked on ambient vectors
    for (p, q), S in spaces.items():
        for v in S.rows:
            for outer, inner in (("mubar", "dbar"), ("mubar", "del"), ("mu", "dbar"), ("mu", "del")):
                m, _ = composite(A, (inner, outer), p, q)
                if any(matvec(m, v)):
                    raise ComplexError(f"{outer} {inner} != 0 on A_s", witness=v)
            m1, _ = composite(A, ("del", "dbar"), p, q)
            m2, _ = composite(A, ("dbar", "del"), p, q)
            if any(a + b for a, b in zip(matvec(m1, v), matvec(m2, v))):
                raise ComplexError("dbar del + del dbar != 0 on A_s", witness=v)
    D = FourComplex({k: S.dim for k, S in spaces.items()}, maps, bound=A.bound,
                    label=f"A_s({A.label})")
    ok, bad = verify_relations(D)
    if not ok:
        raise ComplexError(f"A_s is not a double complex: {bad[0]} at {bad[1]}")
    D.inclusion = {k: S.rows for k, S in spaces.items()}
    return D


def _quotient_spaces(A):
    out = {}
    for (p, q) in A.bidegrees():
        n = A.dim(p, q)
        R = im_into(A, "mubar", p, q) + im_into(A, "mu", p, q)
        for names in (("dbar", "dbar"), ("del", "del")):
            dp = sum(SHIFTS[x][0] for x in names)
            dq = sum(SHIFTS[x][1] for x in names)
            sp, sq = p - dp, q - dq
            if A.dim(sp, sq):
                m, _ = composite(A, names, sp, sq)
                R = R + image(m, n)
        out[(p, q)] = Quotient(Subspace.full(n), R)
    return out


def quotient_double(A: FourComplex) -> FourComplex:
    """A_q = A / (im mubar + im dbar^2 + im del^2 + im mu) with induced del and dbar."""
    _require(A)
    spaces = _quotient_spaces(A)
    maps = {"dbar": {}, "del": {}}
    for (p, q), Qs in spaces.items():
        for name in ("dbar", "del"):
            dp, dq = SHIFTS[name]
            T = spaces.get((p + dp, q + dq))
            if T is None or not Qs.dim or not T.dim:
                continue
            try:
                maps[name][(p, q)] = induced_map(A.mat(name, p, q), Qs, T, name=f"{name} on A_q")
            except LinearAlgebraError as e:
                raise ComplexError(f"{e.args[0]} at ({p},{q})", witness=e.args[1:])
    D = FourComplex({k: Qs.dim for k, Qs in spaces.items()}, maps, bound=A.bound,
                    label=f"A_q({A.label})")
    ok, bad = verify_relations(D)
    if not ok:
        raise ComplexError(f"A_q is not a double complex: {bad[0]} at {bad[1]}")
    D.projection = spaces
    return D


# ------------------------------------------------------------ Bott-Chern, Aeppli

def _bc_spaces(D):
    out = {}
    for (p, q) in D.bidegrees():
        Z = ker(D, "del", p, q).intersect(ker(D, "dbar", p, q))
        if D.dim(p - 1, q - 1):
            m, _ = composite(D, ("dbar", "del"), p - 1, q - 1)
            B = image(m, D.dim(p, q))
        else:
            B = Subspace(D.dim(p, q))
        out[(p, q)] = Quotient(Z, B)
    return out


def _aeppli_spaces(D):
    out = {}
    for (p, q) in D.bidegrees():
        m, _ = composite(D, ("dbar", "del"), p, q)
        Z = kernel(m, D.dim(p, q))
        out[(p, q)] = Quotient(Z, im_into(D, "del", p, q) + im_into(D, "dbar", p, q))
    return out


def h_bc(A: FourComplex) -> CohomologyTable:
    D = sub_double(A)
    qs = _bc_spaces(D)
    t = _table("bc", qs)
    # representatives in the ambient complex
    t.reps = {k: [_lift_sub(D, k, v) for v in q.reps] for k, q in qs.items() if q.dim}
    return t


def h_aeppli(A: FourComplex) -> CohomologyTable:
    D = quotient_double(A)
    qs = _aeppli_spaces(D)
    t = _table("aeppli", qs)
    t.reps = {k: [D.projection[k].lift(v) for v in q.reps] for k, q in qs.items() if q.dim}
    return t


def _lift_sub(D, k, v):
    rows = D.inclusion[k]
    out = [ZERO] * len(rows[0])
    for c, r in zip(v, rows):
        if c:
            out = [a + c * b if b else a for a, b in zip(out, r)]
    return out


def h_bc_double(D: FourComplex) -> CohomologyTable:
    return _table("bc", _bc_spaces(D))


def h_aeppli_double(D: FourComplex) -> CohomologyTable:
    return _table("aeppli", _aeppli_spaces(D))


# -------------------------------------------------------------------- de Rham

def derham_spaces(A):
    out = {}
    for k in A.total_degrees():
        _, nk = A.total_layout(k)
        Z = kernel(A.total_d(k), nk)
        _, nprev = A.total_layout(k - 1)
        B = image(A.total_d(k - 1), nk) if nprev else Subspace(nk)
        out[k] = Quotient(Z, B)
    return out


def h_derham(A: FourComplex) -> CohomologyTable:
    """Cohomology of the total complex; the table is keyed by total degree."""
    _require(A)
    qs = derham_spaces(A)
    t = CohomologyTable("derham", {k: q.dim for k, q in qs.items() if q.dim},
                        {k: q.reps for k, q in qs.items() if q.dim})
    t.filtration = {k: [_filtered_dim(A, k, P, qs[k]) for P in range(A.bound + 3)]
                    for k in qs}
    return t


def betti(A: FourComplex):
    qs = derham_spaces(A)
    return [qs[k].dim for k in A.total_degrees()]


# ----------------------------------------------------------------- Froelicher

def filtration(A: FourComplex, k: int, P: int) -> Subspace:
    """F^P in total degree k: (A^{P-1, k-P+1} n ker mubar) + sum_{i >= P} A^{i, k-i}.

    The plain column filtration is not preserved by d once mubar != 0; adding
    the mubar-closed part of the previous column makes it d-stable and keeps
    the classical filtration on double complexes.
    """
    layout, nk = A.total_layout(k)
    vecs = []
    for p, q, off in layout:
        dpq = A.dim(p, q)
        if p >= P:
            for i in range(dpq):
                v = [ZERO] * nk
                v[off + i] = ONE
                vecs.append(v)
        elif p == P - 1:
            for r in ker(A, "mubar", p, q).rows:
                v = [ZERO] * nk
                v[off:off + dpq] = r
                vecs.append(v)
    return Subspace(nk, vecs)


def _filtered_dim(A, k, P, Hq: Quotient):
    """dim of F^P H^k = image of F^P n ker d."""
    F = filtration(A, k, P)
    return (F.intersect(Hq.Z) + Hq.B).dim - Hq.B.dim


def frolicher(A: FourComplex, r_max: int = 4):
    """Pages E_1..E_{r_max}; E_r^{p,q} sits at filtration index p+1, total degree p+q.

    Uses E_r^P = Z_r^P / (Z_{r-1}^{P+1} + d Z_{r-1}^{P-r+1}) with
    Z_r^P = F^P n d^{-1}(F^{P+r}).  The last element of the returned list is
    E_infinity (r = None) read off from the filtration on de Rham cohomology.
    """
    _require(A)
    top = 2 * A.bound
    tops = A.bound + 2
    F = {}

    def filt(k, P):
        key = (k, max(P, 0) if P <= 0 else P)
        if key not in F:
            F[key] = filtration(A, k, P)
        return F[key]

    Zc = {}

    def Zr(r, k, P):
        key = (r, k, P)
        if key not in Zc:
            _, nk = A.total_layout(k)
            if nk == 0:
                Zc[key] = Subspace(0)
            else:
                dk = A.total_d(k)
                _, nn = A.total_layout(k + 1)
                target = filt(k + 1, P + r) if nn else Subspace(0)
                Zc[key] = filt(k, P).intersect(preimage(dk, nk, target)) if nn else filt(k, P)
        return Zc[key]

    def page(r):
        dims = {}
        for k in range(top + 1):
            _, nk = A.total_layout(k)
            if nk == 0:
                continue
            for P in range(1, tops):
                Z = Zr(r, k, P)
                low = Zr(r - 1, k, P + 1)
                _, nprev = A.total_layout(k - 1)
                if nprev:
                    src = Zr(r - 1, k - 1, P - r + 1)
                    low = low + image(A.total_d(k - 1), nk, src)
                d = Z.dim - low.dim
                if d:
                    dims[(P - 1, k - P + 1)] = d
        return dims

    hq = derham_spaces(A)
    einf = {}
    for k in range(top + 1):
        fd = [_filtered_dim(A, k, P, hq[k]) for P in range(0, tops + 1)]
        for P in range(1, tops):
            d = fd[P] - fd[P + 1]
            if d:
                einf[(P - 1, k - P + 1)] = d
    pages = []
    degenerate = None
    r = 1
    limit = max(r_max, top + 3)
    while r <= limit:
        dims = page(r)
        if r <= r_max:
            pages.append(SpectralPage(r, dims))
        if degenerate is None and dims == einf:
            degenerate = r
            if r >= r_max:
                break
        r += 1
    for pg in pages:
        pg.degenerate_from = degenerate
    pages.append(SpectralPage(None, einf, degenerate))
    return pages


# ------------------------------------------------------------------- diagram

def _embed_total(A, k, vectors_by_bd, dim_of):
    """Embed per-bidegree vectors into the total space of degree k."""
    layout, nk = A.total_layout(k)
    out = []
    for p, q, off in layout:
        for v in vectors_by_bd.get((p, q), []):
            w = [ZERO] * nk
            w[off:off + dim_of(p, q)] = v
            out.append(w)
    return out


def _total_quotient(A, k, qs):
    layout, nk = A.total_layout(k)
    Z = _embed_total(A, k, {bd: q.Z.rows for bd, q in qs.items()}, A.dim)
    B = _embed_total(A, k, {bd: q.B.rows for bd, q in qs.items()}, A.dim)
    return Quotient(Subspace(nk, Z), Subspace(nk, B))


def _block(A, D, k, blocks, rows_of, cols_of):
    """Block-diagonal matrix total(D, k) <- total(A, k) (or the reverse) from per-bidegree blocks."""
    lr, nr = rows_of.total_layout(k)
    lc, nc = cols_of.total_layout(k)
    M = zeros(nr, nc)
    ro = {(p, q): off for p, q, off in lr}
    for p, q, off in lc:
        if (p, q) not in ro or (p, q) not in blocks:
            continue
        b = blocks[(p, q)]
        r0 = ro[(p, q)]
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                if x:
                    M[r0 + i][off + j] = x
    return M


def _is_iso(m, nr, nc):
    return nr == nc and rank(m, nc) == nc if nc else nr == 0


def diagram_maps(A: FourComplex):
    """Induced maps BC -> Dol, Dolbar, dR -> Aeppli per total degree.

    Returns {"maps": {name: {k: matrix}}, "commutes": bool, "ddbar_property":
    bool, "isomorphisms": {name: bool}}.
    """
    _require(A)
    Ds = sub_double(A)
    Dq = quotient_double(A)
    bc = _bc_spaces(Ds)
    ae = _aeppli_spaces(Dq)
    dol = _dolbeault_spaces(A, "mubar", "dbar", "dol")
    dolbar = _dolbeault_spaces(A, "mu", "del", "dolbar")
    dr = derham_spaces(A)
    incl_blocks = {bd: [list(r) for r in zip(*rows)] for bd, rows in Ds.inclusion.items() if rows}
    proj_blocks = {}
    for bd, Qs in Dq.projection.items():
        n = A.dim(*bd)
        cols = [Qs.coords([ONE if i == j else ZERO for i in range(n)], check=False) for j in range(n)]
        proj_blocks[bd] = [list(r) for r in zip(*cols)] if Qs.dim else []
    names = ["bc->dol", "bc->dolbar", "bc->dr", "dol->a", "dolbar->a", "dr->a"]
    maps = {nm: {} for nm in names}
    iso = {nm: True for nm in names}
    commutes = True
    for k in A.total_degrees():
        _, nA = A.total_layout(k)
        _, ns = Ds.total_layout(k)
        _, nq = Dq.total_layout(k)
        if not (nA or ns or nq):
            continue
        BCk = _total_quotient(Ds, k, bc)
        AEk = _total_quotient(Dq, k, ae)
        DOLk = _total_quotient(A, k, dol)
        DBk = _total_quotient(A, k, dolbar)
        DRk = dr[k]
        incl = _block(A, Ds, k, incl_blocks, A, Ds)
        proj = _block(A, Dq, k, proj_blocks, Dq, A)
        try:
            m = {
                "bc->dol": induced_map(incl, BCk, DOLk, "BC->Dol"),
                "bc->dolbar": induced_map(incl, BCk, DBk, "BC->Dolbar"),
                "bc->dr": induced_map(incl, BCk, DRk, "BC->dR"),
                "dol->a": induced_map(proj, DOLk, AEk, "Dol->A"),
                "dolbar->a": induced_map(proj, DBk, AEk, "Dolbar->A"),
                "dr->a": induced_map(proj, DRk, AEk, "dR->A"),
            }
            direct = induced_map(matmul(proj, incl, ncols=ns) if nq else [], BCk, AEk, "BC->A")
        except LinearAlgebraError as e:
            raise ComplexError(f"diagram map not well defined in degree {k}: {e.args[0]}",
                               witness=e.args[1:])
        dims = {"bc": BCk.dim, "dol": DOLk.dim, "dolbar": DBk.dim, "dr": DRk.dim, "a": AEk.dim}
        for nm, mat in m.items():
            maps[nm][k] = mat
            s, t = nm.split("->")
            if not _is_iso(mat, dims[t], dims[s]):
                iso[nm] = False
        for left, right in (("bc->dol", "dol->a"), ("bc->dolbar", "dolbar->a"), ("bc->dr", "dr->a")):
            comp = matmul(m[right], m[left], ncols=BCk.dim) if AEk.dim else []
            if not _same(comp, direct, AEk.dim, BCk.dim):
                commutes = False
    return {"maps": maps, "commutes": commutes, "isomorphisms": iso,
            "ddbar_property": all(iso.values())}


def _same(a, b, nr, nc):
    a = a if a else zeros(nr, nc)
    b = b if b else zeros(nr, nc)
    a = [r if r else [ZERO] * nc for r in a] if nc else [[] for _ in range(nr)]
    b = [r if r else [ZERO] * nc for r in b] if nc else [[] for _ in range(nr)]
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)) and len(a) == len(b)


# ------------------------------------------------------------------- pairing

class PairingEngine:
    """H_BC x H_A -> H_A for complexes that carry a product."""

    def __init__(self, A: FourComplex):
        if A.basis is None:
            raise ComplexError("pairing needs a complex with a product (CE complexes)")
        _require(A)
        self.A = A
        self.Ds = sub_double(A)
        self.Dq = quotient_double(A)
        self.bc = _bc_spaces(self.Ds)
        self.ae = _aeppli_spaces(self.Dq)

    def bc_class(self, v, bd):
        """Coordinates of an ambient vector v as a Bott-Chern class (checked)."""
        S = Subspace(self.A.dim(*bd), self.Ds.inclusion.get(bd, []))
        if not S.contains(v):
            raise ComplexError("representative is not in A_s", witness=v)
        coords = [v[c] for c in S.pivots]
        return self.bc[bd].coords(coords)

    def a_class(self, v, bd):
        Qs = self.Dq.projection.get(bd)
        if Qs is None or bd not in self.ae:
            return []
        y = Qs.coords(v, check=False)
        return self.ae[bd].coords(y)

    def pair(self, x, bx, y, by):
        """Class of x ^ y in H_A^{bx+by}, for x a BC-cocycle and y an Aeppli cocycle."""
        self.bc_class(x, bx)
        self.a_class(y, by)
        prod = wedge_vectors(self.A, x, bx, y, by)
        tb = (bx[0] + by[0], bx[1] + by[1])
        if not prod:
            return []
        return self.a_class(prod, tb)


def pairing(A: FourComplex, bc_rep, bc_bd, a_rep, a_bd):
    return PairingEngine(A).pair(bc_rep, tuple(bc_bd), a_rep, tuple(a_bd))


def conjugation_symmetric(table: CohomologyTable) -> bool:
    return all(table.get((q, p)) == d for (p, q), d in table.table.items())


__all__ = [
    "CohomologyTable", "SpectralPage", "h_dol", "h_dolbar", "h_dbar_direct", "sub_double",
    "quotient_double", "h_bc", "h_aeppli", "h_derham", "betti", "frolicher", "diagram_maps",
    "pairing", "PairingEngine", "filtration", "conjugation_symmetric", "is_zero_matrix",
]
