"""Exact linear algebra over the Gaussian rationals.

Matrices are lists of rows of ``GaussianRational``; vectors are lists.  A
matrix with zero rows still knows its column count through the explicit
``ncols`` arguments below.
"""

from __future__ import annotations

from typing import Sequence

from .scalar import ONE, ZERO, GaussianRational


class LinearAlgebraError(ArithmeticError):
    pass


def zeros(r: int, c: int):
    return [[ZERO] * c for _ in range(r)]


def identity(n: int):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def to_gauss_matrix(rows):
    return [[GaussianRational.coerce(x) for x in row] for row in rows]


def transpose(m, ncols: int | None = None):
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a, b, inner: int | None = None, ncols: int | None = None):
    """a (r x k) times b (k x c)."""
    if not a:
        return []
    if not b:
        c = ncols if ncols is not None else 0
        return [[ZERO] * c for _ in a]
    bt = list(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out_row = []
        for col in bt:
            s = ZERO
            for k, x in nz:
                y = col[k]
                if y:
                    s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return out


def matvec(m, v):
    out = []
    for row in m:
        s = ZERO
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def is_zero_matrix(m) -> bool:
    return all(not x for row in m for x in row)


def rref(rows, ncols: int):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = to_gauss_matrix(rows)
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        if inv != ONE:
            m[r] = [x * inv if x else x for x in m[r]]
        pr = m[r]
        nzc = [k for k in range(c, ncols) if pr[k]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for k in nzc:
                        row[k] = row[k] - f * pr[k]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols: int):
    """Basis of {x : M x = 0} as a list of vectors."""
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, pc in enumerate(piv):
            x = red[r][f]
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def inverse(m):
    n = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise LinearAlgebraError("matrix is singular")
    return [row[n:] for row in red]


class Subspace:
    """Subspace of Q(i)^dim held as a reduced echelon basis."""

    __slots__ = ("dim_ambient", "rows", "pivots")

    def __init__(self, dim_ambient: int, vectors: Sequence = ()):
        self.dim_ambient = dim_ambient
        self.rows, self.pivots = rref(list(vectors), dim_ambient)

    @classmethod
    def full(cls, n):
        return cls(n, identity(n))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self):
        return self.rows

    def reduce(self, v):
        """Remainder of v after clearing pivot entries; zero iff v lies in the span."""
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                for k, x in enumerate(row):
                    if x:
                        v[k] = v[k] - f * x
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def contains_all(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.rows)

    def __add__(self, other: "Subspace"):
        return Subspace(self.dim_ambient, self.rows + other.rows)

    def annihilator(self):
        """Rows w with w.v = 0 for every v in the subspace (bilinear pairing)."""
        return nullspace(self.rows, self.dim_ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.rows or not other.rows:
            return Subspace(self.dim_ambient)
        return Subspace(self.dim_ambient,
                        nullspace(self.annihilator() + other.annihilator(), self.dim_ambient))

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.dim_ambient == other.dim_ambient
                and self.pivots == other.pivots and self.rows == other.rows)

    __hash__ = None

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.dim_ambient})"


def kernel(m, ncols: int) -> Subspace:
    return Subspace(ncols, nullspace(m, ncols))


def image(m, nrows: int, source: Subspace | None = None) -> Subspace:
    """Column space of m (nrows x k), optionally restricted to a source subspace."""
    if source is None:
        cols = transpose(m)
    else:
        cols = [matvec(m, v) for v in source.rows]
    return Subspace(nrows, cols)


def preimage(m, ncols: int, target: Subspace, source: Subspace | None = None) -> Subspace:
    """{x in source : m x in target}."""
    ann = target.annihilator()
    if source is None:
        if not ann:
            return Subspace.full(ncols)
        return Subspace(ncols, nullspace(matmul(ann, m, ncols=ncols), ncols))
    if not source.rows:
        return Subspace(ncols)
    if not ann:
        return Subspace(ncols, source.rows)
    b = transpose(source.rows)  # ncols x k
    coeffs = nullspace(matmul(matmul(ann, m, ncols=ncols), b, ncols=source.dim), source.dim)
    return Subspace(ncols, [matvec(b, y) for y in coeffs])


class Quotient:
    """Z/B for subspaces B <= Z of a common ambient space.

    ``reps`` are ambient vectors completing a basis of B to one of Z; the
    coordinates of a class are its components along ``reps``.
    """

    def __init__(self, Z: Subspace, B: Subspace):
        if not Z.contains_all(B):
            raise LinearAlgebraError("quotient requested by a subspace not contained in Z")
        self.Z, self.B = Z, B
        # extend B's echelon basis by rows of Z that are new
        basis = list(B.rows)
        probe = Subspace(Z.dim_ambient, basis)
        reps = []
        for v in Z.rows:
            if not probe.contains(v):
                reps.append(v)
                basis.append(v)
                probe = Subspace(Z.dim_ambient, basis)
        self.reps = reps
        self._basis = basis
        n = Z.dim_ambient
        if basis:
            _, piv = rref(basis, n)
            sub = [[row[c] for c in piv] for row in basis]  # k x k, invertible
            self._piv = piv
            self._solve = inverse(transpose(sub))
        else:
            self._piv = []
            self._solve = []

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v, check: bool = True):
        """Class of v (which must lie in Z) in the rep basis."""
        if not self._basis:
            if check and any(v):
                raise LinearAlgebraError("vector is not in the cycle space")
            return []
        rhs = [v[c] for c in self._piv]
        x = matvec(self._solve, rhs)
        if check:
            recon = [ZERO] * self.Z.dim_ambient
            for xi, row in zip(x, self._basis):
                if xi:
                    recon = [a + xi * b if b else a for a, b in zip(recon, row)]
            if any(a != b for a, b in zip(recon, v)):
                raise LinearAlgebraError("vector is not in the cycle space", v)
        return x[len(self.B.rows):]

    def lift(self, y):
        out = [ZERO] * self.Z.dim_ambient
        for yi, r in zip(y, self.reps):
            if yi:
                out = [a + yi * b if b else a for a, b in zip(out, r)]
        return out


def induced_map(m, src: Quotient, dst: Quotient, name: str = "map"):
    """Matrix of the map Z_src/B_src -> Z_dst/B_dst induced by the ambient matrix m.

    Raises with a witness vector when m fails to carry cycles to cycles or
    boundaries to boundaries.
    """
    for b in src.B.rows:
        w = matvec(m, b)
        if not dst.B.contains(w):
            raise LinearAlgebraError(f"{name} does not preserve boundaries", b)
    cols = []
    for r in src.reps:
        w = matvec(m, r)
        if not dst.Z.contains(w):
            raise LinearAlgebraError(f"{name} does not preserve cycles", r)
        cols.append(dst.coords(w, check=False))
    return transpose(cols, dst.dim) if cols else [[] for _ in range(dst.dim)]
