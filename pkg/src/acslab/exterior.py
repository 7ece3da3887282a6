"""Sparse exterior algebra on 2n generators with ScalarFraction coefficients.

Generators 0..n-1 are the (1,0)-coframe w1..wn and n..2n-1 their conjugates
wb1..wbn.  A basis monomial is a strictly increasing index tuple, so every
unbarred factor sits before every barred one.  The same class also serves for
background coframes (dz/dzb or a real frame), where bidegrees are not used.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .scalar import EMPTY_ENV, ScalarEnv, ScalarFraction, as_fraction, format_fraction


class FormError(ValueError):
    pass


def merge_sign(a: Sequence[int], b: Sequence[int]):
    """(sign, merged) for e_a ^ e_b, or (0, None) when an index repeats."""
    if not a:
        return 1, tuple(b)
    if not b:
        return 1, tuple(a)
    sa = set(a)
    if any(x in sa for x in b):
        return 0, None
    inv = 0
    for y in b:
        inv += sum(1 for x in a if x > y)
    return (-1 if inv & 1 else 1), tuple(sorted(a + tuple(b) if isinstance(a, tuple) else list(a) + list(b)))


class Form:
    __slots__ = ("n", "env", "terms")

    def __init__(self, n: int, env: ScalarEnv = EMPTY_ENV, terms: Mapping | None = None):
        self.n = n
        self.env = env
        self.terms = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if list(key) != sorted(set(key)) or any(k < 0 or k >= 2 * n for k in key):
                raise FormError(f"bad basis key {key} for rank {n}")
            c = as_fraction(c, env)
            if not c.is_zero():
                self.terms[key] = c

    @classmethod
    def _make(cls, n, env, terms):
        obj = cls.__new__(cls)
        obj.n, obj.env, obj.terms = n, env, terms
        return obj

    @classmethod
    def zero(cls, n, env=EMPTY_ENV):
        return cls._make(n, env, {})

    @classmethod
    def scalar(cls, n, f, env=EMPTY_ENV):
        f = as_fraction(f, env)
        return cls._make(n, env, {(): f} if not f.is_zero() else {})

    @classmethod
    def generator(cls, n, k, env=EMPTY_ENV, coeff=1):
        c = as_fraction(coeff, env)
        return cls._make(n, env, {(k,): c} if not c.is_zero() else {})

    @classmethod
    def from_ik(cls, n, I: Iterable[int], K: Iterable[int], coeff=1, env=EMPTY_ENV):
        """Basis element w_I ^ wb_K with 1-based index sets."""
        key = tuple(sorted(i - 1 for i in I)) + tuple(sorted(n + k - 1 for k in K))
        return cls(n, env, {key: coeff})

    def _check(self, other):
        if not isinstance(other, Form):
            raise TypeError("expected a Form")
        if other.n != self.n:
            raise FormError(f"rank mismatch: {self.n} vs {other.n}")
        if other.env != self.env:
            raise FormError("coefficient environments differ")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        return Form._make(self.n, self.env, out)

    def __neg__(self):
        return Form._make(self.n, self.env, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        f = as_fraction(f, self.env)
        if f.is_zero():
            return Form.zero(self.n, self.env)
        out = {}
        for k, c in self.terms.items():
            v = c * f
            if not v.is_zero():
                out[k] = v
        return Form._make(self.n, self.env, out)

    def __mul__(self, f):
        if isinstance(f, Form):
            return NotImplemented
        return self.scale(f)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def degrees(self):
        return {len(k) for k in self.terms}

    def bidegree_of(self, key):
        p = sum(1 for x in key if x < self.n)
        return p, len(key) - p

    def bidegrees(self):
        return {self.bidegree_of(k) for k in self.terms}

    def coefficient(self, I=(), K=()):
        key = tuple(sorted(i - 1 for i in I)) + tuple(sorted(self.n + k - 1 for k in K))
        return self.terms.get(key, ScalarFraction.zero(self.env))

    def map_coefficients(self, fn):
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                out[k] = v
        return Form._make(self.n, self.env, out)

    def __repr__(self):
        return f"Form({render(self)!r})"

    def __str__(self):
        return render(self)


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    out = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            s, key = merge_sign(ka, kb)
            if not s:
                continue
            c = ca * cb
            if s < 0:
                c = -c
            if key in out:
                c = out[key] + c
                if c.is_zero():
                    del out[key]
                    continue
            out[key] = c
    return Form._make(a.n, a.env, out)


def wedge_all(forms: Sequence[Form], n: int, env=EMPTY_ENV) -> Form:
    out = Form.scalar(n, 1, env)
    for f in forms:
        out = wedge(out, f)
    return out


def bar_perm(n: int):
    return [k + n if k < n else k - n for k in range(2 * n)]


def conjugate_form(a: Form, perm: Sequence[int] | None = None) -> Form:
    """Antilinear conjugation; generator k goes to generator perm[k].

    The default swaps w_i and wb_i, giving sign (-1)^(|I||K|) on w_I ^ wb_K.
    """
    if perm is None:
        perm = bar_perm(a.n)
    out = {}
    for key, c in a.terms.items():
        img = [perm[k] for k in key]
        inv = sum(1 for x in range(len(img)) for y in range(x + 1, len(img)) if img[x] > img[y])
        v = c.conjugate()
        out[tuple(sorted(img))] = -v if inv & 1 else v
    return Form._make(a.n, a.env, out)


def project(a: Form, bideg) -> Form:
    p, q = bideg
    return Form._make(a.n, a.env, {k: c for k, c in a.terms.items() if a.bidegree_of(k) == (p, q)})


def change_basis(a: Form, images: Sequence[Form]) -> Form:
    """Substitute generator k by the 1-form images[k] and expand."""
    if not images:
        return a
    n = images[0].n
    env = images[0].env
    out = Form.zero(n, env)
    cache = {(): Form.scalar(n, 1, env)}

    def mono(key):
        if key not in cache:
            cache[key] = wedge(mono(key[:-1]), images[key[-1]])
        return cache[key]

    for key, c in a.terms.items():
        out = out + mono(key).scale(c)
    return out


def basis_keys(n: int, p: int, q: int):
    """Keys of w_I ^ wb_K with |I| = p, |K| = q, in lexicographic order."""
    from itertools import combinations
    return [tuple(I) + tuple(n + k for k in K)
            for I in combinations(range(n), p) for K in combinations(range(n), q)]


def key_label(n: int, key) -> str:
    parts = [f"w{k + 1}" if k < n else f"wb{k - n + 1}" for k in key]
    return "^".join(parts) if parts else "1"


def render(a: Form, names: Sequence[str] | None = None) -> str:
    """Text like ``(1/2i*u1)*w1^wb2 + 3*wb1``."""
    if a.is_zero():
        return "0"
    chunks = []
    for key in sorted(a.terms, key=lambda k: (len(k), k)):
        c = a.terms[key]
        lab = "^".join(names[k] for k in key) if names else key_label(a.n, key)
        if not key:
            chunks.append(f"({format_fraction(c)})")
        elif c == 1:
            chunks.append(lab)
        else:
            chunks.append(f"({format_fraction(c)})*{lab}")
    return " + ".join(chunks)
