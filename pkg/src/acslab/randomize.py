"""Seeded random inputs: Lie algebras, complex structures and double complexes."""

from __future__ import annotations

import random

from .acmodel.builders import lie_from_differentials, rotation_J
from .acmodel.model import ModelError
from .fourcomplex.complex import FourComplex
from .linalg import inverse, matmul, to_gauss_matrix


def unimodular(dim: int, rng: random.Random, steps: int = 6):
    """Random integer matrix of determinant 1 and its inverse, by elementary moves."""
    S = [[int(i == j) for j in range(dim)] for i in range(dim)]
    for _ in range(steps):
        i, j = rng.sample(range(dim), 2)
        c = rng.choice((-2, -1, 1, 2))
        for r in range(dim):
            S[r][i] += c * S[r][j]
    return S


def random_J(dim: int, rng: random.Random):
    """J = S J0 S^-1 with J0 the standard rotation and S unimodular."""
    J0 = to_gauss_matrix(rotation_J(dim, [(2 * k + 1, 2 * k + 2) for k in range(dim // 2)]))
    S = to_gauss_matrix(unimodular(dim, rng))
    return matmul(matmul(S, J0), inverse(S))


def _d_squared(diffs, dim):
    """Check d^2 = 0 on generators for differentials {k: {(i, j): c}} (1-based, i < j)."""
    def d1(k):
        return diffs.get(k, {})

    for k in range(1, dim + 1):
        acc = {}
        for (i, j), c in d1(k).items():
            # d(e^i ^ e^j) = de^i ^ e^j - e^i ^ de^j
            for (a, b), x in d1(i).items():
                key = tuple(sorted((a, b, j)))
                if len(set(key)) < 3:
                    continue
                sgn = _perm_sign((a, b, j), key)
                acc[key] = acc.get(key, 0) + sgn * c * x
            for (a, b), x in d1(j).items():
                key = tuple(sorted((i, a, b)))
                if len(set(key)) < 3:
                    continue
                sgn = _perm_sign((i, a, b), key)
                acc[key] = acc.get(key, 0) - sgn * c * x
        if any(acc.values()):
            return False
    return True


def _perm_sign(seq, srt):
    perm = [srt.index(x) for x in seq]
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


def random_nilpotent(dim: int, rng: random.Random, density: float = 0.5, tries: int = 500):
    """Differentials of a random nilpotent Lie algebra: de^k only involves e^1..e^{k-1}."""
    for _ in range(tries):
        diffs = {}
        for k in range(3, dim + 1):
            pairs = [(i, j) for i in range(1, k) for j in range(i + 1, k)]
            terms = {p: rng.choice((-1, 1, 2)) for p in pairs if rng.random() < density / len(pairs) * 2}
            if terms:
                diffs[k] = terms
        if _d_squared(diffs, dim):
            return diffs
    raise ModelError(f"no nilpotent algebra found in {tries} tries")


def random_ce_model(rng: random.Random, dim: int | None = None):
    """Random nilpotent Lie algebra with a random constant J, as a FramedModel."""
    dim = dim or rng.choice((4, 6))
    diffs = random_nilpotent(dim, rng)
    return lie_from_differentials(diffs, random_J(dim, rng), label=f"random_ce_{dim}")


def random_abelian_J(dim: int, rng: random.Random):
    from .acmodel.builders import abelian_lie
    return abelian_lie(dim, random_J(dim, rng))


# ------------------------------------------------------------ double complexes

# elementary shapes: (offsets of generators, dbar arrows, del arrows) with arrows
# as (source, target, coefficient) on generator positions
SHAPES = {
    "dot": ([(0, 0)], [], []),
    "dbar_line": ([(0, 0), (0, 1)], [(0, 1, 1)], []),
    "del_line": ([(0, 0), (1, 0)], [], [(0, 1, 1)]),
    "square": ([(0, 0), (0, 1), (1, 0), (1, 1)], [(0, 1, 1), (2, 3, -1)], [(0, 2, 1), (1, 3, 1)]),
    "zig": ([(0, 0), (0, 1), (1, 0)], [(0, 1, 1)], [(0, 2, 1)]),
    "zag": ([(1, 0), (0, 1), (1, 1)], [(0, 2, 1)], [(1, 2, -1)]),
}


def random_double_complex(rng: random.Random, bound: int = 2, pieces: int = 5, mix: bool = True):
    """Direct sum of random elementary shapes, then a random change of basis per bidegree."""
    gens = {}   # bidegree -> count
    arrows = {"dbar": [], "del": []}
    for _ in range(pieces):
        name = rng.choice(sorted(SHAPES))
        offs, dbar, dell = SHAPES[name]
        mp = bound - max(o[0] for o in offs)
        mq = bound - max(o[1] for o in offs)
        p0, q0 = rng.randint(0, mp), rng.randint(0, mq)
        ids = []
        for dp, dq in offs:
            bd = (p0 + dp, q0 + dq)
            ids.append((bd, gens.get(bd, 0)))
            gens[bd] = gens.get(bd, 0) + 1
        for key, arr in (("dbar", dbar), ("del", dell)):
            for s, t, c in arr:
                arrows[key].append((ids[s], ids[t], c))
    maps = {"dbar": {}, "del": {}}
    for key, arr in arrows.items():
        for (sb, si), (tb, ti), c in arr:
            m = maps[key].setdefault(sb, [[0] * gens[sb] for _ in range(gens[tb])])
            m[ti][si] += c
    if mix:
        change = {bd: unimodular(k, rng) if k > 1 else [[1]] for bd, k in gens.items()}
        inv = {bd: inverse(to_gauss_matrix(S)) for bd, S in change.items()}
        for key in maps:
            for sb, m in list(maps[key].items()):
                shift = (0, 1) if key == "dbar" else (1, 0)
                tb = (sb[0] + shift[0], sb[1] + shift[1])
                maps[key][sb] = matmul(matmul(to_gauss_matrix(change[tb]), to_gauss_matrix(m)), inv[sb])
    return FourComplex(gens, maps, bound=bound, label="random_double")
