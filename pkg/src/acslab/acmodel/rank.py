"""Symbolic and sampled rank of mubar, with a nowhere-vanishing certificate."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import numpy as np

from ..scalar import (DEFAULT_FLOOR, DEFAULT_RTOL, EvaluationError, Laurent, ScalarFraction,
                      grid_angles)
from ..symbolic import cancel, factor_laurent
from .model import FramedModel, mubar_matrix


def fraction_rank(rows):
    """(rank, pivot rows, pivot cols) of a matrix of ScalarFractions over the fraction field."""
    m = [list(r) for r in rows]
    if not m:
        return 0, [], []
    nr, nc = len(m), len(m[0])
    order = list(range(nr))
    prow, pcol = [], []
    r = 0
    for c in range(nc):
        cands = [i for i in range(r, nr) if not m[i][c].is_zero()]
        if not cands:
            continue
        p = min(cands, key=lambda i: len(m[i][c].num.terms) + len(m[i][c].den.terms))
        m[r], m[p] = m[p], m[r]
        order[r], order[p] = order[p], order[r]
        piv = m[r][c]
        for i in range(r + 1, nr):
            if not m[i][c].is_zero():
                f = m[i][c] / piv
                m[i] = [cancel(x - f * y) if not y.is_zero() else x for x, y in zip(m[i], m[r])]
        prow.append(order[r])
        pcol.append(c)
        r += 1
        if r == nr:
            break
    return r, prow, pcol


def generic_rank(model: FramedModel) -> int:
    return fraction_rank(mubar_matrix(model))[0]


# ------------------------------------------------------------------ sampling

def _model_params(model, params):
    if params is None:
        params = getattr(model, "param_values", ())
    if len(params) != len(model.env.params):
        raise EvaluationError(f"model has parameters {model.env.params}; supply their values")
    return tuple(params)


def evaluate_matrix(entries, angles, params=(), floor=DEFAULT_FLOOR):
    """Evaluate a matrix of ScalarFractions at N points: array (N, rows, cols)."""
    N = angles.shape[0]
    nr = len(entries)
    nc = len(entries[0]) if nr else 0
    out = np.zeros((N, nr, nc), dtype=complex)
    for i, row in enumerate(entries):
        for j, x in enumerate(row):
            if not x.is_zero():
                out[:, i, j] = x.evaluate_many(angles, params, floor=floor)
    return out


def numeric_ranks(mats, rtol=DEFAULT_RTOL):
    if mats.shape[1] == 0 or mats.shape[2] == 0:
        return np.zeros(mats.shape[0], dtype=int)
    s = np.linalg.svd(mats, compute_uv=False)
    tol = rtol * np.maximum(1.0, s[:, :1])
    return (s > tol).sum(axis=1)


def check_coframe_at(model, angles, params=(), floor=DEFAULT_FLOOR):
    """Raise EvaluationError where the coframe w, wb stops being a basis."""
    P = evaluate_matrix(model.P, angles, params, floor=floor)
    det = np.linalg.det(P) if P.shape[1] else np.ones(angles.shape[0])
    bad = np.abs(det) <= floor
    if bad.any():
        k = int(np.argmax(bad))
        pt = tuple(angles[k].tolist())
        raise EvaluationError(f"coframe degenerates at angles {list(pt)}", point=pt)


def rank_at(model: FramedModel, point=(), params=None, rtol=DEFAULT_RTOL, floor=DEFAULT_FLOOR) -> int:
    params = _model_params(model, params)
    angles = np.asarray(point, dtype=float).reshape(1, len(model.env.oscillators))
    check_coframe_at(model, angles, params, floor)
    mats = evaluate_matrix(mubar_matrix(model), angles, params, floor)
    return int(numeric_ranks(mats, rtol)[0])


# --------------------------------------------------------------- certificate

def _sqrt_bounds(x: Fraction, scale: int = 10 ** 30):
    """Rational lower/upper bounds for sqrt(x), x >= 0."""
    v = x * scale * scale
    lo = isqrt(v.numerator // v.denominator)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


def unit_dominant(p: Laurent):
    """Index term whose modulus beats the sum of all others, proving p != 0 on the torus.

    Returns the dominant exponent or None.  Parameters must be absent.
    """
    terms = list(p.terms.items())
    if not terms:
        return None
    if len(terms) == 1:
        return terms[0][0]
    bounds = [(e, _sqrt_bounds(c.norm2())) for e, c in terms]
    total_hi = sum(hi for _, (_, hi) in bounds)
    for e, (lo, hi) in bounds:
        if lo > total_hi - hi:
            return e
    return None


def _pivots(m):
    """Pivots of Gaussian elimination on a square fraction matrix (their product is +-det)."""
    m = [list(r) for r in m]
    k = len(m)
    out = []
    for c in range(k):
        p = next((r for r in range(c, k) if not m[r][c].is_zero()), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        out.append(m[c][c])
        for r in range(c + 1, k):
            if not m[r][c].is_zero():
                f = m[r][c] / m[c][c]
                m[r] = [cancel(x - f * y) if not y.is_zero() else x for x, y in zip(m[r], m[c])]
    return out


def _factor_pieces(pieces, label):
    """Factor numerators and denominators of a product of fractions; check dominance."""
    rows = []
    ok = True
    for x in pieces:
        for poly in (x.num, x.den):
            if poly.is_constant():
                continue
            _, _, facs = factor_laurent(poly)
            for f, k in facs:
                if len(f.terms) == 1:
                    continue
                dom = unit_dominant(f)
                rows.append({"factor": str(f), "power": k, "dominant": dom is not None})
                ok = ok and dom is not None
    return ok, {"of": label, "factors": rows}


def certificate(model: FramedModel, mubar=None):
    """Certificate that mubar has constant rank d = generic rank everywhere.

    Takes the d x d minor on the pivot rows and columns of the exact
    elimination and factors the elimination pivots of that minor and of the
    coframe matrix (w, wb).  If every irreducible factor has a term whose
    modulus beats the sum of the others, none of them vanishes on the unit
    torus, so the model is defined everywhere and the minor never vanishes.
    Returns a dict or None.
    """
    if model.env.params:
        return None
    mb = mubar if mubar is not None else mubar_matrix(model)
    d, prow, pcol = fraction_rank(mb)
    if d == 0:
        return None
    piv = _pivots([[mb[i][j] for j in pcol] for i in prow])
    ok1, minor_rep = _factor_pieces(piv, "mubar minor")
    ok2, frame_rep = _factor_pieces(_pivots(model.P), "coframe determinant")
    if not (ok1 and ok2):
        return None
    return {"rank": d, "rows": [i + 1 for i in prow], "columns": [j + 1 for j in pcol],
            "parts": [minor_rep, frame_rep]}


def coframe_det(model: FramedModel) -> ScalarFraction:
    """det of the matrix of (w, wb) over the background, up to sign."""
    out = ScalarFraction.const(model.env, 1)
    for p in _pivots(model.P) or [ScalarFraction.zero(model.env)]:
        out = cancel(out * p)
    return out


# ------------------------------------------------------------------ report

@dataclass
class RankReport:
    n: int
    generic_rank: int
    sampled_min_rank: int
    sampled_max_rank: int
    witness: tuple
    classification: str
    grid: int
    points: int
    certificate: dict | None = None
    max_rank: int = 0
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "n": self.n,
            "generic_rank": self.generic_rank,
            "sampled_min_rank": self.sampled_min_rank,
            "sampled_max_rank": self.sampled_max_rank,
            "max_rank": self.max_rank,
            "witness": [round(x, 12) for x in self.witness],
            "classification": self.classification,
            "grid": self.grid,
            "points": self.points,
            "certificate": self.certificate,
        }


def classify(generic: int, smin: int, max_rank: int, certified: bool) -> str:
    if generic == 0:
        return "integrable"
    if smin == 0:
        return "degenerate-somewhere"
    tag = "certified" if certified else "sampled"
    if smin == max_rank:
        return f"maximally-non-integrable ({tag})"
    return f"everywhere-non-integrable ({tag})"


def min_sampled_rank(model: FramedModel, grid: int = 9, params=None, rtol=DEFAULT_RTOL,
                     floor=DEFAULT_FLOOR, symbolic: bool = True) -> RankReport:
    """Rank of mubar on the full angle grid plus exact generic rank and certificate."""
    if grid < 1:
        raise ValueError("grid size must be >= 1")
    params = _model_params(model, params)
    mb = mubar_matrix(model)
    generic = fraction_rank(mb)[0]
    angles = grid_angles(len(model.env.oscillators), grid)
    check_coframe_at(model, angles, params, floor)
    ranks = numeric_ranks(evaluate_matrix(mb, angles, params, floor), rtol)
    k = int(np.argmin(ranks))
    smin, smax = int(ranks[k]), int(ranks.max())
    cert = None
    if symbolic and generic > 0 and smin == generic:
        cert = certificate(model, mb)
    rep = RankReport(n=model.n, generic_rank=generic, sampled_min_rank=smin, sampled_max_rank=smax,
                     witness=tuple(angles[k].tolist()), grid=grid, points=int(angles.shape[0]),
                     certificate=cert, max_rank=model.max_rank,
                     classification=classify(generic, smin, model.max_rank, cert is not None))
    if smax > generic:
        rep.notes.append("sampled rank exceeds generic rank: numerical tolerance too loose")
    return rep
