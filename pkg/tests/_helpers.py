"""Shared test utilities: boundary perturbations for the pairing."""

from acslab.fourcomplex import PairingEngine, h_aeppli, h_bc
from acslab.fourcomplex.cohomology import composite
from acslab.linalg import matvec
from acslab.scalar import ZERO, GaussianRational


def rvec(rng, n):
    return [GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)]


def combine(rng, rows, n):
    out = [ZERO] * n
    for r in rows:
        c = GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2))
        out = [a + c * b for a, b in zip(out, r)]
    return out


def perturb_checks(A, rng, trials=20):
    """Pair class representatives, then re-pair after adding boundaries to both sides.

    x moves by del dbar z with z in A_s; y moves by images of del, dbar, mubar, mu.
    Returns the number of perturbed pairs checked; raises AssertionError on a change.
    """
    E = PairingEngine(A)
    bc, ae = h_bc(A), h_aeppli(A)
    count = 0
    for bx, xs in bc.reps.items():
        for by, ys in ae.reps.items():
            tb = (bx[0] + by[0], bx[1] + by[1])
            if A.dim(*tb) == 0:
                continue
            x, y = xs[0], ys[0]
            base = E.pair(x, bx, y, by)
            for _ in range(trials):
                x2 = list(x)
                zb = (bx[0] - 1, bx[1] - 1)
                if A.dim(*zb):
                    z = combine(rng, E.Ds.inclusion.get(zb, []), A.dim(*zb))
                    m, _ = composite(A, ("dbar", "del"), *zb)
                    x2 = [a + b for a, b in zip(x2, matvec(m, z))]
                y2 = list(y)
                for name, (dp, dq) in (("del", (1, 0)), ("dbar", (0, 1)), ("mubar", (-1, 2)), ("mu", (2, -1))):
                    s = (by[0] - dp, by[1] - dq)
                    if A.dim(*s):
                        y2 = [a + b for a, b in zip(y2, matvec(A.mat(name, *s), rvec(rng, A.dim(*s))))]
                assert E.pair(x2, bx, y2, by) == base, (bx, by)
                count += 1
    return count
