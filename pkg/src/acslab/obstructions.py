"""Integer checks of the topological constraints on maximally non-integrable structures.

Everything is exact: Python integers and Fractions only.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb


class ObstructionError(ValueError):
    pass


DEFINITENESS = ("positive-definite", "negative-definite", "indefinite", "zero-form")


@dataclass(frozen=True)
class Dim4Invariants:
    chi: int
    sigma: int
    b_plus: int
    b_minus: int
    definiteness: str = ""

    def __post_init__(self):
        if self.b_plus < 0 or self.b_minus < 0:
            raise ObstructionError("b_plus and b_minus must be non-negative")
        if self.sigma != self.b_plus - self.b_minus:
            raise ObstructionError(
                f"inconsistent invariants: sigma={self.sigma} but b_plus-b_minus={self.b_plus - self.b_minus}")
        expected = self._definiteness()
        if not self.definiteness:
            object.__setattr__(self, "definiteness", expected)
        elif self.definiteness != expected:
            raise ObstructionError(
                f"inconsistent invariants: form with b+={self.b_plus}, b-={self.b_minus} is {expected}")

    @property
    def b2(self):
        return self.b_plus + self.b_minus

    def _definiteness(self):
        if self.b_plus == 0 and self.b_minus == 0:
            return "zero-form"
        if self.b_minus == 0:
            return "positive-definite"
        if self.b_plus == 0:
            return "negative-definite"
        return "indefinite"


@dataclass(frozen=True)
class ChernNumbers:
    """Chern numbers; for n=3 set c1c1c1, c1c2, c3, for n=4 the five degree-8 numbers.

    For n=4 the caller is responsible for c4 being the Euler characteristic.
    """
    n: int
    c1c1c1: int = 0
    c1c2: int = 0
    c3: int = 0
    c1p4: int = 0
    c1sq_c2: int = 0
    c1c3: int = 0
    c2sq: int = 0
    c4: int = 0


def dim4_value(chi: int, sigma: int) -> int:
    return 5 * chi + 6 * sigma


def mni_necessary_dim4(chi: int, sigma: int) -> bool:
    return dim4_value(chi, sigma) == 0


def mni_necessary_dim6(c: ChernNumbers) -> dict:
    checks = {"c1^3 = 0": c.c1c1c1 == 0, "c1c2 = 0": c.c1c2 == 0}
    return {
        "checks": checks,
        "pass": all(checks.values()),
        "note": "number-level consequences only; the class-level conditions "
                "(3c1 = 0 as a torsion class, c1^2 = 0 as a class) are not checked",
    }


def signature_dim8(c: ChernNumbers) -> Fraction:
    return Fraction(3 * c.c2sq - 14 * c.c1c3 + 14 * c.c4 - c.c1p4 + 4 * c.c1sq_c2, 45)


def mni_necessary_dim8(c: ChernNumbers) -> dict:
    check1 = c.c1c3 + 8 * c.c1p4 + c.c1sq_c2 == 0
    check2 = c.c4 - c.c1c3 + c.c1sq_c2 == 0
    derived = c.c4 == 2 * c.c1c3 + 8 * c.c1p4
    sigma = signature_dim8(c)
    out = {
        "check1": check1,
        "check2": check2,
        "derived_c4": derived,
        "sigma": str(sigma),
        "sigma_integral": sigma.denominator == 1,
        "chi_div6": c.c4 % 6 == 0,
    }
    out["pass"] = all(out[k] for k in ("check1", "check2", "derived_c4", "sigma_integral", "chi_div6"))
    return out


def four_mfd_classify(inv: Dim4Invariants, admits_acs_known: bool | None = None) -> dict:
    """Three-case arithmetic for closed 4-manifolds carrying a maximally non-integrable structure."""
    zero = mni_necessary_dim4(inv.chi, inv.sigma)
    definite = inv.definiteness in ("positive-definite", "negative-definite")
    cond_c = zero and inv.sigma % 4 == 0 and (not definite or inv.b_plus == 0)
    cond_b = None if admits_acs_known is None else bool(admits_acs_known) and zero
    if inv.b2 == 0:
        case = "b2-zero"
    elif inv.definiteness == "indefinite":
        case = "indefinite"
    elif inv.definiteness == "negative-definite":
        case = "negative-definite"
    else:
        case = None  # positive-definite with b+ > 0 is excluded outright
    if cond_b:
        assert inv.sigma % 4 == 0 or not cond_c
    return {
        "value_5chi_6sigma": dim4_value(inv.chi, inv.sigma),
        "condB": cond_b,
        "condC": cond_c,
        "agree": None if cond_b is None else cond_b == cond_c,
        "case_used": case,
        "definiteness": inv.definiteness,
    }


def degenerate_codim(n: int) -> dict:
    if n < 2:
        raise ObstructionError("n must be >= 2")
    margin = Fraction(n * n - 5 * n + 2, 2)
    return {"n": n, "codim": comb(n, 2) - n + 1, "margin": str(margin), "margin_positive": margin > 0}


def jet_min_k(n: int) -> dict:
    """Smallest k >= 1 with n*C(n+k, k) > 2*C(n+k+1, k+1)."""
    if n < 3:
        raise ObstructionError("n must be >= 3")
    k = 1
    while True:
        lhs = n * comb(n + k, k)
        rhs = 2 * comb(n + k + 1, k + 1)
        if lhs > rhs:
            break
        k += 1
    # closed form: the inequality is equivalent to k > (n+2)/(n-2)
    threshold = Fraction(n + 2, n - 2)
    assert k > threshold and k - 1 <= threshold, (n, k)
    return {"n": n, "k": k, "lhs": lhs, "rhs": rhs, "threshold": str(threshold)}


def to_dict(x):
    return asdict(x)
