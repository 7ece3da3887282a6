import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from acslab.scalar import (EvaluationError, GaussianRational, GeneratorMismatch, ParseError,
                           ScalarEnv, ScalarFraction, add, close, conjugate, evaluate, is_zero,
                           mul, parse_scalar)

ENV = ScalarEnv(("u",), ("A",))


def s(text, env=ENV):
    return parse_scalar(text, env)


def test_add_examples():
    assert add(s("1/2"), s("1/2")) == s("1")
    assert is_zero(add(s("u"), s("-u")))
    assert add(s("1/u"), s("(u-1)/u")) == s("1")


def test_mul_examples():
    assert mul(s("1+i"), s("1-i")) == s("2")
    assert mul(s("u"), s("u^-1")) == s("1")
    a = s("u+A")
    assert mul(a, conjugate(a)) == s("1 + A*u^-1 + cA*u + A*cA")


def test_conjugate_examples():
    assert conjugate(s("i")) == s("-i")
    assert conjugate(s("u")) == s("u^-1")
    x = s("(2+i)*u^2*A")
    assert conjugate(conjugate(x)) == x
    assert conjugate(s("A")) == s("cA")


def test_is_zero_examples():
    assert is_zero(s("u*u^-1 - 1"))
    assert not is_zero(s("u - 1"))
    assert is_zero(s("(u+A)*(u^-1+cA) - (1 + A*u^-1 + cA*u + A*cA)"))


def test_evaluate_examples():
    assert close(evaluate(s("u+A"), [0.0], [2]), 3)
    assert abs(evaluate(s("u"), [math.pi], [2]) - (-1)) < 1e-12
    x = s("1/(1-(u+A)*(u^-1+cA))")
    assert close(evaluate(x, [0.0], [2]), -1 / 8)


def test_evaluate_reports_point_near_pole():
    x = s("1/(u+1)")
    with pytest.raises(EvaluationError) as e:
        evaluate(x, [math.pi], [2])
    assert e.value.point is not None


def test_generator_mismatch():
    other = ScalarEnv(("v",))
    with pytest.raises(GeneratorMismatch):
        add(s("u"), parse_scalar("v", other))


def test_parse_errors():
    for bad in ("u +", "(u", "u^x", "w"):
        with pytest.raises(ParseError):
            s(bad)


def test_gaussian_lowest_terms():
    z = GaussianRational(2, 4) / 2
    assert z.re == 1 and z.im == 2
    assert GaussianRational(1, 1).inverse() == GaussianRational(Fraction(1, 2), Fraction(-1, 2))


# ------------------------------------------------------------------ properties

coef = st.integers(-3, 3)
exps = st.integers(-2, 2)


@st.composite
def fractions(draw):
    def poly():
        terms = draw(st.lists(st.tuples(coef, coef, exps, st.integers(0, 1)), min_size=1, max_size=3))
        out = s("0")
        for a, b, e, k in terms:
            out = out + ScalarFraction.const(ENV, GaussianRational(a, b)) * s(f"u^{e}") * (s("A") ** k)
        return out
    num = poly()
    den = poly()
    if den.is_zero():
        den = s("1")
    return num / den


@settings(max_examples=60, deadline=None)
@given(fractions(), fractions())
def test_conjugate_multiplicative(x, y):
    assert conjugate(x * y) == conjugate(x) * conjugate(y)
    assert conjugate(conjugate(x)) == x


@settings(max_examples=60, deadline=None)
@given(fractions(), fractions(), st.floats(0, 2 * math.pi), st.floats(-3, 3), st.floats(-3, 3))
def test_evaluate_multiplicative(x, y, theta, ar, ai):
    A = complex(ar, ai)
    try:
        vx, vy = evaluate(x, [theta], [A]), evaluate(y, [theta], [A])
        vxy = evaluate(x * y, [theta], [A])
    except EvaluationError:
        return
    if max(abs(vx), abs(vy)) > 1e6:
        return
    assert abs(vxy - vx * vy) <= 1e-9 * max(1.0, abs(vx * vy))


@settings(max_examples=40, deadline=None)
@given(fractions(), fractions(), fractions())
def test_zero_difference_is_equivalence(x, y, z):
    assert is_zero(x - x)
    assert is_zero(x - y) == is_zero(y - x)
    if is_zero(x - y) and is_zero(y - z):
        assert is_zero(x - z)


def test_oscillator_unit_modulus():
    rng = random.Random(0)
    u = s("u")
    for _ in range(100):
        t = rng.uniform(-10, 10)
        assert abs(abs(evaluate(u, [t], [1])) - 1) < 1e-12
        assert abs(evaluate(u, [t], [1]) - cmath.exp(1j * t)) < 1e-12
