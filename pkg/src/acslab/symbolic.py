"""Bridge to sympy for gcd cancellation and factorisation of ScalarFractions.

Oscillator exponents may be negative, so Laurent polynomials are shifted to
ordinary polynomials before sympy sees them; the shift is a unit and is put
back on the way out.
"""

from __future__ import annotations

import sympy

from .scalar import GaussianRational, Laurent, ScalarEnv, ScalarFraction


def env_symbols(env: ScalarEnv):
    return sympy.symbols(env.names) if env.nvars > 1 else (
        (sympy.Symbol(env.names[0]),) if env.nvars == 1 else ())


def gauss_to_sympy(c: GaussianRational):
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
        c.im.numerator, c.im.denominator)


def sympy_to_gauss(c) -> GaussianRational:
    re, im = sympy.sympify(c).as_real_imag()
    re, im = sympy.Rational(re), sympy.Rational(im)
    return GaussianRational(sympy_frac(re), sympy_frac(im))


def sympy_frac(r):
    from fractions import Fraction
    return Fraction(int(r.p), int(r.q))


def laurent_to_poly(p: Laurent, syms, shift=None):
    """Polynomial expression of p times the monomial sym^(-shift)."""
    if shift is None:
        shift = p.min_exponents()
    out = sympy.Integer(0)
    for e, c in p.terms.items():
        mono = sympy.Integer(1)
        for s, x, m in zip(syms, e, shift):
            if x - m:
                mono *= s ** (x - m)
        out += gauss_to_sympy(c) * mono
    return out, shift


def poly_to_laurent(expr, env: ScalarEnv, syms, shift=None) -> Laurent:
    if not syms:
        return Laurent.const(env, sympy_to_gauss(expr))
    poly = sympy.Poly(sympy.expand(expr), *syms)
    terms = {}
    for e, c in poly.terms():
        if shift is not None:
            e = tuple(a + b for a, b in zip(e, shift))
        terms[tuple(e)] = sympy_to_gauss(c)
    return Laurent(env, terms)


def to_sympy(x: ScalarFraction):
    syms = env_symbols(x.env)
    num, sn = laurent_to_poly(x.num, syms)
    den, sd = laurent_to_poly(x.den, syms)
    mono = sympy.Integer(1)
    for s, a, b in zip(syms, sn, sd):
        if a - b:
            mono *= s ** (a - b)
    return num * mono / den


def from_sympy(expr, env: ScalarEnv) -> ScalarFraction:
    syms = env_symbols(env)
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    return ScalarFraction(poly_to_laurent(num, env, syms), poly_to_laurent(den, env, syms))


def cancel(x: ScalarFraction) -> ScalarFraction:
    """Remove the polynomial gcd of numerator and denominator."""
    if x.den.is_constant() or x.num.is_zero():
        return x
    syms = env_symbols(x.env)
    num, sn = laurent_to_poly(x.num, syms)
    den, sd = laurent_to_poly(x.den, syms)
    g = sympy.gcd(num, den, *syms, extension=sympy.I) if len(x.num.terms) > 1 else sympy.Integer(1)
    if g.free_symbols:
        num = sympy.quo(num, g, *syms, extension=sympy.I)
        den = sympy.quo(den, g, *syms, extension=sympy.I)
    return ScalarFraction(poly_to_laurent(num, x.env, syms, sn),
                          poly_to_laurent(den, x.env, syms, sd))


def factor_laurent(p: Laurent):
    """(unit monomial shift, constant, [(Laurent factor, multiplicity), ...])."""
    syms = env_symbols(p.env)
    expr, shift = laurent_to_poly(p, syms)
    if not syms:
        return shift, sympy_to_gauss(expr), []
    const, facs = sympy.factor_list(expr, *syms, gaussian=True)
    out = [(poly_to_laurent(f.as_expr() if hasattr(f, "as_expr") else f, p.env, syms), k)
           for f, k in facs]
    return shift, sympy_to_gauss(const), out
