"""Exact coefficients: Gaussian rationals, oscillator Laurent polynomials, fractions.

An oscillator ``u`` stands for a unit-modulus function such as ``exp(i Re z)``;
its conjugate is ``u**-1``.  Formal parameters come in pairs ``A1``/``cA1``
(the second is the conjugate of the first) and only carry non-negative
exponents.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_FLOOR = 1e-12
DEFAULT_RTOL = 1e-9


class ScalarError(ValueError):
    pass


class GeneratorMismatch(ScalarError):
    pass


class ParseError(ScalarError):
    pass


class EvaluationError(ScalarError):
    """Denominator too close to zero at a sample point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class GaussianRational:
    """Exact element of Q(i), stored as (re + im*i) / den with den > 0."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // math.gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a, b, d):
        g = math.gcd(math.gcd(a, b), d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a, self._b, self._d = a, b, d

    @classmethod
    def _raw(cls, a, b, d):
        obj = cls.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        obj._set(a, b, d)
        return obj

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 1)
        if isinstance(x, Fraction):
            return cls._raw(x.numerator, 0, x.denominator)
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, float):
            return cls(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def __bool__(self):
        return not self.is_zero()

    def is_real(self) -> bool:
        return self._b == 0

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            o = other
        else:
            try:
                o = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        if self._d == o._d:
            return GaussianRational._raw(self._a + o._a, self._b + o._b, self._d)
        return GaussianRational._raw(self._a * o._d + o._a * self._d,
                                     self._b * o._d + o._b * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            o = other
        else:
            try:
                o = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._raw(self._a * o._a - self._b * o._b,
                                     self._a * o._b + self._b * o._a, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self):
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational._raw(self._a * self._d, -self._b * self._d, n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm2(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __complex__(self):
        return complex(self._a / self._d, self._b / self._d)

    def __repr__(self):
        return f"GaussianRational({format_gauss(self)!r})"

    def __str__(self):
        return format_gauss(self)


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I_UNIT = GaussianRational._raw(0, 1, 1)


def _fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_gauss(z: GaussianRational) -> str:
    re_, im_ = z.re, z.im
    if im_ == 0:
        return _fmt_rat(re_)
    if im_ == 1:
        ims = "i"
    elif im_ == -1:
        ims = "-i"
    else:
        ims = _fmt_rat(im_) + "i"
    if re_ == 0:
        return ims
    return _fmt_rat(re_) + ("" if ims.startswith("-") else "+") + ims


@dataclass(frozen=True)
class ScalarEnv:
    """Generator environment: oscillator names, then (param, conj-param) pairs."""

    oscillators: tuple = ()
    params: tuple = ()

    @property
    def nvars(self) -> int:
        return len(self.oscillators) + 2 * len(self.params)

    @property
    def names(self) -> tuple:
        out = list(self.oscillators)
        for p in self.params:
            out += [p, "c" + p]
        return tuple(out)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ParseError(f"unknown generator {name!r}") from None

    def is_param_slot(self, k: int) -> bool:
        return k >= len(self.oscillators)

    def conj_slot(self, k: int) -> int:
        m = len(self.oscillators)
        if k < m:
            return k
        j = k - m
        return m + (j ^ 1)


EMPTY_ENV = ScalarEnv()


class Laurent:
    """Laurent polynomial in oscillators (any integer exponent) and parameters."""

    __slots__ = ("env", "terms")

    def __init__(self, env: ScalarEnv, terms: Mapping | None = None):
        self.env = env
        self.terms = {}
        if terms:
            m = len(env.oscillators)
            for e, c in terms.items():
                c = GaussianRational.coerce(c)
                if c.is_zero():
                    continue
                e = tuple(e)
                if len(e) != env.nvars:
                    raise ScalarError(f"exponent vector {e} has wrong length for {env}")
                if any(x < 0 for x in e[m:]):
                    raise ScalarError("parameter exponents must be non-negative")
                self.terms[e] = c

    @classmethod
    def _make(cls, env, terms):
        obj = cls.__new__(cls)
        obj.env = env
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, env: ScalarEnv, c=1):
        c = GaussianRational.coerce(c)
        if c.is_zero():
            return cls._make(env, {})
        return cls._make(env, {(0,) * env.nvars: c})

    @classmethod
    def gen(cls, env: ScalarEnv, name: str, power: int = 1):
        k = env.index(name)
        e = [0] * env.nvars
        e[k] = power
        return cls(env, {tuple(e): ONE})

    def _check(self, other):
        if other.env != self.env:
            raise GeneratorMismatch(f"generator sets differ: {self.env} vs {other.env}")

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> GaussianRational:
        if not self.terms:
            return ZERO
        if not self.is_constant():
            raise ScalarError("not a constant")
        return next(iter(self.terms.values()))

    def __add__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(self.env, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Laurent._make(self.env, out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._make(self.env, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(self.env, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = GaussianRational.coerce(c)
        if c.is_zero():
            return Laurent._make(self.env, {})
        return Laurent._make(self.env, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in out:
                    s = out[e] + c
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
                else:
                    out[e] = c
        return Laurent._make(self.env, out)

    __rmul__ = __mul__

    def shift(self, e: Sequence[int]):
        """Multiply by the monomial with exponent vector ``e``."""
        return Laurent._make(self.env, {tuple(a + b for a, b in zip(k, e)): c
                                        for k, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ScalarError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self.terms.items()
            m = len(self.env.oscillators)
            if any(e[m:]):
                raise ScalarError("parameters are not invertible")
            return Laurent._make(self.env, {tuple(x * k for x in e): c ** k})
        out = Laurent.const(self.env, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        env = self.env
        m = len(env.oscillators)
        perm = [env.conj_slot(k) for k in range(env.nvars)]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * env.nvars
            for k, x in enumerate(e):
                ne[perm[k]] = -x if k < m else x
            out[tuple(ne)] = c.conjugate()
        return Laurent._make(env, out)

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self.env == other.env and self.terms == other.terms
        try:
            return self == Laurent.const(self.env, other)
        except TypeError:
            return NotImplemented

    __hash__ = None

    def min_exponents(self):
        if not self.terms:
            return (0,) * self.env.nvars
        return tuple(min(col) for col in zip(*self.terms))

    def leading(self):
        """(exponent, coefficient) of the largest term in a fixed total order."""
        e = max(self.terms)
        return e, self.terms[e]

    def derive(self, table: Mapping[int, "ScalarFraction"]):
        """Apply a derivation given by its values on generator slots (Leibniz rule).

        ``table`` maps generator slot -> derivative of that generator; missing
        slots differentiate to zero.
        """
        env = self.env
        total = ScalarFraction.zero(env)
        for k, dg in table.items():
            if dg.is_zero():
                continue
            part = {}
            for e, c in self.terms.items():
                x = e[k]
                if x == 0:
                    continue
                ne = list(e)
                ne[k] -= 1
                part[tuple(ne)] = c * x
            if part:
                total = total + ScalarFraction(Laurent._make(env, part)) * dg
        return total

    def embed(self, env: ScalarEnv, slot_map: Sequence[int]):
        """Re-express in a larger environment; ``slot_map[k]`` is the new slot of slot k."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * env.nvars
            for k, x in enumerate(e):
                ne[slot_map[k]] = x
            out[tuple(ne)] = c
        return Laurent._make(env, out)

    def evaluate_many(self, angles: np.ndarray, params: Sequence[complex] = ()) -> np.ndarray:
        """Evaluate at N points; ``angles`` has shape (N, #oscillators)."""
        env = self.env
        m = len(env.oscillators)
        angles = np.asarray(angles, dtype=float).reshape(-1, m) if m else np.zeros((len(angles), 0))
        pvals = []
        for p in params:
            pvals += [complex(p), complex(p).conjugate()]
        if len(pvals) != 2 * len(env.params):
            raise ScalarError("wrong number of parameter values")
        out = np.zeros(angles.shape[0], dtype=complex)
        for e, c in self.terms.items():
            osc = np.asarray(e[:m], dtype=float)
            val = np.exp(1j * (angles @ osc)) if m else np.ones(angles.shape[0], dtype=complex)
            pf = 1 + 0j
            for x, v in zip(e[m:], pvals):
                if x:
                    pf *= v ** x
            out += val * (pf * complex(c))
        return out

    def __repr__(self):
        return f"Laurent({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)


# oscillator elements: unit-modulus generators with conjugate equal to inverse
OscillatorElement = Laurent


def _normalize_fraction(num: Laurent, den: Laurent):
    env = num.env
    m = len(env.oscillators)
    if num.is_zero():
        return Laurent._make(env, {}), Laurent.const(env, 1)
    # shift oscillator content of den to zero, strip shared parameter content
    dmin = den.min_exponents()
    nmin = num.min_exponents()
    sh = [-x for x in dmin[:m]] + [-min(a, b) for a, b in zip(nmin[m:], dmin[m:])]
    if any(sh):
        num = num.shift(sh)
        den = den.shift(sh)
    if den.is_constant():
        c = den.constant_value()
        return num.scale(c.inverse()), Laurent.const(env, 1)
    _, lc = den.leading()
    if lc != ONE:
        inv = lc.inverse()
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


class ScalarFraction:
    """num/den with den a nonzero Laurent polynomial; not gcd-reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Laurent):
            raise TypeError("ScalarFraction numerator must be a Laurent polynomial")
        if den is None:
            den = Laurent.const(num.env, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        self.num, self.den = _normalize_fraction(num, den)

    @classmethod
    def _make(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def zero(cls, env: ScalarEnv = EMPTY_ENV):
        return cls._make(Laurent._make(env, {}), Laurent.const(env, 1))

    @classmethod
    def const(cls, env: ScalarEnv, c):
        return cls._make(Laurent.const(env, c), Laurent.const(env, 1))

    @classmethod
    def gen(cls, env: ScalarEnv, name: str, power: int = 1):
        g = Laurent.gen(env, name)
        if power < 0:
            return cls(Laurent.const(env, 1), g ** (-power))
        return cls._make(g ** power, Laurent.const(env, 1))

    @property
    def env(self):
        return self.num.env

    def _coerce(self, other):
        if isinstance(other, ScalarFraction):
            if other.env != self.env:
                raise GeneratorMismatch(f"generator sets differ: {self.env} vs {other.env}")
            return other
        if isinstance(other, Laurent):
            self.num._check(other)
            return ScalarFraction._make(other, Laurent.const(self.env, 1))
        return ScalarFraction.const(self.env, GaussianRational.coerce(other))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ScalarError("coefficient is not constant")
        return self.num.constant_value() / self.den.constant_value()

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            num = self.num + o.num
            if num.is_zero():
                return ScalarFraction.zero(self.env)
            return ScalarFraction(num, self.den)
        return ScalarFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return ScalarFraction._make(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return ScalarFraction.zero(self.env)
        if o.den.is_constant() and o.num.is_constant():
            c = o.num.constant_value()
            return ScalarFraction._make(self.num.scale(c), self.den)
        if self.den.is_constant() and self.num.is_constant():
            c = self.num.constant_value()
            return ScalarFraction._make(o.num.scale(c), o.den)
        return ScalarFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return ScalarFraction(self.den, self.num)

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ScalarFraction(self.num ** k, self.den ** k)

    def conjugate(self):
        return ScalarFraction(self.num.conjugate(), self.den.conjugate())

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, GeneratorMismatch):
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    __hash__ = None

    def derive(self, table):
        """Derivation applied via the quotient rule."""
        dn = self.num.derive(table)
        if self.den.is_constant():
            return dn * ScalarFraction._make(Laurent.const(self.env, 1), self.den)
        dd = self.den.derive(table)
        den = ScalarFraction._make(self.den, Laurent.const(self.env, 1))
        return (dn * den - ScalarFraction._make(self.num, Laurent.const(self.env, 1)) * dd) / (den * den)

    def embed(self, env, slot_map):
        return ScalarFraction(self.num.embed(env, slot_map), self.den.embed(env, slot_map))

    def evaluate_many(self, angles, params=(), floor=DEFAULT_FLOOR):
        d = self.den.evaluate_many(angles, params)
        bad = np.abs(d) <= floor
        if bad.any():
            k = int(np.argmax(bad))
            pt = np.asarray(angles, dtype=float).reshape(len(d), -1)[k]
            raise EvaluationError(
                f"denominator {format_laurent(self.den)} ~ 0 at angles {pt.tolist()}",
                point=tuple(pt.tolist()))
        return self.num.evaluate_many(angles, params) / d

    def __complex__(self):
        return complex(self.constant_value())

    def __repr__(self):
        return f"ScalarFraction({format_fraction(self)!r})"

    def __str__(self):
        return format_fraction(self)


# ---------------------------------------------------------------- operations

def add(a: ScalarFraction, b: ScalarFraction) -> ScalarFraction:
    return a + b


def mul(a: ScalarFraction, b: ScalarFraction) -> ScalarFraction:
    return a * b


def conjugate(a: ScalarFraction) -> ScalarFraction:
    return a.conjugate()


def is_zero(a: ScalarFraction) -> bool:
    return a.is_zero()


def evaluate(a, angles: Sequence[float] = (), params: Sequence[complex] = (),
             floor: float = DEFAULT_FLOOR) -> complex:
    """Evaluate at one point: oscillator k -> exp(i*angles[k])."""
    if isinstance(a, Laurent):
        a = ScalarFraction(a)
    m = len(a.env.oscillators)
    if len(angles) != m:
        raise ScalarError(f"expected {m} angles, got {len(angles)}")
    pts = np.asarray(angles, dtype=float).reshape(1, m)
    return complex(a.evaluate_many(pts, params, floor=floor)[0])


def close(x: complex, y: complex, rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_FLOOR) -> bool:
    return abs(x - y) <= atol + rtol * max(abs(x), abs(y))


# ---------------------------------------------------------------- text format

def _fmt_mono(env: ScalarEnv, e) -> str:
    parts = []
    for nm, x in zip(env.names, e):
        if x == 1:
            parts.append(nm)
        elif x:
            parts.append(f"{nm}^{x}")
    return "*".join(parts)


def format_laurent(p: Laurent) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = _fmt_mono(p.env, e)
        neg = c.is_real() and c.re < 0 or (c.re == 0 and c.im < 0)
        cc = -c if neg else c
        cs = format_gauss(cc)
        if not cc.is_real() and cc.re != 0:
            cs = f"({cs})"
        if mono:
            body = mono if cc == ONE else f"{cs}*{mono}"
        else:
            body = cs
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_fraction(x: ScalarFraction) -> str:
    if x.den.is_constant():
        return format_laurent(x.num)
    return f"({format_laurent(x.num)})/({format_laurent(x.den)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    def __init__(self, text: str, env: ScalarEnv):
        self.env = env
        self.toks = []
        for m in _TOKEN.finditer(text):
            num, name, op = m.groups()
            if num is not None:
                self.toks.append(("num", int(num)))
            elif name is not None:
                self.toks.append(("name", name))
            elif op is not None and not op.isspace():
                if op not in "+-*/^()":
                    raise ParseError(f"unexpected character {op!r} in {text!r}")
                self.toks.append(("op", op))
        self.pos = 0
        self.text = text

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.pos += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> ScalarFraction:
        if not self.toks:
            raise ParseError("empty scalar literal")
        v = self.expr()
        if self.pos != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while True:
            t = self.peek()
            if t in (("op", "*"), ("op", "/")):
                self.take()
                w = self.unary()
                v = v * w if t[1] == "*" else v / w
            elif t[0] in ("num", "name") or t == ("op", "("):
                v = v * self.power()  # implicit product, e.g. "2i"
            else:
                return v

    def unary(self):
        t = self.peek()
        if t == ("op", "-"):
            self.take()
            return -self.unary()
        if t == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "num":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            k = sign * t[1]
            if k < 0 and base.is_polynomial() and base.num.is_monomial():
                return ScalarFraction(base.num ** k)
            return base ** k
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return ScalarFraction.const(self.env, t[1])
        if t[0] == "name":
            if t[1] == "i":
                return ScalarFraction.const(self.env, I_UNIT)
            return ScalarFraction.gen(self.env, t[1])
        if t == ("op", "("):
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError(f"unexpected token {t[1]!r} in {self.text!r}")


def parse_scalar(text: str, env: ScalarEnv = EMPTY_ENV) -> ScalarFraction:
    """Parse a coefficient literal such as ``"1/2*i*u1"`` or ``"(u1+2)/(u1-3)"``."""
    return _Parser(str(text), env).parse()


def parse_gauss(text: str) -> GaussianRational:
    v = parse_scalar(text)
    if not v.is_constant():
        raise ParseError(f"{text!r} is not a Gaussian rational")
    return v.constant_value()


def gauss_from_any(x) -> GaussianRational:
    if isinstance(x, str):
        return parse_gauss(x)
    if isinstance(x, bool):
        raise ParseError("booleans are not numbers")
    if isinstance(x, (int, Fraction)):
        return GaussianRational.coerce(x)
    if isinstance(x, float):
        if not x.is_integer():
            raise ParseError("non-integer floats are not exact; use a string literal")
        return GaussianRational.coerce(int(x))
    if isinstance(x, GaussianRational):
        return x
    raise ParseError(f"cannot read {x!r} as a Gaussian rational")


def grid_angles(m: int, grid: int) -> np.ndarray:
    """Full product grid: ``grid`` angles per oscillator, offset half a step."""
    if grid < 1:
        raise ValueError("grid size must be >= 1")
    one = 2 * math.pi * (np.arange(grid) + 0.5) / grid
    if m == 0:
        return np.zeros((1, 0))
    mesh = np.meshgrid(*([one] * m), indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=1)


def unit_circle_value(theta: float) -> complex:
    return cmath.exp(1j * theta)


def as_fraction(x, env: ScalarEnv) -> ScalarFraction:
    if isinstance(x, ScalarFraction):
        if x.env != env:
            raise GeneratorMismatch(f"generator sets differ: {x.env} vs {env}")
        return x
    if isinstance(x, Laurent):
        return ScalarFraction(x)
    if isinstance(x, str):
        return parse_scalar(x, env)
    return ScalarFraction.const(env, GaussianRational.coerce(x))


def fractions_of(values: Iterable, env: ScalarEnv):
    return [as_fraction(v, env) for v in values]
