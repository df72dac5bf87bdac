"""Exact scalar rings and a sparse three-variable polynomial engine.

Rationals are :class:`fractions.Fraction`. On top of them live complex
rationals (:class:`ComplexRat`), rational quaternions (:class:`QuatRat`)
and rational multiples of a power of pi (:class:`ExactScalar`).

:class:`Poly3` stores ``{(a, b, c): coeff}`` with zero coefficients pruned.
The variable tag ``"x"`` names ``(x1, x2, x3)`` and ``"y"`` names
``(y0, y1, y2)``; exponent slot ``i`` always belongs to the ``i``-th name.
Coefficients may come from any of the rings above. Variables are real and
commute with every coefficient, so products of quaternion polynomials only
need the coefficient order kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

import numpy as np

VAR_NAMES = {"x": ("x1", "x2", "x3"), "y": ("y0", "y1", "y2")}


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, _RationalABC)):
        return Fraction(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to an exact rational")


def _is_rational(v) -> bool:
    return isinstance(v, (int, Fraction, _RationalABC)) and not isinstance(v, bool)


@dataclass(frozen=True, slots=True)
class ComplexRat:
    """Complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @classmethod
    def coerce(cls, v) -> "ComplexRat":
        if isinstance(v, ComplexRat):
            return v
        if _is_rational(v):
            return cls(_frac(v))
        raise TypeError(f"cannot coerce {type(v).__name__} to ComplexRat")

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = ComplexRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        try:
            o = ComplexRat.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexRat(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = ComplexRat.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = ComplexRat.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = ComplexRat.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by complex zero")
        return self * ComplexRat(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return ComplexRat.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return ComplexRat(1) / self**-n
        out, base = ComplexRat(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "ComplexRat":
        return ComplexRat(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


I = ComplexRat(0, 1)


@dataclass(frozen=True, slots=True)
class QuatRat:
    """Rational quaternion ``q0 + q1 i1 + q2 i2 + q3 i3``."""

    q0: Fraction = Fraction(0)
    q1: Fraction = Fraction(0)
    q2: Fraction = Fraction(0)
    q3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("q0", "q1", "q2", "q3"):
            object.__setattr__(self, name, _frac(getattr(self, name)))

    @classmethod
    def coerce(cls, v) -> "QuatRat":
        if isinstance(v, QuatRat):
            return v
        if _is_rational(v):
            return cls(_frac(v))
        raise TypeError(f"cannot coerce {type(v).__name__} to QuatRat")

    def as_tuple(self):
        return (self.q0, self.q1, self.q2, self.q3)

    def __bool__(self):
        return any(self.as_tuple())

    def __eq__(self, other):
        try:
            o = QuatRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.as_tuple() == o.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __add__(self, other):
        try:
            o = QuatRat.coerce(other)
        except TypeError:
            return NotImplemented
        return QuatRat(self.q0 + o.q0, self.q1 + o.q1, self.q2 + o.q2, self.q3 + o.q3)

    __radd__ = __add__

    def __neg__(self):
        return QuatRat(-self.q0, -self.q1, -self.q2, -self.q3)

    def __sub__(self, other):
        try:
            o = QuatRat.coerce(other)
        except TypeError:
            return NotImplemented
        return QuatRat(self.q0 - o.q0, self.q1 - o.q1, self.q2 - o.q2, self.q3 - o.q3)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_rational(other):
            c = _frac(other)
            return QuatRat(self.q0 * c, self.q1 * c, self.q2 * c, self.q3 * c)
        if not isinstance(other, QuatRat):
            return NotImplemented
        a0, a1, a2, a3 = self.as_tuple()
        b0, b1, b2, b3 = other.as_tuple()
        # i1 i2 = i3, i2 i3 = i1, i3 i1 = i2
        return QuatRat(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other):
        if _is_rational(other):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if _is_rational(other):
            return self * (1 / _frac(other))
        return NotImplemented

    def __pow__(self, n: int):
        out, base = QuatRat(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "QuatRat":
        return QuatRat(self.q0, -self.q1, -self.q2, -self.q3)

    def norm2(self) -> Fraction:
        return sum((c * c for c in self.as_tuple()), Fraction(0))

    def inverse(self) -> "QuatRat":
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("inverse of quaternion zero")
        return self.conj() * (1 / n)

    def to_array(self) -> np.ndarray:
        return np.array([float(c) for c in self.as_tuple()])

    def __repr__(self):
        return f"Quat({self.q0}, {self.q1}, {self.q2}, {self.q3})"


Q1 = QuatRat(1)
I1 = QuatRat(0, 1)
I2 = QuatRat(0, 0, 1)
I3 = QuatRat(0, 0, 0, 1)


def conj(c):
    """Ring conjugate; the identity on rationals."""
    if isinstance(c, (ComplexRat, QuatRat)):
        return c.conj()
    return c


@dataclass(frozen=True, slots=True)
class ExactScalar:
    """``coeff * pi**pi_power`` with ``pi_power`` in {0, 1}.

    ``coeff`` may be rational, complex-rational or quaternion-rational.
    Adding scalars with different pi powers raises ``ValueError``.
    """

    coeff: object = Fraction(0)
    pi_power: int = 0

    def __post_init__(self):
        if self.pi_power not in (0, 1):
            raise ValueError(f"pi power {self.pi_power} outside {{0, 1}}")
        if _is_rational(self.coeff):
            object.__setattr__(self, "coeff", _frac(self.coeff))

    def _check(self, other: "ExactScalar"):
        if self.pi_power != other.pi_power:
            raise ValueError(
                f"cannot add pi^{self.pi_power} and pi^{other.pi_power} scalars"
            )

    def is_zero(self) -> bool:
        return not self.coeff

    def __bool__(self):
        return bool(self.coeff)

    def __add__(self, other):
        if not isinstance(other, ExactScalar):
            return NotImplemented
        self._check(other)
        return ExactScalar(self.coeff + other.coeff, self.pi_power)

    def __sub__(self, other):
        if not isinstance(other, ExactScalar):
            return NotImplemented
        self._check(other)
        return ExactScalar(self.coeff - other.coeff, self.pi_power)

    def __neg__(self):
        return ExactScalar(-self.coeff, self.pi_power)

    def __mul__(self, other):
        if isinstance(other, ExactScalar):
            return ExactScalar(self.coeff * other.coeff, self.pi_power + other.pi_power)
        return ExactScalar(self.coeff * other, self.pi_power)

    def __rmul__(self, other):
        return ExactScalar(other * self.coeff, self.pi_power)

    def __truediv__(self, other):
        if isinstance(other, ExactScalar):
            if not _is_rational(other.coeff):
                raise TypeError("only division by real scalars is supported")
            return ExactScalar(self.coeff * (1 / other.coeff), self.pi_power - other.pi_power)
        return ExactScalar(self.coeff * (1 / _frac(other)), self.pi_power)

    def conj(self) -> "ExactScalar":
        return ExactScalar(conj(self.coeff), self.pi_power)

    def __float__(self):
        if not _is_rational(self.coeff):
            raise TypeError("float() of a non-real exact scalar")
        return float(self.coeff) * math.pi**self.pi_power

    def to_float(self):
        """Float value: ``float``, ``complex`` or a length-4 quaternion array."""
        scale = math.pi**self.pi_power
        c = self.coeff
        if isinstance(c, ComplexRat):
            return complex(c) * scale
        if isinstance(c, QuatRat):
            return c.to_array() * scale
        return float(c) * scale

    def __str__(self):
        c = self.coeff
        if isinstance(c, Fraction):
            body = f"{c.numerator}/{c.denominator}"
        else:
            body = repr(c)
        return f"{body}*pi^{self.pi_power}"


def _zero_like(c):
    if isinstance(c, ComplexRat):
        return ComplexRat()
    if isinstance(c, QuatRat):
        return QuatRat()
    return Fraction(0)


class Poly3:
    """Sparse polynomial in three real variables.

    Instances are treated as immutable; every operation returns a new object.
    ``p * c`` multiplies coefficients by ``c`` from the right and ``c * p``
    from the left, which matters for quaternion coefficients.
    """

    __slots__ = ("terms", "vars")

    def __init__(self, terms=None, vars: str = "x"):
        if vars not in VAR_NAMES:
            raise ValueError(f"unknown variable tag {vars!r}")
        self.vars = vars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(int(a) for a in e)
                    if len(e) != 3 or min(e) < 0:
                        raise ValueError(f"bad exponent {e}")
                    clean[e] = _frac(c) if _is_rational(c) else c
        self.terms = clean

    # construction helpers
    @classmethod
    def const(cls, c, vars: str = "x") -> "Poly3":
        return cls({(0, 0, 0): c}, vars)

    @classmethod
    def var(cls, i: int, vars: str = "x") -> "Poly3":
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): Fraction(1)}, vars)

    @classmethod
    def zero(cls, vars: str = "x") -> "Poly3":
        return cls({}, vars)

    # basic queries
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly3):
            if not self.terms and not other.terms:
                return True
            return self.vars == other.vars and self.terms == other.terms
        if not other:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, k: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return k is None or degs == {k}

    def homogeneous_part(self, k: int) -> "Poly3":
        return Poly3({e: c for e, c in self.terms.items() if sum(e) == k}, self.vars)

    def constant_term(self):
        return self.terms.get((0, 0, 0), Fraction(0))

    def sorted_terms(self):
        """Terms in graded-lex order, highest degree first."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0])))

    def _same_vars(self, other: "Poly3"):
        if self.vars != other.vars and self.terms and other.terms:
            raise ValueError(f"variable tag mismatch: {self.vars!r} vs {other.vars!r}")
        return self.vars if self.terms else other.vars

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Poly3):
            other = Poly3.const(other, self.vars)
        vars = self._same_vars(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Poly3(out, vars)

    def __radd__(self, other):
        return Poly3.const(other, self.vars) + self

    def __neg__(self):
        return Poly3({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        if not isinstance(other, Poly3):
            other = Poly3.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return Poly3.const(other, self.vars) - self

    def __mul__(self, other):
        if not isinstance(other, Poly3):
            return self.rmul(other)
        vars = self._same_vars(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return Poly3(out, vars)

    def __rmul__(self, other):
        return self.lmul(other)

    def lmul(self, c) -> "Poly3":
        """Multiply every coefficient by ``c`` from the left."""
        return Poly3({e: c * v for e, v in self.terms.items()}, self.vars)

    def rmul(self, c) -> "Poly3":
        """Multiply every coefficient by ``c`` from the right."""
        return Poly3({e: v * c for e, v in self.terms.items()}, self.vars)

    def __truediv__(self, c):
        return self.rmul(1 / _frac(c))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly3.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # calculus and structure
    def diff(self, i: int, times: int = 1) -> "Poly3":
        """Formal partial derivative w.r.t. variable slot ``i``."""
        if i not in (0, 1, 2):
            raise ValueError(f"variable index {i} outside 0..2")
        out = {}
        for e, c in self.terms.items():
            a = e[i]
            if a < times:
                continue
            f = math.perm(a, times)
            ne = list(e)
            ne[i] = a - times
            out[tuple(ne)] = c * f
        return Poly3(out, self.vars)

    def conj(self) -> "Poly3":
        """Conjugate coefficients; variables are real."""
        return Poly3({e: conj(c) for e, c in self.terms.items()}, self.vars)

    def map_coeffs(self, fn) -> "Poly3":
        return Poly3({e: fn(c) for e, c in self.terms.items()}, self.vars)

    def with_vars(self, vars: str) -> "Poly3":
        return Poly3(self.terms, vars)

    def euler(self) -> "Poly3":
        """``sum_i v_i d/dv_i`` applied to the polynomial."""
        return Poly3({e: c * sum(e) for e, c in self.terms.items()}, self.vars)

    # evaluation
    def evaluate(self, point):
        """Evaluate at a point of three floats by direct monomial sums.

        Returns a float, a complex number, or a length-4 array for
        quaternion coefficients.
        """
        x = [float(v) for v in point]
        acc = None
        for e, c in self.terms.items():
            m = x[0] ** e[0] * x[1] ** e[1] * x[2] ** e[2]
            if isinstance(c, QuatRat):
                v = c.to_array() * m
            elif isinstance(c, ComplexRat):
                v = complex(c) * m
            else:
                v = float(c) * m
            acc = v if acc is None else acc + v
        if acc is None:
            return 0.0
        return acc

    def evaluate_exact(self, point):
        """Evaluate at a point of exact rationals, returning a ring element."""
        x = [_frac(v) for v in point]
        acc = None
        for e, c in self.terms.items():
            m = x[0] ** e[0] * x[1] ** e[1] * x[2] ** e[2]
            v = c * m
            acc = v if acc is None else acc + v
        return Fraction(0) if acc is None else acc

    def __repr__(self):
        if not self.terms:
            return "0"
        names = VAR_NAMES[self.vars]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a
            )
            parts.append(f"{c!r}*{mono}" if mono else repr(c))
        return " + ".join(parts)


QuatPoly = Poly3
"""A :class:`Poly3` whose coefficients are :class:`QuatRat`."""


def poly_mul(p: Poly3, q: Poly3) -> Poly3:
    return p * q


def partial_derivative(p: Poly3, var: int) -> Poly3:
    return p.diff(var)


def quat_poly(q0=None, q1=None, q2=None, q3=None, vars: str = "y") -> Poly3:
    """Assemble a quaternion polynomial from four rational channels."""
    out = Poly3.zero(vars)
    for comp, unit in zip((q0, q1, q2, q3), (Q1, I1, I2, I3)):
        if comp is not None and comp:
            out = out + comp.rmul(unit)
    return out


def quat_components(p: Poly3) -> tuple[Poly3, Poly3, Poly3, Poly3]:
    """Split a quaternion polynomial into its four rational channels."""
    chans = [{}, {}, {}, {}]
    for e, c in p.terms.items():
        for k, v in enumerate(QuatRat.coerce(c).as_tuple()):
            if v:
                chans[k][e] = v
    return tuple(Poly3(ch, p.vars) for ch in chans)


def to_quat(p: Poly3) -> Poly3:
    """Coerce rational coefficients to :class:`QuatRat`."""
    return p.map_coeffs(QuatRat.coerce)


def to_complex(p: Poly3) -> Poly3:
    return p.map_coeffs(ComplexRat.coerce)


def real_part(p: Poly3) -> Poly3:
    return p.map_coeffs(lambda c: ComplexRat.coerce(c).re)


def imag_part(p: Poly3) -> Poly3:
    return p.map_coeffs(lambda c: ComplexRat.coerce(c).im)


def z_poly(vars: str = "x") -> Poly3:
    """``z = x1 + i x2`` (tag x) or ``u = y1 + i y2`` (tag y)."""
    if vars == "x":
        return Poly3({(1, 0, 0): ComplexRat(1), (0, 1, 0): I}, "x")
    return Poly3({(0, 1, 0): ComplexRat(1), (0, 0, 1): I}, "y")


def zbar_poly(vars: str = "x") -> Poly3:
    return z_poly(vars).conj()


def axial_index(vars: str) -> int:
    """Slot of the axial variable: x3 for tag x, y0 for tag y."""
    return 2 if vars == "x" else 0


def planar_indices(vars: str) -> tuple[int, int]:
    """Slots of the two planar variables forming ``z`` (or ``u``)."""
    return (0, 1) if vars == "x" else (1, 2)


@dataclass(frozen=True)
class SpinorPoly:
    """``C^2``-valued polynomial ``(plus, minus)`` in the ``v+, v-`` frame."""

    plus: Poly3
    minus: Poly3

    def __post_init__(self):
        if self.plus.terms and self.minus.terms and self.plus.vars != self.minus.vars:
            raise ValueError("spinor components must share a variable tag")

    @property
    def vars(self) -> str:
        return self.plus.vars if self.plus.terms else self.minus.vars

    @classmethod
    def const(cls, a, b, vars: str = "x") -> "SpinorPoly":
        return cls(to_complex(Poly3.const(a, vars)), to_complex(Poly3.const(b, vars)))

    @classmethod
    def zero(cls, vars: str = "x") -> "SpinorPoly":
        return cls(Poly3.zero(vars), Poly3.zero(vars))

    def __bool__(self):
        return bool(self.plus) or bool(self.minus)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other):
        if not isinstance(other, SpinorPoly):
            return NotImplemented
        return self.plus == other.plus and self.minus == other.minus

    __hash__ = None

    def __add__(self, other: "SpinorPoly"):
        return SpinorPoly(self.plus + other.plus, self.minus + other.minus)

    def __sub__(self, other: "SpinorPoly"):
        return SpinorPoly(self.plus - other.plus, self.minus - other.minus)

    def __neg__(self):
        return SpinorPoly(-self.plus, -self.minus)

    def scale(self, c) -> "SpinorPoly":
        c = ComplexRat.coerce(c)
        return SpinorPoly(self.plus.lmul(c), self.minus.lmul(c))

    __rmul__ = scale

    def __mul__(self, c):
        return self.scale(c)

    def map(self, fn) -> "SpinorPoly":
        return SpinorPoly(fn(self.plus), fn(self.minus))

    def diff(self, i: int, times: int = 1) -> "SpinorPoly":
        return SpinorPoly(self.plus.diff(i, times), self.minus.diff(i, times))

    def conj(self) -> "SpinorPoly":
        return SpinorPoly(self.plus.conj(), self.minus.conj())

    def degree(self) -> int:
        return max(self.plus.degree(), self.minus.degree())

    def is_homogeneous(self, k: int | None = None) -> bool:
        if k is None:
            k = self.degree()
        return self.plus.is_homogeneous(k) and self.minus.is_homogeneous(k)

    def euler(self) -> "SpinorPoly":
        return SpinorPoly(self.plus.euler(), self.minus.euler())

    def constant_term(self) -> tuple[ComplexRat, ComplexRat]:
        return (ComplexRat.coerce(self.plus.constant_term()),
                ComplexRat.coerce(self.minus.constant_term()))

    def evaluate(self, point) -> tuple[complex, complex]:
        return (complex(self.plus.evaluate(point)), complex(self.minus.evaluate(point)))

    def __repr__(self):
        return f"SpinorPoly({self.plus!r}, {self.minus!r})"


def wirtinger(p, which: str):
    """``d/dz = (d1 - i d2)/2`` or ``d/dzbar = (d1 + i d2)/2`` on tag-x input.

    Accepts a :class:`SpinorPoly` (applied componentwise) or a complex
    :class:`Poly3`.
    """
    if isinstance(p, SpinorPoly):
        return p.map(lambda c: wirtinger(c, which))
    if p.terms and p.vars != "x":
        raise ValueError("wirtinger derivatives are defined for tag 'x' only")
    return _planar_wirtinger(p, which)


def _planar_wirtinger(p: Poly3, which: str) -> Poly3:
    if which not in ("z", "zbar"):
        raise ValueError(f"which must be 'z' or 'zbar', got {which!r}")
    a, b = planar_indices(p.vars)
    da = to_complex(p.diff(a))
    db = to_complex(p.diff(b)).lmul(I)
    half = Fraction(1, 2)
    return (da - db if which == "z" else da + db).lmul(half)


def star(s: SpinorPoly) -> SpinorPoly:
    """``(s1, s2)* = (-conj(s2), conj(s1))``."""
    return SpinorPoly(-s.minus.conj(), s.plus.conj())


def evaluate(p, point):
    return p.evaluate(point)
