"""Gelfand-Tsetlin bases of spinor-valued spherical monogenics in R^3.

Spinors are pairs ``(P+, P-)`` in the frame ``v+, v-``. The two concrete
spinor realizations differ only by signs, selected through ``sign`` in
{"+", "-"}. In both, ``e3 d_ul`` (the Clifford product of ``e3`` with the
planar Dirac operator) acts as::

    (P1, P2) -> sign * 2 * (dP2/dzbar, -dP1/dz)

and a polynomial is monogenic iff ``dP/dx3 = e3 d_ul P``. For ``sign="-"``
this is exactly the kernel of the matrix operator ``i1 d1 + i2 d2 + i3 d3``
(see :func:`dirac_check`); for ``sign="+"`` it is the kernel of the same
operator with ``i1, i2`` negated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact_algebra import (
    I,
    ComplexRat,
    Poly3,
    SpinorPoly,
    axial_index,
    planar_indices,
    star,
    to_complex,
    wirtinger,
    z_poly,
    zbar_poly,
    _planar_wirtinger,
)


class RouteMismatch(AssertionError):
    """Two independent constructions of the same object disagree."""


def _check_sign(sign: str) -> int:
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return 1 if sign == "+" else -1


def pochhammer(a, n: int) -> Fraction:
    out = Fraction(1)
    a = Fraction(a)
    for i in range(n):
        out *= a + i
    return out


@dataclass(frozen=True)
class GegenbauerPoly:
    """Univariate Gegenbauer polynomial with exact coefficients."""

    nu: Fraction
    degree: int
    coeffs: tuple  # coeffs[p] multiplies t**p

    def __call__(self, t):
        t = Fraction(t)
        return sum((c * t**p for p, c in enumerate(self.coeffs)), Fraction(0))

    def at_zero(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)


def gegenbauer(nu, j: int) -> GegenbauerPoly:
    """``C^nu_j(t) = sum_i (-1)^i (nu)_{j-i} / (i! (j-2i)!) (2t)^(j-2i)``."""
    if j < 0:
        raise ValueError("degree must be non-negative")
    nu = Fraction(nu)
    coeffs = [Fraction(0)] * (j + 1)
    for i in range(j // 2 + 1):
        p = j - 2 * i
        coeffs[p] += Fraction((-1) ** i * 2**p, factorial(i) * factorial(p)) * pochhammer(nu, j - i)
    return GegenbauerPoly(nu, j, tuple(coeffs))


@dataclass(frozen=True)
class CKPolyX:
    """``X^(j)_k = alpha + beta * (x_ul e_m)`` for dimension ``m``.

    ``alpha`` and ``beta`` are dicts ``{(a, b): Fraction}`` meaning
    ``x_m**a * s**b`` with ``s = |x_ul|^2``.
    """

    m: int
    k: int
    j: int
    alpha: dict
    beta: dict


def _radial_expand(g: GegenbauerPoly, scale) -> dict:
    """Expand ``scale * r^n C(x_m / r)`` in ``(x_m, s)`` with ``r^2 = s + x_m^2``."""
    n = g.degree
    out: dict = {}
    for p, c in enumerate(g.coeffs):
        if not c:
            continue
        # r^n (x_m/r)^p = x_m^p (s + x_m^2)^((n-p)/2), n - p even by parity
        h = (n - p) // 2
        for t in range(h + 1):
            key = (p + 2 * (h - t), t)
            out[key] = out.get(key, Fraction(0)) + scale * c * _binom(h, t)
    return {k: v for k, v in out.items() if v}


def _binom(n, k):
    return Fraction(factorial(n), factorial(k) * factorial(n - k))


def ck_poly_x(m: int, k: int, j: int) -> CKPolyX:
    """Polynomial ``X^(j)_k`` with ``CK((x_ul e_m)^j p) = X^(j)_k p``."""
    if m < 3 or k < 0 or j < 0:
        raise ValueError("need m >= 3, k >= 0, j >= 0")
    if j == 0:
        return CKPolyX(m, k, 0, {(0, 0): Fraction(1)}, {})
    nu = Fraction(m, 2) + k - 1
    l, odd = divmod(j, 2)
    if odd:
        c0 = gegenbauer(nu + 1, 2 * l).at_zero()
        mu = Fraction((-1) ** l * (m + 2 * k + 2 * l - 1), m + 2 * k - 2) / c0
    else:
        c0 = gegenbauer(nu, 2 * l).at_zero()
        mu = Fraction((-1) ** l) / c0
    assert c0 != 0, "Gegenbauer value at 0 vanished"
    ratio = Fraction(m + 2 * k - 2, m + 2 * k + j - 2)
    alpha = _radial_expand(gegenbauer(nu, j), mu)
    beta = _radial_expand(gegenbauer(nu + 1, j - 1), mu * ratio)
    return CKPolyX(m, k, j, alpha, beta)


# --- dimension 3 Clifford actions on (P1, P2) --------------------------------

def e3_dirac_planar(p: SpinorPoly, sign: str) -> SpinorPoly:
    """``e3 d_ul P = sign * 2 (dP2/dzbar, -dP1/dz)``."""
    s = _check_sign(sign)
    return SpinorPoly(
        _planar_wirtinger(to_complex(p.minus), "zbar").lmul(Fraction(2 * s)),
        _planar_wirtinger(to_complex(p.plus), "z").lmul(Fraction(-2 * s)),
    )


def planar_vector_e3(p: SpinorPoly, sign: str) -> SpinorPoly:
    """Clifford multiplication by ``x_ul e3``: ``(P1, P2) -> -sign (z P2, -zbar P1)``."""
    s = _check_sign(sign)
    z, zb = z_poly(p.vars), zbar_poly(p.vars)
    return SpinorPoly((z * p.minus).lmul(Fraction(-s)), (zb * p.plus).lmul(Fraction(s)))


def ck_extend_dim3(seed: SpinorPoly, sign: str) -> SpinorPoly:
    """Cauchy-Kovalevskaya extension ``exp(x3 e3 d_ul)`` of an x3-free seed.

    The series ``sum_s x3^s / s! (e3 d_ul)^s seed`` terminates because each
    step lowers the planar degree by one.
    """
    _check_sign(sign)
    if seed.vars != "x":
        raise ValueError("seed must use tag 'x'")
    if any(e[2] for e in seed.plus.terms) or any(e[2] for e in seed.minus.terms):
        raise ValueError("seed depends on x3")
    x3 = Poly3.var(2, "x")
    out = SpinorPoly.zero("x")
    term, s = seed, 0
    x3_pow = Poly3.const(1, "x")
    while term:
        c = Fraction(1, factorial(s))
        out = out + SpinorPoly((x3_pow * term.plus).lmul(c), (x3_pow * term.minus).lmul(c))
        term = e3_dirac_planar(term, sign)
        x3_pow = x3_pow * x3
        s += 1
    return out


def apply_ck_poly_x_dim3(X: CKPolyX, p: SpinorPoly, sign: str) -> SpinorPoly:
    """Multiply ``p`` by ``X^(j)`` in dimension 3 (``x_m = x3``, ``s = z zbar``)."""
    if X.m != 3:
        raise ValueError("only m = 3 has a concrete spinor action here")
    x3 = Poly3.var(2, "x")
    s = z_poly("x") * zbar_poly("x")

    def scalar(d):
        out = Poly3.zero("x")
        for (a, b), c in d.items():
            out = out + (x3**a * s**b).lmul(c)
        return out

    a, b = scalar(X.alpha), scalar(X.beta)
    xp = planar_vector_e3(p, sign)
    return SpinorPoly(a * p.plus + b * xp.plus, a * p.minus + b * xp.minus)


# --- closed forms -------------------------------------------------------------

def _p_terms(k: int, j: int):
    """``(coeff, z-exp, zbar-exp, axial-exp)`` terms of ``p^k_j``."""
    if not 0 <= j <= k:
        raise ValueError(f"p^{k}_{j}: index outside 0..{k}")
    return [
        (Fraction((-1) ** s * 4**s, factorial(2 * s) * factorial(j - s) * factorial(k - j - s)),
         j - s, k - j - s, 2 * s)
        for s in range(min(j, k - j) + 1)
    ]


def _q_terms(k: int, j: int):
    if not 0 <= j <= k + 1:
        raise ValueError(f"q^{k}_{j}: index outside 0..{k + 1}")
    if j == 0 or j == k + 1:
        return []
    return [
        (Fraction((-1) ** s * 2 ** (2 * s + 1),
                  factorial(2 * s + 1) * factorial(j - 1 - s) * factorial(k - j - s)),
         j - 1 - s, k - j - s, 2 * s + 1)
        for s in range(min(j - 1, k - j) + 1)
    ]


@lru_cache(maxsize=None)
def _zpow(vars: str, a: int, b: int, c: int) -> Poly3:
    t = Poly3.var(axial_index(vars), vars)
    return z_poly(vars) ** a * zbar_poly(vars) ** b * t**c


def _assemble(terms, vars: str) -> Poly3:
    out = Poly3.zero(vars)
    for c, a, b, t in terms:
        out = out + _zpow(vars, a, b, t).lmul(c)
    return to_complex(out)


def p_poly(k: int, j: int, vars: str = "x") -> Poly3:
    """``p^k_j(z, zbar, x3)``; with ``vars="y"`` this is ``p^k_j(u, ubar, y0)``."""
    return _assemble(_p_terms(k, j), vars)


def q_poly(k: int, j: int, vars: str = "x") -> Poly3:
    return _assemble(_q_terms(k, j), vars)


def pq_polynomials(k: int, j: int, vars: str = "x") -> tuple[Poly3 | None, Poly3]:
    """``(p^k_j, q^k_j)``; ``p`` is ``None`` for ``j = k + 1``."""
    p = p_poly(k, j, vars) if j <= k else None
    return p, q_poly(k, j, vars)


@dataclass
class SpinorBasisSet:
    k: int
    sign: str
    elements: list
    route: str = "closed-form"
    normalized: list | None = None

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, j):
        return self.elements[j]

    def weight(self, j: int) -> Fraction:
        return Fraction(2 * self.k + 1 - 2 * j, 2)


def gt_basis_closed_form(k: int, sign: str) -> list:
    s = _check_sign(sign)
    out = []
    for j in range(k + 1):
        p, q = p_poly(k, j), q_poly(k, j)
        q_next = q_poly(k, j + 1)
        out.append(SpinorPoly(p, q.lmul(ComplexRat(-s))))
        out.append(SpinorPoly(q_next.lmul(ComplexRat(s)), p))
    return out


def gt_basis_ck(k: int, sign: str) -> list:
    out = []
    z, zb = z_poly("x"), zbar_poly("x")
    for j in range(k + 1):
        mono = (z**j * zb ** (k - j)).lmul(Fraction(1, factorial(j) * factorial(k - j)))
        zero = Poly3.zero("x")
        out.append(ck_extend_dim3(SpinorPoly(mono, zero), sign))
        out.append(ck_extend_dim3(SpinorPoly(zero, mono), sign))
    return out


def gt_basis_spinor(k: int, sign: str, check: bool = True) -> SpinorBasisSet:
    """GT basis ``f^{k,sign}_0 .. f^{k,sign}_{2k+1}`` of degree-``k`` monogenics.

    Built from the closed-form ``p``/``q`` polynomials; with ``check`` the
    CK-exponential route is computed too and the two must agree exactly.
    """
    if k < 0:
        raise ValueError("degree must be non-negative")
    elems = gt_basis_closed_form(k, sign)
    if check:
        other = gt_basis_ck(k, sign)
        for j, (a, b) in enumerate(zip(elems, other)):
            if a != b:
                raise RouteMismatch(f"f^{k},{sign}_{j}: closed form {a} != CK {b}")
    return SpinorBasisSet(k, sign, elems, route="closed-form+ck" if check else "closed-form")


def hat_constant(k: int, j: int, sign: str) -> Fraction:
    """``d^{k,sign}_j`` with ``hat f^k_j = d^{k,sign}_j f^{k,sign}_j``."""
    s = _check_sign(sign)
    if not 0 <= j <= 2 * k + 1:
        raise ValueError("index out of range")
    if j > k:
        jj = 2 * k + 1 - j
        return (-1) ** jj * hat_constant(k, jj, sign)
    return Fraction((-s) ** j * (-1) ** ((j + 1) * j // 2) * factorial(k), 2**j)


def hat_basis(k: int, sign: str) -> SpinorBasisSet:
    base = gt_basis_spinor(k, sign, check=False)
    hats = [f.scale(hat_constant(k, j, sign)) for j, f in enumerate(base.elements)]
    return SpinorBasisSet(k, sign, hats, route="hat", normalized=hats)


# --- operators ------------------------------------------------------------------

def weight_operator_H(f: SpinorPoly) -> SpinorPoly:
    """``H = -i (e12/2 + v_b d_a - v_a d_b)`` with ``e12 (P+, P-) = (i P+, -i P-)``.

    ``(v_a, v_b)`` is ``(x1, x2)`` for tag x and ``(y1, y2)`` for tag y, where
    ``i3`` acts on the column exactly like ``e12``.
    """
    a, b = planar_indices(f.vars)
    va, vb = Poly3.var(a, f.vars), Poly3.var(b, f.vars)
    half_i = ComplexRat(0, Fraction(1, 2))

    def rot(p):
        return vb * p.diff(a) - va * p.diff(b)

    inner = SpinorPoly(
        f.plus.lmul(half_i) + rot(f.plus),
        f.minus.lmul(-half_i) + rot(f.minus),
    )
    return inner.scale(ComplexRat(0, -1))


def dirac_check(f: SpinorPoly) -> SpinorPoly:
    """Residual of ``i1 d1 + i2 d2 + i3 d3`` on the column ``(P+, P-)``.

    Matrices: ``i1 = [[0, i], [i, 0]]``, ``i2 = [[0, -1], [1, 0]]``,
    ``i3 = [[i, 0], [0, -i]]``.
    """
    if f.vars != "x":
        raise ValueError("dirac_check expects tag 'x'")
    d1, d2, d3 = (f.map(lambda p, i=i: to_complex(p.diff(i))) for i in range(3))
    plus = d1.minus.lmul(I) - d2.minus + d3.plus.lmul(I)
    minus = d1.plus.lmul(I) + d2.plus - d3.minus.lmul(I)
    return SpinorPoly(plus, minus)


def monogenic_residual(f: SpinorPoly, sign: str) -> SpinorPoly:
    """``dP/dx3 - e3 d_ul P`` for the realization ``sign``."""
    return f.diff(2) - e3_dirac_planar(f, sign)


@dataclass
class LadderReport:
    k: int
    sign: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, label: str, got, want):
        self.checked += 1
        if got != want:
            self.failures.append(f"{label}: got {got!r}, expected {want!r}")


def hat_a_constant(k: int, j: int, sign: str) -> Fraction:
    s = _check_sign(sign)
    if j <= 1:
        return Fraction(0)
    if j <= k:
        return Fraction(-k, 4)
    if j == k + 1:
        return Fraction(-s * k, 2)
    return Fraction(k)


def hat_b_constant(k: int, j: int, sign: str) -> Fraction:
    s = _check_sign(sign)
    if j <= k - 1:
        return Fraction(k)
    if j == k:
        return Fraction(s * k, 2)
    if j <= 2 * k - 1:
        return Fraction(-k, 4)
    return Fraction(0)


def derivative_ladder_check(k: int, sign: str) -> LadderReport:
    """Check every derivative relation between degree ``k`` and ``k - 1``.

    Raw basis: ``d/dx3 f_j = -sign (-1)^j 2 f_{j-1}``, ``d/dz f_j = f_{j-2}``,
    ``d/dzbar f_j = f_j`` (zero outside the index ranges). Normalized basis:
    ``d/dx3 hat f_j = k hat f_{j-1}``, ``d/dz hat f_j = a_j hat f_{j-2}``,
    ``d/dzbar hat f_j = b_j hat f_j``, and ``hat f_{2k+1-j} = (hat f_j)*``
    for ``j <= k``.
    """
    if k < 1:
        raise ValueError("ladder needs k >= 1")
    s = _check_sign(sign)
    rep = LadderReport(k, sign)
    top = gt_basis_spinor(k, sign, check=False).elements
    low = gt_basis_spinor(k - 1, sign, check=False).elements
    htop = hat_basis(k, sign).elements
    hlow = hat_basis(k - 1, sign).elements
    n = 2 * k + 1
    zero = SpinorPoly.zero("x")
    for j in range(n + 1):
        f = top[j]
        want = low[j - 1].scale(Fraction(-s * (-1) ** j * 2)) if 1 <= j <= 2 * k else zero
        rep.expect(f"dx3 f^{k}_{j}", f.diff(2), want)
        want = low[j - 2] if j >= 2 else zero
        rep.expect(f"dz f^{k}_{j}", wirtinger(f, "z"), want)
        want = low[j] if j <= 2 * k - 1 else zero
        rep.expect(f"dzbar f^{k}_{j}", wirtinger(f, "zbar"), want)

        h = htop[j]
        want = hlow[j - 1].scale(k) if 1 <= j <= 2 * k else zero
        rep.expect(f"dx3 hat f^{k}_{j}", h.diff(2), want)
        a = hat_a_constant(k, j, sign)
        want = hlow[j - 2].scale(a) if a else zero
        rep.expect(f"dz hat f^{k}_{j}", wirtinger(h, "z"), want)
        b = hat_b_constant(k, j, sign)
        want = hlow[j].scale(b) if b else zero
        rep.expect(f"dzbar hat f^{k}_{j}", wirtinger(h, "zbar"), want)
        if j <= k:
            # star squares to -1, so the relation only runs from the upper half
            rep.expect(f"hat f^{k}_{n - j} = (hat f^{k}_{j})*", htop[n - j], star(h))
    return rep


# --- hypergeometric route -----------------------------------------------------

def hyp2f1_terminating(a, b, c, nterms: int | None = None) -> list:
    """Coefficients of ``2F1(a, b; c; w)`` as a list over powers of ``w``.

    One of ``a, b`` must be a non-positive integer.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    stops = [-int(x) for x in (a, b) if x.denominator == 1 and x <= 0]
    if not stops:
        raise ValueError("2F1 parameters do not terminate")
    n = min(stops)
    out = []
    term = Fraction(1)
    for s in range(n + 1):
        out.append(term)
        term = term * (a + s) * (b + s) / ((c + s) * (s + 1))
    return out


def hypergeometric_form(k: int, j: int) -> tuple[Poly3 | None, Poly3]:
    """``(p^k_j, q^k_j)`` rebuilt from terminating ``2F1`` series in ``-x3^2/|z|^2``.

    Each power ``(-x3^2/(z zbar))^s`` is absorbed into the monomial prefactor,
    which always carries enough ``z`` and ``zbar`` factors to stay polynomial.
    """
    if not 0 <= j <= k + 1:
        raise ValueError("index out of range")
    p = None
    if j <= k:
        coeffs = hyp2f1_terminating(-j, -k + j, Fraction(1, 2))
        pref = Fraction(1, factorial(j) * factorial(k - j))
        terms = [(pref * c * (-1) ** s, j - s, k - j - s, 2 * s) for s, c in enumerate(coeffs)]
        p = _assemble(terms, "x")
    if j == 0 or j == k + 1:
        q = to_complex(Poly3.zero("x"))
    else:
        coeffs = hyp2f1_terminating(-j + 1, -k + j, Fraction(3, 2))
        pref = Fraction(2, factorial(j - 1) * factorial(k - j))
        terms = [(pref * c * (-1) ** s, j - 1 - s, k - j - s, 2 * s + 1) for s, c in enumerate(coeffs)]
        q = _assemble(terms, "x")
    return p, q
