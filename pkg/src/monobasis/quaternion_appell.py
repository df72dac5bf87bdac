"""Quaternion-valued monogenics in ``y = (y0, y1, y2)`` and the Appell basis.

A spinor ``s = (s1, s2)`` is the first column of the 2x2 complex matrix
representing the quaternion ``q(s)``; the second column is ``s*``. The
quaternion bases are reached three ways:

* embedding: ``g^k_j = q(h^k_j)`` with ``h`` the rescaled spinor GT basis,
* explicit: real and imaginary parts of ``p^k_l, q^k_l`` in ``(u, ubar, y0)``,
* recurrence: the two-step recurrence for ``A^l_n`` in the reduced
  quaternion ``y = y0 + i1 y1 + i2 y2``.

Quaternion scalars act on basis elements from the right throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exact_algebra import (
    I1,
    I2,
    I3,
    Q1,
    ComplexRat,
    Poly3,
    QuatRat,
    SpinorPoly,
    imag_part,
    quat_poly,
    real_part,
    to_complex,
    to_quat,
    z_poly,
    zbar_poly,
)
from .spinor_gt import RouteMismatch, gt_basis_spinor, p_poly, q_poly


def q_of_s(s1, s2) -> QuatRat:
    """``q(s) = Re s1 + i1 Im s2 + i2 Re s2 + i3 Im s1``."""
    s1, s2 = ComplexRat.coerce(s1), ComplexRat.coerce(s2)
    return QuatRat(s1.re, s2.im, s2.re, s1.im)


def s_of_q(q: QuatRat) -> tuple[ComplexRat, ComplexRat]:
    """First column of the matrix of ``q``."""
    return ComplexRat(q.q0, q.q3), ComplexRat(q.q2, q.q1)


def q_of_spinor(P: SpinorPoly) -> Poly3:
    """Apply ``q`` coefficientwise to a spinor polynomial (variables unchanged)."""
    return quat_poly(real_part(P.plus), imag_part(P.minus), real_part(P.minus),
                     imag_part(P.plus), vars=P.vars)


def spinor_of_q(Q: Poly3) -> SpinorPoly:
    """Inverse of :func:`q_of_spinor`: the first column of ``Q``."""
    plus, minus = {}, {}
    for e, c in Q.terms.items():
        s1, s2 = s_of_q(QuatRat.coerce(c))
        plus[e], minus[e] = s1, s2
    return SpinorPoly(Poly3(plus, Q.vars), Poly3(minus, Q.vars))


def x_to_y(p: Poly3) -> Poly3:
    """Substitute ``x1 -> -y2, x2 -> y1, x3 -> y0``."""
    if p.terms and p.vars != "x":
        raise ValueError("expected tag 'x'")
    return Poly3({(c, b, a): (-v if a % 2 else v) for (a, b, c), v in p.terms.items()}, "y")


def spinor_x_to_y(P: SpinorPoly) -> SpinorPoly:
    return SpinorPoly(x_to_y(P.plus), x_to_y(P.minus))


def lift_Q(P: SpinorPoly) -> Poly3:
    """``Q(P)(y0, y1, y2) = q(P)(-y2, y1, y0)``."""
    if P.vars != "x":
        raise ValueError("lift_Q expects tag 'x'")
    return q_of_spinor(spinor_x_to_y(P))


# --- h basis and the two g routes ----------------------------------------------

def c_constant(k: int, j: int) -> ComplexRat:
    """``c^k_j`` with ``h^k_j = c^k_j hat h^k_j``."""
    if not 0 <= j <= 2 * k + 1:
        raise ValueError("index out of range")
    if j > k:
        jj = 2 * k + 1 - j
        return c_constant(k, jj).conj() * (-1) ** jj
    mag = Fraction((-1) ** ((j + 1) * j // 2) * math.factorial(k), 2**j)
    return ComplexRat(0, 1) ** (k - j) * mag


@dataclass
class HBasisSet:
    k: int
    elements: list

    def __getitem__(self, j):
        return self.elements[j]

    def __len__(self):
        return len(self.elements)


def h_hat_basis(k: int) -> list:
    """``hat h^k_j(y) = f^{k,-}_j(-y2, y1, y0)``."""
    return [spinor_x_to_y(f) for f in gt_basis_spinor(k, "-", check=False).elements]


@lru_cache(maxsize=None)
def h_basis(k: int) -> HBasisSet:
    if k < 0:
        raise ValueError("degree must be non-negative")
    hats = h_hat_basis(k)
    return HBasisSet(k, [h.scale(c_constant(k, j)) for j, h in enumerate(hats)])


@dataclass
class AppellBasisSet:
    """Quaternion basis of one degree.

    ``family="A"`` lists ``A^0_n .. A^n_n`` (index ``l``); ``family="g"``
    lists ``g^k_0 .. g^k_k`` (index ``j``).
    """

    n: int
    elements: list
    route: str
    family: str = "A"

    def __getitem__(self, i):
        return self.elements[i]

    def __len__(self):
        return len(self.elements)


def g_basis_embedding(k: int) -> AppellBasisSet:
    """``g^k_j = q(h^k_j)`` for ``j = 0..k``."""
    hs = h_basis(k).elements
    return AppellBasisSet(k, [q_of_spinor(hs[j]) for j in range(k + 1)], "embedding", "g")


def g_basis_explicit(k: int) -> AppellBasisSet:
    """``g^k_j`` assembled from real/imaginary parts of ``p, q`` in ``(u, ubar, y0)``."""
    out = []
    for j in range(k + 1):
        l, odd = divmod(j, 2)
        scale = Fraction((-1) ** l * math.factorial(k), 2**j)
        if odd:
            pp, qq = p_poly(k, l, "y"), q_poly(k, l + 1, "y")
            g = quat_poly(real_part(qq), real_part(pp), -imag_part(pp), imag_part(qq))
        else:
            pp, qq = p_poly(k, l, "y"), q_poly(k, l, "y")
            g = quat_poly(real_part(pp), -real_part(qq), imag_part(qq), imag_part(pp))
        out.append(g.rmul(QuatRat(scale)))
    return AppellBasisSet(k, out, "explicit", "g")


# --- Appell recurrence -------------------------------------------------------------

def reduced_quaternion(conjugate: bool = False) -> Poly3:
    """``y = y0 + i1 y1 + i2 y2`` or its conjugate."""
    s = -1 if conjugate else 1
    return quat_poly(Poly3.var(0, "y"), Poly3.var(1, "y").lmul(s), Poly3.var(2, "y").lmul(s))


@lru_cache(maxsize=None)
def appell_recurrence(n: int, l: int) -> Poly3:
    """``A^l_n`` from the two-step recurrence in ``n`` at fixed column ``l``."""
    if not 0 <= l <= n:
        raise ValueError(f"A^{l}_{n}: need 0 <= l <= n")
    if n == l:
        base = to_quat(Poly3.var(1, "y")) - to_quat(Poly3.var(2, "y")).rmul(I3)
        return to_quat(base**l)
    m = n - 1  # recurrence step m -> m + 1
    y, yb = reduced_quaternion(), reduced_quaternion(True)
    lead = y.lmul(Fraction(2 * m + 3)) + yb.lmul(Fraction(2 * m + 1))
    acc = lead * appell_recurrence(m, l)
    if m - 1 >= l:
        r2 = sum((Poly3.var(i, "y") ** 2 for i in range(3)), Poly3.zero("y"))
        acc = acc - (to_quat(r2) * appell_recurrence(m - 1, l)).lmul(Fraction(2 * m))
    return acc.lmul(Fraction(m + 1, 2 * (m - l + 1) * (m + l + 2)))


def appell_basis(n: int) -> AppellBasisSet:
    return AppellBasisSet(n, [appell_recurrence(n, l) for l in range(n + 1)], "recurrence", "A")


# --- operators ----------------------------------------------------------------------

def _left_units(Q: Poly3, parts) -> Poly3:
    out = Poly3.zero("y")
    for unit, i in parts:
        out = out + to_quat(Q.diff(i)).lmul(unit)
    return out


def _require_y(Q: Poly3):
    if Q.terms and Q.vars != "y":
        raise ValueError("quaternion operators expect tag 'y'")


def cauchy_riemann_D(Q: Poly3) -> Poly3:
    """``D = d0 + i1 d1 + i2 d2`` applied from the left."""
    _require_y(Q)
    return _left_units(Q, ((Q1, 0), (I1, 1), (I2, 2)))


def dbar0(Q: Poly3) -> Poly3:
    """Hypercomplex derivative ``(d0 - i1 d1 - i2 d2) / 2``."""
    _require_y(Q)
    return _left_units(Q, ((Q1, 0), (-I1, 1), (-I2, 2))).lmul(Fraction(1, 2))


def d_complex(Q: Poly3) -> Poly3:
    """``(d1 + i3 d2) / 2``."""
    _require_y(Q)
    return _left_units(Q, ((Q1, 1), (I3, 2))).lmul(Fraction(1, 2))


def taylor_operator(Q: Poly3, n: int, l: int) -> Poly3:
    """``D_C^l Dbar0^(n-l) Q``: first ``n - l`` hypercomplex derivatives."""
    for _ in range(n - l):
        Q = dbar0(Q)
    for _ in range(l):
        Q = d_complex(Q)
    return Q


def full_derivative_normalizer(n: int, l: int) -> QuatRat:
    out = taylor_operator(appell_recurrence(n, l), n, l)
    if out.degree() > 0:
        raise ValueError(f"non-constant residual {out}")
    return QuatRat.coerce(out.constant_term())


def weight_operator_H_quat(Q: Poly3) -> Poly3:
    """``H`` acting on both columns of ``Q``; returns the first-column image as quaternion."""
    from .spinor_gt import weight_operator_H

    return q_of_spinor(weight_operator_H(spinor_of_q(Q)))


# --- identity across routes -----------------------------------------------------------

@dataclass
class IdentityReport:
    k: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _diff_monomials(a: Poly3, b: Poly3) -> list:
    d = a - b
    return [f"{e}: {c!r}" for e, c in d.sorted_terms()]


def identity_check(k: int) -> IdentityReport:
    """``g^k_j == A^{k-j}_k`` for every ``j`` and all three routes."""
    rep = IdentityReport(k)
    emb, exp = g_basis_embedding(k), g_basis_explicit(k)
    for j in range(k + 1):
        a = appell_recurrence(k, k - j)
        for name, g in (("embedding", emb[j]), ("explicit", exp[j])):
            if g != a:
                rep.failures.append(f"g^{k}_{j} ({name}) != A^{k - j}_{k}: {_diff_monomials(g, a)}")
    return rep


def check_routes(k: int):
    rep = identity_check(k)
    if not rep.ok:
        raise RouteMismatch("; ".join(rep.failures))


# --- float boundary: Legendre route and normalization -------------------------------------

def assoc_legendre(l: int, m: int, x: float, condon_shortley: bool = False,
                   sin_theta: float | None = None) -> float:
    """Associated Legendre function ``P^m_l(x)`` by upward recurrence in ``l``.

    ``m >= 0`` uses ``(1-x^2)^(m/2) d^m P_l / dx^m`` times ``(-1)^m`` when
    ``condon_shortley`` is set. Negative orders use the reflection
    ``P^{-m}_l = (-1)^m (l-m)!/(l+m)! P^m_l`` on top of the chosen convention.
    Passing ``sin_theta`` avoids recomputing ``sqrt(1 - x^2)``, which loses
    digits near the poles.
    """
    if m < 0:
        mm = -m
        if mm > l:
            return 0.0
        ratio = math.factorial(l - mm) / math.factorial(l + mm)
        return (-1) ** mm * ratio * assoc_legendre(l, mm, x, condon_shortley, sin_theta)
    if m > l:
        return 0.0
    if sin_theta is None:
        somx2 = math.sqrt(max(0.0, (1.0 - x) * (1.0 + x)))
    else:
        somx2 = abs(sin_theta)
    pmm = 1.0
    fact = 1.0
    for _ in range(m):
        pmm *= fact * somx2
        fact += 2.0
    if condon_shortley and m % 2:
        pmm = -pmm
    if l == m:
        return pmm
    pmm1 = x * (2 * m + 1) * pmm
    if l == m + 1:
        return pmm1
    for ll in range(m + 2, l + 1):
        pll = (x * (2 * ll - 1) * pmm1 - (ll + m - 1) * pmm) / (ll - m)
        pmm, pmm1 = pmm1, pll
    return pmm1


def spherical_to_cartesian(r: float, theta: float, phi: float) -> tuple[float, float, float]:
    """``(y0, y1, y2) = r (cos t, sin t cos p, sin t sin p)``."""
    return (r * math.cos(theta), r * math.sin(theta) * math.cos(phi),
            r * math.sin(theta) * math.sin(phi))


def legendre_eval(k: int, j: int, point, condon_shortley: bool = False) -> np.ndarray:
    """Evaluate ``g^k_j`` at spherical ``(r, theta, phi)`` via Legendre functions."""
    if not 0 <= j <= k:
        raise ValueError("index out of range")
    r, theta, phi = point
    c, s = math.cos(theta), math.sin(theta)
    m0, m1 = j - k, j - k - 1
    p0 = assoc_legendre(k, m0, c, condon_shortley, s)
    p1 = assoc_legendre(k, m1, c, condon_shortley, s)
    comps = np.array([
        p0 * math.cos(m0 * phi),
        -j * p1 * math.cos(m1 * phi),
        j * p1 * math.sin(m1 * phi),
        p0 * math.sin(m0 * phi),
    ])
    pref = math.factorial(k) / math.factorial(j) * (-2.0) ** (k - j) * r**k
    return pref * comps


def appell_norm_squared(n: int, l: int):
    """Exact ``||A^l_n||^2`` over the unit ball."""
    from .exact_algebra import ExactScalar

    num = 4 ** (l + 1) * math.factorial(n) ** 2
    den = (2 * n + 3) * math.factorial(n - l) * math.factorial(n + l + 1)
    return ExactScalar(Fraction(num, den), 1)


def phi_scale(n: int, l: int) -> float:
    return math.sqrt((2 * n + 3) * math.factorial(n - l) * math.factorial(n + l + 1) / math.pi) / (
        2 ** (l + 1) * math.factorial(n)
    )


@dataclass(frozen=True)
class NormalizedAppell:
    """``phi^l_n = scale * A^l_n``; the polynomial stays exact, only ``scale`` is a float."""

    n: int
    l: int
    scale: float
    poly: Poly3

    def coefficients(self) -> dict:
        return {e: QuatRat.coerce(c).to_array() * self.scale for e, c in self.poly.terms.items()}

    def evaluate(self, point) -> np.ndarray:
        return np.asarray(self.poly.evaluate(point)) * self.scale

    def norm_squared(self) -> float:
        from .inner_products import l2_quat

        exact = l2_quat(self.poly, self.poly, "ball")
        return self.scale**2 * float(exact.coeff.q0) * math.pi


def phi_normalize(n: int, l: int) -> NormalizedAppell:
    return NormalizedAppell(n, l, phi_scale(n, l), appell_recurrence(n, l))
