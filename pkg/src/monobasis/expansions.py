"""Generalized Taylor and Fourier expansions of monogenic polynomials.

Quaternionic coefficients always multiply ``A^l_n`` from the right. The
Fourier path works exactly until the last step: the right coefficient
``c = (A, f) / ||A||^2`` is rational, and only ``alpha = c / scale`` with
the float normalization ``scale`` of ``phi^l_n`` is inexact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact_algebra import ComplexRat, Poly3, QuatRat, SpinorPoly, to_quat, wirtinger
from .inner_products import l2_quat
from .quaternion_appell import (
    NormalizedAppell,
    appell_norm_squared,
    appell_recurrence,
    cauchy_riemann_D,
    phi_scale,
    taylor_operator,
)
from .spinor_gt import hat_basis, monogenic_residual


class NonMonogenicError(ValueError):
    """Raised for inputs outside the kernel; ``residual`` holds the offending image."""

    def __init__(self, residual, message: str = "input is not monogenic"):
        super().__init__(f"{message}: residual {residual!r}")
        self.residual = residual


def _require_quat_monogenic(f: Poly3) -> Poly3:
    if f.terms and f.vars != "y":
        raise ValueError("quaternion expansions expect tag 'y'")
    f = to_quat(f)
    res = cauchy_riemann_D(f)
    if res:
        raise NonMonogenicError(res)
    return f


# --- quaternionic Taylor series -------------------------------------------------

@dataclass
class TaylorCoeffsQuat:
    coeffs: dict = field(default_factory=dict)
    max_degree: int = -1


def taylor_quat(f: Poly3) -> TaylorCoeffsQuat:
    """``t_{n,l} = D_C^l Dbar0^(n-l) f |_0 / n!`` for every ``(n, l)`` up to ``deg f``."""
    f = _require_quat_monogenic(f)
    deg = f.degree()
    out = {}
    for n in range(deg + 1):
        fn = f.homogeneous_part(n)
        if not fn:
            continue
        for l in range(n + 1):
            t = QuatRat.coerce(taylor_operator(fn, n, l).constant_term()) * Fraction(1, math.factorial(n))
            if t:
                out[(n, l)] = t
    return TaylorCoeffsQuat(out, deg)


def taylor_reconstruct_quat(tc: TaylorCoeffsQuat) -> Poly3:
    acc = Poly3.zero("y")
    for (n, l), t in sorted(tc.coeffs.items()):
        acc = acc + appell_recurrence(n, l).rmul(t)
    return acc


# --- spinor Taylor series ----------------------------------------------------------

@dataclass
class TaylorCoeffsSpinor:
    coeffs: dict = field(default_factory=dict)
    max_degree: int = -1
    sign: str = "-"


def _spinor_taylor_entry(fk: SpinorPoly, k: int, j: int) -> ComplexRat:
    if j <= k:
        d = fk.diff(2, j)
        for _ in range(k - j):
            d = wirtinger(d, "zbar")
        slot = d.plus
    else:
        d = fk.diff(2, 2 * k + 1 - j)
        for _ in range(j - k - 1):
            d = wirtinger(d, "z")
        slot = d.minus
    return ComplexRat.coerce(slot.constant_term()) * Fraction(1, math.factorial(k))


def taylor_spinor(f: SpinorPoly, sign: str = "-") -> TaylorCoeffsSpinor:
    """Coefficients ``t^k_j`` with ``f = sum t^k_j hat f^k_j``.

    ``j <= k`` reads the ``v+`` slot of ``d_x3^j d_zbar^(k-j) f / k!`` at 0,
    ``j > k`` the ``v-`` slot of ``d_x3^(2k+1-j) d_z^(j-k-1) f / k!``.
    """
    if f and f.vars != "x":
        raise ValueError("spinor expansions expect tag 'x'")
    res = monogenic_residual(f, sign)
    if res:
        raise NonMonogenicError(res)
    deg = f.degree()
    out = {}
    for k in range(deg + 1):
        fk = SpinorPoly(f.plus.homogeneous_part(k), f.minus.homogeneous_part(k))
        if not fk:
            continue
        for j in range(2 * k + 2):
            t = _spinor_taylor_entry(fk, k, j)
            if t:
                out[(k, j)] = t
    return TaylorCoeffsSpinor(out, deg, sign)


def taylor_reconstruct_spinor(tc: TaylorCoeffsSpinor) -> SpinorPoly:
    acc = SpinorPoly.zero("x")
    for (k, j), t in sorted(tc.coeffs.items()):
        acc = acc + hat_basis(k, tc.sign).elements[j].scale(t)
    return acc


# --- Fourier series ----------------------------------------------------------------

@dataclass
class FourierCoeffs:
    """``coeffs[(n, l)]`` is the float quaternion ``alpha_{n,l}``; ``exact`` the right coefficient on ``A^l_n``."""

    coeffs: dict = field(default_factory=dict)
    exact: dict = field(default_factory=dict)
    max_n: int = -1


def fourier(f, max_n: int | None = None) -> FourierCoeffs:
    """``alpha_{n,l} = (phi^l_n, f)`` over the unit ball.

    ``f`` is a quaternion polynomial or a :class:`NormalizedAppell`; in the
    latter case the exact work uses its polynomial and the float scale is
    applied at the end.
    """
    outer = 1.0
    if isinstance(f, NormalizedAppell):
        outer, f = f.scale, f.poly
    f = _require_quat_monogenic(f)
    if max_n is None:
        max_n = max(f.degree(), 0)
    coeffs, exact = {}, {}
    for n in range(max_n + 1):
        fn = f.homogeneous_part(n)
        for l in range(n + 1):
            if not fn:
                coeffs[(n, l)] = np.zeros(4)
                continue
            ip = l2_quat(appell_recurrence(n, l), fn, "ball")
            c = QuatRat.coerce(ip.coeff) * (1 / appell_norm_squared(n, l).coeff)
            if c:
                exact[(n, l)] = c
            coeffs[(n, l)] = c.to_array() / phi_scale(n, l) * outer
    return FourierCoeffs(coeffs, exact, max_n)


def fourier_reconstruct(fc: FourierCoeffs) -> Poly3:
    """Exact reconstruction from the right coefficients on ``A^l_n``."""
    acc = Poly3.zero("y")
    for (n, l), c in sorted(fc.exact.items()):
        acc = acc + appell_recurrence(n, l).rmul(c)
    return acc


def bridge_factor(n: int, l: int) -> float:
    """``2^(l+1) sqrt(pi / ((2n+3)(n-l)!(n+l+1)!))``."""
    den = (2 * n + 3) * math.factorial(n - l) * math.factorial(n + l + 1)
    return 2 ** (l + 1) * math.sqrt(math.pi / den)


@dataclass
class BridgeReport:
    entries: list = field(default_factory=list)
    tol: float = 1e-10

    @property
    def max_error(self) -> float:
        return max((e["error"] for e in self.entries), default=0.0)

    @property
    def ok(self) -> bool:
        return self.max_error <= self.tol


def coefficient_bridge(f: Poly3, tol: float = 1e-10) -> BridgeReport:
    """Compare ``alpha_{n,l}`` with ``bridge_factor(n, l) * D_C^l Dbar0^(n-l) f |_0``.

    The error is measured relative to ``max(1, |alpha|)``.
    """
    f = _require_quat_monogenic(f)
    fc = fourier(f)
    rep = BridgeReport(tol=tol)
    for n in range(f.degree() + 1):
        fn = f.homogeneous_part(n)
        for l in range(n + 1):
            deriv = QuatRat.coerce(taylor_operator(fn, n, l).constant_term()).to_array()
            rhs = bridge_factor(n, l) * deriv
            lhs = fc.coeffs[(n, l)]
            err = float(np.linalg.norm(lhs - rhs)) / max(1.0, float(np.linalg.norm(lhs)))
            rep.entries.append({"n": n, "l": l, "fourier": lhs, "taylor": rhs, "error": err})
    return rep
