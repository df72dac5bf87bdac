"""Verification suites shared by the CLI and the test harness.

Each suite returns a list of check records
``{"check": name, "k": degree, "status": "pass" | "fail", "detail": text}``.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from .exact_algebra import ComplexRat, Poly3, QuatRat, SpinorPoly, star
from .expansions import coefficient_bridge
from .inner_products import gram, l2_ball_spinor, l2_quat
from .quaternion_appell import (
    appell_recurrence,
    cauchy_riemann_D,
    d_complex,
    dbar0,
    full_derivative_normalizer,
    g_basis_embedding,
    h_basis,
    identity_check,
    legendre_eval,
    lift_Q,
    q_of_s,
    spherical_to_cartesian,
)
from .spinor_gt import (
    RouteMismatch,
    derivative_ladder_check,
    dirac_check,
    gt_basis_spinor,
    hypergeometric_form,
    monogenic_residual,
    pq_polynomials,
    weight_operator_H,
)

SUITES = ("orthogonality", "appell", "eigen", "kernel", "identity", "legendre", "bridge")
SIGNS = ("+", "-")


def _rec(check: str, k, ok: bool, detail: str = "") -> dict:
    r = {"check": check, "k": k, "status": "pass" if ok else "fail"}
    if detail:
        r["detail"] = detail
    return r


def _rand_rat(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 5))


def random_quat(rng: random.Random) -> QuatRat:
    return QuatRat(*(_rand_rat(rng) for _ in range(4)))


def random_complex(rng: random.Random) -> ComplexRat:
    return ComplexRat(_rand_rat(rng), _rand_rat(rng))


def random_quat_monogenic(rng: random.Random, max_deg: int) -> Poly3:
    """Random right-combination ``sum A^l_n t_{n,l}`` with rational quaternion ``t``."""
    acc = Poly3.zero("y")
    for n in range(max_deg + 1):
        for l in range(n + 1):
            if rng.random() < 0.6:
                acc = acc + appell_recurrence(n, l).rmul(random_quat(rng))
    return acc


def random_spinor_monogenic(rng: random.Random, max_deg: int, sign: str = "-",
                            homogeneous: bool = False) -> SpinorPoly:
    acc = SpinorPoly.zero("x")
    degrees = [max_deg] if homogeneous else range(max_deg + 1)
    for k in degrees:
        for f in gt_basis_spinor(k, sign, check=False).elements:
            if rng.random() < 0.6:
                acc = acc + f.scale(random_complex(rng))
    return acc


# --- suites ------------------------------------------------------------------------

def suite_orthogonality(max_k: int, product: str = "ball") -> list:
    out = []
    for k in range(max_k + 1):
        for sign in SIGNS:
            G = gram(gt_basis_spinor(k, sign, check=False).elements, product)
            bad = G.nonzero_off_diagonal()
            pos = G.positive_diagonal()
            out.append(_rec(f"gram f^{{k,{sign}}}", k, not bad and pos,
                            f"nonzero off-diagonal {bad}" if bad else ""))
        G = gram(g_basis_embedding(k).elements, product)
        bad = G.nonzero_off_diagonal()
        out.append(_rec("gram g^k", k, not bad and G.positive_diagonal(),
                        f"nonzero off-diagonal {bad}" if bad else ""))
    # different degrees are orthogonal as well
    elems = [(n, l) for n in range(min(max_k, 5) + 1) for l in range(n + 1)]
    G = gram([appell_recurrence(n, l) for n, l in elems], product, labels=[f"A^{l}_{n}" for n, l in elems])
    bad = G.nonzero_off_diagonal()
    out.append(_rec("gram A^l_n across degrees", min(max_k, 5), not bad,
                    f"nonzero off-diagonal {bad}" if bad else ""))
    return out


def suite_appell(max_k: int) -> list:
    out = []
    for k in range(1, max_k + 1):
        for sign in SIGNS:
            rep = derivative_ladder_check(k, sign)
            out.append(_rec(f"derivative ladders f^{{k,{sign}}}", k, rep.ok, "; ".join(rep.failures)))
        hk, hl = h_basis(k).elements, h_basis(k - 1).elements
        fails = []
        for j, h in enumerate(hk):
            want = hl[j - 1].scale(k) if 1 <= j <= 2 * k else SpinorPoly.zero("y")
            if h.diff(0) != want:
                fails.append(j)
        out.append(_rec("dy0 h^k_j = k h^{k-1}_{j-1}", k, not fails, f"j={fails}" if fails else ""))
        gk, gl = g_basis_embedding(k).elements, g_basis_embedding(k - 1).elements
        fails = [j for j, g in enumerate(gk)
                 if g.diff(0) != (gl[j - 1].lmul(k) if j >= 1 else Poly3.zero("y"))]
        out.append(_rec("dy0 g^k_j = k g^{k-1}_{j-1}", k, not fails, f"j={fails}" if fails else ""))
        fails = []
        for l in range(k + 1):
            want = appell_recurrence(k - 1, l).lmul(k) if l < k else Poly3.zero("y")
            if dbar0(appell_recurrence(k, l)) != want:
                fails.append(l)
        out.append(_rec("Dbar0 A^l_n = n A^l_{n-1}", k, not fails, f"l={fails}" if fails else ""))
        ok = d_complex(appell_recurrence(k, k)) == appell_recurrence(k - 1, k - 1).lmul(k)
        out.append(_rec("D_C A^n_n = n A^{n-1}_{n-1}", k, ok))
    for k in range(max_k + 1):
        fails = [l for l in range(k + 1) if full_derivative_normalizer(k, l) != QuatRat(math.factorial(k))]
        out.append(_rec("D_C^l Dbar0^(n-l) A^l_n = n!", k, not fails, f"l={fails}" if fails else ""))
    return out


def suite_eigen(max_k: int) -> list:
    out = []
    for k in range(max_k + 1):
        for sign in SIGNS:
            base = gt_basis_spinor(k, sign, check=False)
            fails = [j for j, f in enumerate(base.elements)
                     if weight_operator_H(f) != f.scale(base.weight(j))]
            out.append(_rec(f"H f^{{k,{sign}}}_j = (k+1/2-j) f", k, not fails, f"j={fails}" if fails else ""))
        fails = [j for j, h in enumerate(h_basis(k).elements)
                 if weight_operator_H(h) != h.scale(Fraction(2 * k + 1 - 2 * j, 2))]
        out.append(_rec("H h^k_j = (k+1/2-j) h", k, not fails, f"j={fails}" if fails else ""))
    return out


def suite_kernel(max_k: int) -> list:
    out = []
    for k in range(max_k + 1):
        for sign in SIGNS:
            fails = [j for j, f in enumerate(gt_basis_spinor(k, sign, check=False).elements)
                     if monogenic_residual(f, sign)]
            out.append(_rec(f"d_x3 f = T f for f^{{k,{sign}}}", k, not fails, f"j={fails}" if fails else ""))
        fails = [j for j, f in enumerate(gt_basis_spinor(k, "-", check=False).elements) if dirac_check(f)]
        out.append(_rec("matrix Dirac operator kills f^{k,-}", k, not fails, f"j={fails}" if fails else ""))
        fails = [l for l in range(k + 1) if cauchy_riemann_D(appell_recurrence(k, l))]
        out.append(_rec("D A^l_n = 0", k, not fails, f"l={fails}" if fails else ""))
    return out


def suite_identity(max_k: int) -> list:
    out = []
    for k in range(max_k + 1):
        for sign in SIGNS:
            try:
                gt_basis_spinor(k, sign, check=True)
                out.append(_rec(f"CK route == closed form ({sign})", k, True))
            except RouteMismatch as exc:
                out.append(_rec(f"CK route == closed form ({sign})", k, False, str(exc)))
        fails = [j for j in range(k + 2) if hypergeometric_form(k, j) != pq_polynomials(k, j)]
        out.append(_rec("hypergeometric == closed form", k, not fails, f"j={fails}" if fails else ""))
        rep = identity_check(k)
        out.append(_rec("g^k_j == A^{k-j}_k (three routes)", k, rep.ok, "; ".join(rep.failures)))
    return out


def sample_points(count: int, seed: int) -> list:
    """Spherical points ``(r, theta, phi)`` with ``r`` in [0.1, 1]."""
    rng = np.random.default_rng(seed)
    return [(float(rng.uniform(0.1, 1.0)), float(rng.uniform(0.0, math.pi)),
             float(rng.uniform(-math.pi, math.pi))) for _ in range(count)]


def legendre_errors(k: int, j: int, points) -> float:
    """Largest relative error of the Legendre route against Cartesian evaluation."""
    g = g_basis_embedding(k).elements[j]
    worst = 0.0
    for pt in points:
        a = legendre_eval(k, j, pt)
        b = np.asarray(g.evaluate(spherical_to_cartesian(*pt)), dtype=float)
        nb = float(np.linalg.norm(b))
        err = float(np.linalg.norm(a - b)) / nb if nb > 0 else float(np.linalg.norm(a))
        worst = max(worst, err)
    return worst


def suite_legendre(max_k: int, tol: float = 1e-9, points=None, seed: int = 0) -> list:
    out = []
    for k in range(max_k + 1):
        for j in range(k + 1):
            pts = points if points is not None else sample_points(50, seed + 1000 * k + j)
            err = legendre_errors(k, j, pts)
            out.append(_rec(f"legendre g^{k}_{j}", k, err <= tol, f"max relative error {err:.3e}"))
    return out


def hproduct_bridge(P: SpinorPoly, R: SpinorPoly, domain: str = "ball") -> bool:
    """``(Q(P), Q(R))_H == q((P, R), (P*, R))`` with both sides over ``domain``."""
    lhs = l2_quat(lift_Q(P), lift_Q(R), domain).coeff
    rhs = q_of_s(l2_ball_spinor(P, R, domain).coeff, l2_ball_spinor(star(P), R, domain).coeff)
    return QuatRat.coerce(lhs) == rhs


def suite_bridge(max_k: int, seed: int = 0, tol: float = 1e-10) -> list:
    out = []
    rng = random.Random(seed)
    for k in range(max_k + 1):
        P = random_spinor_monogenic(rng, k, "-", homogeneous=True)
        R = random_spinor_monogenic(rng, k, "-", homogeneous=True)
        for domain in ("ball", "sphere"):
            out.append(_rec(f"H-product bridge ({domain})", k, hproduct_bridge(P, R, domain)))
        f = random_quat_monogenic(rng, k)
        rep = coefficient_bridge(f, tol)
        out.append(_rec("Fourier-Taylor coefficient relation", k, rep.ok, f"max error {rep.max_error:.3e}"))
    return out


def run_suite(name: str, max_k: int, product: str = "ball", tol: float = 1e-9, points=None) -> list:
    if name == "orthogonality":
        return suite_orthogonality(max_k, product)
    if name == "appell":
        return suite_appell(max_k)
    if name == "eigen":
        return suite_eigen(max_k)
    if name == "kernel":
        return suite_kernel(max_k)
    if name == "identity":
        return suite_identity(max_k)
    if name == "legendre":
        return suite_legendre(max_k, tol, points)
    if name == "bridge":
        return suite_bridge(max_k)
    raise ValueError(f"unknown suite {name!r}")
