"""Exact inner products over the unit ball and unit sphere in R^3.

Everything reduces to monomial moments. For even exponents ``(2a, 2b, 2c)``

    int_{S^2} x^2a y^2b z^2c dsigma = 2 G(a+1/2) G(b+1/2) G(c+1/2) / G(a+b+c+3/2)

which is a rational multiple of ``pi``; the ball moment divides that by
``N + 3`` with ``N`` the total degree. Odd exponents integrate to zero.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_algebra import (
    ComplexRat,
    ExactScalar,
    Poly3,
    QuatRat,
    SpinorPoly,
    conj,
)

DOMAINS = ("ball", "sphere")


def _half_gamma_over_sqrt_pi(n: int) -> Fraction:
    """``Gamma(n + 1/2) / sqrt(pi)`` as an exact rational."""
    return Fraction(math.factorial(2 * n), 4**n * math.factorial(n))


@lru_cache(maxsize=None)
def _sphere_moment(a: int, b: int, c: int) -> Fraction:
    if a % 2 or b % 2 or c % 2:
        return Fraction(0)
    a, b, c = a // 2, b // 2, c // 2
    num = _half_gamma_over_sqrt_pi(a) * _half_gamma_over_sqrt_pi(b) * _half_gamma_over_sqrt_pi(c)
    return 2 * num / _half_gamma_over_sqrt_pi(a + b + c + 1)


def _moment(e, domain: str) -> Fraction:
    m = _sphere_moment(*e)
    if domain == "sphere":
        return m
    if domain == "ball":
        return m / (sum(e) + 3)
    raise ValueError(f"domain must be one of {DOMAINS}, got {domain!r}")


def monomial_sphere_integral(a: int, b: int, c: int) -> ExactScalar:
    """Surface integral of ``v0^a v1^b v2^c`` over the unit sphere."""
    return ExactScalar(_moment((a, b, c), "sphere"), 1)


def monomial_ball_integral(a: int, b: int, c: int) -> ExactScalar:
    """Volume integral of ``v0^a v1^b v2^c`` over the unit ball."""
    return ExactScalar(_moment((a, b, c), "ball"), 1)


def integrate(p: Poly3, domain: str = "ball") -> ExactScalar:
    """Integral of a polynomial with coefficients in any of the exact rings."""
    acc = None
    for e, c in p.terms.items():
        m = _moment(e, domain)
        if m:
            acc = c * m if acc is None else acc + c * m
    return ExactScalar(Fraction(0) if acc is None else acc, 1)


def _pair_integral(P: Poly3, Q: Poly3, domain: str, zero):
    """``int conj(P) Q`` without forming the product polynomial."""
    if P.terms and Q.terms and P.vars != Q.vars:
        raise ValueError(f"variable tag mismatch: {P.vars!r} vs {Q.vars!r}")
    acc = zero
    for e1, c1 in P.terms.items():
        cc = conj(c1)
        for e2, c2 in Q.terms.items():
            m = _moment((e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]), domain)
            if m:
                acc = acc + cc * c2 * m
    return acc


def l2_scalar(P: Poly3, Q: Poly3, domain: str = "ball") -> ExactScalar:
    """``int conj(P) Q`` for rational or complex coefficients."""
    return ExactScalar(_pair_integral(P, Q, domain, Fraction(0)), 1)


def l2_ball_spinor(P: SpinorPoly, Q: SpinorPoly, domain: str = "ball") -> ExactScalar:
    """``(P, Q)_1``: standard Hermitian product on C^2, conjugate-linear in ``P``."""
    acc = _pair_integral(P.plus, Q.plus, domain, ComplexRat())
    acc = acc + _pair_integral(P.minus, Q.minus, domain, ComplexRat())
    return ExactScalar(ComplexRat.coerce(acc), 1)


def l2_quat(Q: Poly3, R: Poly3, domain: str = "ball") -> ExactScalar:
    """``int conj(Q) R`` with quaternion coefficients; right-linear in ``R``."""
    for p in (Q, R):
        if p.terms and p.vars != "y":
            raise ValueError("quaternion products expect tag 'y'")
    Q = Q.map_coeffs(QuatRat.coerce)
    R = R.map_coeffs(QuatRat.coerce)
    return ExactScalar(QuatRat.coerce(_pair_integral(Q, R, domain, QuatRat())), 1)


def fischer_product(P, Q) -> ExactScalar:
    """``sum_alpha alpha! (a_alpha, b_alpha)``; conjugate-linear in ``P``."""
    if isinstance(P, SpinorPoly):
        s = fischer_product(P.plus, Q.plus) + fischer_product(P.minus, Q.minus)
        return ExactScalar(ComplexRat.coerce(s.coeff), 0)
    if P.terms and Q.terms and P.vars != Q.vars:
        raise ValueError(f"variable tag mismatch: {P.vars!r} vs {Q.vars!r}")
    acc = None
    for e, a in P.terms.items():
        b = Q.terms.get(e)
        if b is None:
            continue
        w = math.factorial(e[0]) * math.factorial(e[1]) * math.factorial(e[2])
        v = conj(a) * b * w
        acc = v if acc is None else acc + v
    return ExactScalar(Fraction(0) if acc is None else acc, 0)


def _real_coeff(c) -> Fraction:
    if isinstance(c, QuatRat):
        if c.q1 or c.q2 or c.q3:
            raise ValueError(f"non-real diagonal entry {c!r}")
        return c.q0
    if isinstance(c, ComplexRat):
        if c.im:
            raise ValueError(f"non-real diagonal entry {c!r}")
        return c.re
    return Fraction(c)


def _is_quat_poly(p) -> bool:
    return isinstance(p, Poly3) and any(isinstance(c, QuatRat) for c in p.terms.values())


def product(name: str, sample=None):
    """Resolve a product selector ``ball``, ``sphere`` or ``fischer``.

    The value type of ``sample`` picks the spinor, quaternion or scalar
    variant of the L2 products.
    """
    if name == "fischer":
        return fischer_product
    if name not in DOMAINS:
        raise ValueError(f"unknown product {name!r}")
    if isinstance(sample, SpinorPoly):
        return lambda P, Q: l2_ball_spinor(P, Q, name)
    if _is_quat_poly(sample) or (isinstance(sample, Poly3) and sample.vars == "y"):
        return lambda P, Q: l2_quat(P, Q, name)
    return lambda P, Q: l2_scalar(P, Q, name)


def format_scalar(s: ExactScalar) -> str:
    """Canonical text: ``n/d*pi^t``, complex as ``(re,im)``, quaternion as ``(q0,q1,q2,q3)``."""

    def rat(x):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    c = s.coeff
    if isinstance(c, ComplexRat):
        body = f"({rat(c.re)},{rat(c.im)})"
    elif isinstance(c, QuatRat):
        body = "(" + ",".join(rat(v) for v in c.as_tuple()) + ")"
    else:
        body = rat(c)
    return f"{body}*pi^{s.pi_power}"


@dataclass
class GramMatrix:
    dim: int
    entries: list
    labels: list
    product: str = ""

    def off_diagonal(self):
        for i in range(self.dim):
            for j in range(self.dim):
                if i != j:
                    yield i, j, self.entries[i][j]

    def nonzero_off_diagonal(self) -> list:
        return [(self.labels[i], self.labels[j]) for i, j, v in self.off_diagonal() if v]

    def is_diagonal(self) -> bool:
        return not self.nonzero_off_diagonal()

    def is_hermitian(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i].conj()
            for i in range(self.dim) for j in range(i, self.dim)
        )

    def diagonal(self) -> list:
        return [self.entries[i][i] for i in range(self.dim)]

    def positive_diagonal(self) -> bool:
        """Every diagonal entry is real with positive coefficient."""
        return all(_real_coeff(d.coeff) > 0 for d in self.diagonal())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [str(l) for l in self.labels])
        for lab, row in zip(self.labels, self.entries):
            w.writerow([str(lab)] + [format_scalar(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "product": self.product,
            "labels": self.labels,
            "entries": [[format_scalar(v) for v in row] for row in self.entries],
            "diagonal": self.is_diagonal(),
        }, indent=2)


def gram(basis, product_name="ball", labels=None) -> GramMatrix:
    """Full Gram matrix ``G[i][j] = (b_i, b_j)`` of a list of polynomials.

    ``product_name`` is a selector understood by :func:`product` or a callable.
    """
    basis = list(basis)
    tags = {b.vars for b in basis if b}
    if len(tags) > 1:
        raise ValueError(f"mixed variable tags in basis: {sorted(tags)}")
    if callable(product_name):
        prod, name = product_name, getattr(product_name, "__name__", "custom")
    else:
        prod, name = product(product_name, basis[0] if basis else None), product_name
    n = len(basis)
    entries = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = prod(basis[i], basis[j])
            entries[i][j] = v
            entries[j][i] = v if i == j else v.conj()
    return GramMatrix(n, entries, list(labels) if labels is not None else list(range(n)), name)
