import csv
import io
import json
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from conftest import complexes, polys, quats, spinor_polys
from oracles import agrees_to_digits, ball_points, mc_ball_integral
from monobasis.exact_algebra import ComplexRat, ExactScalar, Poly3, QuatRat, SpinorPoly, to_quat
from monobasis.inner_products import (
    fischer_product,
    format_scalar,
    gram,
    integrate,
    l2_ball_spinor,
    l2_quat,
    l2_scalar,
    monomial_ball_integral,
    monomial_sphere_integral,
)
from monobasis.quaternion_appell import appell_norm_squared, appell_recurrence, g_basis_embedding
from monobasis.spinor_gt import gt_basis_spinor

PI = ExactScalar(Fraction(1), 1)


def sympy_sphere_moment(a, b, c):
    th, ph = sp.symbols("theta phi", real=True)
    v = (sp.cos(th), sp.sin(th) * sp.cos(ph), sp.sin(th) * sp.sin(ph))
    f = v[0] ** a * v[1] ** b * v[2] ** c * sp.sin(th)
    return sp.integrate(sp.integrate(f, (ph, 0, 2 * sp.pi)), (th, 0, sp.pi))


def as_sympy(s: ExactScalar):
    return sp.Rational(s.coeff.numerator, s.coeff.denominator) * sp.pi**s.pi_power


# --- moments -----------------------------------------------------------------------

def test_ball_moment_examples():
    assert monomial_ball_integral(0, 0, 0) == ExactScalar(Fraction(4, 3), 1)
    assert monomial_ball_integral(1, 0, 0) == ExactScalar(Fraction(0), 1)
    assert monomial_ball_integral(2, 0, 0) == ExactScalar(Fraction(4, 15), 1)


def test_sphere_moment_examples():
    assert monomial_sphere_integral(0, 0, 0) == ExactScalar(Fraction(4), 1)
    assert monomial_sphere_integral(2, 0, 0) == ExactScalar(Fraction(4, 3), 1)
    assert not monomial_sphere_integral(1, 1, 0)


@pytest.mark.parametrize("e", [(2, 0, 0), (0, 2, 2), (4, 2, 0), (2, 2, 2), (0, 0, 6), (6, 4, 2)])
def test_sphere_moments_match_sympy(e):
    assert as_sympy(monomial_sphere_integral(*e)) == sp.simplify(sympy_sphere_moment(*e))


def test_ball_moments_match_quasi_monte_carlo():
    pts = ball_points(18)
    for e in [(0, 0, 0), (2, 0, 0), (2, 2, 0), (0, 4, 2), (2, 2, 2), (1, 2, 0)]:
        vals = pts[:, 0] ** e[0] * pts[:, 1] ** e[1] * pts[:, 2] ** e[2]
        exact = float(monomial_ball_integral(*e))
        assert agrees_to_digits(mc_ball_integral(vals), exact), e


@given(st.tuples(*(st.integers(0, 8) for _ in range(3))))
def test_moment_identities(e):
    a, b, c = e
    s = monomial_sphere_integral(a, b, c)
    # |v|^2 = 1 on the sphere
    lifted = sum((monomial_sphere_integral(*(x + 2 * (i == j) for j, x in enumerate(e))) for i in range(3)),
                 ExactScalar(Fraction(0), 1))
    assert lifted == s
    assert monomial_ball_integral(a, b, c) == s / (a + b + c + 3)
    assert monomial_sphere_integral(b, c, a) == s


# --- products ----------------------------------------------------------------------------

def test_spinor_product_examples():
    assert not l2_ball_spinor(SpinorPoly.const(1, 0), SpinorPoly.const(0, 1))
    assert l2_ball_spinor(SpinorPoly.const(1, 0), SpinorPoly.const(1, 0)) == ExactScalar(ComplexRat(Fraction(4, 3)), 1)
    f = gt_basis_spinor(1, "-").elements
    assert not l2_ball_spinor(f[0], f[1])


@given(spinor_polys(), spinor_polys(), complexes)
def test_spinor_product_hermitian_positive_sesquilinear(P, Q, c):
    assert l2_ball_spinor(P, Q) == l2_ball_spinor(Q, P).conj()
    assert l2_ball_spinor(P, Q.scale(c)) == l2_ball_spinor(P, Q) * c
    assert l2_ball_spinor(P.scale(c), Q) == l2_ball_spinor(P, Q) * c.conj()
    norm = l2_ball_spinor(P, P).coeff
    assert norm.im == 0 and (norm.re > 0) == bool(P)


def test_quat_product_examples():
    one = to_quat(Poly3.const(1, "y"))
    assert l2_quat(one, one) == ExactScalar(QuatRat(Fraction(4, 3)), 1)
    g = g_basis_embedding(1).elements
    assert not l2_quat(g[0], g[1])
    assert not l2_quat(appell_recurrence(2, 1), appell_recurrence(2, 0), "sphere")
    with pytest.raises(ValueError):
        l2_quat(to_quat(Poly3.var(0, "x")), one)


@given(polys(quats, "y"), polys(quats, "y"), quats)
def test_quat_product_symmetry_and_sides(Q, R, c):
    for dom in ("ball", "sphere"):
        assert l2_quat(Q, R, dom) == l2_quat(R, Q, dom).conj()
        assert l2_quat(Q, R.rmul(c), dom).coeff == l2_quat(Q, R, dom).coeff * c
        assert l2_quat(Q.rmul(c), R, dom).coeff == c.conj() * l2_quat(Q, R, dom).coeff
    n = l2_quat(Q, Q).coeff
    assert n.q1 == n.q2 == n.q3 == 0 and (n.q0 > 0) == bool(Q)


def test_scalar_product_and_integrate():
    x = Poly3.var(0, "x")
    assert l2_scalar(x, x) == ExactScalar(Fraction(4, 15), 1)
    assert integrate(x * x + Poly3.const(1, "x")) == ExactScalar(Fraction(4, 15) + Fraction(4, 3), 1)
    with pytest.raises(ValueError):
        integrate(x, "cube")


def test_fischer_examples():
    x1, x2 = Poly3.var(0, "x"), Poly3.var(1, "x")
    assert fischer_product(x1 * x1, x1 * x1) == ExactScalar(Fraction(2), 0)
    assert not fischer_product(x1, x2)
    assert gram(gt_basis_spinor(2, "-").elements, "fischer").is_diagonal()


@given(spinor_polys())
def test_fischer_positive(P):
    v = fischer_product(P, P)
    assert v.pi_power == 0 and v.coeff.im == 0 and (v.coeff.re > 0) == bool(P)


# --- Gram matrices ----------------------------------------------------------------------------

def test_gram_diagonal_for_spinor_and_quaternion_bases():
    for k in range(6):
        for prod in ("ball", "sphere", "fischer"):
            G = gram(gt_basis_spinor(k, "-").elements, prod)
            assert G.is_diagonal() and G.positive_diagonal()
            Gq = gram(g_basis_embedding(k).elements, prod)
            assert Gq.is_diagonal() and Gq.positive_diagonal()


def test_gram_across_degrees_is_block_zero():
    elems = [appell_recurrence(n, l) for n in range(5) for l in range(n + 1)]
    assert gram(elems, "ball").is_diagonal()


def test_gram_detects_non_orthogonal_pairs():
    f = gt_basis_spinor(1, "-").elements
    G = gram([f[0], f[0] + f[1]], "ball")
    assert G.nonzero_off_diagonal() == [(0, 1), (1, 0)]
    assert G.is_hermitian()


def test_gram_rejects_mixed_tags():
    with pytest.raises(ValueError):
        gram([Poly3.var(0, "x"), Poly3.var(0, "y")], "ball")


def test_ball_and_sphere_grams_differ_by_radial_factor():
    for k in range(5):
        B = gram(gt_basis_spinor(k, "-").elements, "ball")
        S = gram(gt_basis_spinor(k, "-").elements, "sphere")
        for i in range(B.dim):
            for j in range(B.dim):
                assert B.entries[i][j].coeff * (2 * k + 3) == S.entries[i][j].coeff


def test_appell_norm_formula_exact():
    for n in range(9):
        for l in range(n + 1):
            assert l2_quat(appell_recurrence(n, l), appell_recurrence(n, l)) == appell_norm_squared(n, l)


def test_gram_serialization():
    G = gram(gt_basis_spinor(0, "-").elements, "ball")
    rows = list(csv.reader(io.StringIO(G.to_csv())))
    assert rows[0] == ["", "0", "1"]
    assert rows[1] == ["0", "(4/3,0/1)*pi^1", "(0/1,0/1)*pi^1"]
    doc = json.loads(G.to_json())
    assert doc["diagonal"] is True and doc["entries"][1][1] == "(4/3,0/1)*pi^1"
    assert format_scalar(ExactScalar(Fraction(-2, 5), 0)) == "-2/5*pi^0"
    assert format_scalar(ExactScalar(QuatRat(1, 0, Fraction(1, 2), 0), 1)) == "(1/1,0/1,1/2,0/1)*pi^1"
