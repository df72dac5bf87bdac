from fractions import Fraction

import sympy as sp
from hypothesis import settings, strategies as st

from monobasis.exact_algebra import ComplexRat, Poly3, QuatRat, SpinorPoly

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")

X = sp.symbols("x1 x2 x3", real=True)
Y = sp.symbols("y0 y1 y2", real=True)

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=9)
complexes = st.builds(ComplexRat, rationals, rationals)
quats = st.builds(QuatRat, rationals, rationals, rationals, rationals)
exponents = st.tuples(*(st.integers(0, 3) for _ in range(3)))


def polys(coeffs, vars="x", max_terms=5):
    return st.dictionaries(exponents, coeffs, max_size=max_terms).map(lambda d: Poly3(d, vars))


def homogeneous_polys(coeffs, k, vars="x", max_terms=5):
    monos = [(a, b, k - a - b) for a in range(k + 1) for b in range(k + 1 - a)]
    return st.dictionaries(st.sampled_from(monos), coeffs, max_size=max_terms).map(
        lambda d: Poly3(d, vars))


def spinor_polys(vars="x", max_terms=4):
    return st.builds(SpinorPoly, polys(complexes, vars, max_terms), polys(complexes, vars, max_terms))


def sym(c):
    """Exact ring element -> sympy number (quaternions as a 4-tuple)."""
    if isinstance(c, QuatRat):
        return tuple(sp.Rational(v.numerator, v.denominator) for v in c.as_tuple())
    if isinstance(c, ComplexRat):
        return sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(
            c.im.numerator, c.im.denominator)
    c = Fraction(c)
    return sp.Rational(c.numerator, c.denominator)


def to_sympy(p: Poly3):
    """Poly3 -> sympy expression; quaternion polynomials give a 4-tuple of channels."""
    v = X if p.vars == "x" else Y
    quat = any(isinstance(c, QuatRat) for c in p.terms.values())
    out = [sp.Integer(0)] * 4 if quat else sp.Integer(0)
    for (a, b, c), coeff in p.terms.items():
        mono = v[0] ** a * v[1] ** b * v[2] ** c
        if quat:
            for i, ci in enumerate(sym(QuatRat.coerce(coeff))):
                out[i] += ci * mono
        else:
            out += sym(coeff) * mono
    return tuple(sp.expand(o) for o in out) if quat else sp.expand(out)


# acceptance lines are collected here and printed in the terminal summary
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
