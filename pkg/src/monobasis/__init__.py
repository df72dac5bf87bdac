"""Exact Gelfand-Tsetlin and Appell bases of spherical monogenics in R^3."""

from .exact_algebra import (
    ComplexRat,
    ExactScalar,
    Poly3,
    QuatPoly,
    QuatRat,
    SpinorPoly,
    evaluate,
    partial_derivative,
    poly_mul,
    star,
    wirtinger,
)
from .expansions import (
    NonMonogenicError,
    coefficient_bridge,
    fourier,
    taylor_quat,
    taylor_reconstruct_quat,
    taylor_reconstruct_spinor,
    taylor_spinor,
)
from .inner_products import (
    fischer_product,
    gram,
    l2_ball_spinor,
    l2_quat,
    monomial_ball_integral,
    monomial_sphere_integral,
)
from .quaternion_appell import (
    appell_basis,
    appell_recurrence,
    cauchy_riemann_D,
    d_complex,
    dbar0,
    full_derivative_normalizer,
    g_basis_embedding,
    g_basis_explicit,
    h_basis,
    identity_check,
    legendre_eval,
    lift_Q,
    phi_normalize,
    q_of_s,
)
from .spinor_gt import (
    ck_extend_dim3,
    ck_poly_x,
    derivative_ladder_check,
    dirac_check,
    gegenbauer,
    gt_basis_spinor,
    hat_basis,
    hypergeometric_form,
    pq_polynomials,
    weight_operator_H,
)

__version__ = "0.1.0"
