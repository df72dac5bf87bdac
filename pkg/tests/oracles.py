"""Independent float oracles used only by the tests.

The ball integrator is randomized quasi-Monte-Carlo: scrambled Sobol points
in the unit cube mapped to uniform points in the unit ball by
``r = u^(1/3)``, ``cos(theta) = 2v - 1``, ``phi = 2 pi w``.
"""

import math

import numpy as np
from scipy.stats import qmc

from monobasis.exact_algebra import ComplexRat, QuatRat

BALL_VOLUME = 4 * math.pi / 3


def ball_points(log2_n: int = 17, seed: int = 12345) -> np.ndarray:
    u = qmc.Sobol(d=3, scramble=True, seed=seed).random_base2(m=log2_n)
    r = np.cbrt(u[:, 0])
    ct = 2 * u[:, 1] - 1
    st = np.sqrt(np.clip(1 - ct * ct, 0, None))
    ph = 2 * math.pi * u[:, 2]
    return np.column_stack([r * ct, r * st * np.cos(ph), r * st * np.sin(ph)])


def vector_eval(p, pts: np.ndarray) -> np.ndarray:
    """Evaluate a Poly3 at many points: shape (N,), or (N, 4) for quaternions."""
    if not p.terms:
        return np.zeros(len(pts))
    deg = max(sum(e) for e in p.terms)
    powers = [np.vstack([pts[:, v] ** d for d in range(deg + 1)]) for v in range(3)]
    mono = np.column_stack([powers[0][a] * powers[1][b] * powers[2][c] for a, b, c in p.terms])
    coeffs = list(p.terms.values())
    if any(isinstance(c, QuatRat) for c in coeffs):
        C = np.array([QuatRat.coerce(c).to_array() for c in coeffs])
    elif any(isinstance(c, ComplexRat) for c in coeffs):
        C = np.array([complex(ComplexRat.coerce(c)) for c in coeffs])
    else:
        C = np.array([float(c) for c in coeffs])
    return mono @ C


def mc_ball_integral(values: np.ndarray) -> float:
    return BALL_VOLUME * float(np.mean(values))


def agrees_to_digits(estimate: float, exact: float, digits: int = 3) -> bool:
    """Agreement to ``digits`` significant digits: half a unit in the last kept place."""
    if exact == 0:
        return abs(estimate) < 10.0 ** (-digits)
    place = math.floor(math.log10(abs(exact))) - (digits - 1)
    return abs(estimate - exact) <= 0.5 * 10.0**place
