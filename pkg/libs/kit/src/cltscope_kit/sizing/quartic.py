"""
Sample sizes that bring the Edgeworth-corrected CDF error under ε.

With s = √n the requirement |A_n(z) + B_n(z)| = ε becomes
|U (V s + W)| = ε s², i.e. the depressed quartic
h(s) = (ε/U)² s⁴ − V² s² − 2VW s − W², which splits into the two
quadratics ε s² = ±U (V s + W).
"""

import math

import numpy as np
from pydantic import Field, FiniteFloat

from cltscope_core.types import FrozenModel
from cltscope_core.errors import InvalidInputError

from ..rounding import sample_size_ceiling
from ..dist_model import MomentSummary
from ..expansions import KurtosisForm
from ..special_fns import Real, as_finite, as_output, hermite_he
from ..expansions.edgeworth import require_kurtosis

SQRT_2PI = math.sqrt(2.0 * math.pi)
DISCRIMINANT_SLACK = 1e-14


class QuarticProblem(FrozenModel):
    epsilon: float = Field(gt=0.0)
    u: float = Field(gt=0.0, le=1.0)
    v: FiniteFloat
    w: FiniteFloat


def check_epsilon(epsilon: float) -> None:
    if not 0.0 < epsilon < 0.5:
        raise InvalidInputError(f"epsilon must lie in (0, 0.5), got {epsilon}")


def g_of_z(z: Real) -> Real:
    """[exp(−z²/2)(z² − 1)]², the z-profile of the squared skewness correction."""
    x = as_finite(z)
    return as_output((np.exp(-0.5 * x * x) * (x * x - 1.0)) ** 2)


def skewness_sample_size(z: float, epsilon: float, skewness: float) -> float:
    """Unrounded n with |A_n(z)| = ε."""
    check_epsilon(epsilon)
    return skewness**2 * g_of_z(z) / (72.0 * math.pi * epsilon**2)


def n3_star(z: float, epsilon: float, skewness: float) -> int:
    return sample_size_ceiling(skewness_sample_size(z, epsilon, skewness))


def n3_max(skewness: float, epsilon: float) -> int:
    """Worst case over z of ``n3_star``; g peaks at z = 0 where it equals 1."""
    check_epsilon(epsilon)
    return sample_size_ceiling(skewness**2 / (72.0 * math.pi * epsilon**2))


def quartic_problem(
    z: float,
    epsilon: float,
    ms: MomentSummary,
    form: KurtosisForm = KurtosisForm.HE4,
) -> QuarticProblem:
    """
    Coefficients with A_n = U V/√n and B_n = U W/n.

    ``form`` defaults to the He4 kurtosis term, under which the reference
    sample-size tables were computed.
    """
    check_epsilon(epsilon)
    eta = require_kurtosis(ms)
    lam = ms.skewness
    x = float(as_finite(z))

    he5 = hermite_he(5, x)
    if form is KurtosisForm.HE4:
        w = (3.0 * eta * hermite_he(4, x) - lam**2 * he5) / (72.0 * SQRT_2PI)
    else:
        w = -(3.0 * eta * hermite_he(3, x) + lam**2 * he5) / (72.0 * SQRT_2PI)

    return QuarticProblem(
        epsilon=epsilon,
        u=math.exp(-0.5 * x * x),
        v=-lam * (x * x - 1.0) / (6.0 * SQRT_2PI),
        w=w,
    )


def quartic_residual(prob: QuarticProblem, s: float) -> float:
    eps, u, v, w = prob.epsilon, prob.u, prob.v, prob.w
    return (eps / u) ** 2 * s**4 - v * v * s * s - 2.0 * v * w * s - w * w


def _real_sqrt(discriminant: float, scale: float) -> float | None:
    if discriminant >= 0.0:
        return math.sqrt(discriminant)
    if discriminant >= -DISCRIMINANT_SLACK * scale:
        return 0.0
    return None


def ferrari_roots(prob: QuarticProblem) -> list[float]:
    """
    Real roots of h(s), sorted. Complex pairs are dropped; at least one
    quadratic always has real roots because U V² ≥ 0.
    """
    eps, u, v, w = prob.epsilon, prob.u, prob.v, prob.w
    uv = u * v
    uv2 = u * v * v
    scale = uv2 + abs(4.0 * w * eps)
    root_u = math.sqrt(u)

    roots: list[float] = []
    # ε s² + U V s + U W = 0
    minus = _real_sqrt(uv2 - 4.0 * w * eps, scale)
    if minus is not None:
        roots.extend([(-uv - root_u * minus) / (2.0 * eps), (-uv + root_u * minus) / (2.0 * eps)])
    # ε s² − U V s − U W = 0
    plus = _real_sqrt(uv2 + 4.0 * w * eps, scale)
    if plus is not None:
        roots.extend([(uv - root_u * plus) / (2.0 * eps), (uv + root_u * plus) / (2.0 * eps)])
    return sorted(roots)


def n34_star(
    z: float,
    epsilon: float,
    ms: MomentSummary,
    form: KurtosisForm = KurtosisForm.HE4,
) -> int:
    """⌈s₃₄²⌉ for the real root s₃₄ of largest magnitude."""
    roots = ferrari_roots(quartic_problem(z, epsilon, ms, form))
    s34 = max(abs(root) for root in roots)
    return sample_size_ceiling(s34 * s34)
