"""
Edgeworth corrections for the CDF and PDF of the standardized mean
Z_n = (Ȳ_n − μ)√n/σ, in powers of n^(-1/2).

Expansions are formal: values are never clamped, callers get an
``in_range`` flag instead.
"""

import math

import numpy as np
from numpy.typing import NDArray, ArrayLike

from cltscope_core.errors import InvalidInputError, MissingMomentError

from .types import ApproxOrder, ApproxQuery, ApproxValue, KurtosisForm
from ..rounding import sample_size_ceiling
from ..dist_model import MomentSummary
from ..special_fns import (
    Real,
    FloatArray,
    as_finite,
    as_output,
    hermite_he,
    std_normal_cdf,
    std_normal_pdf,
)

SQRT_2PI = math.sqrt(2.0 * math.pi)


def check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")


def require_kurtosis(ms: MomentSummary) -> float:
    if ms.excess_kurtosis is None:
        raise MissingMomentError("the O(1/n) term needs the excess kurtosis")
    return ms.excess_kurtosis


def cdf_correction_A(n: int, z: Real, skewness: float) -> Real:
    check_n(n)
    x = as_finite(z)
    gauss = np.exp(-0.5 * x * x)
    return as_output(-skewness * gauss * (x * x - 1.0) / (6.0 * math.sqrt(2.0 * math.pi * n)))


def cdf_correction_B(
    n: int,
    z: Real,
    skewness: float,
    excess_kurtosis: float,
    form: KurtosisForm = KurtosisForm.HE3,
) -> Real:
    check_n(n)
    x = as_finite(z)
    gauss = np.exp(-0.5 * x * x)
    he5 = hermite_he(5, x)
    if form is KurtosisForm.HE3:
        poly = -(3.0 * excess_kurtosis * hermite_he(3, x) + skewness**2 * he5)
    else:
        poly = 3.0 * excess_kurtosis * hermite_he(4, x) - skewness**2 * he5
    return as_output(gauss * poly / (72.0 * n * SQRT_2PI))


def pdf_correction_C(n: int, z: Real, skewness: float) -> Real:
    check_n(n)
    x = as_finite(z)
    gauss = np.exp(-0.5 * x * x)
    return as_output(skewness * gauss * hermite_he(3, x) / (6.0 * math.sqrt(2.0 * math.pi * n)))


def pdf_correction_D(n: int, z: Real, skewness: float, excess_kurtosis: float) -> Real:
    check_n(n)
    x = as_finite(z)
    gauss = np.exp(-0.5 * x * x)
    poly = 3.0 * excess_kurtosis * hermite_he(4, x) + skewness**2 * hermite_he(6, x)
    return as_output(gauss * poly / (72.0 * n * SQRT_2PI))


def edgeworth_cdf_curve(
    n: int,
    z: ArrayLike,
    ms: MomentSummary,
    order: ApproxOrder,
    form: KurtosisForm = KurtosisForm.HE3,
) -> tuple[FloatArray, NDArray[np.bool_]]:
    """Vectorised CDF approximation plus a mask of points inside [0, 1]."""
    check_n(n)
    x = np.atleast_1d(as_finite(z))
    values = std_normal_cdf(x)
    if order is not ApproxOrder.ORDER_1:
        values = values + cdf_correction_A(n, x, ms.skewness)
    if order is ApproxOrder.ORDER_N:
        values = values + cdf_correction_B(n, x, ms.skewness, require_kurtosis(ms), form)
    return values, (values >= 0.0) & (values <= 1.0)


def edgeworth_pdf_curve(
    n: int,
    z: ArrayLike,
    ms: MomentSummary,
    order: ApproxOrder,
) -> tuple[FloatArray, NDArray[np.bool_]]:
    """Vectorised PDF approximation plus a mask of non-negative points."""
    check_n(n)
    x = np.atleast_1d(as_finite(z))
    values = std_normal_pdf(x)
    if order is not ApproxOrder.ORDER_1:
        values = values + pdf_correction_C(n, x, ms.skewness)
    if order is ApproxOrder.ORDER_N:
        values = values + pdf_correction_D(n, x, ms.skewness, require_kurtosis(ms))
    return values, values >= 0.0


def _z_point(query: ApproxQuery) -> float:
    if query.scale != "z":
        raise InvalidInputError("CDF and PDF expansions are evaluated on the z scale")
    return query.point


def edgeworth_cdf(
    query: ApproxQuery,
    ms: MomentSummary,
    form: KurtosisForm = KurtosisForm.HE3,
) -> ApproxValue:
    values, in_range = edgeworth_cdf_curve(query.n, _z_point(query), ms, query.order, form)
    return ApproxValue(value=float(values[0]), in_range=bool(in_range[0]))


def edgeworth_pdf(query: ApproxQuery, ms: MomentSummary) -> ApproxValue:
    values, in_range = edgeworth_pdf_curve(query.n, _z_point(query), ms, query.order)
    return ApproxValue(value=float(values[0]), in_range=bool(in_range[0]))


def tau(n: int, z: Real, skewness: float) -> Real:
    """The factor 1 + λ He3(z)/(6√n) whose sign is the sign of φ + C_n."""
    check_n(n)
    x = as_finite(z)
    return as_output(1.0 + skewness * hermite_he(3, x) / (6.0 * math.sqrt(n)))


def min_n_nonneg_pdf(skewness: float, z_star: float) -> int:
    """
    Least n for which φ + C_n stays positive on every z > z_star.

    The left-tail bound dominates for the usual z_star <= −2; the local
    minimum of He3 at z = 1 is also honoured so the guarantee holds for any
    z_star < 0.
    """
    if not skewness > 0.0:
        raise InvalidInputError(f"skewness must be positive, got {skewness}")
    if not (math.isfinite(z_star) and z_star < 0.0):
        raise InvalidInputError(f"z_star must be a negative finite number, got {z_star}")

    left_cubic = z_star * (z_star * z_star - 3.0)
    left = 1
    if left_cubic < 0.0:
        left = sample_size_ceiling((skewness * left_cubic / 6.0) ** 2)
    # τ(n, 1) = 1 − λ/(3√n) must be strictly positive
    right = math.floor(skewness**2 / 9.0) + 1
    return max(left, right)
