import math

import numpy as np
from numpy.typing import ArrayLike

from cltscope_core.errors import InvalidInputError

from .types import ApproxOrder, ApproxQuery
from .edgeworth import check_n, require_kurtosis
from ..dist_model import MomentSummary
from ..special_fns import Real, FloatArray, as_output, hermite_he, std_normal_quantile


def cf_correction_U(n: int, p: Real, skewness: float) -> Real:
    check_n(n)
    z = np.asarray(std_normal_quantile(p))
    return as_output(skewness * (z * z - 1.0) / (6.0 * math.sqrt(n)))


def cf_correction_V(n: int, p: Real, skewness: float, excess_kurtosis: float) -> Real:
    check_n(n)
    z = np.asarray(std_normal_quantile(p))
    z2 = z * z
    poly = 3.0 * excess_kurtosis * (z2 - 3.0) + 2.0 * skewness**2 * (5.0 - 2.0 * z2)
    return as_output(z * poly / (72.0 * n))


def cf_correction_V_hermite(n: int, p: Real, skewness: float, excess_kurtosis: float) -> Real:
    """Same term as ``cf_correction_V`` written with He1 and He3; used as a cross-check."""
    check_n(n)
    z = np.asarray(std_normal_quantile(p))
    he1, he3 = hermite_he(1, z), hermite_he(3, z)
    value = excess_kurtosis / (24.0 * n) * he3 - skewness**2 / (36.0 * n) * (2.0 * he3 + he1)
    return as_output(np.asarray(value))


def cf_quantile_curve(
    n: int,
    p: ArrayLike,
    ms: MomentSummary,
    order: ApproxOrder,
) -> tuple[FloatArray, bool]:
    """Quantile approximations on a grid of p and whether they never decrease as p grows."""
    check_n(n)
    q = np.atleast_1d(np.asarray(p, dtype=np.float64))
    values = np.atleast_1d(std_normal_quantile(q))
    if order is not ApproxOrder.ORDER_1:
        values = values + cf_correction_U(n, q, ms.skewness)
    if order is ApproxOrder.ORDER_N:
        values = values + cf_correction_V(n, q, ms.skewness, require_kurtosis(ms))

    ordering = np.argsort(q, kind="stable")
    monotone = bool(np.all(np.diff(values[ordering]) >= 0.0))
    return values, monotone


def cf_quantile(query: ApproxQuery, ms: MomentSummary) -> float:
    if query.scale != "p":
        raise InvalidInputError("Cornish-Fisher quantiles are evaluated on the p scale")
    values, _ = cf_quantile_curve(query.n, query.point, ms, query.order)
    return float(values[0])
