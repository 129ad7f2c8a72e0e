"""
Standard Normal and probabilists' Hermite primitives.

Every function accepts a float or a numpy array and returns the same shape
(a plain float for scalar input).
"""

import math

import numpy as np
from scipy import special
from numpy.typing import NDArray, ArrayLike

from cltscope_core.errors import InvalidInputError, UnsupportedDegreeError

FloatArray = NDArray[np.float64]
Real = float | FloatArray

MAX_HERMITE_DEGREE = 8
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def as_finite(z: ArrayLike, name: str = "z") -> FloatArray:
    arr = np.asarray(z, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} must be finite, got {z!r}")
    return arr


def as_output(values: ArrayLike) -> Real:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 0:
        return float(arr)
    return arr


def std_normal_pdf(z: Real) -> Real:
    x = as_finite(z)
    return as_output(INV_SQRT_2PI * np.exp(-0.5 * x * x))


def std_normal_cdf(z: Real) -> Real:
    x = as_finite(z)
    return as_output(special.ndtr(x))


def std_normal_quantile(p: Real) -> Real:
    """
    Φ⁻¹(p) for p in (0, 1).

    The ndtri starting value is polished with one Newton step on Φ; the step
    is skipped where φ underflows.
    """
    q = np.asarray(p, dtype=np.float64)
    if not np.all((q > 0.0) & (q < 1.0)):
        raise InvalidInputError(f"p must lie in (0, 1), got {p!r}")

    z = special.ndtri(q)
    density = INV_SQRT_2PI * np.exp(-0.5 * z * z)
    safe = density > 1e-300
    step = np.where(safe, (special.ndtr(z) - q) / np.where(safe, density, 1.0), 0.0)
    return as_output(z - step)


def hermite_he(j: int, z: Real) -> Real:
    """He_j(z) by the three-term recurrence He_{k+1} = z He_k - k He_{k-1}."""
    if isinstance(j, bool) or not isinstance(j, (int, np.integer)):
        raise InvalidInputError(f"Hermite degree must be an integer, got {j!r}")
    if j < 0:
        raise InvalidInputError(f"Hermite degree must be non-negative, got {j}")
    if j > MAX_HERMITE_DEGREE:
        raise UnsupportedDegreeError(
            f"Hermite degree {j} exceeds the supported maximum {MAX_HERMITE_DEGREE}"
        )

    x = as_finite(z)
    previous, current = np.ones_like(x), x.copy()
    if j == 0:
        return as_output(previous)
    for k in range(1, j):
        previous, current = current, x * current - k * previous
    return as_output(current)
