"""
Lattice correction to the O(n^(-1/2)) Edgeworth CDF.

For summands on {a + k h_max} the law of Z_n is a step function; the
correction adds a period-1 sawtooth J evaluated at the position of z
relative to the lattice of attainable values.
"""

import math

import numpy as np
from pydantic import Field

from cltscope_core.types import FrozenModel
from cltscope_core.errors import InvalidInputError, InconsistencyError

from .types import ApproxQuery, ApproxValue
from .edgeworth import check_n, cdf_correction_A
from ..dist_model import LatticeSpec, MomentSummary, standardize_lattice
from ..special_fns import Real, FloatArray, as_finite, as_output, std_normal_cdf

STANDARDIZATION_TOLERANCE = 1e-9
_CHUNK = 2048


class ZigzagConfig(FrozenModel):
    terms: int = Field(default=1000, ge=1)


def zigzag_fourier(z: Real, cfg: ZigzagConfig = ZigzagConfig()) -> Real:
    """
    (1/π) Σ_{j=1..ℓ} sin(2πjz)/j.

    Evaluated on |z| mod 1 and signed afterwards, so J is exactly odd and
    exactly zero at the integers.
    """
    x = as_finite(z)
    flat = np.atleast_1d(x).ravel()
    sign = np.sign(flat)
    frac = np.mod(np.abs(flat), 1.0)
    j = np.arange(1, cfg.terms + 1, dtype=np.float64)

    out = np.empty_like(flat)
    for start in range(0, flat.size, _CHUNK):
        part = frac[start : start + _CHUNK, None]
        phase = np.mod(part * j, 1.0)
        out[start : start + _CHUNK] = np.sum(np.sin(2.0 * np.pi * phase) / j, axis=1)

    values = sign * out / np.pi
    return as_output(values.reshape(x.shape))


def zigzag_piecewise(z: Real) -> Real:
    """Closed form of J with the integer part taken toward zero."""
    x = as_finite(z)
    whole = np.trunc(x)
    values = np.where(x > 0.0, whole - x + 0.5, whole - x - 0.5)
    return as_output(np.where(x == whole, 0.0, values))


def _check_standardized(ms: MomentSummary, lat: LatticeSpec) -> None:
    expected_a = (lat.a - ms.mu) / ms.sigma
    expected_h = lat.h_max / ms.sigma
    if abs(lat.a_star - expected_a) > STANDARDIZATION_TOLERANCE * max(1.0, abs(expected_a)):
        raise InconsistencyError(
            f"a_star {lat.a_star} does not match (a - mu)/sigma = {expected_a}"
        )
    if abs(lat.h_star - expected_h) > STANDARDIZATION_TOLERANCE * max(1.0, expected_h):
        raise InconsistencyError(f"h_star {lat.h_star} does not match h_max/sigma = {expected_h}")


def lattice_correction(
    n: int,
    z: Real,
    lat: LatticeSpec,
    cfg: ZigzagConfig = ZigzagConfig(),
) -> Real:
    """(h*/√(2πn)) J((z√n − n a*)/h*) exp(−z²/2)."""
    check_n(n)
    x = as_finite(z)
    argument = (x * math.sqrt(n) - n * lat.a_star) / lat.h_star
    jump = np.asarray(zigzag_fourier(argument, cfg))
    scale = lat.h_star / math.sqrt(2.0 * math.pi * n)
    return as_output(scale * jump * np.exp(-0.5 * x * x))


def lattice_cdf_curve(
    n: int,
    z: Real,
    ms: MomentSummary,
    lat: LatticeSpec,
    cfg: ZigzagConfig = ZigzagConfig(),
) -> FloatArray:
    _check_standardized(ms, lat)
    x = np.atleast_1d(as_finite(z))
    return (
        std_normal_cdf(x)
        + cdf_correction_A(n, x, ms.skewness)
        + lattice_correction(n, x, lat, cfg)
    )


def lattice_cdf(
    query: ApproxQuery,
    ms: MomentSummary,
    lat: LatticeSpec,
    cfg: ZigzagConfig = ZigzagConfig(),
) -> ApproxValue:
    if query.scale != "z":
        raise InvalidInputError("the lattice CDF is evaluated on the z scale")
    value = float(lattice_cdf_curve(query.n, query.point, ms, lat, cfg)[0])
    return ApproxValue(value=value, in_range=0.0 <= value <= 1.0)
