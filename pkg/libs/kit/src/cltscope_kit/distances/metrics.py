"""
Distances between tabulated laws.

Every metric works on the tabulation as given. The density metrics take
``normalize=True`` to rescale each PDF by its trapezoid mass first, which
keeps a truncated tail from showing up as distance.
"""

import math

import numpy as np
from scipy import special
from scipy.integrate import trapezoid

from cltscope_core.types import FrozenModel
from cltscope_core.errors import TruncationError, InvalidInputError, SupportMismatchError

from .grid import GridKind, GridFunction
from ..special_fns import FloatArray

KL_FLOOR = 1e-300
SUPPORT_THRESHOLD = 1e-12
COVERAGE_TOLERANCE = 1e-6
QUANTILE_PROBS = np.linspace(1e-6, 1.0 - 1e-6, 20001)


class BhattacharyyaResult(FrozenModel):
    coefficient: float
    distance: float


class KLResult(FrozenModel):
    divergence: float
    cross_entropy: float
    differential_entropy: float


def _right_values(fn: GridFunction) -> tuple[FloatArray, FloatArray]:
    # the last entry at a repeated abscissa is the right-continuous value
    x, y = fn.x, fn.y
    keep = np.append(np.diff(x) > 0.0, True)
    return x[keep], y[keep]


def _resample(fn: GridFunction, x: FloatArray) -> FloatArray:
    fx, fy = _right_values(fn)
    if fn.kind is GridKind.PDF:
        return np.interp(x, fx, fy, left=0.0, right=0.0)
    return np.interp(x, fx, fy)


def on_common_grid(
    f: GridFunction,
    g: GridFunction,
    kind: GridKind,
) -> tuple[FloatArray, FloatArray, FloatArray]:
    """
    Both tabulations on one grid. Differing grids are merged and each
    function is linearly interpolated; jump left limits are lost, so step
    CDFs should be compared on a shared paired grid.
    """
    if f.kind is not kind or g.kind is not kind:
        raise InvalidInputError(
            f"expected two {kind.value} tabulations, got {f.kind.value} and {g.kind.value}"
        )
    if f.grid == g.grid:
        return f.x, f.y, g.y

    x = np.union1d(f.x, g.x)
    return x, _resample(f, x), _resample(g, x)


def ks_distance(f: GridFunction, g: GridFunction) -> float:
    _, fy, gy = on_common_grid(f, g, GridKind.CDF)
    return float(np.max(np.abs(fy - gy)))


def wkr_distance(f: GridFunction, g: GridFunction) -> float:
    x, fy, gy = on_common_grid(f, g, GridKind.CDF)
    gap = np.abs(fy - gy)
    if gap[0] > COVERAGE_TOLERANCE or gap[-1] > COVERAGE_TOLERANCE:
        raise TruncationError(
            f"grid [{x[0]}, {x[-1]}] does not cover the CDF difference "
            f"(|F - G| = {gap[0]:.3g} at the left end, {gap[-1]:.3g} at the right end)"
        )
    return float(trapezoid(gap, x))


def _left_inverse(fn: GridFunction, probs: FloatArray) -> FloatArray:
    # np.unique keeps the first abscissa of every plateau: the left-continuous inverse
    levels, first = np.unique(fn.y, return_index=True)
    return np.interp(probs, levels, fn.x[first])


def wkr_distance_quantile(f: GridFunction, g: GridFunction) -> float:
    """∫|F⁻¹(p) − G⁻¹(p)| dp over p in [1e-6, 1 − 1e-6]; meant for invertible pairs."""
    if f.kind is not GridKind.CDF or g.kind is not GridKind.CDF:
        raise InvalidInputError("the quantile form of WKR needs two CDF tabulations")
    gap = np.abs(_left_inverse(f, QUANTILE_PROBS) - _left_inverse(g, QUANTILE_PROBS))
    return float(trapezoid(gap, QUANTILE_PROBS))


def _densities(
    f: GridFunction, g: GridFunction, normalize: bool
) -> tuple[FloatArray, FloatArray, FloatArray]:
    x, fy, gy = on_common_grid(f, g, GridKind.PDF)
    if normalize:
        return x, fy / trapezoid(fy, x), gy / trapezoid(gy, x)
    return x, fy, gy


def bhattacharyya(
    f: GridFunction, g: GridFunction, normalize: bool = False
) -> BhattacharyyaResult:
    x, fy, gy = _densities(f, g, normalize)
    coefficient = min(1.0, float(trapezoid(np.sqrt(fy * gy), x)))
    distance = -math.log(coefficient) if coefficient > 0.0 else math.inf
    return BhattacharyyaResult(coefficient=coefficient, distance=distance + 0.0)


def hellinger(f: GridFunction, g: GridFunction, normalize: bool = False) -> float:
    return math.sqrt(1.0 - bhattacharyya(f, g, normalize).coefficient)


def _kl_arrays(x: FloatArray, fy: FloatArray, gy: FloatArray) -> KLResult:
    if np.any((fy > SUPPORT_THRESHOLD) & (gy < KL_FLOOR)):
        where = float(x[np.argmax((fy > SUPPORT_THRESHOLD) & (gy < KL_FLOOR))])
        raise SupportMismatchError(f"f has mass where g vanishes (first at x = {where})")

    cross_entropy = -float(trapezoid(special.xlogy(fy, np.maximum(gy, KL_FLOOR)), x))
    differential_entropy = -float(trapezoid(special.xlogy(fy, fy), x))
    return KLResult(
        divergence=cross_entropy - differential_entropy,
        cross_entropy=cross_entropy,
        differential_entropy=differential_entropy,
    )


def kl_divergence(f: GridFunction, g: GridFunction, normalize: bool = False) -> KLResult:
    return _kl_arrays(*_densities(f, g, normalize))


def js_metric(f: GridFunction, g: GridFunction, normalize: bool = False) -> float:
    x, fy, gy = _densities(f, g, normalize)
    mixture = 0.5 * (fy + gy)
    total = _kl_arrays(x, fy, mixture).divergence + _kl_arrays(x, gy, mixture).divergence
    return math.sqrt(max(0.0, 0.5 * total))
