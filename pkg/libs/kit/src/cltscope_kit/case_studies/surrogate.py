"""
A synthetic stand-in for a household-income population.

Two lognormal components (a body and a high-earning tail) are laid out at
quantile plotting positions, so the population is deterministic. A power
transform in log space is then tuned until the skewness hits the target and
the result is rescaled to the target mean.
"""

import math

import numpy as np
from scipy.optimize import brentq

from cltscope_core.errors import InvalidInputError

from ..dist_model import FinitePopulation, compute_moments
from ..special_fns import FloatArray, std_normal_quantile

DEFAULT_SIZE = 842
DEFAULT_SKEWNESS = 5.07
DEFAULT_MEAN = 82.88
TAIL_SHARE = 0.1
BODY = (math.log(55.0), 0.75)
TAIL = (math.log(180.0), 0.6)
POWER_BRACKET = (0.05, 20.0)


def _log_layout(size: int) -> FloatArray:
    n_tail = max(2, round(TAIL_SHARE * size))
    parts = []
    for count, (location, scale) in ((size - n_tail, BODY), (n_tail, TAIL)):
        positions = (np.arange(1, count + 1) - 0.5) / count
        parts.append(location + scale * np.asarray(std_normal_quantile(positions)))
    return np.sort(np.concatenate(parts))


def _skewness(values: FloatArray) -> float:
    return compute_moments(FinitePopulation(values=tuple(values.tolist()))).skewness


def income_surrogate(
    size: int = DEFAULT_SIZE,
    target_skewness: float = DEFAULT_SKEWNESS,
    mean: float = DEFAULT_MEAN,
) -> FinitePopulation:
    """Values in thousands of dollars with skewness ``target_skewness`` to solver precision."""
    if size < 20:
        raise InvalidInputError(f"the surrogate needs at least 20 values, got {size}")
    if mean <= 0.0:
        raise InvalidInputError(f"mean must be positive, got {mean}")

    logs = _log_layout(size)
    centre = float(np.median(logs))

    def transformed(power: float) -> FloatArray:
        return np.exp(centre + power * (logs - centre))

    low, high = POWER_BRACKET
    skew_low, skew_high = _skewness(transformed(low)), _skewness(transformed(high))
    if not skew_low < target_skewness < skew_high:
        raise InvalidInputError(
            f"target skewness {target_skewness} is outside the reachable range "
            f"({skew_low:.3f}, {skew_high:.3f}) for size {size}"
        )

    power = brentq(lambda g: _skewness(transformed(g)) - target_skewness, low, high, xtol=1e-13)
    values = transformed(power)
    return FinitePopulation(values=tuple((values * (mean / values.mean())).tolist()))
