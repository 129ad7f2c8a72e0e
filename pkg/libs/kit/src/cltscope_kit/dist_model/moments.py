import math

import numpy as np

from cltscope_core.errors import InvalidInputError, MissingMomentError, DegenerateDistributionError

from .types import MomentSummary, DistributionSpec
from ..rounding import sample_size_ceiling


def compute_moments(dist: DistributionSpec) -> MomentSummary:
    """
    Population moments of ``dist`` (divide by N, never N - 1).

    A FinitePopulation is the uniform PMF over its values.
    """
    support, probs = dist.atoms()

    mu = math.fsum(probs * support)
    centered = support - mu
    variance = math.fsum(probs * centered**2)
    if variance <= 0.0:
        raise DegenerateDistributionError("distribution has zero variance")

    sigma = math.sqrt(variance)
    standardized = centered / sigma
    return MomentSummary(
        mu=mu,
        sigma=sigma,
        skewness=math.fsum(probs * standardized**3),
        excess_kurtosis=math.fsum(probs * standardized**4) - 3.0,
        abs_third_std_moment=math.fsum(probs * np.abs(standardized) ** 3),
    )


def moments_of_mean(ms: MomentSummary, n: int) -> MomentSummary:
    """Summary of the mean of n IID draws: σ/√n, λ/√n, η/n; ρ is dropped."""
    if n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n}")

    root_n = math.sqrt(n)
    return MomentSummary(
        mu=ms.mu,
        sigma=ms.sigma / root_n,
        skewness=ms.skewness / root_n,
        excess_kurtosis=None if ms.excess_kurtosis is None else ms.excess_kurtosis / n,
    )


def naive_sample_size(ms: MomentSummary, delta_s: float, delta_ek: float) -> int:
    """
    Least n bringing the mean's skewness within ``delta_s`` and its excess
    kurtosis within ``delta_ek`` of the Normal values.
    """
    if not delta_s > 0.0 or not delta_ek > 0.0:
        raise InvalidInputError(
            f"skewness and kurtosis targets must be positive, got {delta_s}, {delta_ek}"
        )
    if ms.excess_kurtosis is None:
        raise MissingMomentError("naive sample size needs the excess kurtosis")

    skew_term = (ms.skewness / delta_s) ** 2
    kurtosis_term = abs(ms.excess_kurtosis / delta_ek)
    return sample_size_ceiling(max(skew_term, kurtosis_term))
