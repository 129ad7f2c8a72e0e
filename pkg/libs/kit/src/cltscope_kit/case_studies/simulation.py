"""
Monte Carlo draws of the standardized sample mean Z_n = (X̄_n − μ)√n/σ.

Replicates are generated in fixed blocks, each from its own counter-based
Philox stream keyed on (seed, block index). The output therefore depends on
the seed alone, never on how many chunks or threads did the work.
"""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from pydantic import Field
from structlog.typing import FilteringBoundLogger

from cltscope_core.types import FrozenModel
from cltscope_core.errors import InvalidInputError
from cltscope_core.logger import AppLogger
from cltscope_core.settings import Settings

from ..dist_model import TwoPoint, FinitePopulation, DistributionSpec, compute_moments
from ..special_fns import FloatArray

BLOCK_SIZE = 16_384
QUANTILE_TOLERANCE = 1e-9


class SimConfig(FrozenModel):
    n: int = Field(ge=1)
    replicates: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2**64)
    parallel_chunks: int = Field(default=1, ge=1)


class QuantileBand(FrozenModel):
    """An empirical quantile and the order statistics bracketing it at ±z binomial SE."""

    p: float
    estimate: float
    lower: float
    upper: float


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


class MonteCarloSampler:
    def __init__(
        self,
        dist: DistributionSpec,
        settings: Settings | None = None,
        logger: FilteringBoundLogger | None = None,
    ) -> None:
        self._dist = dist
        self._ms = compute_moments(dist)
        self._support, self._probs = dist.atoms()
        self._settings = settings or Settings()
        self._logger = logger or AppLogger.get_logger(component="monte_carlo")

    def _draw_block(self, cfg: SimConfig, block: int) -> FloatArray:
        size = min(BLOCK_SIZE, cfg.replicates - block * BLOCK_SIZE)
        rng = block_generator(cfg.seed, block)
        dist = self._dist

        if isinstance(dist, TwoPoint):
            wins = rng.binomial(cfg.n, dist.p, size=size)
            means = dist.v1 + (dist.v2 - dist.v1) * wins / cfg.n
        elif isinstance(dist, FinitePopulation):
            values = np.asarray(dist.values, dtype=np.float64)
            means = values[rng.integers(0, values.size, size=(size, cfg.n))].mean(axis=1)
        else:
            means = rng.choice(self._support, size=(size, cfg.n), p=self._probs).mean(axis=1)

        return (means - self._ms.mu) * math.sqrt(cfg.n) / self._ms.sigma

    def _draw_chunk(self, cfg: SimConfig, blocks: list[int]) -> FloatArray:
        return np.concatenate([self._draw_block(cfg, block) for block in blocks])

    def sample(self, cfg: SimConfig) -> FloatArray:
        n_blocks = math.ceil(cfg.replicates / BLOCK_SIZE)
        chunks = [
            chunk.tolist()
            for chunk in np.array_split(np.arange(n_blocks), min(cfg.parallel_chunks, n_blocks))
        ]
        workers = min(self._settings.threads, len(chunks))
        self._logger.debug(
            "simulation started",
            n=cfg.n,
            replicates=cfg.replicates,
            blocks=n_blocks,
            chunks=len(chunks),
            workers=workers,
        )

        if workers == 1:
            parts = [self._draw_chunk(cfg, chunk) for chunk in chunks]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(lambda chunk: self._draw_chunk(cfg, chunk), chunks))

        sample = np.concatenate(parts)
        self._logger.info(
            "simulation finished",
            n=cfg.n,
            replicates=sample.size,
            mean=float(sample.mean()),
            std=float(sample.std()),
        )
        return sample


def simulate_standardized_means(
    dist: DistributionSpec,
    cfg: SimConfig,
    settings: Settings | None = None,
    logger: FilteringBoundLogger | None = None,
) -> FloatArray:
    return MonteCarloSampler(dist, settings, logger).sample(cfg)


def _sorted_sample(sample: FloatArray) -> FloatArray:
    x = np.asarray(sample, dtype=np.float64)
    if x.size == 0:
        raise InvalidInputError("the sample is empty")
    return np.sort(x)


def _check_p(p: float) -> None:
    if not 0.0 < p < 1.0:
        raise InvalidInputError(f"p must lie in (0, 1), got {p}")


def _order_statistic(ordered: FloatArray, rank: float) -> float:
    index = min(max(math.ceil(rank - QUANTILE_TOLERANCE), 1), ordered.size) - 1
    return float(ordered[index])


def empirical_quantile(sample: FloatArray, p: float) -> float:
    """Left-continuous inverse of the empirical CDF: the smallest x with F_M(x) ≥ p."""
    _check_p(p)
    ordered = _sorted_sample(sample)
    return _order_statistic(ordered, p * ordered.size)


def empirical_tail_fraction(sample: FloatArray, z: float) -> float:
    x = np.asarray(sample, dtype=np.float64)
    if x.size == 0:
        raise InvalidInputError("the sample is empty")
    return float(np.count_nonzero(x > z) / x.size)


def empirical_quantile_band(sample: FloatArray, p: float, z: float = 3.0) -> QuantileBand:
    _check_p(p)
    ordered = _sorted_sample(sample)
    m = ordered.size
    spread = z * math.sqrt(m * p * (1.0 - p))
    return QuantileBand(
        p=p,
        estimate=_order_statistic(ordered, p * m),
        lower=_order_statistic(ordered, p * m - spread),
        upper=_order_statistic(ordered, p * m + spread),
    )

