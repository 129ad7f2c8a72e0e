"""
Repeated identical roulette wagers.

After n plays with T wins the net gain is S_n = n v1 + (v2 − v1) T and
T ~ Binomial(n, p), so every exact probability reduces to a Binomial tail.
"""

import math
from typing import Self, Iterable

import numpy as np
from pydantic import Field, FiniteFloat, model_validator
from structlog.typing import FilteringBoundLogger

from cltscope_core.types import FrozenModel
from cltscope_core.errors import InvalidInputError
from cltscope_core.logger import AppLogger

from ..rounding import snap_to_integer
from ..dist_model import TwoPoint, LatticeSpec, MomentSummary, compute_moments, standardize_lattice
from ..distances import GridKind, GridFunction, ks_distance, standard_grid, normal_cdf_grid
from ..expansions import ZigzagConfig, cdf_correction_A, lattice_correction
from ..special_fns import FloatArray, std_normal_cdf
from ..binomial_exact import binomial_sf, binomial_pmf_all
from ..expansions.edgeworth import check_n


class BetSpec(FrozenModel):
    """Net gains per unit stake: ``v1`` on a loss, ``v2`` on a win with probability ``p``."""

    name: str
    v1: FiniteFloat
    v2: FiniteFloat
    p: float = Field(gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def _ordered(self) -> Self:
        if not self.v1 < self.v2:
            raise ValueError(f"bet needs v1 < v2, got v1={self.v1}, v2={self.v2}")
        return self

    @property
    def span(self) -> float:
        return self.v2 - self.v1

    def to_distribution(self) -> TwoPoint:
        return TwoPoint(v1=self.v1, v2=self.v2, p=self.p)

    def moments(self) -> MomentSummary:
        return compute_moments(self.to_distribution())

    def lattice(self) -> LatticeSpec:
        return standardize_lattice(self.v1, self.span, self.moments())


RED_OR_BLACK = BetSpec(name="red-or-black", v1=-1.0, v2=1.0, p=18 / 38)
SINGLE_NUMBER = BetSpec(name="single-number", v1=-1.0, v2=35.0, p=1 / 38)
BETS = {bet.name: bet for bet in (RED_OR_BLACK, SINGLE_NUMBER)}


class RouletteResult(FrozenModel):
    n: int = Field(ge=1)
    theta_exact: float = Field(ge=0.0, le=1.0)
    theta_o1: float
    theta_skew: float
    theta_skew_lattice: float
    epsilon: float = Field(ge=0.0)


class PlayFacts(FrozenModel):
    n: int
    expected_net_gain_per_play: float
    expected_house_take: float
    most_likely_outcome_prob: float
    most_likely_net_gain: float
    prob_net_plus_one: float


class LatticeAccuracy(FrozenModel):
    """Largest errors against the exact CDF of Z_n, between consecutive jumps."""

    bet: str
    n: int
    midpoint_error_o1: float
    midpoint_error_skew: float
    midpoint_error_skew_lattice: float
    quarter_error_o1: float
    quarter_error_skew: float
    quarter_error_skew_lattice: float


def _check_theta(bet: BetSpec, n: int, epsilon: float) -> None:
    check_n(n)
    if not 0.0 <= epsilon < bet.v2:
        raise InvalidInputError(f"epsilon must lie in [0, {bet.v2}), got {epsilon}")


def win_threshold(bet: BetSpec, n: int, epsilon: float) -> float:
    """S_n > ε exactly when T exceeds this value."""
    return snap_to_integer((epsilon - bet.v1 * n) / bet.span)


def theta_exact(bet: BetSpec, n: int, epsilon: float = 0.0) -> float:
    """P(S_n > ε); an atom sitting exactly at ε does not count as coming out ahead."""
    _check_theta(bet, n, epsilon)
    return binomial_sf(n, bet.p, math.floor(win_threshold(bet, n, epsilon)))


def theta_approx(
    bet: BetSpec,
    n: int,
    epsilon: float = 0.0,
    skewness: bool = True,
    lattice: bool = True,
    cfg: ZigzagConfig = ZigzagConfig(),
) -> float:
    """1 − F(z*) at z* = (ε/n − μ)√n/σ with the chosen corrections added to Φ."""
    _check_theta(bet, n, epsilon)
    ms = bet.moments()
    z_star = (epsilon / n - ms.mu) * math.sqrt(n) / ms.sigma

    cdf = std_normal_cdf(z_star)
    if skewness:
        cdf += cdf_correction_A(n, z_star, ms.skewness)
    if lattice:
        cdf += lattice_correction(n, z_star, bet.lattice(), cfg)
    return 1.0 - cdf


def roulette_sweep(
    bet: BetSpec,
    n_values: Iterable[int],
    epsilon: float = 0.0,
    cfg: ZigzagConfig = ZigzagConfig(),
) -> list[RouletteResult]:
    return [
        RouletteResult(
            n=n,
            theta_exact=theta_exact(bet, n, epsilon),
            theta_o1=theta_approx(bet, n, epsilon, skewness=False, lattice=False),
            theta_skew=theta_approx(bet, n, epsilon, skewness=True, lattice=False),
            theta_skew_lattice=theta_approx(bet, n, epsilon, skewness=True, lattice=True, cfg=cfg),
            epsilon=epsilon,
        )
        for n in n_values
    ]


def single_play_facts(bet: BetSpec, n: int) -> PlayFacts:
    check_n(n)
    gain = bet.p * bet.v2 + (1.0 - bet.p) * bet.v1
    pmf = binomial_pmf_all(n, bet.p)
    mode = int(np.argmax(pmf))

    plus_one = snap_to_integer((1.0 - n * bet.v1) / bet.span)
    attainable = plus_one.is_integer() and 0 <= plus_one <= n
    return PlayFacts(
        n=n,
        expected_net_gain_per_play=gain,
        expected_house_take=-n * gain,
        most_likely_outcome_prob=float(pmf[mode]),
        most_likely_net_gain=n * bet.v1 + bet.span * mode,
        prob_net_plus_one=float(pmf[int(plus_one)]) if attainable else 0.0,
    )


def _jumps(bet: BetSpec, n: int) -> tuple[FloatArray, FloatArray]:
    """Jump locations of the CDF of Z_n and the CDF value just after each."""
    check_n(n)
    ms = bet.moments()
    wins = np.arange(n + 1, dtype=np.float64)
    at = (n * bet.v1 + bet.span * wins - n * ms.mu) / (ms.sigma * math.sqrt(n))
    cdf = np.minimum(np.cumsum(binomial_pmf_all(n, bet.p)), 1.0)
    cdf[-1] = 1.0
    return at, cdf


def exact_cdf_at(bet: BetSpec, n: int, z: FloatArray) -> FloatArray:
    """Right-continuous exact CDF of Z_n."""
    at, cdf = _jumps(bet, n)
    index = np.searchsorted(at, np.asarray(z, dtype=np.float64), side="right") - 1
    return np.where(index < 0, 0.0, cdf[np.clip(index, 0, None)])


def exact_standardized_cdf(bet: BetSpec, n: int) -> GridFunction:
    """
    Exact CDF of Z_n on the standard grid merged with paired points at every
    jump (left limit first, then the value).
    """
    at, cdf = _jumps(bet, n)
    plain = standard_grid()
    plain = plain[~np.isin(plain, at)]

    x = np.concatenate([plain, at, at])
    rank = np.concatenate([np.ones(plain.size), np.zeros(at.size), np.full(at.size, 2.0)])
    values = np.concatenate([exact_cdf_at(bet, n, plain), np.append(0.0, cdf[:-1]), cdf])
    order = np.lexsort((rank, x))
    return GridFunction.from_arrays(x[order], values[order], GridKind.CDF)


def ks_to_normal(bet: BetSpec, n: int) -> float:
    """sup |F_{Z_n} − Φ| with the exact CDF seen from both sides of every jump."""
    exact = exact_standardized_cdf(bet, n)
    return ks_distance(exact, normal_cdf_grid(grid=exact.x))


def lattice_accuracy(bet: BetSpec, n: int, cfg: ZigzagConfig = ZigzagConfig()) -> LatticeAccuracy:
    """
    Errors of Φ, Φ + A_n and Φ + A_n + lattice term against the exact step CDF.

    At jump midpoints J vanishes, so the skewness and lattice columns agree
    there; the quarter points (J = ±1/4) show what the lattice term adds.
    """
    at, cdf = _jumps(bet, n)
    ms, lat = bet.moments(), bet.lattice()
    gap = at[1] - at[0]
    exact = cdf[:-1]

    errors: dict[str, float] = {}
    points = {
        "midpoint": (at[:-1] + 0.5 * gap,),
        "quarter": (at[:-1] + 0.25 * gap, at[:-1] + 0.75 * gap),
    }
    for label, grids in points.items():
        worst = np.zeros(3)
        for z in grids:
            normal = std_normal_cdf(z)
            skew = normal + cdf_correction_A(n, z, ms.skewness)
            full = skew + lattice_correction(n, z, lat, cfg)
            worst = np.maximum(
                worst,
                [np.max(np.abs(candidate - exact)) for candidate in (normal, skew, full)],
            )
        for column, value in zip(("o1", "skew", "skew_lattice"), worst):
            errors[f"{label}_error_{column}"] = float(value)

    return LatticeAccuracy(bet=bet.name, n=n, **errors)


class RouletteSweep:
    """Runs ``roulette_sweep`` over 1..n_max and logs where exact θ_n peaks."""

    def __init__(
        self,
        bet: BetSpec,
        cfg: ZigzagConfig = ZigzagConfig(),
        logger: FilteringBoundLogger | None = None,
    ) -> None:
        self._bet = bet
        self._cfg = cfg
        self._logger = logger or AppLogger.get_logger(component="roulette", bet=bet.name)

    def run(self, n_max: int, epsilon: float = 0.0) -> list[RouletteResult]:
        check_n(n_max)
        rows = roulette_sweep(self._bet, range(1, n_max + 1), epsilon, self._cfg)
        best = max(rows, key=lambda row: row.theta_exact)
        self._logger.info(
            "roulette sweep finished",
            n_max=n_max,
            epsilon=epsilon,
            best_n=best.n,
            best_theta=best.theta_exact,
        )
        return rows
