from .income import IncomeConfig, IncomePipeline, income_pipeline
from .report import PlotTable, IncomeReport, QuantileTrackRow, IncomeReportBuilder
from .roulette import (
    BETS,
    RED_OR_BLACK,
    SINGLE_NUMBER,
    BetSpec,
    PlayFacts,
    RouletteSweep,
    RouletteResult,
    LatticeAccuracy,
    theta_exact,
    exact_cdf_at,
    theta_approx,
    ks_to_normal,
    win_threshold,
    roulette_sweep,
    lattice_accuracy,
    single_play_facts,
    exact_standardized_cdf,
)
from .surrogate import income_surrogate
from .simulation import (
    SimConfig,
    QuantileBand,
    MonteCarloSampler,
    block_generator,
    empirical_quantile,
    empirical_tail_fraction,
    empirical_quantile_band,
    simulate_standardized_means,
)

__all__ = [
    "BETS",
    "BetSpec",
    "PlayFacts",
    "PlotTable",
    "SimConfig",
    "RED_OR_BLACK",
    "IncomeConfig",
    "IncomeReport",
    "QuantileBand",
    "theta_exact",
    "exact_cdf_at",
    "theta_approx",
    "ks_to_normal",
    "SINGLE_NUMBER",
    "RouletteSweep",
    "win_threshold",
    "IncomePipeline",
    "RouletteResult",
    "roulette_sweep",
    "LatticeAccuracy",
    "block_generator",
    "income_pipeline",
    "QuantileTrackRow",
    "income_surrogate",
    "lattice_accuracy",
    "MonteCarloSampler",
    "single_play_facts",
    "empirical_quantile",
    "IncomeReportBuilder",
    "exact_standardized_cdf",
    "empirical_tail_fraction",
    "empirical_quantile_band",
    "simulate_standardized_means",
]
