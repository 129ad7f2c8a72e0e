"""
The heavy-tailed income case study.

A population (read from CSV, or the synthetic surrogate) is summarised by
its moments, then pushed through every sizing rule and expansion to produce
the sample-size matrix, the PDF negativity threshold and the plot tables.
With a Monte Carlo config the standardized means are simulated as well and
Cornish-Fisher quantiles are tracked against the empirical ones.
"""

from pathlib import Path

import numpy as np
from pydantic import Field
from structlog.typing import FilteringBoundLogger

from cltscope_core.types import FrozenModel
from cltscope_core.logger import AppLogger
from cltscope_core.settings import Settings

from .report import PlotTable, IncomeReport, QuantileTrackRow, IncomeReportBuilder
from .surrogate import income_surrogate
from .simulation import SimConfig, MonteCarloSampler, empirical_quantile_band
from ..sizing import g_of_z, ferrari_roots, quartic_problem, sample_size_table
from ..dist_model import MomentSummary, FinitePopulation, compute_moments, read_population_csv
from ..expansions import (
    ApproxOrder,
    KurtosisForm,
    min_n_nonneg_pdf,
    cdf_correction_A,
    cdf_correction_B,
    cf_quantile_curve,
    edgeworth_pdf_curve,
)
from ..special_fns import FloatArray

PLOT_Z_GRID = np.round(np.linspace(-4.0, 4.0, 161), 10)
ROOT_Z_GRID = np.round(np.linspace(-4.0, 4.0, 81), 10)
PDF_BIN_EDGES = np.linspace(-4.0, 6.0, 101)


class IncomeConfig(FrozenModel):
    csv_path: str | None = None
    header: bool = False
    skewness: float | None = None
    excess_kurtosis: float | None = None
    n_list: tuple[int, ...] = Field(default=(4, 10, 25, 50, 100), min_length=1)
    epsilon_list: tuple[float, ...] = Field(default=(0.01, 0.005, 0.001, 0.0005), min_length=1)
    quantile_list: tuple[float, ...] = Field(default=(0.975, 0.995, 0.9995), min_length=1)
    z_star: float = -3.0
    surface_n: tuple[int, ...] = (10, 25, 50, 100, 250, 500, 1000)
    track_p: float = Field(default=0.9995, gt=0.0, lt=1.0)
    kurtosis_form: KurtosisForm = KurtosisForm.HE4
    sim: SimConfig | None = None


class IncomePipeline:
    def __init__(
        self,
        config: IncomeConfig,
        settings: Settings | None = None,
        logger: FilteringBoundLogger | None = None,
    ) -> None:
        self._config = config
        self._settings = settings or Settings()
        self._logger = logger or AppLogger.get_logger(component="income")

    def _population(self) -> FinitePopulation:
        cfg = self._config
        if cfg.csv_path is None:
            return income_surrogate()
        return read_population_csv(Path(cfg.csv_path), header=cfg.header)

    def _moments(self, population: FinitePopulation) -> MomentSummary:
        ms = compute_moments(population)
        cfg = self._config
        if cfg.skewness is None and cfg.excess_kurtosis is None:
            return ms

        forced = ms.model_dump()
        if cfg.skewness is not None:
            forced["skewness"] = cfg.skewness
            forced["abs_third_std_moment"] = None
        if cfg.excess_kurtosis is not None:
            forced["excess_kurtosis"] = cfg.excess_kurtosis
        return MomentSummary.model_validate(forced)

    def _a_curves(self, ms: MomentSummary) -> PlotTable:
        columns = [PLOT_Z_GRID] + [
            np.asarray(cdf_correction_A(n, PLOT_Z_GRID, ms.skewness)) for n in self._config.n_list
        ]
        return PlotTable(
            name="a_curves",
            description="skewness correction A_n(z) to the CDF, one column per n",
            columns=("z", *(f"A_{n}" for n in self._config.n_list)),
            rows=_rows(columns),
        )

    def _quartic_roots(self, ms: MomentSummary) -> PlotTable:
        epsilon = self._config.epsilon_list[0]
        form = self._config.kurtosis_form
        rows = []
        for z in ROOT_Z_GRID:
            roots = ferrari_roots(quartic_problem(float(z), epsilon, ms, form))
            rows.append((float(z), *roots, *([None] * (4 - len(roots)))))
        return PlotTable(
            name="quartic_roots",
            description=f"real roots in s = sqrt(n) of the sizing quartic at epsilon = {epsilon}",
            columns=("z", "root1", "root2", "root3", "root4"),
            rows=tuple(rows),
        )

    def _error_surface(self, ms: MomentSummary) -> PlotTable:
        rows = []
        for n in self._config.surface_n:
            error = np.abs(
                cdf_correction_A(n, PLOT_Z_GRID, ms.skewness)
                + cdf_correction_B(
                    n, PLOT_Z_GRID, ms.skewness, ms.excess_kurtosis, self._config.kurtosis_form
                )
            )
            rows.extend((float(n), float(z), float(e)) for z, e in zip(PLOT_Z_GRID, error))
        return PlotTable(
            name="error_surface",
            description="e*(n, z) = |A_n(z) + B_n(z)|",
            columns=("n", "z", "error"),
            rows=tuple(rows),
        )

    def _pdf_check(self, n: int, sample: FloatArray, ms: MomentSummary) -> PlotTable:
        counts, _ = np.histogram(sample, bins=PDF_BIN_EDGES)
        centres = 0.5 * (PDF_BIN_EDGES[:-1] + PDF_BIN_EDGES[1:])
        density = counts / (sample.size * np.diff(PDF_BIN_EDGES))
        columns = [centres, density] + [
            edgeworth_pdf_curve(n, centres, ms, order)[0] for order in ApproxOrder
        ]
        return PlotTable(
            name="pdf_check",
            description=f"simulated density of Z_{n} against phi, phi + C_n and phi + C_n + D_n",
            columns=("z", "empirical", "phi", "phi_c", "phi_c_d"),
            rows=_rows(columns),
        )

    def _track(self, n: int, sample: FloatArray, ms: MomentSummary) -> QuantileTrackRow:
        p = self._config.track_p
        band = empirical_quantile_band(sample, p)
        cf = {order: float(cf_quantile_curve(n, p, ms, order)[0][0]) for order in ApproxOrder}
        return QuantileTrackRow(
            n=n,
            p=p,
            empirical=band.estimate,
            band_lower=band.lower,
            band_upper=band.upper,
            cf_order1=cf[ApproxOrder.ORDER_1],
            cf_order_sqrt_n=cf[ApproxOrder.ORDER_SQRT_N],
            cf_order_n=cf[ApproxOrder.ORDER_N],
        )

    def run(self) -> IncomeReport:
        cfg = self._config
        population = self._population()
        ms = self._moments(population)
        self._logger.info(
            "income pipeline started",
            source=cfg.csv_path or "surrogate",
            size=len(population.values),
            skewness=ms.skewness,
            excess_kurtosis=ms.excess_kurtosis,
        )

        n_dagger = min_n_nonneg_pdf(ms.skewness, cfg.z_star)
        builder = (
            IncomeReportBuilder(ms, len(population.values))
            .sample_sizes(
                sample_size_table(ms, cfg.epsilon_list, cfg.quantile_list, cfg.kurtosis_form)
            )
            .negativity_threshold(cfg.z_star, n_dagger)
            .plot(
                PlotTable(
                    name="g_function",
                    description="g(z) = [exp(-z^2/2)(z^2 - 1)]^2",
                    columns=("z", "g"),
                    rows=_rows([PLOT_Z_GRID, np.asarray(g_of_z(PLOT_Z_GRID))]),
                )
            )
            .plot(self._a_curves(ms))
            .plot(self._quartic_roots(ms))
            .plot(self._error_surface(ms))
        )

        if cfg.sim is not None:
            sampler = MonteCarloSampler(population, self._settings, self._logger)
            track = []
            for index, n in enumerate(cfg.n_list):
                sample = sampler.sample(cfg.sim.model_copy(update={"n": n}))
                track.append(self._track(n, sample, ms))
                if index == 0:
                    builder.plot(self._pdf_check(n, sample, ms))
            builder.quantile_track(track)

        report = builder.build()
        self._logger.info("income pipeline finished", n_dagger=n_dagger, plots=len(report.plots))
        return report


def income_pipeline(
    csv_path: str | Path | None,
    n_list: tuple[int, ...] = (4, 10, 25, 50, 100),
    epsilon_list: tuple[float, ...] = (0.01, 0.005, 0.001, 0.0005),
    quantile_list: tuple[float, ...] = (0.975, 0.995, 0.9995),
    sim: SimConfig | None = None,
) -> IncomeReport:
    config = IncomeConfig(
        csv_path=None if csv_path is None else str(csv_path),
        n_list=n_list,
        epsilon_list=epsilon_list,
        quantile_list=quantile_list,
        sim=sim,
    )
    return IncomePipeline(config).run()


def _rows(columns: list[FloatArray]) -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(float(value) for value in row) for row in np.column_stack(columns))
