from typing import Self

from pydantic import Field

from cltscope_core.types import FrozenModel

from ..sizing import SampleSizeCell
from ..dist_model import MomentSummary


class PlotTable(FrozenModel):
    """Series behind one figure; ``None`` marks a point the series does not have."""

    name: str
    description: str
    columns: tuple[str, ...] = Field(min_length=1)
    rows: tuple[tuple[float | None, ...], ...]


class QuantileTrackRow(FrozenModel):
    n: int
    p: float
    empirical: float
    band_lower: float
    band_upper: float
    cf_order1: float
    cf_order_sqrt_n: float
    cf_order_n: float


class IncomeReport(FrozenModel):
    population_size: int | None
    moments: MomentSummary
    z_star: float
    n_dagger: int
    sample_sizes: tuple[SampleSizeCell, ...]
    quantile_track: tuple[QuantileTrackRow, ...] = ()
    plots: tuple[PlotTable, ...] = ()

    def plot(self, name: str) -> PlotTable:
        for table in self.plots:
            if table.name == name:
                return table
        raise KeyError(name)


class IncomeReportBuilder:
    def __init__(self, moments: MomentSummary, population_size: int | None = None) -> None:
        self._moments = moments
        self._population_size = population_size
        self._z_star = 0.0
        self._n_dagger = 1
        self._sample_sizes: list[SampleSizeCell] = []
        self._quantile_track: list[QuantileTrackRow] = []
        self._plots: list[PlotTable] = []

    def sample_sizes(self, cells: list[SampleSizeCell]) -> Self:
        self._sample_sizes = list(cells)
        return self

    def negativity_threshold(self, z_star: float, n_dagger: int) -> Self:
        self._z_star = z_star
        self._n_dagger = n_dagger
        return self

    def quantile_track(self, rows: list[QuantileTrackRow]) -> Self:
        self._quantile_track = list(rows)
        return self

    def plot(self, table: PlotTable | None) -> Self:
        if table is not None:
            self._plots.append(table)
        return self

    def build(self) -> IncomeReport:
        return IncomeReport(
            population_size=self._population_size,
            moments=self._moments,
            z_star=self._z_star,
            n_dagger=self._n_dagger,
            sample_sizes=tuple(self._sample_sizes),
            quantile_track=tuple(self._quantile_track),
            plots=tuple(self._plots),
        )
