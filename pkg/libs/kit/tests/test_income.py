import pytest

from cltscope_kit.dist_model import write_population_csv
from cltscope_kit.case_studies import (
    SimConfig,
    IncomeConfig,
    IncomePipeline,
    income_pipeline,
    income_surrogate,
)

FORCED = {"skewness": 5.07, "excess_kurtosis": 33.81}


@pytest.fixture(scope="module")
def forced_report():
    return IncomePipeline(IncomeConfig(**FORCED)).run()


def _cell(report, epsilon, p):
    return next(c for c in report.sample_sizes if c.epsilon == epsilon and c.p == p)


def test_forced_moments_reproduce_sample_sizes(forced_report):
    assert forced_report.moments.skewness == 5.07
    assert forced_report.moments.excess_kurtosis == 33.81
    assert forced_report.moments.abs_third_std_moment is None
    assert len(forced_report.sample_sizes) == 12

    cell = _cell(forced_report, 0.005, 0.975)
    assert abs(cell.n3 - 788) <= 1
    assert abs(cell.n34 - 821) <= 8
    assert abs(_cell(forced_report, 0.01, 0.9995).n34 - 15) <= 1
    # 5.07 is rounded, so this lands at 870 rather than 872
    assert abs(_cell(forced_report, 0.0005, 0.9995).n3 - 872) <= 3


def test_negativity_threshold(forced_report):
    assert forced_report.z_star == -3.0
    assert forced_report.n_dagger == 232


def test_skewness_curves_at_origin(forced_report):
    table = forced_report.plot("a_curves")
    assert table.columns == ("z", "A_4", "A_10", "A_25", "A_50", "A_100")
    origin = next(row for row in table.rows if row[0] == 0.0)
    assert origin[4] == pytest.approx(0.0477, abs=5e-5)
    assert origin[5] == pytest.approx(0.0337, abs=5e-5)


def test_plot_tables_without_simulation(forced_report):
    names = [table.name for table in forced_report.plots]
    assert names == ["g_function", "a_curves", "quartic_roots", "error_surface"]
    assert forced_report.quantile_track == ()

    roots = forced_report.plot("quartic_roots")
    assert len(roots.rows) == 81
    assert all(len(row) == 5 for row in roots.rows)

    surface = forced_report.plot("error_surface")
    assert len(surface.rows) == 7 * 161
    assert all(row[2] >= 0.0 for row in surface.rows)

    with pytest.raises(KeyError):
        forced_report.plot("pdf_check")


def test_population_from_csv(tmp_path):
    population = income_surrogate(size=120, target_skewness=3.0, mean=50.0)
    path = tmp_path / "incomes.csv"
    write_population_csv(path, population, header=True)

    config = IncomeConfig(csv_path=str(path), header=True, n_list=(10, 50))
    report = IncomePipeline(config).run()

    assert report.population_size == 120
    assert report.moments.skewness == pytest.approx(3.0, abs=1e-6)
    assert report.plot("a_curves").columns == ("z", "A_10", "A_50")


def test_simulation_adds_pdf_check_and_track():
    config = IncomeConfig(
        n_list=(4, 10),
        epsilon_list=(0.01,),
        quantile_list=(0.975,),
        sim=SimConfig(n=1, replicates=4000, seed=11),
    )
    report = IncomePipeline(config).run()

    assert [row.n for row in report.quantile_track] == [4, 10]
    for row in report.quantile_track:
        assert row.band_lower <= row.empirical <= row.band_upper

    pdf = report.plot("pdf_check")
    assert pdf.columns == ("z", "empirical", "phi", "phi_c", "phi_c_d")
    width = pdf.rows[1][0] - pdf.rows[0][0]
    assert sum(row[1] for row in pdf.rows) * width <= 1.0 + 1e-9


def test_income_pipeline_wrapper_uses_the_surrogate():
    report = income_pipeline(None, n_list=(25,), epsilon_list=(0.01,), quantile_list=(0.975,))
    assert report.population_size == 842
    assert report.moments.skewness == pytest.approx(5.07, abs=1e-6)


TRACKED_N = (4, 10, 25, 50)


@pytest.fixture(scope="module")
def tracked_report():
    sim = SimConfig(n=1, replicates=1_000_000, seed=20240607, parallel_chunks=4)
    return IncomePipeline(IncomeConfig(n_list=TRACKED_N, sim=sim)).run()


@pytest.mark.slow
@pytest.mark.parametrize("n", TRACKED_N)
def test_cornish_fisher_tracks_simulated_quantiles(tracked_report, n):
    row = next(row for row in tracked_report.quantile_track if row.n == n)

    assert row.p == 0.9995
    # the band spans 3 binomial standard errors of the order statistic either side
    assert row.band_lower <= row.cf_order_n <= row.band_upper
    assert abs(row.cf_order_n - row.empirical) < abs(row.cf_order1 - row.empirical)
