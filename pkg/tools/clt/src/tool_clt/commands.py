"""
One handler per subcommand. Each turns parsed flags into named tables and
leaves rendering to ``output``. A handler raises ``UsageError`` for flag
combinations argparse cannot express; domain errors pass through untouched.
"""

import argparse
from pathlib import Path

import numpy as np
from structlog.typing import FilteringBoundLogger

from cltscope_core.settings import Settings
from cltscope_kit.sizing import wlln_comparison, berry_esseen_bound, sample_size_table
from cltscope_kit.distances import (
    GridKind,
    hellinger,
    js_metric,
    ks_distance,
    wkr_distance,
    bhattacharyya,
    kl_divergence,
    read_grid_csv,
    normal_cdf_grid,
    normal_pdf_grid,
)
from cltscope_kit.dist_model import (
    TwoPoint,
    FinitePMF,
    MomentSummary,
    DistributionSpec,
    compute_moments,
    minimal_lattice,
    moments_of_mean,
    naive_sample_size,
    read_population_csv,
)
from cltscope_kit.expansions import (
    ApproxOrder,
    ZigzagConfig,
    cdf_correction_A,
    min_n_nonneg_pdf,
    cf_quantile_curve,
    lattice_correction,
    edgeworth_cdf_curve,
    edgeworth_pdf_curve,
)
from cltscope_kit.special_fns import std_normal_cdf
from cltscope_kit.case_studies import (
    BetSpec,
    SimConfig,
    IncomeConfig,
    RouletteSweep,
    IncomePipeline,
    exact_cdf_at,
    ks_to_normal,
    income_surrogate,
    lattice_accuracy,
    MonteCarloSampler,
    single_play_facts,
    exact_standardized_cdf,
    empirical_quantile_band,
)
from cltscope_kit.binomial_exact import demoivre_table

from .output import Cell, Table

Args = argparse.Namespace
Logger = FilteringBoundLogger

MOMENT_COLUMNS = ["mu", "sigma", "skewness", "excess_kurtosis", "abs_third_std_moment"]
SAMPLE_SIZE_COLUMNS = ["epsilon", "p", "z", "n3", "n34"]
CORRECTION_COLUMNS = {
    "none": ["theta_o1"],
    "skew": ["theta_o1", "theta_skew"],
    "lattice": ["theta_o1", "theta_skew_lattice"],
    "all": ["theta_o1", "theta_skew", "theta_skew_lattice"],
}


class UsageError(Exception):
    pass


def _table(
    name: str,
    columns: list[str],
    rows: list[tuple[Cell, ...]],
    description: str | None = None,
) -> Table:
    return Table(name=name, columns=tuple(columns), rows=tuple(rows), description=description)


def _floats(*columns: np.ndarray) -> list[tuple[Cell, ...]]:
    return [tuple(float(value) for value in row) for row in np.column_stack(columns)]


def _moment_row(ms: MomentSummary) -> tuple[Cell, ...]:
    return (ms.mu, ms.sigma, ms.skewness, ms.excess_kurtosis, ms.abs_third_std_moment)


def _shape(args: Args) -> MomentSummary:
    if args.skewness is None:
        raise UsageError("--lambda is required here")
    return MomentSummary(mu=0.0, sigma=1.0, skewness=args.skewness, excess_kurtosis=args.eta)


def _orders(args: Args) -> list[ApproxOrder]:
    if args.eta is None:
        return [ApproxOrder.ORDER_1, ApproxOrder.ORDER_SQRT_N]
    return list(ApproxOrder)


def _distribution(args: Args) -> DistributionSpec:
    if getattr(args, "surrogate", False):
        return income_surrogate()
    if args.csv is not None:
        return read_population_csv(Path(args.csv), header=args.header)
    if args.pmf is not None:
        return args.pmf
    return args.two_point


def _naive(ms: MomentSummary, args: Args) -> Table | None:
    if args.delta_s is None and args.delta_ek is None:
        return None
    if args.delta_s is None or args.delta_ek is None:
        raise UsageError("--delta-s and --delta-ek go together")
    n = naive_sample_size(ms, args.delta_s, args.delta_ek)
    return _table(
        "naive_sample_size", ["delta_s", "delta_ek", "n"], [(args.delta_s, args.delta_ek, n)]
    )


def moments(args: Args, settings: Settings, logger: Logger) -> list[Table]:
    dist = _distribution(args)
    ms = compute_moments(dist)
    tables = [_table("moments", MOMENT_COLUMNS, [_moment_row(ms)])]

    if args.n is not None:
        mean = moments_of_mean(ms, args.n)
        tables.append(
            _table("moments_of_mean", ["n", *MOMENT_COLUMNS], [(args.n, *_moment_row(mean))])
        )
    if (naive := _naive(ms, args)) is not None:
        tables.append(naive)
    if args.lattice:
        lat = minimal_lattice(dist)
        tables.append(
            _table(
                "lattice",
                ["a", "h_max", "a_star", "h_star"],
                [(lat.a, lat.h_max, lat.a_star, lat.h_star)],
            )
        )
    return tables


def edgeworth(args: Args, settings: Settings, logger: Logger) -> list[Table]:
    ms = _shape(args)
    z = np.asarray(args.z_range if args.z_range is not None else args.z, dtype=np.float64)
    orders = _orders(args)

    columns = [z]
    for order in orders:
        if args.scale == "pdf":
            values, in_range = edgeworth_pdf_curve(args.n, z, ms, order)
        else:
            values, in_range = edgeworth_cdf_curve(args.n, z, ms, order, args.form)
        columns.append(values)

    rows = [(*row, int(flag)) for row, flag in zip(_floats(*columns), in_range)]
    return [
        _table(
            f"edgeworth_{args.scale}",
            ["z", *(order.value for order in orders), "in_range"],
            rows,
            description=f"n={args.n}; in_range refers to the highest order shown",
        )
    ]


def cornish_fisher(args: Args, settings: Settings, logger: Logger) -> list[Table]:
    ms = _shape(args)
    orders = _orders(args)
    curves = [cf_quantile_curve(args.n, args.p, ms, order) for order in orders]

    return [
        _table(
            "cornish_fisher",
            ["p", *(order.value for order in orders)],
            _floats(np.asarray(args.p), *(values for values, _ in curves)),
            description=f"n={args.n}",
        ),
        _table(
            "monotone",
            ["order", "monotone"],
            [(order.value, int(monotone)) for order, (_, monotone) in zip(orders, curves)],
            description="1 when the quantiles never decrease as p grows",
        ),
    ]


def _bet(args: Args) -> BetSpec:
    if args.bet is not None:
        return args.bet
    law = args.two_point
    return BetSpec(name="custom", v1=law.v1, v2=law.v2, p=law.p)


def lattice(args: Args, settings: Settings, logger: Logger) -> list[Table]:
    bet = _bet(args)
    cfg = ZigzagConfig(terms=args.terms)
    if args.z is None:
        acc = lattice_accuracy(bet, args.n, cfg)
        return [
            _table(
                "lattice_accuracy",
                ["points", "o1", "skew", "skew_lattice"],
                [
                    (
                        "midpoint",
                        acc.midpoint_error_o1,
                        acc.midpoint_error_skew,
                        acc.midpoint_error_skew_lattice,
                    ),
                    (
                        "quarter",
                        acc.quarter_error_o1,
                        acc.quarter_error_skew,
                        acc.quarter_error_skew_lattice,
                    ),
                ],
                description=f"{bet.name}, n={args.n}: largest error against the exact CDF",
            )
        ]

    ms, lat = bet.moments(), bet.lattice()
    z = np.asarray(args.z, dtype=np.float64)
    normal = np.atleast_1d(std_normal_cdf(z))
    skew = normal + cdf_correction_A(args.n, z, ms.skewness)
    full = skew + lattice_correction(args.n, z, lat, cfg)
    return [
        _table(
            "lattice_cdf",
            ["z", "exact", "o1", "skew", "skew_lattice"],
            _floats(z, exact_cdf_at(bet, args.n, z), normal, skew, full),
            description=f"{bet.name}, n={args.n}",
        )
    ]


def sample_size(args: Args, settings: Settings, logger: Logger) -> list[Table]:
    tables: list[Table] = []
    if args.eps is not None:
        cells = sample_size_table(_shape(args), args.eps, args.z_quantiles, args.form)
        tables.append(
            _table(
                "sample_sizes",
                SAMPLE_SIZE_COLUMNS,
                [(c.epsilon, c.p, c.z, c.n3, c.n34) for c in cells],
            )
        )
    if args.z_star is not None:
        n = min_n_nonneg_pdf(_shape(args).skewness, args.z_star)
        tables.append(_table("n_dagger", ["z_star", "n"], [(args.z_star, n)]))
    if args.delta_s is not None or args.delta_ek is not None:
        tables.append(_naive(_shape(args), args))
    if args.wlln is not None:
        if len(args.wlln) != 3:
            raise UsageError("--wlln expects p,half_width,target")
        p, half_width, target = args.wlln
        result = wlln_comparison(p, half_width, target)
        tables.append(
            _table(
                "wlln",
                ["p", "half_width", "target_prob", "clt_n", "chebyshev_n"],
                [(p, half_width, target, result.clt_n, result.chebyshev_n)],
            )
        )
    if args.rho is not None:
        if args.n is None:
            raise UsageError("--rho needs --n")
        ms = MomentSummary(
            mu=0.0,
            sigma=1.0,
            skewness=args.skewness or 0.0,
            abs_third_std_moment=args.rho,
        )
        bound = berry_esseen_bound(ms, args.n, args.c)
        tables.append(
            _table(
                "berry_esseen",
                ["c", "rho", "n", "bound"],
                [(bound.c, bound.rho, bound.n, bound.bound)],
            )
        )

    if not tables:
        raise UsageError(
            "nothing to compute: give --eps, --z-star, --delta-s/--delta-ek, --wlln or --rho"
        )
    return tables


def _gaussian_pair(shift: float) -> Table:
    f_cdf, g_cdf = normal_cdf_grid(), normal_cdf_grid(shift=shift)
    f_pdf, g_pdf = normal_pdf_grid(), normal_pdf_grid(shift=shift)
    bc = bhattacharyya(f_pdf, g_pdf)
    return _table(
        "distances",
        ["shift", "ks", "wkr", "bc", "bhattacharyya", "hellinger", "kl", "js"],
        [
            (
                shift,
                ks_distance(f_cdf, g_cdf),
                wkr_distance(f_cdf, g_cdf),
                bc.coefficient,
                bc.distance,
                hellinger(f_pdf, g_pdf),
                kl_divergence(f_pdf, g_pdf).divergence,
                js_metric(f_pdf, g_pdf),
            )
        ],
        description="N(0, 1) against N(shift, 1)",
    )


def distances(args: Args, settings: Settings, logger: Logger) -> list[Table]:
    if args.shift is not None:
        return [_gaussian_pair(args.shift)]

    if args.bet is not None:
        rows: list[tuple[Cell, ...]] = []
        for n in args.n_list:
            exact = exact_standardized_cdf(args.bet, n)
            wkr = wkr_distance(exact, normal_cdf_grid(grid=exact.x))
            rows.append((n, ks_to_normal(args.bet, n), wkr))
        return [
            _table(
                "distances",
                ["n", "ks", "wkr"],
                rows,
                description=f"exact Z_n of the {args.bet.name} bet against N(0, 1)",
            )
        ]

    if args.g is None:
        raise UsageError("--f needs --g")
    f, g = read_grid_csv(args.f), read_grid_csv(args.g)
    if f.kind is GridKind.CDF:
        return [_table("distances", ["ks", "wkr"], [(ks_distance(f, g), wkr_distance(f, g))])]
    norm = args.normalize
    bc = bhattacharyya(f, g, norm)
    return [
        _table(
            "distances",
            ["bc", "bhattacharyya", "hellinger", "kl", "js"],
            [
                (
                    bc.coefficient,
                    bc.distance,
                    hellinger(f, g, norm),
                    kl_divergence(f, g, norm).divergence,
                    js_metric(f, g, norm),
                )
            ],
            description="PDF grids rescaled to unit mass" if norm else None,
        )
    ]


def demoivre(args: Args, settings: Settings, logger: Logger) -> list[Table]:
    rows = demoivre_table(args.n, args.p, args.d_max)
    return [
        _table(
            "demoivre",
            ["d", "exact", "approx_no_cc", "approx_cc", "anchored"],
            [
                (row.d, row.exact, row.approx_no_cc, row.approx_cc, row.anchored)
                for row in rows
            ],
            description=(
                f"P(|S_n - np| <= d) for n={args.n}, p={args.p}; "
                "anchored rows centre the window on floor(np)"
            ),
        )
    ]


def roulette(args: Args, settings: Settings, logger: Logger) -> list[Table]:
    columns = CORRECTION_COLUMNS[args.corrections]
    sweep = RouletteSweep(args.bet, ZigzagConfig(terms=args.terms), logger)
    results = sweep.run(args.n_max, args.eps)
    tables = [
        _table(
            "roulette",
            ["n", "theta_exact", *columns],
            [(r.n, r.theta_exact, *(getattr(r, column) for column in columns)) for r in results],
            description=f"P(S_n > {args.eps}) for the {args.bet.name} bet",
        )
    ]
    if args.facts is not None:
        facts = single_play_facts(args.bet, args.facts)
        record = facts.model_dump()
        tables.append(_table("facts", list(record), [tuple(record.values())]))
    return tables


def _skewness(sample: np.ndarray) -> float:
    centred = sample - sample.mean()
    return float(np.mean(centred**3) / np.mean(centred**2) ** 1.5)


def simulate(args: Args, settings: Settings, logger: Logger) -> list[Table]:
    cfg = SimConfig(
        n=args.n,
        replicates=args.replicates,
        seed=args.seed,
        parallel_chunks=args.chunks,
    )
    sample = MonteCarloSampler(_distribution(args), settings, logger).sample(cfg)

    if args.sample_out is not None:
        with Path(args.sample_out).open("w", encoding="utf-8") as handle:
            handle.writelines(f"{value!r}\n" for value in sample.tolist())

    bands = [empirical_quantile_band(sample, p) for p in args.p]
    return [
        _table(
            "summary",
            ["n", "replicates", "mean", "std", "skewness"],
            [(cfg.n, sample.size, float(sample.mean()), float(sample.std()), _skewness(sample))],
        ),
        _table(
            "quantiles",
            ["p", "estimate", "band_lower", "band_upper"],
            [(band.p, band.estimate, band.lower, band.upper) for band in bands],
            description="band = order statistics at 3 binomial standard errors",
        ),
    ]


def income(args: Args, settings: Settings, logger: Logger) -> list[Table]:
    """Summary tables, followed by the plot tables that go to --out-dir."""
    sim = None
    if args.simulate:
        sim = SimConfig(
            n=1,
            replicates=args.replicates,
            seed=args.seed,
            parallel_chunks=args.chunks,
        )
    config = IncomeConfig(
        csv_path=args.csv,
        header=args.header,
        skewness=args.skewness,
        excess_kurtosis=args.eta,
        n_list=args.n_list,
        epsilon_list=args.eps,
        quantile_list=args.z_quantiles,
        z_star=args.z_star,
        sim=sim,
    )
    report = IncomePipeline(config, settings, logger).run()

    tables = [
        _table(
            "moments",
            ["population_size", *MOMENT_COLUMNS],
            [(report.population_size, *_moment_row(report.moments))],
        ),
        _table(
            "sample_sizes",
            SAMPLE_SIZE_COLUMNS,
            [(c.epsilon, c.p, c.z, c.n3, c.n34) for c in report.sample_sizes],
        ),
        _table("n_dagger", ["z_star", "n"], [(report.z_star, report.n_dagger)]),
    ]
    if report.quantile_track:
        records = [row.model_dump() for row in report.quantile_track]
        tables.append(
            _table("quantile_track", list(records[0]), [tuple(r.values()) for r in records])
        )

    plots = [
        Table(
            name=p.name,
            columns=p.columns,
            rows=p.rows,
            description=p.description,
            plot=True,
        )
        for p in report.plots
    ]
    return tables + plots


def describe_law(value: object) -> str:
    """Provenance text for flag values that are parsed into models."""
    if isinstance(value, BetSpec):
        return value.name
    if isinstance(value, (TwoPoint, FinitePMF)):
        return value.model_dump_json()
    if isinstance(value, tuple):
        return ",".join(repr(item) for item in value)
    return str(value)
