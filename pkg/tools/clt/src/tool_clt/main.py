import re
import sys
import math
import difflib
import argparse
from typing import Callable, NoReturn
from pathlib import Path

import numpy as np
from structlog.typing import FilteringBoundLogger

from cltscope_core.logger import AppLogger
from cltscope_core.settings import Settings
from cltscope_kit.dist_model import TwoPoint, FinitePMF
from cltscope_kit.expansions import KurtosisForm
from cltscope_kit.case_studies import BETS, BetSpec

from . import __version__, commands
from .output import Table, OutputSpec, Provenance, OutputFormat, emit, render, render_csv

Handler = Callable[[argparse.Namespace, Settings, FilteringBoundLogger], list[Table]]

# flags that change how a command runs or where it writes, never what it computes
EXECUTION_FLAGS = {
    "threads",
    "log_mode",
    "log_level",
    "log_console",
    "log_file",
    "output",
    "out_dir",
    "sample_out",
    "seed",
    "chunks",
    "handler",
    "command",
}

# a leading minus followed by a digit, then digits, separators and exponents only
NEGATIVE_LIST = re.compile(r"^-\.?\d[\d.,:eE+-]*$")


class SuggestingParser(argparse.ArgumentParser):
    """
    Appends a ``did you mean`` hint to unknown subcommand and flag errors.

    Tokens such as ``-1,1,0.5`` or ``-2:2:5`` are read as values rather than
    flags, so list options can start with a negative number.
    """

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = NEGATIVE_LIST

    def _candidates(self) -> tuple[list[str], list[str]]:
        names: list[str] = []
        options: list[str] = list(self._option_string_actions)
        for action in self._actions:
            if isinstance(action, argparse._SubParsersAction):
                names.extend(action.choices)
                for parser in action.choices.values():
                    options.extend(parser._option_string_actions)
        return names, options

    def error(self, message: str) -> NoReturn:
        names, options = self._candidates()
        guess: list[str] = []
        if choice := re.search(r"invalid choice: '([^']*)'", message):
            guess = difflib.get_close_matches(choice.group(1), names, n=1)
        elif unknown := re.search(r"unrecognized arguments: (.*)", message):
            flags = [token for token in unknown.group(1).split() if token.startswith("--")]
            if flags:
                guess = difflib.get_close_matches(flags[0].split("=")[0], options, n=1)
        if guess:
            message = f"{message} (did you mean {guess[0]!r}?)"
        super().error(message)


def _numbers(text: str) -> list[float]:
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers, got {text!r}") from None
    if not values or not all(math.isfinite(value) for value in values):
        raise argparse.ArgumentTypeError(f"expected finite comma-separated numbers, got {text!r}")
    return values


def float_list(text: str) -> tuple[float, ...]:
    return tuple(_numbers(text))


def int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def z_range(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    try:
        if len(parts) != 3:
            raise ValueError
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:count, got {text!r}") from None
    if points < 2 or not (math.isfinite(start) and math.isfinite(stop)):
        raise argparse.ArgumentTypeError(f"expected finite bounds and count >= 2, got {text!r}")
    return tuple(np.round(np.linspace(start, stop, points), 12).tolist())


def pmf(text: str) -> FinitePMF:
    try:
        pairs = sorted(
            (float(value), float(prob))
            for value, prob in (item.split(":") for item in text.split(",") if item.strip())
        )
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected v:p,v:p,..., got {text!r}") from None
    return FinitePMF(support=tuple(v for v, _ in pairs), probs=tuple(p for _, p in pairs))


def two_point(text: str) -> TwoPoint:
    values = _numbers(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected v1,v2,p, got {text!r}")
    return TwoPoint(v1=values[0], v2=values[1], p=values[2])


def bet(text: str) -> BetSpec:
    try:
        return BETS[text]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"unknown bet {text!r}; choose from {', '.join(sorted(BETS))}"
        ) from None


def count(text: str, minimum: int = 1) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < minimum:
        raise argparse.ArgumentTypeError(f"expected an integer >= {minimum}, got {value}")
    return value


def non_negative(text: str) -> int:
    return count(text, minimum=0)


def precision(text: str) -> int:
    value = count(text)
    if value > 17:
        raise argparse.ArgumentTypeError(f"precision must lie in [1, 17], got {value}")
    return value


def finite(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


def _add_common(parser: argparse.ArgumentParser) -> None:
    out = parser.add_argument_group("output")
    out.add_argument(
        "--format",
        type=OutputFormat,
        choices=list(OutputFormat),
        default=OutputFormat.CSV,
        help="table format (default: csv)",
    )
    out.add_argument("--output", help="write tables to this file instead of standard output")
    out.add_argument(
        "--precision", type=precision, default=6, help="significant digits, 1..17 (default: 6)"
    )

    run = parser.add_argument_group("execution")
    run.add_argument("--threads", type=count, help="Monte Carlo worker threads (CLT_SCOPE_THREADS)")
    run.add_argument(
        "--log-mode", choices=["dev", "debug", "prod"], help="log renderer (CLT_SCOPE_LOG_MODE)"
    )
    run.add_argument("--log-level", help="log level name (CLT_SCOPE_LOG_LEVEL)")
    run.add_argument(
        "--log-console", action="store_true", default=None, help="log to standard error"
    )
    run.add_argument("--log-file", help="append JSON logs to this file (CLT_SCOPE_LOG_FILE)")


def _add_distribution(parser: argparse.ArgumentParser, surrogate: bool = False) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--csv", help="population CSV, one numeric column")
    group.add_argument("--pmf", type=pmf, help="finite PMF as v:p,v:p,...")
    group.add_argument("--two-point", type=two_point, help="two-point law as v1,v2,p")
    if surrogate:
        group.add_argument(
            "--surrogate", action="store_true", help="the synthetic income population (842 values)"
        )
    parser.add_argument("--header", action="store_true", help="the CSV starts with a header line")


def _add_shape(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument(
        "--lambda",
        dest="skewness",
        type=finite,
        required=required,
        help="skewness of one summand",
    )
    parser.add_argument(
        "--eta", type=finite, help="excess kurtosis of one summand; enables the O(1/n) order"
    )


def _add_seeded(parser: argparse.ArgumentParser, replicates: int) -> None:
    parser.add_argument(
        "--replicates",
        type=count,
        default=replicates,
        help=f"number of simulated means (default: {replicates})",
    )
    parser.add_argument("--seed", type=non_negative, default=0, help="seed below 2^64 (default: 0)")
    parser.add_argument(
        "--chunks", type=count, default=1, help="parallel chunks, results unchanged (default: 1)"
    )


def build_parser() -> SuggestingParser:
    parser = SuggestingParser(
        prog="clt-scope",
        description="How accurate is the Normal approximation to a sample mean?",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name: str, handler: Handler, summary: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=summary, description=summary)
        p.set_defaults(handler=handler)
        _add_common(p)
        return p

    bets = ", ".join(sorted(BETS))

    p = command("moments", commands.moments, "moment summary of a distribution")
    _add_distribution(p)
    p.add_argument("--n", type=count, help="also summarise the mean of n draws")
    p.add_argument("--delta-s", type=finite, help="naive sizing: skewness tolerance")
    p.add_argument("--delta-ek", type=finite, help="naive sizing: excess kurtosis tolerance")
    p.add_argument("--lattice", action="store_true", help="report the minimal lattice")

    p = command("edgeworth", commands.edgeworth, "Edgeworth approximations to the law of Z_n")
    _add_shape(p, required=True)
    p.add_argument("--n", type=count, required=True, help="sample size")
    points = p.add_mutually_exclusive_group(required=True)
    points.add_argument("--z", type=float_list, help="standardized points, comma-separated")
    points.add_argument("--z-range", type=z_range, help="grid as start:stop:count")
    p.add_argument("--scale", choices=["cdf", "pdf"], default="cdf", help="default: cdf")
    p.add_argument(
        "--form",
        type=KurtosisForm,
        choices=list(KurtosisForm),
        default=KurtosisForm.HE3,
        help="kurtosis term of the O(1/n) CDF correction (default: he3)",
    )

    p = command("cornish-fisher", commands.cornish_fisher, "Cornish-Fisher quantiles of Z_n")
    _add_shape(p, required=True)
    p.add_argument("--n", type=count, required=True, help="sample size")
    p.add_argument("--p", type=float_list, required=True, help="levels in (0, 1), comma-separated")

    p = command("lattice", commands.lattice, "lattice-corrected CDF of a two-point sum")
    law = p.add_mutually_exclusive_group(required=True)
    law.add_argument("--bet", type=bet, help=f"one of {bets}")
    law.add_argument("--two-point", type=two_point, help="two-point law as v1,v2,p")
    p.add_argument("--n", type=count, required=True, help="number of summands")
    p.add_argument("--terms", type=count, default=1000, help="Fourier terms (default: 1000)")
    p.add_argument("--z", type=float_list, help="points; without it, errors between the jumps")

    p = command("sample-size", commands.sample_size, "sample sizes from every sizing rule")
    _add_shape(p, required=False)
    p.add_argument("--eps", type=float_list, help="error targets in (0, 0.5), comma-separated")
    p.add_argument(
        "--z-quantiles",
        type=float_list,
        default=(0.975, 0.995, 0.9995),
        help="quantile levels (default: 0.975,0.995,0.9995)",
    )
    p.add_argument(
        "--form",
        type=KurtosisForm,
        choices=list(KurtosisForm),
        default=KurtosisForm.HE4,
        help="kurtosis term of the O(1/n) CDF correction (default: he4)",
    )
    p.add_argument("--z-star", type=finite, help="least n with a non-negative corrected PDF")
    p.add_argument("--delta-s", type=finite, help="naive sizing: skewness tolerance")
    p.add_argument("--delta-ek", type=finite, help="naive sizing: excess kurtosis tolerance")
    p.add_argument("--wlln", type=float_list, help="p,half_width,target for the WLLN comparison")
    p.add_argument("--rho", type=finite, help="absolute third standardized moment")
    p.add_argument("--n", type=count, help="sample size for the Berry-Esseen bound")
    p.add_argument("--c", type=finite, help="Berry-Esseen constant (default: 0.4748)")

    p = command("distances", commands.distances, "distances between laws")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--f", help="grid CSV of the first law")
    source.add_argument("--bet", type=bet, help=f"exact Z_n of a bet ({bets}) against N(0, 1)")
    source.add_argument("--shift", type=finite, help="N(0, 1) against N(shift, 1)")
    p.add_argument("--g", help="grid CSV of the second law")
    p.add_argument(
        "--normalize",
        action="store_true",
        help="rescale each PDF grid to unit trapezoid mass before BC, KL and JS",
    )
    p.add_argument(
        "--n-list", type=int_list, default=(5, 10, 25, 50, 100), help="sample sizes for --bet"
    )

    p = command("demoivre-table", commands.demoivre, "central Binomial probabilities")
    p.add_argument("--n", type=count, required=True, help="number of trials")
    p.add_argument("--p", type=finite, required=True, help="success probability")
    p.add_argument("--d-max", type=non_negative, required=True, help="largest half-width d")

    p = command("roulette", commands.roulette, "chance of coming out ahead after n bets")
    p.add_argument("--bet", type=bet, required=True, help=f"one of {bets}")
    p.add_argument("--n-max", type=count, required=True, help="sweep n = 1..n-max")
    p.add_argument("--eps", type=finite, default=0.0, help="net gain threshold (default: 0)")
    p.add_argument(
        "--corrections",
        choices=list(commands.CORRECTION_COLUMNS),
        default="all",
        help="approximations to report (default: all)",
    )
    p.add_argument("--terms", type=count, default=1000, help="Fourier terms (default: 1000)")
    p.add_argument("--facts", type=count, metavar="N", help="also report facts after N plays")

    p = command("simulate", commands.simulate, "Monte Carlo sample of Z_n")
    _add_distribution(p, surrogate=True)
    p.add_argument("--n", type=count, required=True, help="summands per mean")
    _add_seeded(p, replicates=100_000)
    p.add_argument("--p", type=float_list, default=(0.9995,), help="levels (default: 0.9995)")
    p.add_argument("--sample-out", help="write the raw sample here, one value per line")

    p = command("income", commands.income, "the heavy-tailed income case study")
    p.add_argument("--csv", help="population CSV; the synthetic surrogate when omitted")
    p.add_argument("--header", action="store_true", help="the CSV starts with a header line")
    _add_shape(p, required=False)
    p.add_argument(
        "--n-list", type=int_list, default=(4, 10, 25, 50, 100), help="sample sizes"
    )
    p.add_argument(
        "--eps", type=float_list, default=(0.01, 0.005, 0.001, 0.0005), help="error targets"
    )
    p.add_argument(
        "--z-quantiles", type=float_list, default=(0.975, 0.995, 0.9995), help="quantile levels"
    )
    p.add_argument("--z-star", type=finite, default=-3.0, help="negativity point (default: -3)")
    p.add_argument("--simulate", action="store_true", help="track quantiles by Monte Carlo")
    _add_seeded(p, replicates=1_000_000)
    p.add_argument("--out-dir", help="directory for the plot tables, one CSV each")

    return parser


def provenance(args: argparse.Namespace) -> Provenance:
    flags = {
        key: commands.describe_law(value)
        for key, value in sorted(vars(args).items())
        if key not in EXECUTION_FLAGS and value is not None
    }
    return Provenance(
        subcommand=args.command,
        flags=flags,
        seed=getattr(args, "seed", None),
        version=__version__,
    )


def _write_plots(plots: list[Table], args: argparse.Namespace, header: Provenance) -> None:
    out_dir = getattr(args, "out_dir", None)
    if out_dir is None or not plots:
        return
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    for table in plots:
        emit(render_csv([table], header, args.precision), directory / f"{table.name}.csv")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        settings = Settings.from_env().with_overrides(
            threads=args.threads,
            log_mode=args.log_mode,
            log_level=args.log_level,
            log_console=args.log_console,
            log_file=args.log_file,
        )
        app_logger = AppLogger(
            mode=settings.log_mode,
            log_level=settings.log_level,
            log_to_console=settings.log_console,
            log_file=settings.log_file,
        )
    except ValueError as exc:
        print(f"clt-scope: error: {exc}", file=sys.stderr)
        return 1

    logger = AppLogger.get_logger(command=args.command)
    try:
        tables = args.handler(args, settings, logger)
        header = provenance(args)
        spec = OutputSpec(format=args.format, path=args.output, precision=args.precision)
        emit(render([t for t in tables if not t.plot], header, spec), spec.path)
        _write_plots([t for t in tables if t.plot], args, header)
        logger.debug("command finished", tables=len(tables))
        return 0
    except commands.UsageError as exc:
        print(f"clt-scope {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        # domain errors and pydantic validation errors are both ValueError subclasses
        logger.error("command failed", error=str(exc))
        print(f"clt-scope {args.command}: error: {exc}", file=sys.stderr)
        return 1
    finally:
        app_logger.stop()


def main() -> None:
    sys.exit(run())
