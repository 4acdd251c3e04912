"""

The `apme` command line: ingest -> stats -> simulate -> evaluate, plus rank, plot and summary.

Exit codes: 0 success, 1 validation error, 2 I/O error.

"""

from pathlib import Path
from typing import NoReturn, Optional, Sequence
import argparse
import logging
import math
import sys

from .artifacts import (
    probabilities_from_column,
    read_estimates_json,
    read_stats_csv,
    write_curves_csv,
    write_estimates_json,
    write_ranking_csv,
    write_regret_csv,
    write_report_json,
    write_stats_csv,
    write_trace_csv,
)
from .bandit import build_environment, run_simulation
from .evaluation import (
    evaluate_estimates,
    highlights,
    normalized_psi,
    rank_problems,
    summarize_dataset,
)
from .exceptions import APMEException, InputError
from .ingestion import (
    DEFAULT_MIN_RESPONSES,
    ingest_jee,
    load_generic_csv,
    load_jee_counts,
    load_skyben_csv,
    load_timss_csv,
    write_records_csv,
)
from .metrics import aggregate_problem, assign_probabilities
from .models import MarkingScheme, Ranking, SimulationConfig, StatsList
from .plotting import PlotKind, load_series, render
from .utility import InsensitiveEnum, TitledEnum, dumps, read_json, resolve_seed

logger = logging.getLogger("apme")

__all__ = [
    "main",
    "cmd_ingest",
    "cmd_stats",
    "cmd_simulate",
    "cmd_evaluate",
    "cmd_rank",
    "cmd_plot",
    "cmd_summary",
]


class DatasetSchema(InsensitiveEnum):
    """
    Enum that represents an input dataset layout.
    """

    SKYBEN = "skyben"
    TIMSS = "timss"
    JEE = "jee"
    GENERIC = "generic"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise InputError(message)


def _parse_enum(enum, value: str, what: str):
    try:
        return enum(value)
    except ValueError:
        pass
    if issubclass(enum, TitledEnum):
        try:
            return enum.parse(value)
        except ValueError:
            pass
    raise InputError(f"Unknown {what} '{value}'. Expected one of: {enum.names()}")


def _load_records(schema: DatasetSchema, path: str, args: argparse.Namespace):
    if schema is DatasetSchema.TIMSS:
        return load_timss_csv(path, args.min_responses)
    if schema is DatasetSchema.JEE:
        return ingest_jee(load_jee_counts(path), args.nominal_time_ms)
    if schema is DatasetSchema.SKYBEN:
        return load_skyben_csv(path)
    return load_generic_csv(path)


def cmd_ingest(args: argparse.Namespace) -> int:
    schema = _parse_enum(DatasetSchema, args.schema, "schema")
    records, report = _load_records(schema, args.input, args)

    write_records_csv(records, args.output)
    print(dumps(report.to_document()))
    return 0


def resolve_scheme(args: argparse.Namespace) -> MarkingScheme:
    """
    Flags override the scheme file, which overrides the defaults.
    """

    scheme = MarkingScheme.timss()
    if args.scheme:
        scheme = MarkingScheme.from_document(read_json(args.scheme), base=scheme)

    overrides = {
        key: getattr(args, key)
        for key in ("alpha", "time_unit_divisor", "epsilon_smooth")
        if getattr(args, key) is not None
    }
    return scheme.replace(**overrides) if overrides else scheme


def cmd_stats(args: argparse.Namespace) -> int:
    scheme = resolve_scheme(args)
    records, _ = load_generic_csv(args.records)

    stats = StatsList()
    for problem_id, group in records.by_problem().items():
        if len(group) < 2:
            logger.warning("Excluding '%s': %d response(s), at least 2 required", problem_id, len(group))
            continue
        stats.append(aggregate_problem(group, scheme))

    if not stats:
        raise InputError("No problem has at least 2 responses")

    for s in stats:
        if s.degenerate:
            logger.warning("'%s' has zero variance; derived performance is smoothing-bound", s.problem_id)

    try:
        probabilities = assign_probabilities(stats, scheme)
    except APMEException as e:
        logger.warning("Probability column left empty: %s", e)
        probabilities = None

    write_stats_csv(stats, probabilities, args.output)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.experiments is not None and args.runs is not None:
        raise InputError("Use either --runs or --experiments, not both")
    runs = args.runs if args.runs is not None else 1
    if args.experiments is not None:
        runs = SimulationConfig.runs_for_experiments(args.experiments, args.steps)

    try:
        seed = resolve_seed(args.seed)
    except ValueError as e:
        raise InputError(str(e))

    config = SimulationConfig(
        strategy=args.strategy,
        steps=args.steps,
        runs=runs,
        seed=seed,
        epsilon=args.epsilon,
        ucb_c=args.ucb_c,
        workers=args.workers,
    )

    _, probabilities = read_stats_csv(args.stats)
    env = build_environment(probabilities_from_column(probabilities))
    trace = run_simulation(env, config)

    output = Path(args.output_dir)
    write_trace_csv(trace, output / "trace.csv")
    write_curves_csv(trace, output / "curves.csv")
    write_estimates_json(trace, output / "estimates.json")
    write_regret_csv(trace, env, output / "regret.csv")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    estimates = read_estimates_json(args.estimates)
    _, probabilities = read_stats_csv(args.stats)

    report = evaluate_estimates(probabilities_from_column(probabilities), estimates)
    write_report_json(report, args.output)

    logger.info("R^2 %.4f, RMSE %.4f", report.r_squared, report.rmse)
    return 0


def _highlights_document(ranking: Ranking, count: int, scale: float) -> dict:
    easiest, hardest = highlights(ranking, count)
    finite = Ranking(r for r in ranking if math.isfinite(r.psi))
    normalized = normalized_psi(finite, scale) if finite else {}

    def entry(r):
        return {"rank": r.rank, "problem_id": r.problem_id, "normalized_psi": normalized.get(r.problem_id)}

    return {"easiest": [entry(r) for r in easiest], "hardest": [entry(r) for r in hardest]}


def cmd_rank(args: argparse.Namespace) -> int:
    stats, _ = read_stats_csv(args.stats)
    ranking = rank_problems(stats)

    document = None
    if args.highlights is not None:
        if not math.isfinite(args.scale):
            raise InputError(f"scale must be finite, got {args.scale}")
        document = _highlights_document(ranking, args.highlights, args.scale)

    write_ranking_csv(ranking, args.output)
    if document is not None:
        print(dumps(document))
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    kind = _parse_enum(PlotKind, args.kind, "plot kind")
    render(kind, load_series(kind, args.input), args.output)
    return 0


def cmd_summary(args: argparse.Namespace) -> int:
    records, _ = load_generic_csv(args.records)
    if not records:
        raise InputError(f"'{args.records}' holds no valid records")

    success_mark = args.success_mark
    if success_mark is None:
        success_mark = max(r.marks for r in records)

    print(dumps(summarize_dataset(records, success_mark).to_document()))
    return 0


def _add_scheme_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scheme", help="scheme file (JSON)")
    parser.add_argument("--alpha", type=float, help="marks scaling")
    parser.add_argument(
        "--time-unit-divisor", type=float, help="milliseconds per performance time unit"
    )
    parser.add_argument("--epsilon-smooth", type=float, help="smoothing added to the std")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="apme",
        description="Estimate relative question difficulty from marks and time, and validate it with a bandit simulation.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")

    commands = parser.add_subparsers(dest="command", required=True)

    ingest = commands.add_parser("ingest", help="convert a dataset export into canonical records")
    ingest.add_argument("input")
    ingest.add_argument("-o", "--output", required=True)
    ingest.add_argument("--schema", default="generic", help=f"one of: {DatasetSchema.names()}")
    ingest.add_argument("--min-responses", type=int, default=DEFAULT_MIN_RESPONSES)
    ingest.add_argument("--nominal-time-ms", type=int, default=None)
    ingest.set_defaults(handler=cmd_ingest)

    stats = commands.add_parser("stats", help="per-problem derived performance and probabilities")
    stats.add_argument("records")
    stats.add_argument("-o", "--output", required=True)
    _add_scheme_arguments(stats)
    stats.set_defaults(handler=cmd_stats)

    simulate = commands.add_parser("simulate", help="run the bandit simulation")
    simulate.add_argument("stats")
    simulate.add_argument("-o", "--output-dir", required=True)
    simulate.add_argument("--strategy", default="thompson")
    simulate.add_argument("--steps", type=int, default=1000)
    simulate.add_argument("--runs", type=int, default=None)
    simulate.add_argument("--experiments", type=int, default=None, help="total pulls; runs = experiments / steps")
    simulate.add_argument("--seed", type=int, default=None, help="defaults to $APME_SEED, else 0")
    simulate.add_argument("--epsilon", type=float, default=0.1)
    simulate.add_argument("--ucb-c", type=float, default=1.0)
    simulate.add_argument("--workers", type=int, default=1)
    simulate.set_defaults(handler=cmd_simulate)

    evaluate = commands.add_parser("evaluate", help="score estimates against hidden probabilities")
    evaluate.add_argument("estimates")
    evaluate.add_argument("stats")
    evaluate.add_argument("-o", "--output", required=True)
    evaluate.set_defaults(handler=cmd_evaluate)

    rank = commands.add_parser("rank", help="order problems from easiest to hardest")
    rank.add_argument("stats")
    rank.add_argument("-o", "--output", required=True)
    rank.add_argument("--highlights", type=int, default=None, help="print the N easiest and N hardest problems")
    rank.add_argument("--scale", type=float, default=1.0, help="multiplier for the normalized values")
    rank.set_defaults(handler=cmd_rank)

    plot = commands.add_parser("plot", help="render a figure as SVG plus a sidecar CSV")
    plot.add_argument("input")
    plot.add_argument("--kind", required=True, help=f"one of: {PlotKind.names()}")
    plot.add_argument("-o", "--output", required=True)
    plot.set_defaults(handler=cmd_plot)

    summary = commands.add_parser("summary", help="dataset-level counts and success rate")
    summary.add_argument("records")
    summary.add_argument("--success-mark", type=float, default=None)
    summary.set_defaults(handler=cmd_summary)

    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if getattr(args, "verbose", False):
        level = logging.DEBUG
    elif getattr(args, "quiet", False):
        level = logging.WARNING

    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except APMEException as e:
        logger.error("%s", e)
        return e.exit_code

    _configure_logging(args)
    try:
        return args.handler(args)
    except APMEException as e:
        logger.error("%s", e)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
