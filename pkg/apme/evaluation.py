"""

Scoring of learned estimates, difficulty ranking, synthetic datasets and an
independent re-computation of derived performance.

"""

from typing import Dict, List, Mapping, Optional, Sequence, Tuple
import logging
import math
import warnings

import numpy as np
from scipy import stats as scipy_stats
from sklearn.metrics import mean_squared_error, r2_score

from .exceptions import (
    DomainError,
    InputError,
    InsufficientData,
    ProblemSetMismatch,
    ZeroVariance,
)
from .metrics import aggregate_problem, min_max_normalize
from .models import (
    ArmProbabilities,
    ArmScore,
    DatasetSummary,
    EvaluationReport,
    MarkingScheme,
    ProblemStats,
    RankedProblem,
    Ranking,
    RecordList,
    ResponseRecord,
    StatsList,
    SyntheticSpec,
)
from .utility import stream

logger = logging.getLogger(__name__)

__all__ = [
    "r_squared",
    "rmse",
    "spearman_rank_correlation",
    "evaluate_estimates",
    "rank_problems",
    "highlights",
    "normalized_psi",
    "generate_synthetic",
    "brute_force_psi",
    "aggregate_records",
    "success_ratios",
    "summarize_dataset",
]

SYNTHETIC_TOLERANCE = 0.02
SYNTHETIC_ATTEMPTS = 200


def _pair(actual: Sequence[float], predicted: Sequence[float], minimum: int):
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    if a.shape != p.shape or a.ndim != 1:
        raise InputError(f"Length mismatch: {len(actual)} actual vs {len(predicted)} predicted")
    if len(a) < minimum:
        raise InputError(f"At least {minimum} value(s) are required, got {len(a)}")
    return a, p


def r_squared(actual: Sequence[float], predicted: Sequence[float]) -> float:
    """
    Coefficient of determination, `1 - SS_res / SS_tot`. Defined for two or more values; weak with only two.
    """

    a, p = _pair(actual, predicted, 2)
    if a.max() == a.min():
        raise ZeroVariance()
    return float(r2_score(a, p))


def rmse(actual: Sequence[float], predicted: Sequence[float]) -> float:
    """
    Root mean squared error.
    """

    a, p = _pair(actual, predicted, 1)
    return math.sqrt(mean_squared_error(a, p))


def spearman_rank_correlation(actual: Sequence[float], predicted: Sequence[float]) -> float:
    """
    Spearman's rho; `NaN` when either side is constant.
    """

    a, p = _pair(actual, predicted, 2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rho, _ = scipy_stats.spearmanr(a, p)
    return float(rho)


def evaluate_estimates(
    hidden: ArmProbabilities, estimates: Mapping[str, float]
) -> EvaluationReport:
    """
    Score estimates against the hidden probabilities of the simulated environment. Both must cover the same problems.
    """

    expected = set(hidden.problem_ids)
    given = set(estimates)
    if expected != given:
        raise ProblemSetMismatch(missing=expected - given, unexpected=given - expected)

    per_arm = [ArmScore(pid, p, estimates[pid]) for pid, p in hidden.entries]
    actual = [a.hidden for a in per_arm]
    predicted = [a.estimate for a in per_arm]

    return EvaluationReport(
        r_squared=r_squared(actual, predicted),
        rmse=rmse(actual, predicted),
        per_arm=per_arm,
        spearman_rank_correlation=spearman_rank_correlation(actual, predicted),
    )


def rank_problems(stats: Sequence[ProblemStats]) -> Ranking:
    """
    Problems from easiest (highest derived performance) to hardest. Ties go by problem id.
    """

    if not stats:
        raise InputError("Nothing to rank")

    ordered = sorted(stats, key=lambda s: (-s.psi, s.problem_id))
    return Ranking(RankedProblem(i + 1, s) for i, s in enumerate(ordered))


def highlights(ranking: Ranking, count: int = 2) -> Tuple[Ranking, Ranking]:
    """
    The `count` easiest and `count` hardest problems (hardest last).
    """

    if count < 1:
        raise InputError(f"count must be positive, got {count}")

    count = min(count, len(ranking))
    return Ranking(ranking[:count]), Ranking(ranking[-count:])


def normalized_psi(ranking: Ranking, scale: float = 1.0) -> Dict[str, float]:
    """
    Min-max normalized derived performance per problem, multiplied by `scale` for display.
    """

    values = min_max_normalize([r.psi for r in ranking])
    return {r.problem_id: v * scale for r, v in zip(ranking, values)}


def aggregate_records(records: Sequence[ResponseRecord], scheme: MarkingScheme) -> StatsList:
    """
    `aggregate_problem` for every problem, in order of first appearance.
    """

    return StatsList(
        aggregate_problem(group, scheme) for group in RecordList.of(records).by_problem().values()
    )


def brute_force_psi(records: Sequence[ResponseRecord], scheme: MarkingScheme) -> StatsList:
    """
    Recompute per-problem statistics with plain loops and a two-pass variance. Serves as the reference for
    `aggregate_problem`.
    """

    if not records:
        raise InsufficientData("<none>", 0)

    groups: Dict[str, List[float]] = {}
    for record in records:
        if record.time <= 0:
            raise DomainError(f"Time must be positive, got {record.time} ms")
        eta = scheme.alpha * record.marks / (record.time / scheme.time_unit_divisor)
        groups.setdefault(record.problem_id, []).append(eta)

    results = StatsList()
    for problem_id, etas in groups.items():
        k = len(etas)
        if k < 2:
            raise InsufficientData(problem_id, k)

        if all(e == etas[0] for e in etas):
            mean, std = etas[0], 0.0
        else:
            total = 0.0
            for e in etas:
                total += e
            mean = total / k

            squares = 0.0
            for e in etas:
                squares += (e - mean) * (e - mean)
            std = math.sqrt(squares / (k - 1))

        if std + scheme.epsilon_smooth == 0:
            raise DomainError(
                "Derived performance is undefined for zero variance without smoothing (epsilon_smooth = 0)"
            )

        results.append(
            ProblemStats(
                problem_id=problem_id,
                k=k,
                mean_eta=mean,
                std_eta=std,
                psi=mean / (std + scheme.epsilon_smooth),
                epsilon_smooth=scheme.epsilon_smooth,
            )
        )

    return results


def generate_synthetic(
    spec: SyntheticSpec, scheme: Optional[MarkingScheme] = None
) -> Tuple[RecordList, StatsList]:
    """
    Build a dataset whose realized derived performance is within 2% of each target.

    Times are log-normal, with the spread chosen so that the inverse coefficient of variation of `1 / time` equals the
    target. Each draw is then rescaled around its mean to hit the target, converted back to whole milliseconds, and
    rejected if it misses. Problem `i` draws from substream `i` of the seed.

    Returns the records and their statistics as computed by `brute_force_psi`.
    """

    scheme = scheme or MarkingScheme.timss()
    numerator = scheme.alpha * spec.mark_value * scheme.time_unit_divisor
    n = spec.records_per_problem

    records = RecordList()
    for index, (problem_id, target) in enumerate(zip(spec.problem_ids, spec.target_psi)):
        rng = stream(spec.seed, index)
        sigma = math.sqrt(math.log1p(1.0 / target**2))
        mu = math.log(spec.median_time_ms)

        for _ in range(SYNTHETIC_ATTEMPTS):
            etas = numerator / rng.lognormal(mu, sigma, size=n)
            mean = etas.mean()
            std = etas.std(ddof=1)
            if std == 0:
                continue

            adjusted = mean + (etas - mean) * (mean / (target * std))
            if adjusted.min() <= 0:
                continue

            times = np.rint(numerator / adjusted)
            if times.min() < 1:
                continue

            group = RecordList(
                ResponseRecord(problem_id, int(t), spec.mark_value) for t in times
            )
            realized = brute_force_psi(group, scheme)[0]
            if abs(realized.psi - target) <= SYNTHETIC_TOLERANCE * target:
                records.extend(group)
                break
        else:
            raise InputError(
                f"Could not reach derived performance {target!r} for '{problem_id}' with {n} record(s)"
            )

    logger.debug("Generated %d synthetic record(s) for %d problem(s)", len(records), spec.num_problems)
    return records, brute_force_psi(records, scheme)


def success_ratios(records: Sequence[ResponseRecord], success_mark: float) -> Dict[str, float]:
    """
    Share of attempts per problem whose marks reach `success_mark`.
    """

    ratios: Dict[str, float] = {}
    for problem_id, group in RecordList.of(records).by_problem().items():
        ratios[problem_id] = sum(1 for r in group if r.marks >= success_mark) / len(group)
    return ratios


def summarize_dataset(records: Sequence[ResponseRecord], success_mark: float) -> DatasetSummary:
    """
    Trials, problems and overall success rate under the dataset's rubric.
    """

    if not records:
        raise InputError("Cannot summarize an empty dataset")

    successes = sum(1 for r in records if r.marks >= success_mark)
    return DatasetSummary(
        trials=len(records),
        problems=len(RecordList.of(records).problem_ids),
        success_rate=successes / len(records),
        success_mark=success_mark,
    )
