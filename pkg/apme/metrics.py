"""

Performance, derived performance and probability computations. Everything here is pure.

"""

from typing import List, Optional, Sequence
import math

import numpy as np

from .exceptions import (
    DomainError,
    InputError,
    InsufficientData,
    NonPositiveReward,
)
from .models import (
    ArmProbabilities,
    MarkingScheme,
    NormalizedValues,
    ProblemStats,
    ResponseRecord,
)

__all__ = [
    "instantaneous_performance",
    "aggregate_problem",
    "modulated_return",
    "shift_marks",
    "min_max_normalize",
    "assign_probabilities",
    "confidence_within",
    "derived_performance",
]


def instantaneous_performance(record: ResponseRecord, scheme: MarkingScheme) -> float:
    """
    Alpha-scaled marks per unit of time for one attempt.

    Parameters
    ----------
    record
        The attempt. Its time must be positive.
    scheme
        Supplies `alpha` and the time unit.
    """

    if record.time <= 0:
        raise DomainError(f"Time must be positive, got {record.time} ms")

    return (scheme.alpha * record.marks) / (record.time / scheme.time_unit_divisor)


def derived_performance(mean: float, std: float, epsilon_smooth: float) -> float:
    """
    `mean / (std + epsilon_smooth)`. Zero variance with no smoothing has no finite value.
    """

    denominator = std + epsilon_smooth
    if denominator == 0:
        raise DomainError(
            "Derived performance is undefined for zero variance without smoothing (epsilon_smooth = 0)"
        )
    return mean / denominator


def aggregate_problem(
    records: Sequence[ResponseRecord], scheme: MarkingScheme
) -> ProblemStats:
    """
    Mean, sample standard deviation and derived performance of one problem's responses.

    Parameters
    ----------
    records
        At least 2 responses, all for the same problem.
    scheme
        The marking scheme; `epsilon_smooth` smooths the derived performance.
    """

    if not records:
        raise InsufficientData("<none>", 0)

    problem_id = records[0].problem_id
    if any(r.problem_id != problem_id for r in records):
        ids = sorted({r.problem_id for r in records})
        raise InputError(f"Records span several problems: {ids}")
    if len(records) < 2:
        raise InsufficientData(problem_id, len(records))

    times = np.fromiter((r.time for r in records), dtype=np.float64, count=len(records))
    if times.min() <= 0:
        raise DomainError(f"Time must be positive for every response of '{problem_id}'")
    marks = np.fromiter((r.marks for r in records), dtype=np.float64, count=len(records))
    etas = (scheme.alpha * marks) / (times / scheme.time_unit_divisor)

    if etas.min() == etas.max():
        mean, std = float(etas[0]), 0.0
    else:
        mean = float(np.mean(etas))
        std = float(np.std(etas, ddof=1))

    return ProblemStats(
        problem_id=problem_id,
        k=len(records),
        mean_eta=mean,
        std_eta=std,
        psi=derived_performance(mean, std, scheme.epsilon_smooth),
        epsilon_smooth=scheme.epsilon_smooth,
    )


def modulated_return(reward: float, scheme: MarkingScheme) -> float:
    """
    `A1 * reward + A2 * true_value`. The identity when `A1 = 1` and `A2 = 0`.
    """

    return scheme.modulator_a1 * reward + scheme.modulator_a2 * scheme.true_value


def shift_marks(scheme: MarkingScheme) -> MarkingScheme:
    """
    Moves every outcome into the non-negative domain by adding `|min(marks)|` when the lowest mark is negative.
    """

    lowest = scheme.min_marks
    if lowest >= 0:
        return scheme

    offset = abs(lowest)
    return scheme.replace(
        outcome_marks={
            outcome: marks + offset for outcome, marks in scheme.outcome_marks.items()
        }
    )


def min_max_normalize(values: Sequence[float]) -> NormalizedValues:
    """
    Rescales values linearly onto [0, 1]. Equal values all map to `0` and the result is flagged `degenerate`.
    """

    if len(values) == 0:
        raise InputError("Cannot normalize an empty list")

    lowest = min(values)
    span = max(values) - lowest
    if span == 0:
        return NormalizedValues([0.0] * len(values), degenerate=True)

    return NormalizedValues([(v - lowest) / span for v in values])


def assign_probabilities(
    stats: Sequence[ProblemStats], scheme: Optional[MarkingScheme] = None
) -> ArmProbabilities:
    """
    Each problem's share of the total derived performance.

    Parameters
    ----------
    stats
        At least 2 problems. Order is kept.
    scheme
        When given, each weight is the modulated return of the problem's derived performance.
    """

    if len(stats) < 2:
        raise InputError(f"Probabilities need at least 2 problems, got {len(stats)}")

    weights: List[float] = []
    for s in stats:
        weight = s.psi if scheme is None else modulated_return(s.psi, scheme)
        if not weight > 0 or not math.isfinite(weight):
            raise NonPositiveReward(s.problem_id, weight)
        weights.append(weight)

    total = math.fsum(weights)
    return ArmProbabilities((s.problem_id, w / total) for s, w in zip(stats, weights))


def confidence_within(epsilon: float, sigma: float) -> float:
    """
    Probability that a Gaussian gain lands within `epsilon` of its mean, `erf(epsilon / (sigma * sqrt(2)))`.
    """

    if not epsilon > 0 or not sigma > 0:
        raise DomainError(f"epsilon and sigma must be positive, got ({epsilon!r}, {sigma!r})")

    return math.erf(epsilon / (sigma * math.sqrt(2.0)))