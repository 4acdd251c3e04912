from typing import Any, Dict, List, Sequence
import math

from ..data_types import ArmScoreDocument, ReportDocument
from ..exceptions import InputError
from ..utility import validate_seed


class ArmScore:
    """
    Represents how close one arm's estimate came to its hidden probability.
    """

    problem_id: str
    hidden: float
    estimate: float

    def __init__(self, problem_id: str, hidden: float, estimate: float):
        self.problem_id = problem_id
        self.hidden = float(hidden)
        self.estimate = float(estimate)

    @property
    def abs_error(self) -> float:
        return abs(self.estimate - self.hidden)

    def to_document(self) -> ArmScoreDocument:
        return {
            "problem_id": self.problem_id,
            "hidden": self.hidden,
            "estimate": self.estimate,
            "abs_error": self.abs_error,
        }


class EvaluationReport:
    """
    Represents learned estimates scored against hidden probabilities.

    Parameters
    ----------
    r_squared
        Coefficient of determination of estimates against hidden probabilities.
    rmse
        Root mean squared error.
    per_arm
        Per-arm comparison.
    spearman_rank_correlation
        Rank agreement of estimates and hidden probabilities. `NaN` when undefined.
    """

    EVALUATED_AGAINST = "hidden_probability"

    r_squared: float
    rmse: float
    per_arm: List[ArmScore]
    spearman_rank_correlation: float

    def __init__(
        self,
        r_squared: float,
        rmse: float,
        per_arm: Sequence[ArmScore],
        spearman_rank_correlation: float,
    ):
        self.r_squared = float(r_squared)
        self.rmse = float(rmse)
        self.per_arm = list(per_arm)
        self.spearman_rank_correlation = float(spearman_rank_correlation)

    def to_document(self) -> ReportDocument:
        spearman = self.spearman_rank_correlation
        return {
            "r_squared": self.r_squared,
            "rmse": self.rmse,
            "spearman": None if math.isnan(spearman) else spearman,
            "evaluated_against": self.EVALUATED_AGAINST,
            "per_arm": [a.to_document() for a in self.per_arm],
        }

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} r_squared={self.r_squared:.4f}, rmse={self.rmse:.4f}>"


class SyntheticSpec:
    """
    Represents a synthetic dataset with known derived performance per problem.

    Parameters
    ----------
    target_psi
        Target derived performance per problem. Problem ids are `P01`, `P02`, ...
    records_per_problem
        Responses generated per problem.
    mark_value
        Marks of every generated response.
    seed
        64-bit unsigned seed; problem `i` uses substream `i` of it.
    median_time_ms
        Median response time of the generated responses.
    """

    target_psi: List[float]
    records_per_problem: int
    mark_value: float
    seed: int
    median_time_ms: float

    def __init__(
        self,
        target_psi: Sequence[float],
        records_per_problem: int = 200,
        mark_value: float = 1.0,
        seed: int = 0,
        *,
        median_time_ms: float = 30_000.0,
    ):
        self.target_psi = [float(v) for v in target_psi]

        if len(self.target_psi) < 2:
            raise InputError("A synthetic dataset needs at least 2 problems")
        for value in self.target_psi:
            if not math.isfinite(value) or value <= 0:
                raise InputError(f"Target derived performance must be positive, got {value!r}")
        if records_per_problem < 2:
            raise InputError(f"records_per_problem must be at least 2, got {records_per_problem}")
        if mark_value <= 0:
            raise InputError(f"mark_value must be positive, got {mark_value!r}")
        if median_time_ms < 1:
            raise InputError(f"median_time_ms must be at least 1, got {median_time_ms!r}")
        try:
            self.seed = validate_seed(seed)
        except ValueError as e:
            raise InputError(str(e))

        self.records_per_problem = int(records_per_problem)
        self.mark_value = float(mark_value)
        self.median_time_ms = float(median_time_ms)

    @property
    def num_problems(self) -> int:
        return len(self.target_psi)

    @property
    def problem_ids(self) -> List[str]:
        width = max(2, len(str(self.num_problems)))
        return [f"P{i + 1:0{width}d}" for i in range(self.num_problems)]


class DatasetSummary:
    """
    Represents dataset-level counts and the success rate under the native rubric.
    """

    trials: int
    problems: int
    success_rate: float
    success_mark: float

    def __init__(self, trials: int, problems: int, success_rate: float, success_mark: float):
        self.trials = trials
        self.problems = problems
        self.success_rate = success_rate
        self.success_mark = success_mark

    def to_document(self) -> Dict[str, Any]:
        return {
            "trials": self.trials,
            "problems": self.problems,
            "success_rate": self.success_rate,
            "success_mark": self.success_mark,
        }

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} trials={self.trials}, problems={self.problems}, success_rate={self.success_rate:.3f}>"
