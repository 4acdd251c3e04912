"""

Readers and writers for the files passed between commands.

"""

from typing import Dict, List, Mapping, Optional, Sequence, Tuple
import math

import numpy as np
import pandas as pd

from .bandit import cumulative_regret
from .data_types import (
    RANKING_COLUMNS,
    STATS_COLUMNS,
    TRACE_COLUMNS,
    EstimatesDocument,
)
from .exceptions import InputError, SchemaError
from .models import (
    ArmProbabilities,
    BanditEnvironment,
    EvaluationReport,
    ProblemStats,
    Ranking,
    SimulationTrace,
    StatsList,
)
from .utility import read_frame, read_json, write_frame, write_json
from .utility.files import PathLike

__all__ = [
    "write_stats_csv",
    "read_stats_csv",
    "write_ranking_csv",
    "write_trace_csv",
    "write_curves_csv",
    "write_regret_csv",
    "write_estimates_json",
    "read_estimates_json",
    "write_report_json",
    "curves_frame",
    "estimates_document",
    "probabilities_from_column",
]


def _float(value: float) -> str:
    return repr(float(value))


def _require_columns(frame: pd.DataFrame, columns: Sequence[str], path: PathLike) -> None:
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise SchemaError(f"'{path}' is missing required column(s): {missing}", missing)


def write_stats_csv(
    stats: Sequence[ProblemStats],
    probabilities: Optional[ArmProbabilities],
    path: PathLike,
) -> None:
    rows = []
    for s in stats:
        p = probabilities.get(s.problem_id) if probabilities is not None else None
        rows.append(
            {
                "problem_id": s.problem_id,
                "k": s.k,
                "mean_eta": _float(s.mean_eta),
                "std_eta": _float(s.std_eta),
                "psi": _float(s.psi),
                "probability": "" if p is None else _float(p),
                "degenerate": "true" if s.degenerate else "false",
            }
        )
    write_frame(pd.DataFrame(rows, columns=list(STATS_COLUMNS)), path)


def read_stats_csv(path: PathLike) -> Tuple[StatsList, Dict[str, Optional[float]]]:
    """
    Problem stats and the probability column (`None` where it was left empty).
    """

    frame = read_frame(path)
    _require_columns(frame, STATS_COLUMNS[:6], path)

    stats = StatsList()
    probabilities: Dict[str, Optional[float]] = {}
    for row in frame.to_dict("records"):
        try:
            s = ProblemStats(
                problem_id=row["problem_id"],
                k=int(row["k"]),
                mean_eta=float(row["mean_eta"]),
                std_eta=float(row["std_eta"]),
                psi=float(row["psi"]),
            )
            probability = float(row["probability"]) if row["probability"].strip() else None
        except ValueError as e:
            raise SchemaError(f"'{path}': malformed stats row for '{row['problem_id']}': {e}")

        if s.problem_id in probabilities:
            raise InputError(f"'{path}': duplicate problem '{s.problem_id}'")
        stats.append(s)
        probabilities[s.problem_id] = probability

    return stats, probabilities


def write_ranking_csv(ranking: Ranking, path: PathLike) -> None:
    frame = pd.DataFrame(
        [
            {
                "rank": r.rank,
                "problem_id": r.problem_id,
                "psi": _float(r.psi),
                "mean_eta": _float(r.mean_eta),
                "std_eta": _float(r.std_eta),
            }
            for r in ranking
        ],
        columns=list(RANKING_COLUMNS),
    )
    write_frame(frame, path)


def write_trace_csv(trace: SimulationTrace, path: PathLike) -> None:
    """
    One row per pull: `step,run,arm,reward`, steps counted from 1.
    """

    steps = np.arange(1, trace.steps + 1)
    frame = pd.DataFrame(
        {
            "step": np.concatenate([steps for _ in trace.runs]),
            "run": np.concatenate([np.full(trace.steps, run.run) for run in trace.runs]),
            "arm": np.concatenate([run.arms for run in trace.runs]),
            "reward": np.concatenate([run.rewards for run in trace.runs]),
        },
        columns=list(TRACE_COLUMNS),
    )
    write_frame(frame, path)


def curves_frame(trace: SimulationTrace) -> pd.DataFrame:
    """
    Cross-run means: `step,avg_reward,arm_0_count,...`.
    """

    columns = {
        "step": np.arange(1, trace.steps + 1),
        "avg_reward": [_float(v) for v in trace.average_reward],
    }
    for arm in range(trace.num_arms):
        columns[f"arm_{arm}_count"] = [_float(v) for v in trace.selection_counts[:, arm]]
    return pd.DataFrame(columns)


def write_curves_csv(trace: SimulationTrace, path: PathLike) -> None:
    write_frame(curves_frame(trace), path)


def write_regret_csv(trace: SimulationTrace, env: BanditEnvironment, path: PathLike) -> None:
    regret = cumulative_regret(trace, env)
    frame = pd.DataFrame(
        {
            "step": np.arange(1, trace.steps + 1),
            "regret": [_float(v) for v in regret],
        }
    )
    write_frame(frame, path)


def estimates_document(trace: SimulationTrace) -> EstimatesDocument:
    return {
        pid: {"estimate": float(estimate), "pulls": float(pulls)}
        for pid, estimate, pulls in zip(trace.problem_ids, trace.estimates, trace.pulls)
    }


def write_estimates_json(trace: SimulationTrace, path: PathLike) -> None:
    write_json(estimates_document(trace), path)


def read_estimates_json(path: PathLike) -> Dict[str, float]:
    document = read_json(path)
    if not isinstance(document, dict):
        raise SchemaError(f"'{path}' must map problem ids to estimates")

    estimates: Dict[str, float] = {}
    for pid, entry in document.items():
        if not isinstance(entry, dict) or "estimate" not in entry:
            raise SchemaError(f"'{path}': entry for '{pid}' has no estimate")
        try:
            value = float(entry["estimate"])
        except (TypeError, ValueError):
            raise SchemaError(f"'{path}': estimate for '{pid}' is not a number")
        if not math.isfinite(value):
            raise SchemaError(f"'{path}': estimate for '{pid}' is not finite")
        estimates[str(pid)] = value
    return estimates


def write_report_json(report: EvaluationReport, path: PathLike) -> None:
    write_json(report.to_document(), path)


def probabilities_from_column(
    probabilities: Mapping[str, Optional[float]],
) -> ArmProbabilities:
    """
    Arm probabilities from a stats file's probability column, skipping problems without one.
    """

    usable: List[Tuple[str, float]] = [
        (pid, p) for pid, p in probabilities.items() if p is not None
    ]
    if len(usable) < 2:
        raise InputError(f"At least 2 problems with a probability are required, got {len(usable)}")
    return ArmProbabilities(usable)
