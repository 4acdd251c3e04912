"""

JSON document types.

"""

from typing import Dict, List, Optional, TypedDict

__all__ = [
    "ModulatorDocument",
    "SchemeDocument",
    "EstimateEntry",
    "EstimatesDocument",
    "ArmScoreDocument",
    "ReportDocument",
]


class ModulatorDocument(TypedDict, total=False):
    a1: float
    a2: float


class SchemeDocument(TypedDict, total=False):
    alpha: float
    marks: Dict[str, float]
    modulator: ModulatorDocument
    true_value: float
    time_unit_divisor: float
    epsilon_smooth: float


class EstimateEntry(TypedDict):
    estimate: float
    pulls: float


EstimatesDocument = Dict[str, EstimateEntry]


class ArmScoreDocument(TypedDict):
    problem_id: str
    hidden: float
    estimate: float
    abs_error: float


class ReportDocument(TypedDict):
    r_squared: float
    rmse: float
    spearman: Optional[float]
    evaluated_against: str
    per_arm: List[ArmScoreDocument]
