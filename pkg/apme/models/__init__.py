"""

Classes that hold response records, marking schemes, aggregates, simulation state and reports.

"""

from .records import *
from .scheme import *
from .stats import *
from .simulation import *
from .ingest import *
from .evaluation import *


__all__ = [
    "ResponseRecord",
    "RecordList",
    "MarkingScheme",
    "JeeSchemeLabel",
    "CORRECT",
    "INCORRECT",
    "UNATTEMPTED",
    "ProblemStats",
    "StatsList",
    "ArmProbabilities",
    "NormalizedValues",
    "RankedProblem",
    "Ranking",
    "Strategy",
    "BanditEnvironment",
    "AgentState",
    "SimulationConfig",
    "RunTrace",
    "SimulationTrace",
    "IngestReport",
    "JeeQuestionCounts",
    "ArmScore",
    "EvaluationReport",
    "SyntheticSpec",
    "DatasetSummary",
]
