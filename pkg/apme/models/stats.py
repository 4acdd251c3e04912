from typing import Iterable, List, Optional, Sequence, Tuple
import math

from ..exceptions import InputError


class ProblemStats:
    """
    Represents per-problem aggregates of instantaneous performance.

    Parameters
    ----------
    problem_id
        The problem identifier.
    k
        Number of responses aggregated.
    mean_eta
        Mean instantaneous performance.
    std_eta
        Sample standard deviation of instantaneous performance.
    psi
        Derived performance, `mean_eta / (std_eta + epsilon_smooth)`.
    epsilon_smooth
        The smoothing term `psi` was computed with.
    """

    problem_id: str
    k: int
    mean_eta: float
    std_eta: float
    psi: float
    epsilon_smooth: float

    def __init__(
        self,
        problem_id: str,
        k: int,
        mean_eta: float,
        std_eta: float,
        psi: float,
        epsilon_smooth: float = 0.0,
    ):
        if k < 2:
            raise InputError(f"Problem stats need at least 2 responses, got {k}")
        if std_eta < 0:
            raise InputError(f"Standard deviation must be non-negative, got {std_eta!r}")

        self.problem_id = str(problem_id)
        self.k = int(k)
        self.mean_eta = float(mean_eta)
        self.std_eta = float(std_eta)
        self.psi = float(psi)
        self.epsilon_smooth = float(epsilon_smooth)

    @property
    def degenerate(self) -> bool:
        """
        Whether every response had the same performance (zero variance).
        """

        return self.std_eta == 0.0

    @property
    def coefficient_of_variation(self) -> float:
        """
        `std_eta / mean_eta`; infinite when the mean is zero.
        """

        if self.mean_eta == 0:
            return math.inf
        return self.std_eta / self.mean_eta

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ProblemStats)
            and self.problem_id == other.problem_id
            and self.k == other.k
            and self.mean_eta == other.mean_eta
            and self.std_eta == other.std_eta
            and self.psi == other.psi
        )

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} problem_id={self.problem_id}, k={self.k}, psi={self.psi:.6g}>"


class StatsList(List[ProblemStats]):
    def copy(self):
        return StatsList(self)

    @property
    def problem_ids(self) -> List[str]:
        return [s.problem_id for s in self]

    def find_problem(self, problem_id: str) -> Optional[ProblemStats]:
        return next((s for s in self if s.problem_id == problem_id), None)


class ArmProbabilities:
    """
    Represents the probability assigned to each problem, in input order.

    Parameters
    ----------
    entries
        `(problem_id, probability)` pairs. Probabilities must lie in [0, 1] and sum to 1.
    """

    TOLERANCE = 1e-12

    entries: List[Tuple[str, float]]

    def __init__(self, entries: Iterable[Tuple[str, float]]):
        self.entries = [(str(pid), float(p)) for pid, p in entries]

        if not self.entries:
            raise InputError("Arm probabilities need at least one entry")

        ids = self.problem_ids
        if len(set(ids)) != len(ids):
            raise InputError("Arm probabilities contain duplicate problem ids")

        for pid, p in self.entries:
            if not 0.0 <= p <= 1.0:
                raise InputError(f"Probability for '{pid}' is outside [0, 1]: {p!r}")

        total = math.fsum(self.probabilities)
        if abs(total - 1.0) > self.TOLERANCE:
            raise InputError(f"Probabilities must sum to 1, got {total!r}")

    @property
    def problem_ids(self) -> List[str]:
        return [pid for pid, _ in self.entries]

    @property
    def probabilities(self) -> List[float]:
        return [p for _, p in self.entries]

    def get(self, problem_id: str) -> Optional[float]:
        return next((p for pid, p in self.entries if pid == problem_id), None)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ArmProbabilities) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} arms={len(self.entries)}>"


class NormalizedValues(List[float]):
    """
    Min-max normalized values. `degenerate` is set when every input was equal.
    """

    degenerate: bool

    def __init__(self, values: Sequence[float] = (), degenerate: bool = False):
        super().__init__(values)
        self.degenerate = degenerate


class RankedProblem:
    """
    Represents a problem's place in a difficulty ranking (rank 1 is the easiest).
    """

    rank: int
    stats: ProblemStats

    def __init__(self, rank: int, stats: ProblemStats):
        self.rank = rank
        self.stats = stats

    @property
    def problem_id(self) -> str:
        return self.stats.problem_id

    @property
    def psi(self) -> float:
        return self.stats.psi

    @property
    def mean_eta(self) -> float:
        return self.stats.mean_eta

    @property
    def std_eta(self) -> float:
        return self.stats.std_eta

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} rank={self.rank}, problem_id={self.problem_id}, psi={self.psi:.6g}>"


class Ranking(List[RankedProblem]):
    def copy(self):
        return Ranking(self)

    @property
    def problem_ids(self) -> List[str]:
        return [r.problem_id for r in self]

    def find_problem(self, problem_id: str) -> Optional[RankedProblem]:
        return next((r for r in self if r.problem_id == problem_id), None)
