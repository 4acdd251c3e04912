from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import InputError
from ..utility import InsensitiveEnum, validate_seed


class Strategy(InsensitiveEnum):
    """
    Enum that represents an exploration strategy.
    """

    THOMPSON = "thompson"
    EPSILON_GREEDY = "epsilon_greedy"
    UCB = "ucb"


class BanditEnvironment:
    """
    Represents problems as Bernoulli arms with hidden success probabilities.

    Parameters
    ----------
    arms
        `(problem_id, probability)` pairs in arm order. Each probability must lie in (0, 1).
    """

    arms: List[Tuple[str, float]]

    def __init__(self, arms: Iterable[Tuple[str, float]]):
        self.arms = [(str(pid), float(p)) for pid, p in arms]

        for pid, p in self.arms:
            if not 0.0 < p < 1.0:
                raise InputError(f"Hidden probability for '{pid}' must lie in (0, 1), got {p!r}")

        self._means = np.array([p for _, p in self.arms], dtype=np.float64)
        self._means.setflags(write=False)

    @property
    def num_arms(self) -> int:
        return len(self.arms)

    @property
    def problem_ids(self) -> List[str]:
        return [pid for pid, _ in self.arms]

    @property
    def means(self) -> np.ndarray:
        """
        Hidden success probabilities, read-only.
        """

        return self._means

    @property
    def optimal_arm(self) -> int:
        return int(np.argmax(self._means))

    @property
    def optimal_mean(self) -> float:
        return float(self._means.max())

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} arms={self.num_arms}, optimal={self.problem_ids[self.optimal_arm]}>"


class AgentState:
    """
    Represents an agent's knowledge about every arm. Steps update it in place.

    Parameters
    ----------
    num_arms
        Number of arms. Every arm starts from a `Beta(1, 1)` prior with no pulls.
    """

    alpha: np.ndarray
    beta: np.ndarray
    counts: np.ndarray
    t: int

    def __init__(self, num_arms: int):
        if num_arms < 1:
            raise InputError(f"An agent needs at least one arm, got {num_arms}")

        self.alpha = np.ones(num_arms, dtype=np.float64)
        self.beta = np.ones(num_arms, dtype=np.float64)
        self.counts = np.zeros(num_arms, dtype=np.int64)
        self.t = 0

    @property
    def num_arms(self) -> int:
        return len(self.counts)

    @property
    def successes(self) -> np.ndarray:
        return self.alpha - 1.0

    @property
    def posterior_means(self) -> np.ndarray:
        """
        `alpha / (alpha + beta)`, i.e. `(1 + successes) / (2 + pulls)`.
        """

        return self.alpha / (self.alpha + self.beta)

    @property
    def empirical_means(self) -> np.ndarray:
        """
        Observed success share per arm; `0` for arms never pulled.
        """

        return np.divide(
            self.successes,
            self.counts,
            out=np.zeros(self.num_arms, dtype=np.float64),
            where=self.counts > 0,
        )

    def update(self, arm: int, reward: int) -> "AgentState":
        self.t += 1
        self.counts[arm] += 1
        if reward:
            self.alpha[arm] += 1.0
        else:
            self.beta[arm] += 1.0
        return self

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} arms={self.num_arms}, t={self.t}>"


class SimulationConfig:
    """
    Represents the settings of a simulation.

    Parameters
    ----------
    strategy
        The exploration strategy.
    steps
        Pulls per run.
    runs
        Independent repetitions.
    seed
        64-bit unsigned seed; run `i` uses substream `i` of it.
    epsilon
        Exploration probability, epsilon-greedy only.
    ucb_c
        Exploration bonus weight, UCB only.
    workers
        Worker processes used for runs. Output does not depend on it.
    """

    strategy: Strategy
    steps: int
    runs: int
    seed: int
    epsilon: float
    ucb_c: float
    workers: int

    def __init__(
        self,
        strategy: "Strategy | str" = Strategy.THOMPSON,
        steps: int = 1000,
        runs: int = 1,
        seed: int = 0,
        *,
        epsilon: float = 0.1,
        ucb_c: float = 1.0,
        workers: int = 1,
    ):
        try:
            self.strategy = Strategy(strategy)
        except ValueError:
            raise InputError(f"Unknown strategy '{strategy}'. Expected one of: {Strategy.names()}")

        if int(steps) != steps or steps < 1:
            raise InputError(f"steps must be a positive integer, got {steps!r}")
        if int(runs) != runs or runs < 1:
            raise InputError(f"runs must be a positive integer, got {runs!r}")
        if not 0.0 <= epsilon <= 1.0:
            raise InputError(f"epsilon must lie in [0, 1], got {epsilon!r}")
        if ucb_c <= 0:
            raise InputError(f"ucb_c must be positive, got {ucb_c!r}")
        if workers < 1:
            raise InputError(f"workers must be positive, got {workers!r}")
        try:
            self.seed = validate_seed(seed)
        except ValueError as e:
            raise InputError(str(e))

        self.steps = int(steps)
        self.runs = int(runs)
        self.epsilon = float(epsilon)
        self.ucb_c = float(ucb_c)
        self.workers = int(workers)

    @staticmethod
    def runs_for_experiments(experiments: int, steps: int) -> int:
        """
        Runs implied by a total pull budget: `experiments / steps`, rounded, at least 1.
        """

        if experiments < 1 or steps < 1:
            raise InputError("experiments and steps must be positive")
        return max(1, int(round(experiments / steps)))

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} strategy={self.strategy}, steps={self.steps}, runs={self.runs}, seed={self.seed}>"


class RunTrace:
    """
    Represents one run: the arm chosen and the reward realized at every step.

    Parameters
    ----------
    run
        The run index.
    num_arms
        Number of arms in the environment.
    arms
        Chosen arm per step.
    rewards
        Realized reward (0/1) per step.
    estimates
        Final per-arm estimate (posterior mean or empirical mean).
    """

    run: int
    num_arms: int
    arms: np.ndarray
    rewards: np.ndarray
    estimates: np.ndarray

    def __init__(
        self,
        run: int,
        num_arms: int,
        arms: Sequence[int],
        rewards: Sequence[int],
        estimates: Optional[Sequence[float]] = None,
    ):
        self.run = int(run)
        self.num_arms = int(num_arms)
        self.arms = np.asarray(arms, dtype=np.int64)
        self.rewards = np.asarray(rewards, dtype=np.int64)

        if self.arms.ndim != 1 or self.arms.shape != self.rewards.shape:
            raise InputError("arms and rewards must be equally long 1-D series")
        if len(self.arms) and (self.arms.min() < 0 or self.arms.max() >= self.num_arms):
            raise InputError(f"arm indices must lie in [0, {self.num_arms})")

        self.estimates = (
            np.asarray(estimates, dtype=np.float64)
            if estimates is not None
            else np.full(self.num_arms, np.nan)
        )

    @property
    def steps(self) -> int:
        return len(self.arms)

    @property
    def pulls(self) -> np.ndarray:
        return np.bincount(self.arms, minlength=self.num_arms)

    def average_reward(self) -> np.ndarray:
        """
        Prefix mean of realized rewards.
        """

        return np.cumsum(self.rewards) / np.arange(1, self.steps + 1)

    def selection_counts(self) -> np.ndarray:
        """
        Cumulative pulls per arm after each step, shape `(steps, num_arms)`.
        """

        chosen = np.zeros((self.steps, self.num_arms), dtype=np.int64)
        chosen[np.arange(self.steps), self.arms] = 1
        return np.cumsum(chosen, axis=0)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} run={self.run}, steps={self.steps}>"


class SimulationTrace:
    """
    Represents every run of a simulation plus their cross-run means.

    Parameters
    ----------
    problem_ids
        Problem id per arm.
    runs
        Run traces, in run order.
    strategy
        The strategy that produced the runs.
    """

    problem_ids: List[str]
    runs: List[RunTrace]
    strategy: Optional[Strategy]
    average_reward: np.ndarray
    selection_counts: np.ndarray
    estimates: np.ndarray
    pulls: np.ndarray

    def __init__(
        self,
        problem_ids: Sequence[str],
        runs: Sequence[RunTrace],
        strategy: Optional[Strategy] = None,
    ):
        if not runs:
            raise InputError("A simulation trace needs at least one run")

        self.problem_ids = list(problem_ids)
        self.runs = list(runs)
        self.strategy = strategy

        steps = self.runs[0].steps
        num_arms = len(self.problem_ids)
        for run in self.runs:
            if run.steps != steps or run.num_arms != num_arms:
                raise InputError("Every run must have the same steps and arms")

        # fixed run order, so the means never depend on scheduling
        average_reward = np.zeros(steps, dtype=np.float64)
        selection_counts = np.zeros((steps, num_arms), dtype=np.float64)
        estimates = np.zeros(num_arms, dtype=np.float64)
        pulls = np.zeros(num_arms, dtype=np.float64)
        for run in self.runs:
            average_reward += run.average_reward()
            selection_counts += run.selection_counts()
            estimates += run.estimates
            pulls += run.pulls

        count = len(self.runs)
        self.average_reward = average_reward / count
        self.selection_counts = selection_counts / count
        self.estimates = estimates / count
        self.pulls = pulls / count

    @property
    def steps(self) -> int:
        return self.runs[0].steps

    @property
    def num_arms(self) -> int:
        return len(self.problem_ids)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} strategy={self.strategy}, runs={len(self.runs)}, steps={self.steps}>"
