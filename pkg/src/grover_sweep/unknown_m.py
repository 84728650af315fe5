"""Randomised Grover search when the number of matches is unknown.

The search loop grows an iteration ceiling ``m`` geometrically by ``lambda``
(capped at sqrt(N)) and in each round runs a uniformly drawn number of
Grover iterations from a fresh uniform state, then checks the measured
index classically.

Cost accounting: every Grover iteration is one oracle call and the classical
check at the end of each round is one more. ``grover_iterations`` and
``rounds`` are reported separately so either convention can be recovered.
"""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import statevector as sv
from .analytic import guarded_floor, theta
from .errors import DivergenceError, DomainError, OutOfValidityError

DEFAULT_LAMBDA = 8.0 / 7.0
DEFAULT_MAX_CALLS = 10**6
STATEVECTOR_MAX_QUBITS = 14


@dataclass(frozen=True)
class BbhtConfig:
    lambda_: float = DEFAULT_LAMBDA
    max_oracle_calls: int = DEFAULT_MAX_CALLS
    seed: int = 0

    def __post_init__(self):
        if not 1.0 < self.lambda_ <= 4.0 / 3.0:
            raise DomainError(f"lambda must lie in (1, 4/3], got {self.lambda_}")
        if self.max_oracle_calls < 1:
            raise DomainError("max_oracle_calls must be >= 1")


@dataclass(frozen=True)
class BbhtOutcome:
    found_index: Optional[int]
    oracle_calls: int
    grover_iterations: int
    rounds: int

    @property
    def found(self) -> bool:
        return self.found_index is not None


class _TwoClassSampler:
    """Measurement after j iterations using only the marked/unmarked split.

    From a uniform start the state stays constant on each class, so the
    outcome is: marked with probability sin^2((2j+1) theta), then uniform
    within the chosen class.
    """

    def __init__(self, problem):
        self.N = problem.size
        self.marked = problem.marked
        self.M = problem.match_count
        self.theta = theta(self.M, self.N) if self.M else None
        # marked[k] - k = number of unmarked indices below marked[k]
        self._gaps = self.marked - np.arange(self.M, dtype=np.int64)

    def __call__(self, j, rng):
        if self.M and rng.random() < math.sin((2 * j + 1) * self.theta) ** 2:
            return int(self.marked[rng.integers(self.M)])
        if self.M == self.N:  # unreachable in exact arithmetic; guards rounding
            return int(self.marked[rng.integers(self.M)])
        k = int(rng.integers(self.N - self.M))
        return k + int(np.searchsorted(self._gaps, k, side="right"))


class _StateVectorSampler:
    def __init__(self, problem):
        if problem.n > STATEVECTOR_MAX_QUBITS:
            raise DomainError(
                f"statevector backend limited to n <= {STATEVECTOR_MAX_QUBITS}, got {problem.n}"
            )
        self.problem = problem

    def __call__(self, j, rng):
        return sv.sample_measurement(sv.grover_run(self.problem, j), rng)


def bbht_search(problem, config: BbhtConfig = BbhtConfig(), backend="analytic", rng=None) -> BbhtOutcome:
    """Run the unknown-M loop once.

    ``backend`` selects how the post-iteration measurement is produced:
    ``analytic`` (two-class model, any n) or ``statevector`` (full
    simulation, n <= 14). ``rng`` overrides ``config.seed``.
    """
    if rng is None:
        rng = np.random.default_rng(config.seed)
    if backend == "analytic":
        measure = _TwoClassSampler(problem)
    elif backend == "statevector":
        measure = _StateVectorSampler(problem)
    else:
        raise ValueError(f"unknown backend {backend!r}")

    cap = math.sqrt(problem.size)
    m = 1.0
    calls = iterations = rounds = 0
    while True:
        j = int(rng.integers(math.ceil(m)))
        if calls + j + 1 > config.max_oracle_calls:
            return BbhtOutcome(None, config.max_oracle_calls, iterations, rounds)
        i = measure(j, rng)
        calls += j + 1
        iterations += j
        rounds += 1
        if problem(i):
            return BbhtOutcome(i, calls, iterations, rounds)
        m = min(config.lambda_ * m, cap)


def classical_sampling_search(problem, seed=None, max_calls=DEFAULT_MAX_CALLS) -> BbhtOutcome:
    """Uniform i.i.d. guesses checked against the oracle, one call each."""
    if max_calls < 1:
        raise DomainError("max_calls must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for calls in range(1, max_calls + 1):
        i = int(rng.integers(problem.size))
        if problem(i):
            return BbhtOutcome(i, calls, 0, calls)
    return BbhtOutcome(None, max_calls, 0, max_calls)


def trial_rng(seed, trial):
    """Independent stream for trial ``trial`` of an ensemble seeded by ``seed``."""
    return np.random.default_rng([int(seed), int(trial)])


def run_trials(problem, config: BbhtConfig, trials: int, backend="analytic") -> List[BbhtOutcome]:
    return [
        bbht_search(problem, config, backend, rng=trial_rng(config.seed, t)) for t in range(trials)
    ]


def m_lower_bound(M, N) -> float:
    """``1 / sin(2 theta)``; diverges at M = N."""
    if M == N:
        raise DivergenceError("1/sin(2 theta) diverges at M = N")
    return 1.0 / math.sin(2.0 * theta(M, N))


def expected_calls_estimate(M, N) -> float:
    """Cost model ``8 / sin(2 theta)``, valid for M <= 3N/4."""
    if 4 * M > 3 * N:
        raise OutOfValidityError(f"M/N = {M / N:.6g} > 3/4: use classical sampling instead")
    return 8.0 * m_lower_bound(M, N)


@dataclass(frozen=True)
class Figure5Row:
    ratio: float
    q_real: float
    m_real: float

    @property
    def q_floor(self) -> int:
        return guarded_floor(self.q_real)

    @property
    def m_floor(self) -> Optional[int]:
        return None if math.isinf(self.m_real) else guarded_floor(self.m_real)


def figure5_curves(grid_size: int) -> List[Figure5Row]:
    """``pi/(4 theta)`` and ``1/sin(2 theta)`` on the ratio grid k/grid_size.

    ``m_real`` is ``inf`` at ratio 1.
    """
    if grid_size < 2:
        raise DomainError("grid_size must be >= 2")
    rows = []
    for k in range(1, grid_size + 1):
        th = theta(k, grid_size)
        m_real = math.inf if k == grid_size else 1.0 / math.sin(2.0 * th)
        rows.append(Figure5Row(k / grid_size, math.pi / (4.0 * th), m_real))
    return rows
