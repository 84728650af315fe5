"""Dense state-vector simulation of the Grover circuit.

This is the brute-force reference: every one of the 2**n amplitudes is
stored and updated. The closed forms in :mod:`grover_sweep.analytic` are
checked against it.

Index convention: basis state ``|i>`` is stored at position ``i``; qubit k is
bit k of ``i`` (LSB first). In the ancilla model the workspace qubit is bit 0
of the enlarged index, so register index ``i`` with ancilla bit ``b`` lives at
``2*i + b``.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import kernels
from .errors import SizeError

MAX_QUBITS = 24

NORM_TOL = 1e-10
OP_TOL = 1e-12


def _check_n(n, max_qubits=MAX_QUBITS):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise SizeError(f"qubit count must be an integer, got {n!r}")
    if not 1 <= n <= max_qubits:
        raise SizeError(f"qubit count {n} outside 1..{max_qubits}")


@dataclass
class QuantumState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.ndim != 1 or self.amplitudes.shape[0] != 1 << self.n:
            raise SizeError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got shape {self.amplitudes.shape}"
            )

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm_squared(self) -> float:
        return float(np.sum(self.probabilities()))

    def copy(self) -> "QuantumState":
        return QuantumState(self.n, self.amplitudes.copy())

    @classmethod
    def basis(cls, n: int, index: int) -> "QuantumState":
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n, amps)


@dataclass(frozen=True)
class SearchProblem:
    """List of ``N = 2**n`` items together with the predicate ``f``.

    ``marked`` holds the sorted indices with ``f(i) = 1``; it is what the phase
    oracle acts on. ``predicate`` is the original black-box test, used for the
    classical verification step. When omitted it defaults to set membership.
    """

    n: int
    marked: np.ndarray
    predicate: Optional[Callable[[int], bool]] = field(default=None, compare=False)

    def __post_init__(self):
        _check_n(self.n)
        marked = np.unique(np.asarray(self.marked, dtype=np.int64))
        if marked.size and (marked[0] < 0 or marked[-1] >= 1 << self.n):
            raise SizeError(f"marked index outside 0..{(1 << self.n) - 1}")
        object.__setattr__(self, "marked", marked)
        if self.predicate is None:
            lookup = frozenset(int(i) for i in marked)
            object.__setattr__(self, "predicate", lookup.__contains__)

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def match_count(self) -> int:
        return int(self.marked.size)

    def __call__(self, i) -> int:
        return int(bool(self.predicate(int(i))))

    def mask(self) -> np.ndarray:
        m = np.zeros(self.size, dtype=bool)
        m[self.marked] = True
        return m


def _check_dims(state, problem):
    if state.n != problem.n:
        raise SizeError(f"state has {state.n} qubits, problem has {problem.n}")


def uniform_superposition(n: int, max_qubits: int = MAX_QUBITS) -> QuantumState:
    """Hadamard on every qubit of ``|0...0>``."""
    _check_n(n, max_qubits)
    dim = 1 << n
    return QuantumState(n, np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128))


def apply_oracle(state: QuantumState, problem: SearchProblem) -> QuantumState:
    _check_dims(state, problem)
    out = state.copy()
    kernels.phase_flip(out.amplitudes, problem.marked)
    return out


def apply_diffusion_mean(state: QuantumState) -> QuantumState:
    """Inversion about the mean: ``alpha_j -> 2<alpha> - alpha_j``."""
    out = state.copy()
    kernels.invert_about_mean(out.amplitudes)
    return out


def _diffuse_conjugated_inplace(a):
    kernels.fwht(a)
    a[1:] *= -1.0
    kernels.fwht(a)
    a /= a.shape[0]


def apply_diffusion_conjugated(state: QuantumState) -> QuantumState:
    """Same reflection built as ``H (2|0><0| - I) H``.

    Uses two unnormalised Walsh-Hadamard transforms and one division by N,
    which equals the two 1/sqrt(N) normalisations.
    """
    out = state.copy()
    _diffuse_conjugated_inplace(out.amplitudes)
    return out


def grover_run(problem: SearchProblem, iterations: int, diffusion: str = "mean") -> QuantumState:
    """Uniform start followed by ``iterations`` rounds of oracle + diffusion."""
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    if diffusion == "mean":
        diffuse = kernels.invert_about_mean
    elif diffusion == "conjugated":
        diffuse = _diffuse_conjugated_inplace
    else:
        raise ValueError(f"unknown diffusion {diffusion!r}")
    state = uniform_superposition(problem.n)
    a = state.amplitudes
    for _ in range(iterations):
        kernels.phase_flip(a, problem.marked)
        diffuse(a)
    return state


def success_probability(state: QuantumState, problem: SearchProblem) -> float:
    _check_dims(state, problem)
    if problem.match_count == 0:
        return 0.0
    p = float(np.sum(np.abs(state.amplitudes[problem.marked]) ** 2))
    return min(max(p, 0.0), 1.0)


def sample_measurement(state: QuantumState, seed=None, shots: Optional[int] = None):
    """Measure the register in the computational basis.

    Inverse-CDF draw over the cumulative probabilities. ``seed`` may be an
    int, a ``SeedSequence`` or an existing ``Generator``. Returns one index,
    or an array of ``shots`` indices.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    cdf = np.cumsum(state.probabilities())
    u = rng.random(1 if shots is None else shots) * cdf[-1]
    idx = np.minimum(np.searchsorted(cdf, u, side="right"), state.dim - 1)
    return int(idx[0]) if shots is None else idx


# ------------------------------------------------------------ ancilla model


def grover_run_with_ancilla(problem: SearchProblem, iterations: int) -> QuantumState:
    """Full (n+1)-qubit circuit with the workspace qubit prepared in ``|1>``.

    The oracle is a bit flip on the ancilla controlled by ``f``; the ancilla
    in ``(|0> - |1>)/sqrt(2)`` turns it into a phase flip on the register.
    """
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    n = problem.n
    _check_n(n + 1, MAX_QUBITS + 1)
    dim = 1 << (n + 1)
    a = np.zeros(dim, dtype=np.complex128)
    a[1] = 1.0  # |0...0>|1>
    kernels.fwht(a)
    a /= np.sqrt(dim)
    cols = a.reshape(1 << n, 2)
    for _ in range(iterations):
        kernels.ancilla_flip(a, problem.marked)
        for b in range(2):
            col = np.ascontiguousarray(cols[:, b])
            kernels.invert_about_mean(col)
            cols[:, b] = col
    return QuantumState(n + 1, a)


def discard_ancilla(state: QuantumState) -> QuantumState:
    """Project out the ancilla, assuming it sits in ``(|0> - |1>)/sqrt(2)``."""
    cols = state.amplitudes.reshape(-1, 2)
    return QuantumState(state.n - 1, (cols[:, 0] - cols[:, 1]) / np.sqrt(2.0))


def ancilla_schmidt_values(state: QuantumState) -> np.ndarray:
    """Singular values of the register x ancilla split (descending).

    A product state has exactly one non-zero value.
    """
    return np.linalg.svd(state.amplitudes.reshape(-1, 2), compute_uv=False)
