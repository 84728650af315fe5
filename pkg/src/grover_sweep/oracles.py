"""Oracle constructors: explicit marked sets and CNF satisfiability.

Assignment encoding for CNF oracles: variable ``k`` (1-based) is bit
``k - 1`` of the index, least significant bit first. Index 5 = 0b101 thus
sets x1 = True, x2 = False, x3 = True.
"""

import io
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from . import kernels
from .errors import DimacsParseError, SizeError
from .statevector import MAX_QUBITS, SearchProblem


@dataclass(frozen=True)
class MarkedSetOracle:
    n: int
    marked: frozenset

    def __call__(self, i) -> int:
        return int(int(i) in self.marked)

    @property
    def match_count(self) -> int:
        return len(self.marked)

    def problem(self) -> SearchProblem:
        return SearchProblem(self.n, np.array(sorted(self.marked), dtype=np.int64), self.__call__)


def explicit_oracle(n: int, indices) -> MarkedSetOracle:
    if not 1 <= n <= MAX_QUBITS:
        raise SizeError(f"qubit count {n} outside 1..{MAX_QUBITS}")
    indices = [int(i) for i in indices]
    seen = set()
    for i in indices:
        if not 0 <= i < 1 << n:
            raise SizeError(f"index {i} outside 0..{(1 << n) - 1}")
        if i in seen:
            raise ValueError(f"duplicate index {i}")
        seen.add(i)
    return MarkedSetOracle(n, frozenset(seen))


@dataclass(frozen=True)
class CnfFormula:
    variable_count: int
    clauses: tuple

    def __post_init__(self):
        if self.variable_count < 1:
            raise ValueError("variable_count must be positive")
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        for c in clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise ValueError(f"literal {lit} out of range 1..{self.variable_count}")
        object.__setattr__(self, "clauses", clauses)

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        """Direct clause evaluation; ``assignment[k]`` is variable k+1."""
        return all(
            any(assignment[abs(l) - 1] == (l > 0) for l in clause) for clause in self.clauses
        )

    def flat(self):
        lengths = [len(c) for c in self.clauses]
        offsets = np.zeros(len(lengths) + 1, dtype=np.int64)
        np.cumsum(lengths, out=offsets[1:])
        literals = np.fromiter((l for c in self.clauses for l in c), dtype=np.int64, count=offsets[-1])
        return literals, offsets


def decode_assignment(i: int, variable_count: int) -> List[bool]:
    return [bool((i >> k) & 1) for k in range(variable_count)]


def truth_table(formula: CnfFormula) -> np.ndarray:
    literals, offsets = formula.flat()
    return kernels.cnf_truth_table(formula.variable_count, literals, offsets)


def cnf_oracle(formula: CnfFormula) -> SearchProblem:
    """Search problem whose marked items are the satisfying assignments.

    The full truth table is enumerated once here, so ``match_count`` is exact.
    """
    n = formula.variable_count
    if n > MAX_QUBITS:
        raise SizeError(f"{n} variables exceeds simulator cap of {MAX_QUBITS}")
    marked = np.flatnonzero(truth_table(formula)).astype(np.int64)

    def predicate(i):
        return formula.evaluate(decode_assignment(i, n))

    return SearchProblem(n, marked, predicate)


# ---------------------------------------------------------------- DIMACS


def parse_dimacs(text) -> CnfFormula:
    """Parse DIMACS CNF from a string or text stream.

    Clauses may span lines. A line starting with ``%`` ends the clause
    section (a common benchmark dialect).
    """
    if isinstance(text, str):
        text = io.StringIO(text)
    nvars = nclauses = None
    clauses = []
    current = []
    last_line = 0
    for lineno, raw in enumerate(text, start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if nvars is not None:
                raise DimacsParseError("duplicate problem line", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsParseError(f"malformed problem line {line!r}", lineno)
            try:
                nvars, nclauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsParseError(f"malformed problem line {line!r}", lineno) from None
            if nvars < 1 or nclauses < 0:
                raise DimacsParseError(f"bad counts in problem line {line!r}", lineno)
            continue
        if nvars is None:
            raise DimacsParseError("clause data before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsParseError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > nvars:
                raise DimacsParseError(f"literal {lit} out of range 1..{nvars}", lineno)
            else:
                current.append(lit)
    if nvars is None:
        raise DimacsParseError("missing 'p cnf' header", last_line or None)
    if current:
        raise DimacsParseError("final clause not terminated by 0", last_line)
    if len(clauses) != nclauses:
        raise DimacsParseError(
            f"header declares {nclauses} clauses but {len(clauses)} were found", last_line
        )
    return CnfFormula(nvars, clauses)


def render_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.variable_count} {len(formula.clauses)}"]
    lines += [" ".join(str(l) for l in (*c, 0)) for c in formula.clauses]
    return "\n".join(lines) + "\n"


def random_formula(rng: np.random.Generator, max_vars=12, max_clauses=8, max_width=3) -> CnfFormula:
    """Random CNF for property tests and benchmarks."""
    n = int(rng.integers(1, max_vars + 1))
    clauses = []
    for _ in range(int(rng.integers(0, max_clauses + 1))):
        width = int(rng.integers(1, max_width + 1))
        vars_ = rng.choice(np.arange(1, n + 1), size=min(width, n), replace=False)
        signs = rng.choice([-1, 1], size=vars_.size)
        clauses.append([int(v * s) for v, s in zip(vars_, signs)])
    return CnfFormula(n, clauses)
