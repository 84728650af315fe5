"""Grover search over the full match range: simulation, closed forms, unknown-M loop."""

from . import analytic, kernels, oracles, statevector, unknown_m
from .analytic import (
    IterationPlan,
    TwoAmpState,
    average_success_one,
    optimal_iterations,
    padded_plan,
    success_prob,
    theta,
)
from .errors import (
    DimacsParseError,
    DivergenceError,
    DomainError,
    OutOfValidityError,
    SizeError,
    UndefinedAngleError,
)
from .oracles import CnfFormula, cnf_oracle, explicit_oracle, parse_dimacs
from .statevector import QuantumState, SearchProblem, grover_run, uniform_superposition
from .unknown_m import BbhtConfig, BbhtOutcome, bbht_search

__version__ = "0.1.0"
