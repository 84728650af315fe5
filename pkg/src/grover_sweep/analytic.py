"""Closed-form predictions for Grover search with M matches among N items.

Everything here is a pure function of ``(q, M, N)``. Doubles are used for
amplitudes and probabilities; the averaging identities use exact rationals.
"""

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError, UndefinedAngleError

# pi/(4 theta) this close to an integer is snapped before flooring
FLOOR_GUARD = 1e-9


def _check_mn(M, N, allow_zero=False):
    if N < 1:
        raise DomainError(f"list size must be positive, got N={N}")
    if M == 0 and not allow_zero:
        raise UndefinedAngleError("M = 0: no match, rotation angle undefined")
    if M < 0 or M > N:
        raise DomainError(f"match count M={M} outside 0..N={N}")


def theta(M, N) -> float:
    """Angle with ``sin^2(theta) = M/N``, in ``(0, pi/2]``."""
    _check_mn(M, N)
    # atan2 stays accurate near pi/2, where asin loses digits
    return math.atan2(math.sqrt(M), math.sqrt(N - M))


def mean_amplitude(M, N) -> float:
    """Mean amplitude right after the first oracle call."""
    _check_mn(M, N)
    return (1.0 - 2.0 * M / N) / math.sqrt(N)


def first_iteration_amplitudes(M, N):
    """``(a1, b1)``: marked and unmarked amplitudes after one iteration."""
    _check_mn(M, N)
    r = M / N
    s = 1.0 / math.sqrt(N)
    return s * (3.0 - 4.0 * r), s * (1.0 - 4.0 * r)


def success_prob_one(M, N) -> float:
    _check_mn(M, N)
    r = M / N
    p = 9.0 * r - 24.0 * r * r + 16.0 * r * r * r
    return min(max(p, 0.0), 1.0)


def success_prob_one_exact(M, N) -> Fraction:
    _check_mn(M, N)
    r = Fraction(M, N)
    return 9 * r - 24 * r**2 + 16 * r**3


def classical_guess_prob(M, N) -> float:
    _check_mn(M, N, allow_zero=True)
    return M / N


@dataclass(frozen=True)
class TwoAmpState:
    """Marked amplitude ``a`` and unmarked amplitude ``b`` after ``q`` rounds."""

    a: float
    b: float
    M: int
    N: int
    q: int = 0

    def norm(self) -> float:
        return self.M * self.a**2 + (self.N - self.M) * self.b**2

    def success(self) -> float:
        return self.M * self.a**2

    @classmethod
    def initial(cls, M, N) -> "TwoAmpState":
        _check_mn(M, N)
        s = 1.0 / math.sqrt(N)
        return cls(s, s, M, N, 0)


def recurrence_step(s: TwoAmpState) -> TwoAmpState:
    M, N = s.M, s.N
    c = (N - 2 * M) / N
    a = c * s.a + (2 * (N - M) / N) * s.b
    b = c * s.b - (2 * M / N) * s.a
    return replace(s, a=a, b=b, q=s.q + 1)


def closed_form(q, M, N) -> TwoAmpState:
    """Amplitudes after ``q`` iterations without stepping.

    At ``M = N`` there are no unmarked items; ``b`` is returned as 0.
    """
    if q < 0:
        raise DomainError("iteration count must be non-negative")
    th = theta(M, N)
    angle = (2 * q + 1) * th
    a = math.sin(angle) / math.sqrt(M)
    b = 0.0 if M == N else math.cos(angle) / math.sqrt(N - M)
    return TwoAmpState(a, b, M, N, q)


def success_prob(q, M, N) -> float:
    if q < 0:
        raise DomainError("iteration count must be non-negative")
    th = theta(M, N)
    if q == 0:
        # sin^2(theta) is M/N by definition; skip the asin/sin round trip
        return M / N
    return math.sin((2 * q + 1) * th) ** 2


def failure_prob(q, M, N) -> float:
    if q < 0:
        raise DomainError("iteration count must be non-negative")
    return math.cos((2 * q + 1) * theta(M, N)) ** 2


def guarded_floor(x: float) -> int:
    nearest = round(x)
    if abs(x - nearest) < FLOOR_GUARD:
        return int(nearest)
    return math.floor(x)


def real_iterations(M, N) -> float:
    """``pi / (4 theta)`` before flooring."""
    return math.pi / (4.0 * theta(M, N))


def optimal_iterations(M, N) -> int:
    return guarded_floor(real_iterations(M, N))


@dataclass(frozen=True)
class IterationPlan:
    theta: float
    q_opt: int
    predicted_success: float
    M: int
    N: int


def plan(M, N) -> IterationPlan:
    q = optimal_iterations(M, N)
    return IterationPlan(theta(M, N), q, success_prob(q, M, N), M, N)


def padded_plan(M, N) -> IterationPlan:
    """Plan over a list doubled with N extra non-matching items."""
    _check_mn(M, N)
    return plan(M, 2 * N)


# ------------------------------------------------------- exact averages


def _cubic_numerator(M, N):
    # P1(M, N) * N**3
    return 9 * M * N * N - 24 * M * M * N + 16 * M * M * M


def _average_direct(N):
    total = 0
    c = 1
    for M in range(1, N + 1):
        c = c * (N - M + 1) // M
        total += c * _cubic_numerator(M, N)
    return Fraction(total, N**3 * 2**N)


def _average_moments(N):
    # sum_M C(N,M) M^(k falling) = N^(k falling) 2^(N-k)
    two = Fraction(2)
    f1 = N * two ** (N - 1)
    f2 = N * (N - 1) * two ** (N - 2)
    f3 = N * (N - 1) * (N - 2) * two ** (N - 3)
    m1 = f1
    m2 = f2 + f1
    m3 = f3 + 3 * f2 + f1
    total = 9 * m1 * N * N - 24 * m2 * N + 16 * m3
    return total / (N**3 * two**N)


def average_success_one(n, method="auto") -> Fraction:
    """Average of the one-iteration success probability over all oracles.

    Each of the ``2**N`` oracles on ``N = 2**n`` items is weighted equally,
    so match count M carries weight ``C(N, M)``. ``direct`` sums the binomial
    series term by term; ``moments`` uses factorial-moment identities and is
    the only practical route past n = 14.
    """
    if not 1 <= n <= 20:
        raise DomainError(f"n={n} outside 1..20")
    N = 1 << n
    if method == "auto":
        method = "direct" if n <= 14 else "moments"
    if method == "direct":
        return _average_direct(N)
    if method == "moments":
        return _average_moments(N)
    raise ValueError(f"unknown method {method!r}")


def average_classical(n) -> Fraction:
    """Same average for a single uniform classical guess, P = M/N."""
    if not 1 <= n <= 20:
        raise DomainError(f"n={n} outside 1..20")
    N = 1 << n
    total = 0
    c = 1
    for M in range(1, N + 1):
        c = c * (N - M + 1) // M
        total += c * M
    return Fraction(total, N * 2**N)


class Table1Row(NamedTuple):
    n: int
    max_prob: float
    min_prob: float
    avg_prob: Fraction


def table1_row(n) -> Table1Row:
    """Max, min and average one-iteration success over integer M in 1..N."""
    if n < 1:
        raise DomainError("n must be at least 1")
    N = 1 << n
    nums = [_cubic_numerator(M, N) for M in range(1, N + 1)]
    denom = N**3
    return Table1Row(
        n,
        float(Fraction(max(nums), denom)),
        float(Fraction(min(nums), denom)),
        average_success_one(n),
    )
