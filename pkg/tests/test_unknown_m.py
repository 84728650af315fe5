import math
import statistics

import numpy as np
import pytest

from grover_sweep import statevector as sv
from grover_sweep import unknown_m as um
from grover_sweep.errors import DivergenceError, DomainError, OutOfValidityError


def problem(n, marked):
    return sv.SearchProblem(n, np.asarray(marked, dtype=np.int64))


def test_config_validation():
    um.BbhtConfig(4 / 3)
    for lam in (1.0, 1.4):
        with pytest.raises(DomainError):
            um.BbhtConfig(lam)
    with pytest.raises(DomainError):
        um.BbhtConfig(max_oracle_calls=0)


def test_all_marked_succeeds_immediately():
    p = problem(5, range(32))
    out = um.bbht_search(p, um.BbhtConfig(seed=3))
    assert out.found and out.oracle_calls == 1 and out.rounds == 1 and out.grover_iterations == 0


def test_no_match_hits_cutoff():
    out = um.bbht_search(problem(6, []), um.BbhtConfig(max_oracle_calls=5000, seed=1))
    assert out.found_index is None
    assert out.oracle_calls == 5000
    assert out.oracle_calls >= out.rounds


def test_determinism():
    p = problem(10, [17, 400])
    cfg = um.BbhtConfig(seed=42)
    assert um.bbht_search(p, cfg) == um.bbht_search(p, cfg)
    assert um.run_trials(p, cfg, 20) == um.run_trials(p, cfg, 20)


def test_found_index_satisfies_oracle(rng):
    for seed in range(200):
        n = int(rng.integers(2, 12))
        M = int(rng.integers(1, (1 << n) + 1))
        p = problem(n, rng.choice(1 << n, size=M, replace=False))
        out = um.bbht_search(p, um.BbhtConfig(seed=seed))
        assert out.found and p(out.found_index) == 1
        assert out.oracle_calls == out.grover_iterations + out.rounds


def test_unmarked_rank_mapping():
    p = problem(4, [0, 5, 6, 15])
    gaps = um._TwoClassSampler(p)._gaps
    picks = [k + int(np.searchsorted(gaps, k, side="right")) for k in range(12)]
    assert picks == [i for i in range(16) if i not in (0, 5, 6, 15)]


def test_two_class_sampler_distribution():
    p = problem(6, [3, 9, 40])
    sampler = um._TwoClassSampler(p)
    r = np.random.default_rng(5)
    for j in (0, 1, 2):
        draws = np.array([sampler(j, r) for _ in range(20000)])
        hit = np.isin(draws, p.marked).mean()
        expected = math.sin((2 * j + 1) * sampler.theta) ** 2
        assert abs(hit - expected) < 4 * math.sqrt(expected * (1 - expected) / 20000) + 1e-9


def test_statevector_backend_agrees_in_distribution():
    p = problem(8, [7, 100, 201, 250])
    cfg = um.BbhtConfig(seed=9)
    a = um.run_trials(p, cfg, 1500, backend="analytic")
    b = um.run_trials(p, cfg, 1500, backend="statevector")
    ma = statistics.fmean(o.oracle_calls for o in a)
    mb = statistics.fmean(o.oracle_calls for o in b)
    se = math.hypot(statistics.stdev(o.oracle_calls for o in a), statistics.stdev(o.oracle_calls for o in b)) / math.sqrt(1500)
    assert abs(ma - mb) < 4 * se
    assert all(o.found for o in a + b)


def test_statevector_backend_size_limit():
    with pytest.raises(DomainError):
        um.bbht_search(problem(15, [0]), backend="statevector")


def test_single_match_cost_n10():
    p = problem(10, [123])
    outs = um.run_trials(p, um.BbhtConfig(seed=1), 1000)
    assert all(o.found for o in outs)
    assert statistics.fmean(o.oracle_calls for o in outs) <= 4 * math.sqrt(1024) * 1.5


def test_termination_within_100_sqrt_n():
    N = 1 << 12
    for M in (1, 7, 300, 3000):
        p = problem(12, np.arange(M))
        cfg = um.BbhtConfig(max_oracle_calls=int(100 * math.sqrt(N)), seed=M)
        assert all(o.found for o in um.run_trials(p, cfg, 300))


def test_cost_model_small_ratios():
    for n in (8, 11, 14):
        N = 1 << n
        for M in (1, N // 64, N // 8):
            M = max(M, 1)
            outs = um.run_trials(problem(n, np.arange(M)), um.BbhtConfig(seed=n), 10_000)
            calls = [o.oracle_calls for o in outs]
            se = statistics.stdev(calls) / math.sqrt(len(calls))
            assert statistics.fmean(calls) <= 8 * um.m_lower_bound(M, N) + 2 * se


def _mean_cost(n, ratio, trials=10_000, seed=0):
    N = 1 << n
    M = max(1, round(ratio * N))
    outs = um.run_trials(problem(n, np.arange(M)), um.BbhtConfig(seed=seed), trials)
    return statistics.fmean(o.oracle_calls for o in outs), M, N


def test_easier_problems_cost_less():
    assert _mean_cost(10, 0.25)[0] < _mean_cost(10, 0.05)[0]


def test_model_error_grows_past_three_quarters():
    errors = []
    for ratio in (0.80, 0.85, 0.90, 0.95):
        mean, M, N = _mean_cost(10, ratio)
        errors.append(abs(8 * um.m_lower_bound(M, N) - mean))
    assert errors == sorted(errors) and len(set(errors)) == 4


def test_high_ratio_regime():
    # M/N = 0.9: the loop still finds a match (mostly at j = 0) but the m-based
    # model overshoots what is actually spent
    N = 256
    M = round(0.9 * N)
    p = problem(8, np.arange(M))
    outs = um.run_trials(p, um.BbhtConfig(seed=2), 10_000)
    assert all(o.found for o in outs)
    mean = statistics.fmean(o.oracle_calls for o in outs)
    assert mean < 8 * um.m_lower_bound(M, N)


def test_m_lower_bound():
    assert um.m_lower_bound(8, 16) == pytest.approx(1.0, abs=1e-15)
    assert um.m_lower_bound(4, 16) == pytest.approx(2 / math.sqrt(3), abs=1e-15)
    vals = [um.m_lower_bound(round(r * 1000), 1000) for r in (0.8, 0.9, 0.95)]
    assert vals[0] < vals[1] < vals[2]
    with pytest.raises(DivergenceError):
        um.m_lower_bound(16, 16)


def test_expected_calls_estimate():
    N = 1 << 16
    assert um.expected_calls_estimate(1, N) == pytest.approx(4 * math.sqrt(N), rel=0.05)
    assert math.isfinite(um.expected_calls_estimate(3 * 256, 1024))
    with pytest.raises(OutOfValidityError):
        um.expected_calls_estimate(3 * 256 + 1, 1024)


def test_classical_sampling():
    assert um.classical_sampling_search(problem(4, range(16)), 0).oracle_calls == 1
    out = um.classical_sampling_search(problem(4, []), 0, max_calls=50)
    assert out.found_index is None and out.oracle_calls == 50
    p = problem(10, np.arange(round(0.9 * 1024)))
    M = p.match_count
    calls = [um.classical_sampling_search(p, um.trial_rng(0, t)).oracle_calls for t in range(10_000)]
    assert statistics.fmean(calls) == pytest.approx(1024 / M, abs=0.05)


def test_figure5_curves():
    rows = um.figure5_curves(100)
    half = rows[49]
    assert half.ratio == 0.5
    assert half.q_real == pytest.approx(1.0, abs=1e-12)
    assert half.m_real == pytest.approx(1.0, abs=1e-12)
    assert math.isinf(rows[-1].m_real) and rows[-1].q_real == pytest.approx(0.5)
    high = [r for r in rows if r.ratio >= 0.9 and not math.isinf(r.m_real)]
    assert all(r.m_real > r.q_real for r in high)
    small = um.figure5_curves(10_000)[0]
    assert small.q_real == pytest.approx(math.pi / 4 * math.sqrt(1 / small.ratio), rel=1e-3)
    with pytest.raises(DomainError):
        um.figure5_curves(1)


def exact_expected_calls(M, N, lam=um.DEFAULT_LAMBDA, tol=1e-15):
    """Expected oracle calls by summing over the deterministic round schedule.

    Round r uses ceiling c_r = ceil(m_r); j is uniform on 0..c_r-1, so the
    round costs (c_r - 1)/2 + 1 calls on average and fails with probability
    mean_j cos^2((2j+1) theta).
    """
    th = math.asin(math.sqrt(M / N))
    m, reach, total = 1.0, 1.0, 0.0
    while reach > tol:
        c = math.ceil(m)
        total += reach * ((c - 1) / 2 + 1)
        reach *= sum(math.cos((2 * j + 1) * th) ** 2 for j in range(c)) / c
        m = min(lam * m, math.sqrt(N))
    return total


@pytest.mark.parametrize("n,M", [(10, 1), (10, 64), (12, 1), (8, 3)])
def test_monte_carlo_matches_exact_expectation(n, M):
    N = 1 << n
    outs = um.run_trials(problem(n, np.arange(M)), um.BbhtConfig(seed=M + n), 10_000)
    calls = [o.oracle_calls for o in outs]
    se = statistics.stdev(calls) / math.sqrt(len(calls))
    assert abs(statistics.fmean(calls) - exact_expected_calls(M, N)) < 4 * se
