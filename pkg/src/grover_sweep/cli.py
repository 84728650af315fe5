"""Command-line entry point: CSV data for the tables/figures and end-to-end runs.

Exit codes: 0 success, 2 usage or capacity error, 3 no solution to search for.
"""

import argparse
import csv
import math
import os
import statistics
import sys
from contextlib import contextmanager
from pathlib import Path

from . import analytic
from . import statevector as sv
from . import unknown_m
from .errors import DimacsParseError, SizeError
from .oracles import cnf_oracle, explicit_oracle, parse_dimacs

EXIT_USAGE = 2
EXIT_NO_SOLUTION = 3

SEED_ENV = "GROVER_SWEEP_SEED"


class CliError(Exception):
    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.code = code


def fmt(x) -> str:
    """Shortest decimal that round-trips the double exactly (at most 17 digits)."""
    return repr(float(x))


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


# ------------------------------------------------------------ table/figures


def table1_rows(n_min=2, n_max=6):
    if not 2 <= n_min <= n_max <= 20:
        raise CliError(f"need 2 <= n-min <= n-max <= 20, got {n_min}..{n_max}")
    header = ["n", "max_prob", "min_prob", "avg_prob", "avg_prob_exact"]
    rows = []
    for n in range(n_min, n_max + 1):
        r = analytic.table1_row(n)
        rows.append([n, fmt(r.max_prob), fmt(r.min_prob), fmt(r.avg_prob), str(r.avg_prob)])
    return header, rows


def _ratios(grid):
    if grid < 2:
        raise CliError(f"--grid must be >= 2, got {grid}")
    return [(k, grid) for k in range(1, grid + 1)]


def fig3_rows(grid=1000):
    rows = [
        [fmt(k / g), fmt(analytic.success_prob_one(k, g)), fmt(analytic.classical_guess_prob(k, g))]
        for k, g in _ratios(grid)
    ]
    return ["ratio", "p_one", "p_classical"], rows


def fig4_rows(grid=1000):
    rows = []
    for k, g in _ratios(grid):
        q = analytic.optimal_iterations(k, g)
        rows.append([fmt(k / g), q, fmt(analytic.success_prob(q, k, g))])
    return ["ratio", "q_opt", "p_at_q_opt"], rows


def fig5_rows(grid=1000, n=10):
    """Divergent or oversized m values are replaced by sqrt(N), the loop's own ceiling."""
    _ratios(grid)
    cap = math.sqrt(2**n)
    rows = []
    for r in unknown_m.figure5_curves(grid):
        capped = r.m_real > cap
        m = cap if capped else r.m_real
        rows.append(
            [fmt(r.ratio), fmt(r.q_real), fmt(m), r.q_floor, analytic.guarded_floor(m), int(capped)]
        )
    return ["ratio", "q_real", "m_real", "q_floor", "m_floor", "m_capped"], rows


# ------------------------------------------------------------ oracle input


def load_problem(source: str):
    """``source`` is a DIMACS path, or ``<n>:<i,j,...>`` listing marked indices."""
    path = Path(source)
    if path.is_file():
        try:
            with open(path) as fh:
                formula = parse_dimacs(fh)
        except DimacsParseError as exc:
            raise CliError(f"{path}: {exc}") from None
        try:
            return cnf_oracle(formula)
        except SizeError as exc:
            raise CliError(str(exc)) from None
    n_text, sep, idx_text = source.partition(":")
    if not sep:
        raise CliError(f"--oracle {source!r} is neither a file nor '<n>:<indices>'")
    try:
        n = int(n_text)
        indices = [int(t) for t in idx_text.split(",") if t.strip()]
        return explicit_oracle(n, indices).problem()
    except (ValueError, SizeError) as exc:
        raise CliError(f"bad explicit oracle {source!r}: {exc}") from None


# ------------------------------------------------------------ run / bbht


def run_report(problem, mode="simulate", iterations=None, seed=0):
    M, N = problem.match_count, problem.size
    if M == 0:
        raise CliError("oracle has no marked items (M = 0); nothing to search for", EXIT_NO_SOLUTION)
    q = analytic.optimal_iterations(M, N) if iterations is None else iterations
    if q < 0:
        raise CliError("--iterations must be non-negative")
    report = {
        "n": problem.n,
        "N": N,
        "M": M,
        "theta": fmt(analytic.theta(M, N)),
        "q_opt": analytic.optimal_iterations(M, N),
        "iterations": q,
        "predicted_p": fmt(analytic.success_prob(q, M, N)),
    }
    if mode == "simulate":
        state = sv.grover_run(problem, q)
        report["simulated_p"] = fmt(sv.success_probability(state, problem))
        sample = sv.sample_measurement(state, seed)
    elif mode == "analytic":
        sample = unknown_m._TwoClassSampler(problem)(q, sv.np.random.default_rng(seed))
    else:
        raise CliError(f"unknown mode {mode!r}")
    report["sample"] = sample
    report["sample_f"] = problem(sample)
    return report


def bbht_rows(problem, trials, lambda_, seed, max_calls, backend="analytic"):
    if trials < 1:
        raise CliError("--trials must be >= 1")
    config = unknown_m.BbhtConfig(lambda_, max_calls, seed)
    outcomes = unknown_m.run_trials(problem, config, trials, backend)
    rows = [
        [t, "" if o.found_index is None else o.found_index, o.oracle_calls, o.rounds]
        for t, o in enumerate(outcomes)
    ]
    calls = [o.oracle_calls for o in outcomes]
    M, N = problem.match_count, problem.size
    try:
        model = fmt(unknown_m.expected_calls_estimate(M, N))
    except Exception:
        model = ""
    rows += [
        ["mean", "", fmt(statistics.fmean(calls)), ""],
        ["stddev", "", fmt(statistics.pstdev(calls)), ""],
        ["success_rate", "", fmt(sum(o.found for o in outcomes) / trials), ""],
        ["model_8mG", "", model, ""],
    ]
    return ["trial", "found_index", "oracle_calls", "rounds"], rows


# ------------------------------------------------------------ argparse


def _default_seed():
    try:
        return int(os.environ.get(SEED_ENV, "0"))
    except ValueError:
        return 0


def build_parser():
    p = argparse.ArgumentParser(prog="grover-sweep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table1", help="first-iteration max/min/avg success per n")
    t.add_argument("--n-min", type=int, default=2)
    t.add_argument("--n-max", type=int, default=6)

    for name, help_ in (
        ("fig3", "one-iteration vs classical success over M/N"),
        ("fig4", "success at the optimal iteration count over M/N"),
        ("fig5", "known-M and unknown-M iteration curves over M/N"),
    ):
        f = sub.add_parser(name, help=help_)
        f.add_argument("--grid", type=int, default=1000)
        if name == "fig5":
            f.add_argument("--n", type=int, default=10, help="log2 N; sqrt(N) caps divergent m")

    r = sub.add_parser("run", help="single Grover run on an oracle")
    r.add_argument("--oracle", required=True)
    r.add_argument("--mode", choices=("simulate", "analytic"), default="simulate")
    r.add_argument("--iterations", type=int, default=None)

    b = sub.add_parser("bbht", help="Monte Carlo of the unknown-M loop")
    b.add_argument("--oracle", required=True)
    b.add_argument("--trials", type=int, default=1000)
    b.add_argument("--lambda", dest="lambda_", type=float, default=unknown_m.DEFAULT_LAMBDA)
    b.add_argument("--max-calls", type=int, default=unknown_m.DEFAULT_MAX_CALLS)
    b.add_argument("--mode", choices=("analytic", "simulate"), default="analytic")

    for s in sub.choices.values():
        s.add_argument("--out", default=None)
    for s in (r, b):
        s.add_argument("--seed", type=int, default=None)
    return p


def _emit(out, header, rows):
    with _output(out) as fh:
        w = _writer(fh)
        w.writerow(header)
        w.writerows(rows)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = _default_seed()
    try:
        if args.command == "table1":
            _emit(args.out, *table1_rows(args.n_min, args.n_max))
        elif args.command == "fig3":
            _emit(args.out, *fig3_rows(args.grid))
        elif args.command == "fig4":
            _emit(args.out, *fig4_rows(args.grid))
        elif args.command == "fig5":
            _emit(args.out, *fig5_rows(args.grid, args.n))
        elif args.command == "run":
            problem = load_problem(args.oracle)
            report = run_report(problem, args.mode, args.iterations, seed)
            with _output(args.out) as fh:
                for key, value in report.items():
                    fh.write(f"{key}: {value}\n")
        elif args.command == "bbht":
            problem = load_problem(args.oracle)
            if args.mode == "simulate" and problem.n > unknown_m.STATEVECTOR_MAX_QUBITS:
                raise CliError(f"simulate mode limited to n <= {unknown_m.STATEVECTOR_MAX_QUBITS}")
            if not 1.0 < args.lambda_ <= 4.0 / 3.0:
                raise CliError("--lambda must lie in (1, 4/3]")
            if args.max_calls < 1:
                raise CliError("--max-calls must be >= 1")
            if problem.match_count == 0:
                print("warning: oracle has no marked items; every trial will hit the cutoff", file=sys.stderr)
            backend = "statevector" if args.mode == "simulate" else "analytic"
            _emit(args.out, *bbht_rows(problem, args.trials, args.lambda_, seed, args.max_calls, backend))
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
