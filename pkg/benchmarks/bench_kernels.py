"""Time each kernel on the numba and numpy backends.

    python benchmarks/bench_kernels.py [--n 16] [--repeat 5]

Both backends are called on identical inputs; results are compared before
timing so a fast-but-wrong kernel shows up as a mismatch.
"""

import argparse
import time

import numpy as np

from grover_sweep import kernels
from grover_sweep.oracles import random_formula


def best_of(fn, make_args, repeat):
    times = []
    for _ in range(repeat):
        args = make_args()
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    N = 1 << args.n
    v = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    v /= np.linalg.norm(v)
    marked = np.sort(rng.choice(N, size=max(1, N // 16), replace=False)).astype(np.int64)
    anc = np.repeat(v, 2) / np.sqrt(2)
    formula = random_formula(rng, max_vars=args.n, max_clauses=40)
    while formula.variable_count < min(args.n, 20):
        formula = random_formula(rng, max_vars=args.n, max_clauses=40)
    lits, offs = formula.flat()

    cases = {
        "fwht": (lambda b: b.fwht, lambda: (v.copy(),)),
        "phase_flip": (lambda b: b.phase_flip, lambda: (v.copy(), marked)),
        "invert_about_mean": (lambda b: b.invert_about_mean, lambda: (v.copy(),)),
        "ancilla_flip": (lambda b: b.ancilla_flip, lambda: (anc.copy(), marked)),
        "cnf_truth_table": (
            lambda b: b.cnf_truth_table,
            lambda: (formula.variable_count, lits, offs),
        ),
    }

    names = sorted(kernels.BACKENDS)
    for b in kernels.BACKENDS.values():  # JIT warm-up
        for get, make in cases.values():
            get(b)(*make())

    print(f"n={args.n} (N={N}), cnf vars={formula.variable_count} clauses={len(formula.clauses)}")
    print(f"{'kernel':<20}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}  agree")
    for name, (get, make) in cases.items():
        outs = {}
        for bname in names:
            a = make()
            r = get(kernels.BACKENDS[bname])(*a)
            outs[bname] = r if r is not None else a[0]
        ref = outs[names[0]]
        agree = all(np.allclose(o, ref, atol=1e-12) for o in outs.values())
        t = {bname: best_of(get(kernels.BACKENDS[bname]), make, args.repeat) for bname in names}
        speed = t["numpy"] / t["numba"] if "numba" in t else float("nan")
        print(f"{name:<20}" + "".join(f"{t[b] * 1e3:>10.2f}ms" for b in names) + f"{speed:>9.2f}x  {agree}")


if __name__ == "__main__":
    main()
