"""Hot inner loops over the amplitude array.

Every kernel has two implementations: a plain-loop version compiled with
numba ``@njit`` and a vectorised numpy version. The active one is chosen at
import time from ``GROVER_SWEEP_BACKEND`` (``numba`` or ``numpy``); numba is
the default whenever it can be imported. Both are always reachable through
:data:`BACKENDS` so tests and benchmarks can compare them directly.

All kernels work in place on contiguous arrays.
"""

import os
from types import SimpleNamespace

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba ships with the environment
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


# ---------------------------------------------------------------- numpy path


def _fwht_numpy(a):
    n = a.shape[0]
    h = 1
    while h < n:
        v = a.reshape(-1, 2, h)
        x = v[:, 0, :].copy()
        y = v[:, 1, :]
        v[:, 0, :] += y
        v[:, 1, :] = x - y
        h *= 2


def _phase_flip_numpy(a, marked):
    a[marked] *= -1.0


def _invert_about_mean_numpy(a):
    mean = a.sum() / a.shape[0]
    np.subtract(2.0 * mean, a, out=a)


def _ancilla_flip_numpy(a, marked):
    # register index i, ancilla bit b -> slot 2*i + b
    lo = 2 * marked
    hi = lo + 1
    tmp = a[lo].copy()
    a[lo] = a[hi]
    a[hi] = tmp


def _cnf_truth_table_numpy(n, literals, offsets):
    size = 1 << n
    idx = np.arange(size, dtype=np.int64)
    bits = [((idx >> k) & 1).astype(bool) for k in range(n)]
    out = np.ones(size, dtype=bool)
    for c in range(offsets.shape[0] - 1):
        clause = np.zeros(size, dtype=bool)
        for lit in literals[offsets[c]:offsets[c + 1]]:
            var = abs(int(lit)) - 1
            clause |= bits[var] if lit > 0 else ~bits[var]
        out &= clause
    return out


# ---------------------------------------------------------------- numba path


@njit(cache=True, nogil=True)
def _fwht_loop(a):
    n = a.shape[0]
    h = 1
    while h < n:
        for i in range(0, n, 2 * h):
            for j in range(i, i + h):
                x = a[j]
                y = a[j + h]
                a[j] = x + y
                a[j + h] = x - y
        h *= 2


@njit(cache=True, nogil=True)
def _phase_flip_loop(a, marked):
    for k in range(marked.shape[0]):
        a[marked[k]] = -a[marked[k]]


@njit(cache=True, nogil=True)
def _invert_about_mean_loop(a):
    # sequential summation: fixed order, reproducible
    total = 0.0 + 0.0j
    for j in range(a.shape[0]):
        total += a[j]
    mean = total / a.shape[0]
    for j in range(a.shape[0]):
        a[j] = 2.0 * mean - a[j]


@njit(cache=True, nogil=True)
def _ancilla_flip_loop(a, marked):
    for k in range(marked.shape[0]):
        lo = 2 * marked[k]
        tmp = a[lo]
        a[lo] = a[lo + 1]
        a[lo + 1] = tmp


@njit(cache=True, nogil=True)
def _cnf_truth_table_loop(n, literals, offsets):
    size = 1 << n
    out = np.empty(size, dtype=np.bool_)
    nclauses = offsets.shape[0] - 1
    for i in range(size):
        ok = True
        for c in range(nclauses):
            sat = False
            for p in range(offsets[c], offsets[c + 1]):
                lit = literals[p]
                if lit > 0:
                    if (i >> (lit - 1)) & 1:
                        sat = True
                        break
                elif not (i >> (-lit - 1)) & 1:
                    sat = True
                    break
            if not sat:
                ok = False
                break
        out[i] = ok
    return out


# ---------------------------------------------------------------- selection

BACKENDS = {
    "numpy": SimpleNamespace(
        name="numpy",
        fwht=_fwht_numpy,
        phase_flip=_phase_flip_numpy,
        invert_about_mean=_invert_about_mean_numpy,
        ancilla_flip=_ancilla_flip_numpy,
        cnf_truth_table=_cnf_truth_table_numpy,
    ),
}
if HAVE_NUMBA:
    BACKENDS["numba"] = SimpleNamespace(
        name="numba",
        fwht=_fwht_loop,
        phase_flip=_phase_flip_loop,
        invert_about_mean=_invert_about_mean_loop,
        ancilla_flip=_ancilla_flip_loop,
        cnf_truth_table=_cnf_truth_table_loop,
    )


def _select():
    wanted = os.environ.get("GROVER_SWEEP_BACKEND", "").strip().lower()
    if wanted in BACKENDS:
        return BACKENDS[wanted]
    if wanted and wanted not in ("numba", "numpy"):
        raise ValueError(f"GROVER_SWEEP_BACKEND must be 'numba' or 'numpy', got {wanted!r}")
    return BACKENDS["numba"] if HAVE_NUMBA else BACKENDS["numpy"]


active = _select()

fwht = active.fwht
phase_flip = active.phase_flip
invert_about_mean = active.invert_about_mean
ancilla_flip = active.ancilla_flip
cnf_truth_table = active.cnf_truth_table
