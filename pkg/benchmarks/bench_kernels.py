"""Benchmark the compiled projection kernels against the pure-numpy fallback.

Times chain_apply, chain_scatter, and block_tri_solve on constraint systems
of increasing size and prints one table row per (kernel, system) pair.  Both
implementations are imported directly, so run this without MOMENTRAYS_NO_NUMBA
set; when numba is missing only the numpy column is reported.

Usage: python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from momentrays import _kernels
from momentrays.altproj import precompute
from momentrays.momentcone import hankel_constraints

SIZES = [(3, 2), (4, 3), (5, 4), (6, 4)]
TARGET_SECONDS = 0.05
REPEATS = 5
SEED = 20260816


def _time(fn, args):
    """Min-of-repeats seconds per call, with loop count sized to the target."""
    fn(*args)
    t0 = time.perf_counter()
    fn(*args)
    once = time.perf_counter() - t0
    loops = max(1, int(TARGET_SECONDS / max(once, 1e-9)))
    best = np.inf
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        for _ in range(loops):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / loops)
    return best


def _inputs(system, rng):
    X = rng.standard_normal((system.N, system.N))
    X = 0.5 * (X + X.T)
    z = rng.standard_normal(system.m)
    proj = precompute(system)
    return X, z, proj


def _check_parity(system, X, z, proj):
    """Both paths must agree before their timings mean anything."""
    pairs = [
        ("chain_apply", (X, system.i1, system.j1, system.i2, system.j2)),
        ("block_tri_solve", (proj.ldiag, proj.lsub, system.block_ptr, z)),
    ]
    for name, args in pairs:
        a = getattr(_kernels, name + "_numpy")(*args)
        b = getattr(_kernels, name + "_numba")(*args)
        assert np.allclose(a, b, rtol=0.0, atol=1e-13), name
    Xa, Xb = X.copy(), X.copy()
    scatter_args = (system.i1, system.j1, system.i2, system.j2, z)
    _kernels.chain_scatter_numpy(Xa, *scatter_args)
    _kernels.chain_scatter_numba(Xb, *scatter_args)
    assert np.allclose(Xa, Xb, rtol=0.0, atol=1e-13), "chain_scatter"


def main():
    rng = np.random.default_rng(SEED)
    have_numba = getattr(_kernels, "chain_apply_numba", None) is not None
    print(f"numba path available: {have_numba}")
    header = f"{'kernel':<16} {'system':<24} {'numpy':>12} {'numba':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n, d in SIZES:
        system = hankel_constraints(n, d)
        X, z, proj = _inputs(system, rng)
        if have_numba:
            _check_parity(system, X, z, proj)
        cases = [
            ("chain_apply", (X, system.i1, system.j1, system.i2, system.j2)),
            ("chain_scatter", (X, system.i1, system.j1, system.i2, system.j2, z)),
            ("block_tri_solve", (proj.ldiag, proj.lsub, system.block_ptr, z)),
        ]
        label = f"n={n} d={d} N={system.N} m={system.m}"
        for name, args in cases:
            t_np = _time(getattr(_kernels, name + "_numpy"), args)
            if have_numba:
                t_nb = _time(getattr(_kernels, name + "_numba"), args)
                ratio = f"{t_np / t_nb:7.1f}x"
                nb_col = f"{t_nb * 1e6:10.1f}us"
            else:
                ratio, nb_col = f"{'-':>8}", f"{'-':>12}"
            print(f"{name:<16} {label:<24} {t_np * 1e6:10.1f}us {nb_col} {ratio}")


if __name__ == "__main__":
    main()
