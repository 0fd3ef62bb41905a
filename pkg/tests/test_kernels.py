"""Parity tests between the compiled and plain kernel implementations."""

import subprocess
import sys

import numpy as np
import pytest

from momentrays import _kernels
from momentrays.altproj import precompute
from momentrays.momentcone import hankel_constraints


def make_case(n=3, d=2, seed=13):
    system = hankel_constraints(n, d)
    proj = precompute(system)
    rng = np.random.Generator(np.random.Philox(key=seed))
    X = rng.standard_normal((system.N, system.N))
    X = 0.5 * (X + X.T)
    return system, proj, X, rng


def test_apply_paths_agree():
    system, _, X, _ = make_case()
    a = _kernels.chain_apply_numpy(X, system.i1, system.j1, system.i2, system.j2)
    b = _kernels._chain_apply_impl(X, system.i1, system.j1, system.i2, system.j2)
    np.testing.assert_array_equal(a, b)
    if _kernels.USING_NUMBA:
        c = _kernels.chain_apply_numba(X, system.i1, system.j1, system.i2, system.j2)
        np.testing.assert_array_equal(a, c)


def test_scatter_paths_agree():
    system, _, X, rng = make_case()
    z = rng.standard_normal(system.m)
    a = _kernels.chain_scatter_numpy(X.copy(), system.i1, system.j1, system.i2, system.j2, z)
    b = _kernels._chain_scatter_impl(X.copy(), system.i1, system.j1, system.i2, system.j2, z)
    np.testing.assert_array_equal(a, b)
    assert np.array_equal(a, a.T)
    if _kernels.USING_NUMBA:
        c = _kernels.chain_scatter_numba(X.copy(), system.i1, system.j1, system.i2, system.j2, z)
        np.testing.assert_array_equal(a, c)


def test_solve_paths_agree():
    system, proj, _, rng = make_case()
    y = rng.standard_normal(system.m)
    a = _kernels.block_tri_solve_numpy(proj.ldiag, proj.lsub, system.block_ptr, y)
    b = _kernels._block_tri_solve_impl(proj.ldiag, proj.lsub, system.block_ptr, y)
    np.testing.assert_array_equal(a, b)
    if _kernels.USING_NUMBA:
        c = _kernels.block_tri_solve_numba(proj.ldiag, proj.lsub, system.block_ptr, y)
        np.testing.assert_array_equal(a, c)
    # Solve correctness against the dense block system.
    T = np.zeros((system.m, system.m))
    ptr = system.block_ptr
    for blk in range(len(ptr) - 1):
        s, e = ptr[blk], ptr[blk + 1]
        T[s:e, s:e] = 2.0 * np.eye(e - s) - np.eye(e - s, k=1) - np.eye(e - s, k=-1)
    np.testing.assert_allclose(T @ a, y, atol=1e-12)


def test_env_flag_disables_numba():
    code = (
        "import momentrays._kernels as k; "
        "print(k.USING_NUMBA, k.chain_apply is k.chain_apply_numpy)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"MOMENTRAYS_NO_NUMBA": "1", "PATH": "/usr/bin:/bin"},
        check=True,
    )
    assert out.stdout.split() == ["False", "True"]


@pytest.mark.skipif(not _kernels.USING_NUMBA, reason="numba unavailable")
def test_default_path_is_compiled():
    assert _kernels.chain_apply is _kernels.chain_apply_numba
