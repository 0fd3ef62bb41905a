"""Hot loops for the chain-basis constraint operator.

Three kernels cover everything the alternating projection does per iteration
besides the eigendecomposition: gathering constraint values from a symmetric
matrix, solving the blockwise tridiagonal normal equations, and scattering the
correction back into the matrix.  Each kernel exists twice: a numba-compiled
version and a plain numpy/python version with identical semantics.  The
compiled path is used when numba imports cleanly and the environment variable
MOMENTRAYS_NO_NUMBA is unset; the benchmark script compares both.

All index arrays address upper-triangle positions (i <= j).  The scatter
kernel accumulates duplicate positions (consecutive chain rows share a
position) and mirrors every touched entry so the matrix stays exactly
symmetric.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "USING_NUMBA",
    "block_tri_solve",
    "block_tri_solve_numpy",
    "chain_apply",
    "chain_apply_numpy",
    "chain_scatter",
    "chain_scatter_numpy",
]


def chain_apply_numpy(X, i1, j1, i2, j2):
    """Constraint values A(X): one entry difference per chain row."""
    return X[i1, j1] - X[i2, j2]


def chain_scatter_numpy(X, i1, j1, i2, j2, z):
    """In-place update X -= A^T z in chain coordinates, keeping X symmetric.

    Row r subtracts z[r] at its plus-position and adds z[r] at its
    minus-position; duplicates accumulate.
    """
    np.subtract.at(X, (i1, j1), z)
    np.add.at(X, (i2, j2), z)
    # Mirror the upper triangle; only off-diagonal entries need copying.
    lower = np.tril_indices(X.shape[0], -1)
    X[lower] = X.T[lower]
    return X


def block_tri_solve_numpy(ldiag, lsub, block_ptr, y):
    """Solve blkdiag(T_q) z = y given the bidiagonal Cholesky factors.

    ldiag/lsub hold the factor of each block back to back; lsub[start] of a
    block is unused.  Forward then backward substitution per block.
    """
    z = np.empty_like(y)
    for b in range(block_ptr.shape[0] - 1):
        s, e = block_ptr[b], block_ptr[b + 1]
        z[s] = y[s] / ldiag[s]
        for r in range(s + 1, e):
            z[r] = (y[r] - lsub[r] * z[r - 1]) / ldiag[r]
        z[e - 1] = z[e - 1] / ldiag[e - 1]
        for r in range(e - 2, s - 1, -1):
            z[r] = (z[r] - lsub[r + 1] * z[r + 1]) / ldiag[r]
    return z


def _chain_apply_impl(X, i1, j1, i2, j2):
    m = i1.shape[0]
    y = np.empty(m, dtype=X.dtype)
    for r in range(m):
        y[r] = X[i1[r], j1[r]] - X[i2[r], j2[r]]
    return y


def _chain_scatter_impl(X, i1, j1, i2, j2, z):
    m = i1.shape[0]
    for r in range(m):
        a, b = i1[r], j1[r]
        X[a, b] -= z[r]
        if a != b:
            X[b, a] = X[a, b]
        a, b = i2[r], j2[r]
        X[a, b] += z[r]
        if a != b:
            X[b, a] = X[a, b]
    return X


def _block_tri_solve_impl(ldiag, lsub, block_ptr, y):
    z = np.empty_like(y)
    for b in range(block_ptr.shape[0] - 1):
        s, e = block_ptr[b], block_ptr[b + 1]
        z[s] = y[s] / ldiag[s]
        for r in range(s + 1, e):
            z[r] = (y[r] - lsub[r] * z[r - 1]) / ldiag[r]
        z[e - 1] = z[e - 1] / ldiag[e - 1]
        for r in range(e - 2, s - 1, -1):
            z[r] = (z[r] - lsub[r + 1] * z[r + 1]) / ldiag[r]
    return z


USING_NUMBA = False
chain_apply = chain_apply_numpy
chain_scatter = chain_scatter_numpy
block_tri_solve = block_tri_solve_numpy

if not os.environ.get("MOMENTRAYS_NO_NUMBA"):
    try:
        from numba import njit

        chain_apply_numba = njit(cache=True)(_chain_apply_impl)
        chain_scatter_numba = njit(cache=True)(_chain_scatter_impl)
        block_tri_solve_numba = njit(cache=True)(_block_tri_solve_impl)
        USING_NUMBA = True
        chain_apply = chain_apply_numba
        chain_scatter = chain_scatter_numba
        block_tri_solve = block_tri_solve_numba
    except ImportError:
        pass
