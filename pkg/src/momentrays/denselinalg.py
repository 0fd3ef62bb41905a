"""Dense symmetric linear algebra used by the decomposition loop.

Matrices here are small (N <= a few hundred), so everything is dense and
O(N^3) via LAPACK.  The one piece of algorithmic policy lives in
independent_columns: rank detection by column-pivoted QR with the relative
acceptance rule d_i > eps * d_1 on the magnitudes of R's diagonal.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg

__all__ = ["independent_columns", "numerical_rank", "psd_projection", "sym_eig"]

logger = logging.getLogger(__name__)


def sym_eig(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix, eigenvalues descending.

    The input is symmetrized as (X + X^T)/2 before factorization; non-finite
    entries are rejected.  Returns (values, vectors) with orthonormal columns
    so that X ~= vectors @ diag(values) @ vectors.T.
    """
    X = np.asarray(X, dtype=np.float64)
    if not np.all(np.isfinite(X)):
        raise ValueError("matrix has non-finite entries")
    values, vectors = np.linalg.eigh(0.5 * (X + X.T))
    return values[::-1], vectors[:, ::-1]


def numerical_rank(values: np.ndarray, eps: float) -> int:
    """Count of eigenvalues strictly above the absolute threshold eps."""
    return int(np.sum(np.asarray(values) > eps))


def psd_projection(X: np.ndarray) -> np.ndarray:
    """Nearest positive semidefinite matrix in Frobenius norm.

    Eigenvalues are clipped at zero and the matrix rebuilt; the output is
    symmetrized so the operation is idempotent up to rounding.
    """
    values, vectors = sym_eig(X)
    clipped = np.clip(values, 0.0, None)
    Y = (vectors * clipped) @ vectors.T
    return 0.5 * (Y + Y.T)


def independent_columns(A: np.ndarray, eps: float) -> list[int]:
    """Indices of a numerically independent column subset of A.

    Column-pivoted QR orders columns by decreasing pivot size; with
    d = |diag(R)|, the first r pivot columns are kept where r is the largest
    index with d_r > eps * d_1.  A zero matrix yields the empty list.  The
    returned indices are 0-based and in pivot order.
    """
    A = np.asarray(A, dtype=np.float64)
    if A.size == 0:
        return []
    _, R, piv = scipy.linalg.qr(A, mode="economic", pivoting=True)
    d = np.abs(np.diag(R))
    if d.size == 0 or d[0] == 0.0:
        return []
    above = np.nonzero(d > eps * d[0])[0]
    if above.size == 0:
        return []
    if np.any(np.diff(d) > 0):
        logger.debug("pivot magnitudes not monotone: %s", d)
    r = int(above[-1]) + 1
    return [int(c) for c in piv[:r]]
