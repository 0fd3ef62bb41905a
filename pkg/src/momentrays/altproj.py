"""Alternating projection onto the pseudo-moment cone.

The cone is the intersection of the Hankel subspace with the PSD cone.  The
subspace projection runs in chain coordinates (upper-triangle entries): with
the chain constraint rows, the Gram matrix AA^T is block diagonal with
tridiagonal blocks T_q = tridiag(-1, 2, -1), so its Cholesky factor is
bidiagonal per block and one projection costs O(m) plus the entry updates.
The PSD projection clips eigenvalues.  Projection order is fixed: subspace
first, then PSD, with the stopping test on the constraint residual of the
PSD-projected iterate, so the output is always PSD and approximately Hankel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .denselinalg import psd_projection
from .momentcone import ConstraintSystem

__all__ = ["SubspaceProjector", "alternating_projection", "precompute", "project_subspace"]

DEFAULT_T_ALT = 500
DEFAULT_EPS_ALT = 1e-14


@dataclass(frozen=True, eq=False)
class SubspaceProjector:
    """Constraint system plus the bidiagonal Cholesky factor of AA^T.

    ldiag and lsub store the factor of every block back to back, aligned with
    the constraint rows; lsub is zero at each block start.
    """

    system: ConstraintSystem
    ldiag: np.ndarray = field(repr=False)
    lsub: np.ndarray = field(repr=False)


def precompute(system: ConstraintSystem) -> SubspaceProjector:
    """Factor each tridiagonal block of AA^T.

    The standard Cholesky recurrence on tridiag(-1, 2, -1): the first pivot
    is sqrt(2), then each subdiagonal entry is -1/previous pivot and each
    pivot sqrt(2 - subdiagonal^2).
    """
    m = system.m
    ldiag = np.zeros(m)
    lsub = np.zeros(m)
    ptr = system.block_ptr
    for b in range(len(ptr) - 1):
        s, e = ptr[b], ptr[b + 1]
        ldiag[s] = math.sqrt(2.0)
        for r in range(s + 1, e):
            lsub[r] = -1.0 / ldiag[r - 1]
            ldiag[r] = math.sqrt(2.0 - lsub[r] * lsub[r])
    return SubspaceProjector(system=system, ldiag=ldiag, lsub=lsub)


def project_subspace(X: np.ndarray, proj: SubspaceProjector) -> np.ndarray:
    """Project onto the Hankel subspace in chain coordinates.

    Computes X - A^T (AA^T)^{-1} A(X) on the upper-triangle entries and
    mirrors, which equalizes every gamma-group exactly.  With no constraints
    this is the identity.
    """
    system = proj.system
    X = np.array(X, dtype=np.float64)
    if system.m == 0:
        return X
    y = system.apply(X)
    z = _kernels.block_tri_solve(proj.ldiag, proj.lsub, system.block_ptr, y)
    return _kernels.chain_scatter(X, system.i1, system.j1, system.i2, system.j2, z)


def alternating_projection(
    X: np.ndarray,
    proj: SubspaceProjector,
    t_alt: int = DEFAULT_T_ALT,
    eps_alt: float = DEFAULT_EPS_ALT,
) -> np.ndarray:
    """Alternate subspace and PSD projections until the residual is tiny.

    Stops as soon as ||A(X)||_2 < eps_alt after a PSD step, or after t_alt
    rounds.  The returned matrix is PSD either way.
    """
    X = np.asarray(X, dtype=np.float64)
    for _ in range(t_alt):
        X = project_subspace(X, proj)
        X = psd_projection(X)
        if np.linalg.norm(proj.system.apply(X)) < eps_alt:
            break
    return X
