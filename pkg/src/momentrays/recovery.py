"""Atom/weight extraction from rank-one ray steps and recovery-error metrics.

A rank-one step t * M with M = h h^T trace-one restores one weighted atom:
the monomial vector is h / h_1 (first entry is the constant monomial), the
atom is read off the degree-one entries, and the weight is t * h_1^2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .denselinalg import sym_eig
from .momentcone import Instance
from .multiindex import MultiIndexTable
from .raydecomp import RayStep

__all__ = [
    "RecoveredAtoms",
    "best_matching_atom_error",
    "extract_atom",
    "recover_atoms",
    "recovered_to_dict",
    "recovery_errors",
]

logger = logging.getLogger(__name__)

# lam2/lam1 above this means the step cannot be treated as one atom
RANK_ONE_RATIO = 1e-6
# |h_1| below this puts the atom at projective infinity; cannot dehomogenize
H1_MIN = 1e-8
# sorted weights closer than this are matched by atom distance, not by order
WEIGHT_TIE = 1e-9


@dataclass(frozen=True)
class RecoveredAtoms:
    """Weights w^2 and atoms z pulled from a decomposition, or a failure tag."""

    weights: np.ndarray
    atoms: np.ndarray
    success: bool
    failure_reason: str  # none | wrong-count | high-rank-step | degenerate-step

    def __post_init__(self):
        if self.success and self.failure_reason != "none":
            raise ValueError("successful recovery must carry reason 'none'")


def _principal_pair(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and the top eigenvector scaled to M ~ h h^T."""
    values, vectors = sym_eig(M)
    if values[0] <= 0.0:
        raise ValueError("step matrix is not positive semidefinite")
    h = vectors[:, 0] * np.sqrt(values[0])
    return values, h


def extract_atom(step: RayStep, table: MultiIndexTable) -> tuple[float, np.ndarray]:
    """Recover (w^2, z) from one rank-one step.

    Raises ValueError when the step is not numerically rank one at the
    RANK_ONE_RATIO rule or when the constant coordinate of the eigenvector is
    below H1_MIN.
    """
    values, h = _principal_pair(step.M)
    if values.size > 1 and values[1] > RANK_ONE_RATIO * values[0]:
        raise ValueError(
            f"step is not numerically rank one: lam2/lam1 = {values[1] / values[0]:.3e}"
        )
    h1 = h[0]
    if abs(h1) < H1_MIN:
        raise ValueError(f"constant coordinate {h1:.3e} too small to dehomogenize")
    # graded order puts the constant at 0 and the coordinates at 1..n
    z = h[1 : 1 + table.n] / h1
    w2 = step.t * h1 * h1
    return float(w2), z


def recover_atoms(
    steps: tuple[RayStep, ...],
    table: MultiIndexTable,
    expected_count: int,
) -> RecoveredAtoms:
    """Apply extract_atom to every step, with the unsuccessful-run rule.

    A run fails when the step count differs from the planted atom count, when
    any step is not numerically rank one, or when any step cannot be
    dehomogenized.  Failed runs carry empty arrays and a reason tag.
    """
    n = table.n

    def failed(reason: str) -> RecoveredAtoms:
        logger.info("recovery failed: %s", reason)
        return RecoveredAtoms(
            weights=np.empty(0),
            atoms=np.empty((0, n)),
            success=False,
            failure_reason=reason,
        )

    if len(steps) != expected_count:
        return failed("wrong-count")
    weights, atoms = [], []
    for step in steps:
        values, h = _principal_pair(step.M)
        if values.size > 1 and values[1] > RANK_ONE_RATIO * values[0]:
            return failed("high-rank-step")
        if abs(h[0]) < H1_MIN:
            return failed("degenerate-step")
        w2, z = extract_atom(step, table)
        weights.append(w2)
        atoms.append(z)
    return RecoveredAtoms(
        weights=np.asarray(weights),
        atoms=np.asarray(atoms).reshape(expected_count, n),
        success=True,
        failure_reason="none",
    )


def _tie_blocks(a: np.ndarray, b: np.ndarray) -> list[tuple[int, int]]:
    """Maximal index runs where consecutive sorted weights tie in either list."""
    blocks, start = [], 0
    for i in range(1, a.size):
        if a[i] - a[i - 1] > WEIGHT_TIE and b[i] - b[i - 1] > WEIGHT_TIE:
            blocks.append((start, i))
            start = i
    blocks.append((start, a.size))
    return blocks


def recovery_errors(truth: Instance, rec: RecoveredAtoms) -> tuple[float, float]:
    """Relative weight/atom errors after sorting both sides by weight.

    Failed recoveries score (1, 1).  Within runs of tied weights the pairing
    is chosen to minimize the summed atom distance, since sorting is
    ambiguous there.
    """
    if not rec.success:
        return 1.0, 1.0
    if truth.s == 0:
        return 0.0, 0.0
    order_t = np.argsort(truth.weights, kind="stable")
    order_r = np.argsort(rec.weights, kind="stable")
    c = truth.weights[order_t]
    z = truth.atoms[order_t]
    cp = rec.weights[order_r].copy()
    zp = rec.atoms[order_r].copy()
    for lo, hi in _tie_blocks(c, cp):
        if hi - lo < 2:
            continue
        cost = np.linalg.norm(z[lo:hi, None, :] - zp[None, lo:hi, :], axis=2)
        _, cols = linear_sum_assignment(cost)
        cp[lo:hi] = cp[lo + cols]
        zp[lo:hi] = zp[lo + cols]
    s = c.size
    e_w = float(np.sum(np.abs(cp - c) / (1.0 + c)) / s)
    e_z = float(
        np.sum(np.linalg.norm(zp - z, axis=1) / (1.0 + np.linalg.norm(z, axis=1))) / s
    )
    return e_w, e_z


def best_matching_atom_error(truth: Instance, rec: RecoveredAtoms) -> float:
    """Diagnostic e_z under the best atom permutation, ignoring weights.

    Separates genuine recovery failure from sort-order mismatch when planted
    weights nearly coincide.  Not part of the reported metric.
    """
    if not rec.success:
        return 1.0
    denom = 1.0 + np.linalg.norm(truth.atoms, axis=1)
    cost = (
        np.linalg.norm(truth.atoms[:, None, :] - rec.atoms[None, :, :], axis=2)
        / denom[:, None]
    )
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum() / truth.s)


def recovered_to_dict(rec: RecoveredAtoms, errors: tuple[float, float] | None = None) -> dict:
    data = {
        "weights": rec.weights.tolist(),
        "atoms": rec.atoms.tolist(),
        "success": rec.success,
        "failure_reason": rec.failure_reason,
    }
    if errors is not None:
        data["e_w"], data["e_z"] = float(errors[0]), float(errors[1])
    return data
