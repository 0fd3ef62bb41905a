"""Moment matrices, the Hankel constraint system, and planted instances.

A matrix X indexed by the multi-indices of degree <= d is a pseudo-moment
matrix when it is positive semidefinite and Hankel: every entry X[alpha, beta]
depends only on the componentwise sum alpha + beta.  Atomic members are sums

    X = sum_i  c_i * m_d(z_i) m_d(z_i)^T,   c_i >= 0,

where m_d(z) is the monomial vector of z over the degree <= d table.

The Hankel structure is encoded as a chain of entry-difference constraints:
the upper-triangle positions are grouped by their exponent sum gamma, pairs
within a group are ordered by the graded lex position of their first index,
and each constraint row equates one pair with its predecessor (coefficients
+1 and -1 on single upper-triangle entries).  In these chain coordinates the
Gram matrix AA^T is block diagonal with tridiagonal blocks
T_q = tridiag(-1, 2, -1), one block per group, which is what makes the
subspace projection linear-time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

import numpy as np

from . import _kernels
from .multiindex import MultiIndexTable, add, binomial, build_table, graded_lex_key

__all__ = [
    "ConstraintSystem",
    "Instance",
    "hankel_constraints",
    "hankel_residual",
    "instance_from_dict",
    "instance_to_dict",
    "load_matrix",
    "matrix_from_dict",
    "matrix_to_dict",
    "moment_matrix",
    "monomial_vector",
    "random_instance",
    "save_json",
    "theoretical_atom_bound",
]

# Planted coefficients below this are flagged on the instance (they make the
# atom numerically invisible) but never resampled; the error metrics already
# damp their contribution.
DEGENERATE_WEIGHT = 1e-6


def monomial_vector(z, d: int) -> np.ndarray:
    """Evaluate all monomials of degree <= d at the point z.

    Entries follow the graded lexicographic table, so the first entry is 1
    and entries 1..n are the coordinates of z.
    """
    z = np.atleast_1d(np.asarray(z, dtype=np.float64))
    table = build_table(z.shape[0], d, mode="upto")
    return np.prod(z[None, :] ** table.exponents, axis=1)


def moment_matrix(weights, atoms, d: int) -> np.ndarray:
    """Weighted sum of monomial outer products, exactly symmetric.

    Atoms are accumulated in a deterministic byte-order sort so that any
    permutation of the (weight, atom) pairs produces a bit-identical matrix;
    only the upper triangle is accumulated, then mirrored once.
    """
    weights = np.asarray(weights, dtype=np.float64)
    atoms = np.asarray(atoms, dtype=np.float64)
    if atoms.ndim == 1:
        atoms = atoms.reshape(-1, 1)
    if weights.shape[0] != atoms.shape[0]:
        raise ValueError(f"{weights.shape[0]} weights for {atoms.shape[0]} atoms")
    n = atoms.shape[1]
    if n == 0:
        raise ValueError("atoms need at least one coordinate")
    table = build_table(n, d, mode="upto")
    N = len(table)
    order = sorted(
        range(weights.shape[0]),
        key=lambda i: (atoms[i].tobytes(), weights[i].tobytes()),
    )
    upper = np.zeros((N, N))
    rows, cols = np.triu_indices(N)
    for i in order:
        v = np.prod(atoms[i][None, :] ** table.exponents, axis=1)
        upper[rows, cols] += weights[i] * v[rows] * v[cols]
    return upper + np.triu(upper, 1).T


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    """Chain-basis encoding of the Hankel constraints for (n, d).

    Row r evaluates to X[i1[r], j1[r]] - X[i2[r], j2[r]] on upper-triangle
    positions.  Rows are contiguous per gamma-group; block_ptr delimits the
    nonempty blocks (groups with at least two positions).  groups keeps every
    group key with its ordered position pairs for inspection and oracles.
    """

    n: int
    d: int
    N: int
    m: int
    table: MultiIndexTable = field(repr=False)
    i1: np.ndarray = field(repr=False)
    j1: np.ndarray = field(repr=False)
    i2: np.ndarray = field(repr=False)
    j2: np.ndarray = field(repr=False)
    block_ptr: np.ndarray = field(repr=False)
    groups: tuple = field(repr=False)

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Constraint values A(X), one entry difference per row."""
        if self.m == 0:
            return np.zeros(0)
        return _kernels.chain_apply(X, self.i1, self.j1, self.i2, self.j2)


def hankel_constraints(n: int, d: int) -> ConstraintSystem:
    """Build the chain constraint system over the degree <= d table."""
    table = build_table(n, d, mode="upto")
    N = len(table)
    by_gamma: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for a in range(N):
        for b in range(a, N):
            gamma = add(table.entries[a], table.entries[b])
            by_gamma.setdefault(gamma, []).append((a, b))
    groups = tuple(
        (gamma, tuple(sorted(by_gamma[gamma])))
        for gamma in sorted(by_gamma, key=graded_lex_key)
    )
    i1, j1, i2, j2 = [], [], [], []
    block_sizes = []
    for _, pairs in groups:
        if len(pairs) < 2:
            continue
        block_sizes.append(len(pairs) - 1)
        for k in range(1, len(pairs)):
            i1.append(pairs[k][0])
            j1.append(pairs[k][1])
            i2.append(pairs[k - 1][0])
            j2.append(pairs[k - 1][1])
    m = len(i1)
    block_ptr = np.zeros(len(block_sizes) + 1, dtype=np.int64)
    np.cumsum(block_sizes, out=block_ptr[1:])
    return ConstraintSystem(
        n=n,
        d=d,
        N=N,
        m=m,
        table=table,
        i1=np.asarray(i1, dtype=np.int64),
        j1=np.asarray(j1, dtype=np.int64),
        i2=np.asarray(i2, dtype=np.int64),
        j2=np.asarray(j2, dtype=np.int64),
        block_ptr=block_ptr,
        groups=groups,
    )


def hankel_residual(X: np.ndarray, system: ConstraintSystem) -> float:
    """Euclidean norm of the constraint values A(X)."""
    if system.m == 0:
        return 0.0
    return float(np.linalg.norm(system.apply(np.asarray(X, dtype=np.float64))))


def theoretical_atom_bound(n: int, d: int) -> int:
    """Largest atom count for which generic recovery is guaranteed.

    Exact rational evaluation of floor((C(n+d,d) + 1)/2 - C(n+2d,2d)/C(n+d,d)),
    clamped at zero.
    """
    N = binomial(n + d, d)
    value = Fraction(N + 1, 2) - Fraction(binomial(n + 2 * d, 2 * d), N)
    return max(0, floor(value))


@dataclass(frozen=True, eq=False)
class Instance:
    """A planted atomic pseudo-moment matrix with its ground truth."""

    n: int
    d: int
    s: int
    seed: int
    weights: np.ndarray
    atoms: np.ndarray
    X: np.ndarray
    degenerate_weight: bool


def random_instance(n: int, d: int, s: int, seed: int) -> Instance:
    """Draw a planted instance: weights ~ U[0,1], atoms ~ U[-1,1]^n.

    Uses the counter-based Philox generator keyed by the seed, drawing the s
    weights first and then the s atoms, so identical seeds reproduce the
    instance bit for bit on any platform.
    """
    rng = np.random.Generator(np.random.Philox(key=seed))
    weights = rng.random(s)
    atoms = rng.uniform(-1.0, 1.0, size=(s, n))
    X = moment_matrix(weights, atoms, d)
    degenerate = bool(s > 0 and float(weights.min()) < DEGENERATE_WEIGHT)
    return Instance(
        n=n, d=d, s=s, seed=seed, weights=weights, atoms=atoms, X=X,
        degenerate_weight=degenerate,
    )


def matrix_to_dict(X: np.ndarray, n: int, d: int) -> dict:
    X = np.asarray(X)
    return {"n": n, "d": d, "N": int(X.shape[0]), "entries": X.tolist()}


def matrix_from_dict(data: dict) -> tuple[np.ndarray, int, int]:
    X = np.asarray(data["entries"], dtype=np.float64)
    N = int(data["N"])
    if X.shape != (N, N):
        raise ValueError(f"entries shape {X.shape} does not match N={N}")
    return X, int(data["n"]), int(data["d"])


def instance_to_dict(inst: Instance) -> dict:
    data = matrix_to_dict(inst.X, inst.n, inst.d)
    data.update(
        {
            "s": inst.s,
            "seed": inst.seed,
            "weights": inst.weights.tolist(),
            "atoms": inst.atoms.tolist(),
            "degenerate_weight": inst.degenerate_weight,
        }
    )
    return data


def instance_from_dict(data: dict) -> Instance:
    X, n, d = matrix_from_dict(data)
    weights = np.asarray(data["weights"], dtype=np.float64)
    atoms = np.asarray(data["atoms"], dtype=np.float64).reshape(-1, n)
    return Instance(
        n=n,
        d=d,
        s=int(data["s"]),
        seed=int(data["seed"]),
        weights=weights,
        atoms=atoms,
        X=X,
        degenerate_weight=bool(data.get("degenerate_weight", False)),
    )


def save_json(data: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


def load_matrix(path) -> tuple[np.ndarray, int, int]:
    """Read a matrix or instance JSON file, returning (X, n, d)."""
    with open(path) as fh:
        return matrix_from_dict(json.load(fh))
