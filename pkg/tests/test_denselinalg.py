"""Tests for the dense symmetric linear algebra helpers."""

import numpy as np
import pytest

from momentrays.denselinalg import (
    independent_columns,
    numerical_rank,
    psd_projection,
    sym_eig,
)


def random_orthogonal(n, rng):
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return Q


def test_sym_eig_known_spectrum():
    # Oracle: plant a spectrum via orthogonal conjugation.
    rng = np.random.Generator(np.random.Philox(key=1))
    spectrum = np.array([5.0, 2.0, 2.0, -1.0, -3.0])
    Q = random_orthogonal(5, rng)
    X = (Q * spectrum) @ Q.T
    values, vectors = sym_eig(X)
    np.testing.assert_allclose(values, np.sort(spectrum)[::-1], atol=1e-12)
    recon = (vectors * values) @ vectors.T
    assert np.linalg.norm(recon - 0.5 * (X + X.T)) <= 1e-10 * max(1.0, np.linalg.norm(X))
    np.testing.assert_allclose(vectors.T @ vectors, np.eye(5), atol=1e-10)


def test_sym_eig_symmetrizes_input():
    X = np.array([[1.0, 2.0], [0.0, 1.0]])
    values, _ = sym_eig(X)
    np.testing.assert_allclose(values, [2.0, 0.0], atol=1e-14)


def test_sym_eig_rejects_non_finite():
    with pytest.raises(ValueError):
        sym_eig(np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        sym_eig(np.array([[np.inf, 0.0], [0.0, 1.0]]))


def test_numerical_rank_strict_threshold():
    values = np.array([1.0, 1e-6, 1e-7, 1e-9])
    assert numerical_rank(values, 1e-7) == 2
    assert numerical_rank(values, 1e-8) == 3
    assert numerical_rank(values, 2.0) == 0
    # Strictly above: a value equal to eps does not count.
    assert numerical_rank(np.array([1e-7]), 1e-7) == 0


def test_psd_projection_clips_negative_part():
    rng = np.random.Generator(np.random.Philox(key=2))
    spectrum = np.array([4.0, 1.0, -0.5, -2.0])
    Q = random_orthogonal(4, rng)
    X = (Q * spectrum) @ Q.T
    P = psd_projection(X)
    expected = (Q * np.clip(spectrum, 0, None)) @ Q.T
    np.testing.assert_allclose(P, expected, atol=1e-12)


def test_psd_projection_idempotent_and_obtuse():
    rng = np.random.Generator(np.random.Philox(key=3))
    X = rng.standard_normal((6, 6))
    X = 0.5 * (X + X.T)
    P = psd_projection(X)
    assert np.linalg.eigvalsh(P).min() >= -1e-12
    np.testing.assert_allclose(psd_projection(P), P, atol=1e-12)
    # Projection residual is orthogonal to the projection (obtuseness).
    assert abs(np.sum((X - P) * P)) <= 1e-10


def test_psd_projection_is_frobenius_nearest():
    # Oracle: no random PSD candidate beats the projection.
    rng = np.random.Generator(np.random.Philox(key=4))
    X = rng.standard_normal((5, 5))
    X = 0.5 * (X + X.T)
    P = psd_projection(X)
    base = np.linalg.norm(X - P)
    for _ in range(50):
        G = rng.standard_normal((5, 5))
        candidate = G @ G.T
        candidate *= np.trace(P) / max(np.trace(candidate), 1e-12)
        assert np.linalg.norm(X - candidate) >= base - 1e-12


def test_independent_columns_example():
    A = np.array([[1.0, 0.0, 2.0], [0.0, 1.0, 0.0]])
    assert independent_columns(A, 1e-7) == [2, 1]


def test_independent_columns_zero_matrix():
    assert independent_columns(np.zeros((4, 3)), 1e-7) == []
    assert independent_columns(np.zeros((0, 0)), 1e-7) == []


def test_independent_columns_duplicates():
    A = np.ones((3, 4))
    kept = independent_columns(A, 1e-7)
    assert len(kept) == 1
    assert kept[0] in range(4)


def test_independent_columns_planted_rank():
    # Oracle: SVD rank of a matrix with planted column-space dimension.
    rng = np.random.Generator(np.random.Philox(key=5))
    for trial in range(50):
        m, r, n = 12, int(rng.integers(1, 6)), 10
        basis = rng.standard_normal((m, r))
        mix = rng.standard_normal((r, n))
        A = basis @ mix
        svd_rank = int(np.sum(np.linalg.svd(A, compute_uv=False) > 1e-9 * m))
        kept = independent_columns(A, 1e-9)
        assert len(kept) == svd_rank
        # The kept columns must themselves be full rank.
        sub = A[:, kept]
        assert int(np.linalg.matrix_rank(sub, tol=1e-9)) == svd_rank


def test_independent_columns_deterministic_and_scale_stable_rank():
    # Identical input gives the identical set; the acceptance rule is
    # relative, so a global rescale keeps the *rank* (the chosen set may
    # differ at exact pivot ties).
    rng = np.random.Generator(np.random.Philox(key=6))
    A = rng.standard_normal((8, 6))
    A[:, 3] = A[:, 0] + A[:, 1]
    kept = independent_columns(A, 1e-9)
    assert kept == independent_columns(A.copy(), 1e-9)
    assert len(kept) == len(independent_columns(1e-5 * A, 1e-9)) == 5
