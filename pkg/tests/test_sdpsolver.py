"""Tests for the interior-point SDP solver."""

import numpy as np

from momentrays.denselinalg import independent_columns, sym_eig
from momentrays.momentcone import hankel_constraints, monomial_vector, random_instance
from momentrays.sdpsolver import SdpProblem, SolverReport, solve_sdp

from oracles import dual_pencil_golden, grid_refined_minimum, low_rank_refined_minimum


def random_sym(r, rng):
    M = rng.standard_normal((r, r))
    return 0.5 * (M + M.T)


def spectraplex(B):
    return SdpProblem(B=B, constraints=((np.eye(B.shape[0]), 1.0),))


def test_trace_only_diagonal_objective():
    rep = solve_sdp(spectraplex(np.diag([1.0, -1.0])))
    assert rep.status == "optimal"
    assert abs(rep.objective - (-1.0)) <= 1e-8
    np.testing.assert_allclose(rep.Y, np.diag([0.0, 1.0]), atol=1e-7)


def test_identity_objective_any_feasible_point():
    rep = solve_sdp(spectraplex(np.eye(4)))
    assert rep.status == "optimal"
    assert abs(rep.objective - 1.0) <= 1e-8
    assert np.linalg.eigvalsh(rep.Y).min() >= -1e-9


def test_spectraplex_matches_min_eigenvalue():
    rng = np.random.Generator(np.random.Philox(key=50))
    for trial in range(50):
        r = int(rng.integers(2, 11))
        B = random_sym(r, rng)
        rep = solve_sdp(spectraplex(B))
        lmin = float(np.linalg.eigvalsh(B).min())
        assert rep.status == "optimal", trial
        assert abs(rep.objective - lmin) <= 1e-8
        assert abs(rep.gap) <= 1e-9
        assert rep.primal_res <= 1e-9
        assert rep.dual_res <= 1e-9
        assert np.linalg.eigvalsh(rep.Y).min() >= -1e-9


def test_spectraplex_solution_is_bottom_eigenprojector():
    rng = np.random.Generator(np.random.Philox(key=51))
    for _ in range(10):
        B = random_sym(6, rng)
        values, vectors = np.linalg.eigh(B)
        # Generic draws have a simple bottom eigenvalue.
        assert values[1] - values[0] > 1e-6
        rep = solve_sdp(spectraplex(B))
        v = vectors[:, 0]
        assert np.linalg.norm(rep.Y - np.outer(v, v)) <= 1e-6


def test_deterministic_given_identical_input():
    rng = np.random.Generator(np.random.Philox(key=52))
    B = random_sym(5, rng)
    C = random_sym(5, rng)
    cons = ((C, 0.0), (np.eye(5), 1.0))
    a = solve_sdp(SdpProblem(B=B, constraints=cons))
    b = solve_sdp(SdpProblem(B=B, constraints=cons))
    assert a.Y.tobytes() == b.Y.tobytes()
    assert a.iters == b.iters


def test_one_constraint_matches_grid_and_dual_oracles():
    rng = np.random.Generator(np.random.Philox(key=53))
    for trial in range(5):
        B = random_sym(3, rng)
        C = random_sym(3, rng)
        # The slice needs an indefinite constraint matrix to be feasible.
        ev = np.linalg.eigvalsh(C)
        if ev[0] > -1e-3 or ev[-1] < 1e-3:
            C = C - np.trace(C) / 3.0 * np.eye(3)
        cons = ((np.eye(3), 1.0), (C, 0.0))
        rep = solve_sdp(SdpProblem(B=B, constraints=cons))
        assert rep.status == "optimal"
        # Weak duality makes the pencil value a certified lower bound; a
        # feasible rank-one point is an upper bound (extreme points of this
        # slice have rank one).  Their agreement pins the optimum.
        dual = dual_pencil_golden(B, C)
        upper = low_rank_refined_minimum(B, [C], rank=1)
        assert upper - dual <= 1e-6, trial
        assert abs(rep.objective - dual) <= 1e-5, trial
        # The pattern search stalls once the feasible improving sliver along
        # the curved boundary gets thinner than the grid spacing; it is a
        # coarse certified upper bound, not a precision oracle.
        grid = grid_refined_minimum(B, cons)
        assert -1e-8 <= grid - dual <= 5e-3, trial


def test_planted_face_returns_normalized_generator():
    # On a face spanned by planted rank-one generators, a random objective
    # picks out a vertex: the solution lifts to a single normalized
    # generator.
    system = hankel_constraints(3, 2)
    hits = 0
    total = 0
    for seed in range(5):
        inst = random_instance(3, 2, 2, seed=seed)
        values, vectors = sym_eig(inst.X)
        r = int(np.sum(values > 1e-7))
        Q = vectors[:, :r]
        mats = []
        for t in range(system.m):
            a, b_, c, d = system.i1[t], system.j1[t], system.i2[t], system.j2[t]
            plus = np.outer(Q[a], Q[b_])
            minus = np.outer(Q[c], Q[d])
            mats.append(0.5 * (plus + plus.T) - 0.5 * (minus + minus.T))
        keep = independent_columns(np.stack([m.ravel() for m in mats], axis=1), 1e-7)
        cons = tuple((mats[i], 0.0) for i in keep) + ((np.eye(r), 1.0),)
        rng = np.random.Generator(np.random.Philox(key=600 + seed))
        for _ in range(10):
            total += 1
            rep = solve_sdp(SdpProblem(B=random_sym(r, rng), constraints=cons))
            assert rep.status == "optimal"
            lifted = Q @ rep.Y @ Q.T
            dists = []
            for i in range(inst.s):
                v = monomial_vector(inst.atoms[i], 2)
                dists.append(np.linalg.norm(lifted - np.outer(v, v) / (v @ v)))
            if min(dists) <= 1e-6:
                hits += 1
    assert total == 50
    assert hits == 50


def test_infeasible_problem_reports_failure_without_raising():
    # <diag(1,0), Y> = -1 is impossible for PSD Y.
    cons = ((np.eye(2), 1.0), (np.diag([1.0, 0.0]), -1.0))
    rep = solve_sdp(SdpProblem(B=np.eye(2), constraints=cons))
    assert rep.status in ("infeasible-or-failed", "max-iters")


def test_inconsistent_duplicate_rows_fail_gracefully():
    cons = ((np.eye(1), 1.0), (np.eye(1), 0.0))
    rep = solve_sdp(SdpProblem(B=np.eye(1), constraints=cons))
    assert rep.status in ("infeasible-or-failed", "max-iters")


def test_max_iters_status():
    rng = np.random.Generator(np.random.Philox(key=54))
    B = random_sym(4, rng)
    rep = solve_sdp(spectraplex(B), tol_gap=0.0, max_iters=5)
    assert rep.status == "max-iters"
    assert rep.iters == 5
    assert isinstance(rep, SolverReport)


def test_report_fields_consistent():
    rng = np.random.Generator(np.random.Philox(key=55))
    B = random_sym(5, rng)
    rep = solve_sdp(spectraplex(B))
    assert rep.status == "optimal"
    assert abs(rep.objective - float(np.sum(B * rep.Y))) <= 1e-12
    assert abs(rep.primal_res - abs(np.trace(rep.Y) - 1.0)) <= 1e-12
