"""Extreme-ray decomposition with facial reduction and restarts.

Peels extreme rays off a cone element one at a time: eigendecompose the
iterate, restrict the constraints to the numerical range (facial reduction),
minimize a random linear objective over the reduced face to get a vertex,
step to the cone boundary with the closed-form step length, and re-project
the residual.  A restart wrapper retries with a tighter rank cutoff when the
reduced SDP fails.
"""

from __future__ import annotations

import dataclasses
import logging

import numpy as np

from .altproj import SubspaceProjector, alternating_projection, precompute
from .denselinalg import independent_columns, numerical_rank, sym_eig
from .momentcone import ConstraintSystem
from .sdpsolver import SdpProblem, SolverReport, solve_sdp

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ToleranceConfig:
    eps_rank: float = 1e-7
    eps_break: float = 1e-4
    eps_col: float = 1e-7
    eps_alt: float = 1e-14
    t_alt: int = 500

    def __post_init__(self):
        for name in ("eps_rank", "eps_break", "eps_col", "eps_alt", "t_alt"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclasses.dataclass(frozen=True)
class RayStep:
    """One extracted ray: X gives up t * M, with M lifted back to N x N.

    iterate_rank is the numerical rank of the iterate the ray was peeled
    from; within one sweep it must decrease strictly (the termination
    argument), which downstream checks verify from the recorded steps.
    """

    t: float
    M: np.ndarray
    rank: int
    iterate_rank: int
    outer_index: int
    inner_index: int
    sdp_report: SolverReport


@dataclasses.dataclass(frozen=True)
class RayDecomposition:
    steps: tuple[RayStep, ...]
    residual: np.ndarray
    residual_norm: float
    success: bool
    restarts: int
    config: ToleranceConfig


def step_length(Xt: np.ndarray, Mt: np.ndarray) -> float:
    """Largest t keeping Xt - t*Mt PSD: 1 / lambda_max(Xt^{-1/2} Mt Xt^{-1/2})."""
    Xt = np.asarray(Xt, dtype=np.float64)
    Mt = np.asarray(Mt, dtype=np.float64)
    values, vectors = sym_eig(Xt)
    if values[-1] <= 0.0:
        raise ValueError("Xt must be positive definite")
    root = (vectors / np.sqrt(values)) @ vectors.T
    top = float(np.linalg.eigvalsh(root @ Mt @ root)[-1])
    if top <= 1e-12:
        raise ValueError("Mt is numerically zero")
    return 1.0 / top


def _conjugated(system: ConstraintSystem, Q: np.ndarray, active: np.ndarray) -> np.ndarray:
    """Stack of Q^T A_i Q for the active rows, shape (len(active), r, r).

    A_i pairs two matrix positions with opposite signs; conjugation turns
    each position (a, b) into sym(q_a q_b^T) built from the rows of Q.  The
    symmetrization leaves diagonal positions (a == b) at full weight.
    """
    plus = Q[system.i1[active]][:, :, None] * Q[system.j1[active]][:, None, :]
    minus = Q[system.i2[active]][:, :, None] * Q[system.j2[active]][:, None, :]
    A = plus - minus
    return 0.5 * (A + np.transpose(A, (0, 2, 1)))


def _random_objective(rng: np.random.Generator, r: int) -> np.ndarray:
    """Gaussian on and above the diagonal, mirrored; any absolutely
    continuous law works, this one is cheap and standard."""
    iu = np.triu_indices(r)
    B = np.zeros((r, r))
    B[iu] = rng.standard_normal(iu[0].size)
    return B + np.triu(B, 1).T


def _refine_vertex(v: np.ndarray, rows: np.ndarray) -> tuple[np.ndarray, float]:
    """Gauss-Newton projection of a near-vertex onto the rank-one face points.

    Solves v^T R_i v = 0 over unit vectors from a warm start one solver
    tolerance away.  Rank-one trace-one points of the face are automatically
    extreme, so a converged refinement is a legitimate vertex; the returned
    residual lets the caller reject stalls (a genuinely rank-two vertex has
    no nearby rank-one point and the residual plateaus at its scale).
    """
    v = v / np.linalg.norm(v)
    if rows.size == 0:
        return v, 0.0
    best = v
    best_res = float(np.max(np.abs((rows @ best) @ best)))
    u = best
    for _ in range(8):
        Ru = rows @ u
        du, *_ = np.linalg.lstsq(2.0 * Ru, -(Ru @ u), rcond=None)
        u = u + du
        norm = float(np.linalg.norm(u))
        if norm == 0.0 or not np.all(np.isfinite(u)):
            break
        u = u / norm
        res = float(np.max(np.abs((rows @ u) @ u)))
        if res < best_res:
            best, best_res = u, res
        if best_res <= 1e-15:
            break
    return best, best_res


def ray_decomp_fr(
    system: ConstraintSystem,
    X: np.ndarray,
    cfg: ToleranceConfig,
    rng: np.random.Generator,
    projector: SubspaceProjector | None = None,
    eps_rank: float | None = None,
    outer_index: int = 1,
) -> tuple[tuple[RayStep, ...], np.ndarray]:
    """One facial-reduction sweep; stops on success or the first SDP failure.

    Returns (steps, residual).  Failures are encoded as a short steps list
    and a residual with norm still >= eps_break; nothing is raised.
    """
    if projector is None:
        projector = precompute(system)
    eps = cfg.eps_rank if eps_rank is None else eps_rank
    X = np.asarray(X, dtype=np.float64).copy()
    active = np.arange(system.m)
    steps: list[RayStep] = []
    prev_rank = system.N + 1
    inner = 0
    # The rank must drop every iteration, so the cap is never the binding
    # exit in a sane run; it only guards against a numerical livelock.
    max_inner = 2 * system.N + 8
    while np.linalg.norm(X) >= cfg.eps_break:
        inner += 1
        if inner > max_inner:
            logger.debug("inner-loop cap hit at norm %.3e", np.linalg.norm(X))
            break
        values, vectors = sym_eig(X)
        r = int(np.sum(values > eps))
        if r == 0:
            logger.debug(
                "rank cutoff %.1e removed every eigenvalue at norm %.3e",
                eps,
                np.linalg.norm(X),
            )
            break
        if r >= prev_rank:
            # The peeled eigenvalue re-inflated under re-projection; a fresh
            # sweep (new random objective) is the designed recovery.
            logger.debug("rank plateau at %d, handing back for a restart", r)
            break
        prev_rank = r
        Q = vectors[:, :r]
        lam = values[:r]
        # Eigenvalue dust below the cutoff mixes into Q at the first-order
        # scale tail/gap, which bounds the accuracy of everything built from
        # Q.  Pruning must cut above that floor, and the reduced solve cannot
        # be asked for more than the data supports.  The tolerance cap stays
        # a decade under eps_rank: at gap ~1e-7 the trailing eigenvalues of Y
        # reach the rank cutoff and a clean vertex miscounts as rank two.
        tail = float(values[r]) if r < values.size else 0.0
        noise = max(tail, 0.0) / max(lam[-1] - max(tail, 0.0), np.finfo(np.float64).tiny)
        eps_live = max(cfg.eps_col, 10.0 * noise)
        tol_reduced = float(np.clip(noise, 1e-9, 1e-8))

        reduced = _conjugated(system, Q, active)
        if active.size:
            # A constraint whose restriction to the face is numerically zero
            # is vacuous there; keeping its ~1e-12 leftovers as equality rows
            # makes the reduced problem spuriously infeasible.
            live = np.linalg.norm(reduced.reshape(active.size, -1), axis=1) > eps_live
            active = active[live]
            reduced = reduced[live]
        if active.size:
            keep = independent_columns(reduced.reshape(active.size, -1).T, eps_live)
            active = active[keep]
            reduced = reduced[keep]
        cons = tuple((reduced[j], 0.0) for j in range(reduced.shape[0]))
        cons = cons + ((np.eye(r), 1.0),)

        report = solve_sdp(
            SdpProblem(B=_random_objective(rng, r), constraints=cons),
            tol_gap=tol_reduced,
            tol_feas=tol_reduced,
        )
        if report.status != "optimal":
            logger.debug(
                "reduced solve failed (%s) at r=%d, norm %.3e",
                report.status,
                r,
                np.linalg.norm(X),
            )
            break
        # Polish the vertex.  The solve leaves an O(gap) error on Y; carried
        # into the subtraction it perturbs every later face, compounds by
        # roughly t per step, and can climb above eps_rank where it reads as
        # a spurious extra ray.  Rank-one vertices are refined onto the exact
        # rank-one locus of the face (also when a junk second eigenvalue
        # strays above eps_rank: three decades under the top is no genuine
        # vertex direction); higher-rank vertices are truncated to their
        # numerical rank with the trace renormalized.
        yvals, yvecs = sym_eig(report.Y)
        rank = numerical_rank(yvals, cfg.eps_rank)
        Y = report.Y
        refined = False
        if rank == 1 or (rank > 1 and yvals[1] <= 1e-3 * yvals[0]):
            v, res = _refine_vertex(yvecs[:, 0], reduced)
            if res <= 1e-12:
                Y = np.outer(v, v)
                rank = 1
                refined = True
        if not refined and 0 < rank < r:
            V = yvecs[:, :rank]
            Y = (V * yvals[:rank]) @ V.T / float(np.sum(yvals[:rank]))
            Y = 0.5 * (Y + Y.T)
        try:
            t = step_length(np.diag(lam), Y)
        except ValueError:
            logger.debug("degenerate step direction at r=%d", r)
            break
        if not np.isfinite(t) or t <= 0.0:
            logger.debug("unusable step length %r at r=%d", t, r)
            break

        M = Q @ Y @ Q.T
        M = 0.5 * (M + M.T)
        steps.append(
            RayStep(
                t=float(t),
                M=M,
                rank=rank,
                iterate_rank=r,
                outer_index=outer_index,
                inner_index=inner,
                sdp_report=report,
            )
        )
        X = alternating_projection(X - t * M, projector, cfg.t_alt, cfg.eps_alt)
    return tuple(steps), X


def ray_decomp_restart(
    system: ConstraintSystem,
    X: np.ndarray,
    cfg: ToleranceConfig,
    rng: np.random.Generator,
) -> RayDecomposition:
    """Run facial-reduction sweeps with restarts until the residual breaks.

    The round budget is the numerical rank of the input at the original
    eps_rank.  After an empty round the rank cutoff tightens by 10x (failed
    solves usually mean the truncation was too aggressive); a productive
    round resets it.  The residual is re-projected between rounds.
    """
    X0 = np.asarray(X, dtype=np.float64)
    projector = precompute(system)
    values, _ = sym_eig(X0)
    r_max = int(np.sum(values > cfg.eps_rank))
    eps = cfg.eps_rank
    steps: list[RayStep] = []
    residual = X0.copy()
    rounds = 0
    for outer in range(1, r_max + 1):
        rounds = outer
        new_steps, residual = ray_decomp_fr(
            system,
            residual,
            cfg,
            rng,
            projector=projector,
            eps_rank=eps,
            outer_index=outer,
        )
        steps.extend(new_steps)
        if np.linalg.norm(residual) < cfg.eps_break:
            break
        eps = eps / 10.0 if not new_steps else cfg.eps_rank
        residual = alternating_projection(residual, projector, cfg.t_alt, cfg.eps_alt)
    residual_norm = float(np.linalg.norm(residual))
    return RayDecomposition(
        steps=tuple(steps),
        residual=residual,
        residual_norm=residual_norm,
        success=residual_norm < cfg.eps_break,
        restarts=max(rounds - 1, 0),
        config=cfg,
    )


def verify_extremality(
    M: np.ndarray, system: ConstraintSystem, eps: float
) -> tuple[bool, int]:
    """Decide numerically whether M generates an extreme ray of the cone.

    With Q an orthonormal basis of range(M) at tolerance eps, M is extreme
    iff the conjugated constraints cut the face down to the line through M:
    the nullspace of W -> (<Q^T A_i Q, W>)_i on Sym(r) has dimension 1.
    Returns (is_extreme, nullity).
    """
    M = np.asarray(M, dtype=np.float64)
    values, vectors = sym_eig(M)
    r = int(np.sum(values > eps))
    if r == 0:
        raise ValueError("matrix is numerically zero at this tolerance")
    dim_sym = r * (r + 1) // 2
    if system.m == 0:
        return dim_sym == 1, dim_sym
    Q = vectors[:, :r]
    K = _conjugated(system, Q, np.arange(system.m)).reshape(system.m, -1)
    sing = np.linalg.svd(K, compute_uv=False)
    if sing[0] <= eps:
        # every constraint vanishes on the face (rank-one case)
        rank = 0
    else:
        rank = int(np.sum(sing > eps * sing[0]))
    nullity = dim_sym - rank
    return nullity == 1, nullity


def decomposition_to_dict(dec: RayDecomposition, wall_time_s: float | None = None) -> dict:
    data = {
        "steps": [
            {
                "t": step.t,
                "rank": step.rank,
                "M": step.M.tolist(),
                "sdp_gap": step.sdp_report.gap,
                "sdp_iters": step.sdp_report.iters,
            }
            for step in dec.steps
        ],
        "residual_norm": dec.residual_norm,
        "success": dec.success,
        "restarts": dec.restarts,
        "config": dataclasses.asdict(dec.config),
    }
    if wall_time_s is not None:
        data["wall_time_s"] = wall_time_s
    return data
