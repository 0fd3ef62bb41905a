"""Dense primal-dual interior-point solver for small semidefinite programs.

Solves  min <B, Y>  s.t.  <C_i, Y> = b_i,  Y >= 0  over Sym(r), together with
its dual  max b'y  s.t.  sum_i y_i C_i + S = B,  S >= 0.  The implementation
is a standard infeasible-start path-following method with Nesterov-Todd
scaling and a Mehrotra predictor-corrector step, solving the dense Schur
complement system by Cholesky.  Problems in this package are tiny (r below a
few dozen, a few hundred constraints), so everything is dense.

The solver never raises on numerical breakdown: Cholesky failure, a collapsed
step length, or running out of iterations all surface as a non-optimal status
in the report, which the decomposition loop consumes as its restart signal.

NT scaling in brief: with Y = LL', S = RR' and the SVD R'L = U D V', the
scaling point W = GG' with G = LVD^{-1/2} satisfies G'SG = G^{-1}Y G^{-T} = D,
and G^{-1} = D^{-1/2} U'R' needs no matrix inversion.  Newton directions obey
dY + W dS W = Rc with Rc = -Y for the predictor and the Mehrotra-corrected
target, expressed through a diagonal Lyapunov solve in scaled space, for the
combined step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

__all__ = ["SdpProblem", "SolverReport", "solve_sdp"]

STEP_COLLAPSE = 1e-10
BOUNDARY_FRACTION = 0.98
RIDGE_SCALES = (0.0, 1e-13, 1e-11, 1e-9)
# The centering target is never pushed below this fraction of tol_gap/r:
# complementarity orders of magnitude below the stopping tolerance only
# ruins the Schur conditioning without improving the answer.  0.3 still
# lands comp = r*mu comfortably inside the tolerance box.
MU_FLOOR_FRACTION = 0.3
# A single step may not shrink mu by more than this factor.  On primally
# degenerate problems an unchecked Mehrotra step can crash mu by nine orders
# of magnitude at once, after which the Schur system is too singular to
# polish feasibility.
MU_CRASH_RATIO = 0.01


@dataclass(frozen=True, eq=False)
class SdpProblem:
    """Objective matrix plus equality constraints (matrix, right-hand side).

    The normalization constraint trace(Y) = 1 is an ordinary row (identity
    matrix, right-hand side 1); callers that want it must include it.
    """

    B: np.ndarray
    constraints: tuple = field(repr=False)

    @property
    def size(self) -> int:
        return int(self.B.shape[0])


@dataclass(frozen=True, eq=False)
class SolverReport:
    status: str  # "optimal" | "infeasible-or-failed" | "max-iters"
    Y: np.ndarray
    objective: float
    gap: float
    primal_res: float
    dual_res: float
    iters: int


def _sym(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.T)


def _max_step(L: np.ndarray, delta: np.ndarray) -> float:
    """Largest alpha with X + alpha*delta PSD, given X = LL'."""
    T = scipy.linalg.solve_triangular(L, delta, lower=True)
    T = scipy.linalg.solve_triangular(L, T.T, lower=True)
    lam_min = float(np.linalg.eigvalsh(_sym(T)).min())
    if lam_min >= 0.0:
        return np.inf
    return -1.0 / lam_min


def _solve_schur(M: np.ndarray, rhs: np.ndarray):
    """Cholesky solve with escalating diagonal ridge.

    The Schur matrix is a Gram matrix, so it is PSD but can be numerically
    singular when a pruned-but-kept constraint is nearly zero; a tiny ridge
    recovers a usable step in that case.  Returns None when even the largest
    ridge fails.
    """
    scale = max(float(np.mean(np.diag(M))), 1.0)
    for ridge in RIDGE_SCALES:
        try:
            cho = scipy.linalg.cho_factor(M + ridge * scale * np.eye(M.shape[0]), lower=True)
        except scipy.linalg.LinAlgError:
            continue
        x = scipy.linalg.cho_solve(cho, rhs)
        # a couple of refinement rounds buy back digits lost to conditioning
        rhs_norm = max(float(np.linalg.norm(rhs)), 1e-300)
        for _ in range(2):
            res = rhs - M @ x
            if np.linalg.norm(res) <= 1e-14 * rhs_norm:
                break
            x = x + scipy.linalg.cho_solve(cho, res)
        return x
    return None


def solve_sdp(
    problem: SdpProblem,
    tol_gap: float = 1e-9,
    tol_feas: float = 1e-9,
    max_iters: int = 100,
) -> SolverReport:
    """Run the predictor-corrector iteration from Y = I/r, S = I, y = 0."""
    B = _sym(np.asarray(problem.B, dtype=np.float64))
    r = B.shape[0]
    m = len(problem.constraints)
    C = np.stack([_sym(np.asarray(ci, dtype=np.float64)) for ci, _ in problem.constraints])
    b = np.asarray([bi for _, bi in problem.constraints], dtype=np.float64)

    Y = np.eye(r) / r
    S = np.eye(r)
    y = np.zeros(m)

    def operator(M):
        return np.einsum("iab,ab->i", C, M)

    def adjoint(v):
        return np.einsum("i,iab->ab", v, C)

    def report(status, iters, at=None):
        Yr, yr, Sr = (Y, y, S) if at is None else at
        return SolverReport(
            status=status,
            Y=_sym(Yr),
            objective=float(np.sum(B * Yr)),
            gap=float(np.sum(B * Yr) - b @ yr),
            primal_res=float(np.linalg.norm(b - operator(Yr))),
            dual_res=float(np.linalg.norm(B - Sr - adjoint(yr))),
            iters=iters,
        )

    best = None
    best_merit = np.inf

    for it in range(1, max_iters + 1):
        rp = b - operator(Y)
        Rd = _sym(B - S - adjoint(y))
        mu = float(np.sum(Y * S)) / r
        pres = float(np.linalg.norm(rp))
        dres = float(np.linalg.norm(Rd))
        comp = float(np.sum(Y * S))
        dgap = float(np.sum(B * Y) - b @ y)
        if pres <= tol_feas and dres <= tol_feas and max(comp, abs(dgap)) <= tol_gap:
            return report("optimal", it - 1)
        merit = max(pres, dres, comp, abs(dgap))
        if merit < best_merit:
            best_merit = merit
            best = (Y.copy(), y.copy(), S.copy())

        try:
            Ly = np.linalg.cholesky(Y)
            Ls = np.linalg.cholesky(S)
        except np.linalg.LinAlgError:
            return report("infeasible-or-failed", it - 1, at=best)
        U, lam, Vt = np.linalg.svd(Ls.T @ Ly)
        if lam.min() <= 0.0 or not np.all(np.isfinite(lam)):
            return report("infeasible-or-failed", it - 1, at=best)
        G = (Ly @ Vt.T) / np.sqrt(lam)
        Ginv = (U / np.sqrt(lam)).T @ Ls.T
        W = G @ G.T

        WCW = np.einsum("ab,ibc,cd->iad", W, C, W, optimize=True)
        M = np.einsum("iab,jab->ij", C, WCW, optimize=True)
        WRdW = W @ Rd @ W

        def direction(Rc):
            rhs = rp - operator(Rc) + operator(WRdW)
            dy = _solve_schur(M, rhs)
            if dy is None:
                return None
            dS = Rd - adjoint(dy)
            dY = _sym(Rc - W @ dS @ W)
            return dY, dy, dS

        step = direction(-Y)
        if step is None:
            return report("infeasible-or-failed", it - 1, at=best)
        dY_a, dy_a, dS_a = step
        ap = min(1.0, _max_step(Ly, dY_a))
        ad = min(1.0, _max_step(Ls, dS_a))
        mu_aff = float(np.sum((Y + ap * dY_a) * (S + ad * dS_a))) / r
        sigma = min(1.0, max(0.0, (mu_aff / mu) ** 3)) if mu > 0 else 0.0

        # Mehrotra corrector in scaled space: solve the diagonal Lyapunov
        # equation D o U = sigma*mu*I - D^2 - sym(dYhat dShat).
        dY_hat = Ginv @ dY_a @ Ginv.T
        dS_hat = G.T @ dS_a @ G
        second = _sym(dY_hat @ dS_hat)
        sigma_mu = max(sigma * mu, MU_FLOOR_FRACTION * tol_gap / r)
        target = sigma_mu * np.eye(r) - np.diag(lam**2) - second
        denom = lam[:, None] + lam[None, :]
        Rc = G @ (2.0 * target / denom) @ G.T

        step = direction(_sym(Rc))
        if step is None:
            return report("infeasible-or-failed", it - 1, at=best)
        dY, dy, dS = step
        ap = min(1.0, BOUNDARY_FRACTION * _max_step(Ly, dY))
        ad = min(1.0, BOUNDARY_FRACTION * _max_step(Ls, dS))
        if min(ap, ad) < STEP_COLLAPSE:
            return report("infeasible-or-failed", it, at=best)
        # mu-crash backstop: scale both fractions down so complementarity
        # lands no lower than the per-step limit.  mu(c) is quadratic in a
        # common multiplier c on (ap, ad).
        limit = max(MU_CRASH_RATIO * mu, MU_FLOOR_FRACTION * tol_gap / r)
        limit = min(limit, 0.99 * mu)
        cross = (ap * float(np.sum(dY * S)) + ad * float(np.sum(Y * dS))) / r
        quad = ap * ad * float(np.sum(dY * dS)) / r
        if mu + cross + quad < limit and limit > 0.0:
            roots = np.roots([quad, cross, mu - limit])
            real = [float(c.real) for c in roots if abs(c.imag) < 1e-12 and 0.0 < c.real <= 1.0]
            c = min(real) if real else 0.5
            ap *= c
            ad *= c
        Y = _sym(Y + ap * dY)
        y = y + ad * dy
        S = _sym(S + ad * dS)
        if not (np.all(np.isfinite(Y)) and np.all(np.isfinite(S)) and np.all(np.isfinite(y))):
            return report("infeasible-or-failed", it, at=best)

    return report("max-iters", max_iters, at=best)
