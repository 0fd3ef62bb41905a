"""Extreme-ray decomposition of pseudo-moment matrices.

Decomposes a matrix in the pseudo-moment cone (Hankel-structured PSD
matrices) into a nonnegative combination of extreme rays via facial
reduction with restarts, and recovers planted atoms and weights from
rank-one decompositions.
"""

from .experiments import SweepRecord, rank_histogram, run_trial, sweep, table1_check
from .momentcone import (
    ConstraintSystem,
    Instance,
    hankel_constraints,
    hankel_residual,
    moment_matrix,
    monomial_vector,
    random_instance,
    theoretical_atom_bound,
)
from .raydecomp import (
    RayDecomposition,
    RayStep,
    ToleranceConfig,
    ray_decomp_fr,
    ray_decomp_restart,
    step_length,
    verify_extremality,
)
from .recovery import (
    RecoveredAtoms,
    best_matching_atom_error,
    extract_atom,
    recover_atoms,
    recovery_errors,
)
from .sdpsolver import SdpProblem, SolverReport, solve_sdp

__version__ = "0.1.0"

__all__ = [
    "ConstraintSystem",
    "Instance",
    "RayDecomposition",
    "RayStep",
    "RecoveredAtoms",
    "SdpProblem",
    "SolverReport",
    "SweepRecord",
    "ToleranceConfig",
    "best_matching_atom_error",
    "extract_atom",
    "hankel_constraints",
    "hankel_residual",
    "moment_matrix",
    "monomial_vector",
    "random_instance",
    "rank_histogram",
    "ray_decomp_fr",
    "ray_decomp_restart",
    "recover_atoms",
    "recovery_errors",
    "run_trial",
    "solve_sdp",
    "step_length",
    "sweep",
    "table1_check",
    "theoretical_atom_bound",
    "verify_extremality",
]
