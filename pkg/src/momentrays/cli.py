"""Command-line entry point.

Subcommands: decompose (one matrix or instance JSON), gen (planted instance),
sweep (recovery-error CSV over s), ranks (rank histogram CSV), table1 (bound
table check), sdp-solve (debug access to the embedded solver).  Exit codes:
0 success, 1 failed check or failed decomposition, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

import numpy as np

from .altproj import alternating_projection, precompute
from .experiments import rank_histogram, sweep, table1_check
from .momentcone import (
    hankel_constraints,
    instance_from_dict,
    instance_to_dict,
    matrix_from_dict,
    random_instance,
    save_json,
)
from .raydecomp import ToleranceConfig, decomposition_to_dict, ray_decomp_restart
from .recovery import (
    best_matching_atom_error,
    recover_atoms,
    recovered_to_dict,
    recovery_errors,
)
from .sdpsolver import SdpProblem, solve_sdp

logger = logging.getLogger(__name__)


def _add_tolerance_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol-rank", type=float, default=1e-7)
    parser.add_argument("--tol-break", type=float, default=1e-4)
    parser.add_argument("--tol-col", type=float, default=1e-7)
    parser.add_argument("--tol-alt", type=float, default=1e-14)
    parser.add_argument("--t-alt", type=int, default=500)


def _config_from(args: argparse.Namespace) -> ToleranceConfig:
    return ToleranceConfig(
        eps_rank=args.tol_rank,
        eps_break=args.tol_break,
        eps_col=args.tol_col,
        eps_alt=args.tol_alt,
        t_alt=args.t_alt,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momentrays",
        description="Extreme-ray decomposition of pseudo-moment matrices",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose one matrix or instance JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None,
                   help="objective stream seed (default: instance seed, else 0)")
    p.add_argument("--project", action="store_true",
                   help="project the input onto the cone before decomposing")
    _add_tolerance_flags(p)

    p = sub.add_parser("gen", help="generate a planted instance JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sweep", help="recovery-error sweep CSV over s")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s-min", type=int, required=True)
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("ranks", help="step-rank histogram CSV at one s")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    sub.add_parser("table1", help="check the closed-form atom bound table")

    p = sub.add_parser("sdp-solve", help="solve one problem JSON with the embedded solver")
    p.add_argument("--input", required=True)
    p.add_argument("--tol-gap", type=float, default=1e-9)
    p.add_argument("--tol-feas", type=float, default=1e-9)
    p.add_argument("--max-iters", type=int, default=100)

    return parser


def _cmd_decompose(args: argparse.Namespace) -> int:
    with open(args.input) as fh:
        data = json.load(fh)
    X, n, d = matrix_from_dict(data)
    inst = instance_from_dict(data) if "weights" in data else None
    cfg = _config_from(args)
    system = hankel_constraints(n, d)
    if args.project:
        X = alternating_projection(X, precompute(system), cfg.t_alt, cfg.eps_alt)
    seed = args.seed
    if seed is None:
        seed = int(data.get("seed", 0))
    rng = np.random.Generator(np.random.Philox(key=seed).jumped(1))
    start = time.perf_counter()
    dec = ray_decomp_restart(system, X, cfg, rng)
    wall = time.perf_counter() - start
    result = decomposition_to_dict(dec, wall_time_s=wall)
    result["input"] = {"n": n, "d": d, "N": X.shape[0], "objective_seed": seed}
    if inst is not None:
        rec = recover_atoms(dec.steps, system.table, inst.s)
        result["recovery"] = recovered_to_dict(rec, errors=recovery_errors(inst, rec))
        result["recovery"]["best_matching_e_z"] = best_matching_atom_error(inst, rec)
    save_json(result, args.out)
    logger.info("decomposition %s: %d steps, residual %.3e",
                "succeeded" if dec.success else "failed",
                len(dec.steps), dec.residual_norm)
    return 0 if dec.success else 1


def _cmd_gen(args: argparse.Namespace) -> int:
    inst = random_instance(args.n, args.d, args.s, args.seed)
    save_json(instance_to_dict(inst), args.out)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    sweep(args.d, args.n, args.s_min, args.s_max, trials=args.trials,
          base_seed=args.seed, out_path=args.out)
    return 0


def _cmd_ranks(args: argparse.Namespace) -> int:
    rank_histogram(args.d, args.n, args.s, trials=args.trials,
                   base_seed=args.seed, out_path=args.out)
    return 0


def _cmd_table1(_: argparse.Namespace) -> int:
    ok, rows = table1_check()
    for d, n, expected, computed, match in rows:
        flag = "ok" if match else "MISMATCH"
        print(f"d={d} n={n} expected={expected} computed={computed} {flag}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _cmd_sdp_solve(args: argparse.Namespace) -> int:
    with open(args.input) as fh:
        data = json.load(fh)
    B = np.asarray(data["B"], dtype=np.float64)
    constraints = tuple(
        (np.asarray(row["A"], dtype=np.float64), float(row["b"]))
        for row in data["constraints"]
    )
    report = solve_sdp(
        SdpProblem(B=B, constraints=constraints),
        tol_gap=args.tol_gap, tol_feas=args.tol_feas, max_iters=args.max_iters,
    )
    print(json.dumps({
        "status": report.status,
        "objective": report.objective,
        "gap": report.gap,
        "primal_res": report.primal_res,
        "dual_res": report.dual_res,
        "iters": report.iters,
        "Y": report.Y.tolist(),
    }, indent=1))
    return 0 if report.status == "optimal" else 1


_COMMANDS = {
    "decompose": _cmd_decompose,
    "gen": _cmd_gen,
    "sweep": _cmd_sweep,
    "ranks": _cmd_ranks,
    "table1": _cmd_table1,
    "sdp-solve": _cmd_sdp_solve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
