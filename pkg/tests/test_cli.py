"""Command-line interface: subcommands, exit codes, file outputs."""

import json

import numpy as np
import pytest

from momentrays.cli import main
from momentrays.momentcone import matrix_to_dict, random_instance, save_json


def run(*argv):
    return main([str(a) for a in argv])


def test_gen_writes_instance(tmp_path):
    out = tmp_path / "inst.json"
    assert run("gen", "--n", 3, "--d", 2, "--s", 2, "--seed", 9, "--out", out) == 0
    data = json.loads(out.read_text())
    assert data["n"] == 3 and data["d"] == 2 and data["s"] == 2
    assert len(data["weights"]) == 2
    assert np.asarray(data["entries"]).shape == (10, 10)


def test_decompose_instance_with_recovery(tmp_path):
    inst, out = tmp_path / "inst.json", tmp_path / "dec.json"
    run("gen", "--n", 3, "--d", 2, "--s", 3, "--seed", 5, "--out", inst)
    assert run("decompose", "--input", inst, "--out", out) == 0
    result = json.loads(out.read_text())
    assert result["success"] is True
    assert len(result["steps"]) == 3
    assert result["wall_time_s"] > 0
    assert result["config"]["eps_rank"] == 1e-7
    rec = result["recovery"]
    assert rec["success"] is True
    assert rec["e_w"] < 1e-5 and rec["e_z"] < 1e-5
    assert rec["best_matching_e_z"] < 1e-5


def test_decompose_bare_matrix_has_no_recovery_block(tmp_path):
    src, out = tmp_path / "mat.json", tmp_path / "dec.json"
    inst = random_instance(3, 2, 2, 21)
    save_json(matrix_to_dict(inst.X, 3, 2), src)
    assert run("decompose", "--input", src, "--out", out) == 0
    result = json.loads(out.read_text())
    assert result["success"] is True
    assert "recovery" not in result


def test_decompose_failure_exits_one(tmp_path):
    # the residual floor is float rounding, so this break tolerance is
    # unreachable
    inst, out = tmp_path / "inst.json", tmp_path / "dec.json"
    run("gen", "--n", 3, "--d", 2, "--s", 2, "--seed", 5, "--out", inst)
    code = run("decompose", "--input", inst, "--out", out, "--tol-break", 1e-18)
    assert code == 1
    assert json.loads(out.read_text())["success"] is False


def test_decompose_project_flag_accepts_off_cone_input(tmp_path):
    src, out = tmp_path / "mat.json", tmp_path / "dec.json"
    inst = random_instance(3, 2, 2, 33)
    noisy = inst.X + 1e-10 * np.eye(10)
    save_json(matrix_to_dict(noisy, 3, 2), src)
    assert run("decompose", "--input", src, "--out", out, "--project") == 0


def test_sweep_cli_writes_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    assert run("sweep", "--d", 2, "--n", 3, "--s-min", 2, "--s-max", 2,
               "--trials", 2, "--seed", 12, "--out", out) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "d,n,s,seed,r,e_w,e_z,max_rank,ranks,success,restarts,wall_time_s"
    assert len(lines) == 1 + 2 + 1


def test_ranks_cli_writes_csv(tmp_path):
    out = tmp_path / "ranks.csv"
    assert run("ranks", "--d", 2, "--n", 3, "--s", 4, "--trials", 2,
               "--seed", 12, "--out", out) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "d,n,s,seed,ranks,extreme,success"
    assert len(lines) == 3


def test_table1_cli(capsys):
    assert run("table1") == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("PASS")
    assert out.count("ok") == 12


def test_sdp_solve_cli(tmp_path, capsys):
    prob = tmp_path / "prob.json"
    prob.write_text(json.dumps({
        "B": [[1.0, 0.0], [0.0, -1.0]],
        "constraints": [{"A": [[1.0, 0.0], [0.0, 1.0]], "b": 1.0}],
    }))
    assert run("sdp-solve", "--input", prob) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "optimal"
    assert report["objective"] == pytest.approx(-1.0, abs=1e-7)


def test_sdp_solve_infeasible_exits_one(tmp_path, capsys):
    prob = tmp_path / "prob.json"
    prob.write_text(json.dumps({
        "B": [[1.0, 0.0], [0.0, -1.0]],
        "constraints": [
            {"A": [[1.0, 0.0], [0.0, 1.0]], "b": 1.0},
            {"A": [[1.0, 0.0], [0.0, 1.0]], "b": 2.0},
        ],
    }))
    assert run("sdp-solve", "--input", prob) == 1
    assert json.loads(capsys.readouterr().out)["status"] != "optimal"


def test_usage_errors_exit_two(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run("sweep", "--d", 2, "--n", 3, "--s-min", 1, "--s-max", 3,
            "--out", tmp_path / "x.csv")
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("gen", "--n", 3)  # missing required arguments
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("no-such-command")
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("decompose", "--input", tmp_path / "absent.json", "--out",
            tmp_path / "dec.json")
    assert exc.value.code == 2
