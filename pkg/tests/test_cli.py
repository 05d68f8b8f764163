import json
import subprocess
import sys

import pytest

from walshlab.cli import main
from walshlab.blocks import load_plan
from walshlab.greedy import CoefficientList, save_coefficients
from walshlab.spectra import load_spectrum, save_spectrum, WalshSpectrum


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_basis_info(capsys):
    code, out, _ = run_cli(capsys, "basis", "info", "--plan", "desk")
    assert code == 0
    doc = json.loads(out)
    assert doc["g"] == [2, 4, 8]
    assert doc["N"] == [4, 16, 256]
    assert doc["F"] == [3, 18, 273]
    assert doc["democracy_condition"] is True
    assert doc["lambda_separation"] is False


def test_basis_info_paper_huge_ints(capsys):
    code, out, _ = run_cli(capsys, "basis", "info", "--plan", "paper")
    assert code == 0
    doc = json.loads(out)
    assert doc["N"][1] == 2**100


def test_basis_element(tmp_path, capsys):
    out_path = tmp_path / "psi.json"
    code, _, _ = run_cli(
        capsys, "basis", "element", "--plan", "desk", "-k", "2", "-i", "3",
        "--out", str(out_path),
    )
    assert code == 0
    assert load_spectrum(out_path) == load_plan("desk").psi_spectrum(2, 3)


def test_basis_element_cap_exit3(tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "basis", "element", "--plan", "paper", "-k", "2", "-i", "1",
        "--out", str(tmp_path / "x.json"),
    )
    assert code == 3
    assert "cap" in err


def test_basis_element_bad_index_exit2(tmp_path, capsys):
    code, _, _ = run_cli(
        capsys, "basis", "element", "--plan", "desk", "-k", "9", "-i", "1",
        "--out", str(tmp_path / "x.json"),
    )
    assert code == 2


def test_norm_engines(tmp_path, capsys):
    spec_path = tmp_path / "f.json"
    save_spectrum(WalshSpectrum({0: 1.0, 1: 1.0}), spec_path)
    for engine, extra in (("dense", []), ("even", []), ("mc", ["--samples", "4000"])):
        code, out, _ = run_cli(
            capsys, "norm", "--p", "4", "--engine", engine,
            "--in", str(spec_path), *extra,
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["value"] == pytest.approx(8.0 ** 0.25, rel=0.05)
    code, out, _ = run_cli(
        capsys, "norm", "--p", "3", "--engine", "even", "--in", str(spec_path)
    )
    assert code == 2


def test_norm_depth_refusal_exit3(tmp_path, capsys):
    spec_path = tmp_path / "deep.json"
    save_spectrum(WalshSpectrum({1 << 30: 1.0}), spec_path)
    code, _, err = run_cli(
        capsys, "norm", "--p", "2.5", "--engine", "dense", "--in", str(spec_path)
    )
    assert code == 3


def test_norm_missing_file_exit2(capsys):
    code, _, _ = run_cli(
        capsys, "norm", "--p", "2", "--engine", "dense", "--in", "/nope.json"
    )
    assert code == 2


def test_greedy_run(tmp_path, capsys):
    coeffs = CoefficientList.from_pairs([(1, 0.9), (2, 0.5), (7, -0.4)])
    cpath = tmp_path / "coeffs.json"
    save_coefficients(coeffs, cpath)
    out_path = tmp_path / "trace.csv"
    code, out, _ = run_cli(
        capsys, "greedy", "run", "--plan", "desk", "--in", str(cpath),
        "--m-max", "3", "--p", "4", "--out", str(out_path),
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0].split(",")[:4] == ["m", "selected", "coefficient", "residual_l2"]
    assert len(lines) == 4
    assert lines[1].split(",")[1] == "1"  # largest coefficient first


def test_experiment_cli(tmp_path, capsys):
    cfg = {
        "plan": "desk",
        "p": [2, 4],
        "trials": 20,
        "seed": 42,
        "max_terms": 8,
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out_path = tmp_path / "results.csv"
    code, out, _ = run_cli(
        capsys, "experiment", "khintchine", "--config", str(cfg_path),
        "--out", str(out_path),
    )
    assert code == 0
    summary = json.loads(out)
    assert summary["experiment"] == "khintchine"
    assert summary["rows"] == 40
    lines = out_path.read_text().splitlines()
    assert len(lines) == 41


def test_experiment_bad_config_exit2(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"plan": "unknown-preset"}))
    code, _, _ = run_cli(
        capsys, "experiment", "khintchine", "--config", str(cfg_path),
        "--out", str(tmp_path / "r.csv"),
    )
    assert code == 2
    cfg_path.write_text("{not json")
    code, _, _ = run_cli(
        capsys, "experiment", "khintchine", "--config", str(cfg_path),
        "--out", str(tmp_path / "r.csv"),
    )
    assert code == 2


def test_console_script_installed(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "walshlab.cli", "basis", "info", "--plan", "desk"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["g"] == [2, 4, 8]
