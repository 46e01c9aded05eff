from __future__ import annotations

import json
import subprocess
import sys

import pytest

from chordlie.cli import EXIT_CAP, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, RunConfig, build_parser, main
from chordlie.lie import CVector, LCVector


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--max-degree", "2")
    data = json.loads(out)
    assert code == EXIT_OK and data["LC"] == [1, 3] and data["C"] == [0, 1]
    code, out, _ = run(capsys, "dims", "--max-degree", "4")
    assert json.loads(out)["LC"] == [1, 3, 15, 105]
    code, out, _ = run(capsys, "dims", "--max-degree", "1")
    assert json.loads(out)["C"] == [0]


def test_bracket(capsys):
    code, out, _ = run(capsys, "bracket", "C", "Omega2", "Omega3")
    assert code == EXIT_OK and json.loads(out) == {"algebra": "C", "terms": []}
    code, out, _ = run(capsys, "bracket", "LC", "1>2", "1>2")
    assert json.loads(out)["terms"] == []
    code, out, _ = run(capsys, "bracket", "LC", "E0", "1>2 3>4")
    payload = json.loads(out)
    assert payload == {"algebra": "LC", "terms": [{"coeff": "1", "diagram": "lin: 1>2 3>4"}]}
    assert LCVector.from_json(payload) == LCVector.parse("lin: 1>2 3>4")


def test_bracket_text_and_round_trip(capsys):
    code, out, _ = run(capsys, "bracket", "C", "D(1,2)", "D(2,5)", "--format", "text")
    z = CVector.parse(out.strip())
    code, out, _ = run(capsys, "bracket", "C", "D(1,2)", "D(2,5)")
    assert CVector.from_json(json.loads(out)) == z and len(z) == 10


def test_parse_errors_exit_2(capsys):
    code, _, err = run(capsys, "bracket", "LC", "1>1", "1>2")
    assert code == EXIT_USAGE and "position" in err
    code, _, _ = run(capsys, "bracket", "LC", "E0")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "nonsense")
    assert code == EXIT_USAGE


def test_center(capsys):
    code, out, _ = run(capsys, "center", "--m", "3")
    assert code == EXIT_OK
    assert json.loads(out) == {"m": 3, "kernel_dim": 1, "is_omega": True}
    code, _, _ = run(capsys, "center", "--m", "9")
    assert code == EXIT_CAP


def test_euler(capsys):
    code, out, _ = run(capsys, "euler", "--w", "4", "--route", "both")
    data = json.loads(out)
    assert code == EXIT_OK and data["euler"] == -570 and data["euler_ranks"] == -570


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", "--algebra", "LC", "--weight", "0")
    assert json.loads(out) == {"algebra": "LC", "weight": 0, "chain_dims": [1, 1], "betti": [1, 1], "euler": 0}
    code, _, _ = run(capsys, "homology", "--weight", "9")
    assert code == EXIT_CAP


def test_verify_oracle(capsys):
    code, out, _ = run(capsys, "verify-oracle", "--g", "3", "--max-m", "2", "--samples", "2", "--seed", "7")
    data = json.loads(out)
    assert code == EXIT_OK and data["mismatches"] == 0 and data["checked"] == 16


def test_verify_oracle_reports_mismatch(capsys, monkeypatch):
    import chordlie.cli as cli

    monkeypatch.setattr(cli, "bracket_linear", lambda x, y: x)
    code, out, err = run(capsys, "verify-oracle", "--g", "2", "--max-m", "1")
    assert code == EXIT_MISMATCH and "mismatch" in err


def test_env_overrides_and_flag_precedence(monkeypatch):
    args = build_parser().parse_args(["dims"])
    monkeypatch.setenv("CHORDLIE_MAX_DEGREE", "5")
    monkeypatch.setenv("CHORDLIE_FORMAT", "text")
    cfg = RunConfig.from_sources(args)
    assert cfg.max_degree == 5 and cfg.format == "text"
    args = build_parser().parse_args(["dims", "--max-degree", "2"])
    assert RunConfig.from_sources(args).max_degree == 2


def test_invalid_config(capsys, monkeypatch):
    monkeypatch.setenv("CHORDLIE_GENUS", "0")
    code, _, err = run(capsys, "dims")
    assert code == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "chordlie", "dims", "--max-degree", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["C"] == [0, 1, 2]
