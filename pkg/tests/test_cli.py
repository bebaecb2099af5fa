import json
import subprocess
import sys

import pytest

from cliffordsim import clifford
from cliffordsim.cli import EXIT_OK, EXIT_PARSE, EXIT_USAGE, EXIT_VERIFY, main

from .conftest import FOUR_QUBIT, THREE_QUBIT


@pytest.fixture
def three_file(tmp_path):
    path = tmp_path / "three.txt"
    path.write_text(THREE_QUBIT, encoding="utf-8")
    return str(path)


@pytest.fixture
def four_file(tmp_path):
    path = tmp_path / "four.txt"
    path.write_text(FOUR_QUBIT, encoding="utf-8")
    return str(path)


@pytest.fixture
def corrupted_engine(monkeypatch):
    bad = dict(clifford.CNOT_RULES)
    bad["XI"] = "+XI"
    monkeypatch.setattr(clifford, "TABLES", clifford.compile_rules(clifford.SINGLE_QUBIT_RULES, bad))


def test_run_text(three_file, capsys):
    assert main(["run", three_file, "--shots", "10000"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# shots=10000 seed=0"
    counts = {k: int(v) for k, v in (ln.split() for ln in lines[1:])}
    assert set(counts) == {"101", "111"}
    assert sum(counts.values()) == 10000


def test_run_json(four_file, capsys):
    assert main(["run", four_file, "--shots", "300", "--seed", "4", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["shots"] == 300 and doc["seed"] == 4
    assert set(doc["counts"]) == {"1000", "1011"}


def test_run_verbose_shows_eigenvalues(three_file, capsys):
    main(["run", three_file, "--shots", "50", "-v"])
    out = capsys.readouterr().out
    assert "(-1,+1,-1)" in out or "(-1,-1,-1)" in out


def test_run_deterministic_single_shot(three_file, capsys):
    main(["run", three_file, "--shots", "1", "--seed", "17"])
    first = capsys.readouterr().out
    main(["run", three_file, "--shots", "1", "--seed", "17"])
    assert capsys.readouterr().out == first


def test_run_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("qubits 2\nh 0\nfoo 1\n", encoding="utf-8")
    assert main(["run", str(path)]) == EXIT_PARSE
    assert "line 3" in capsys.readouterr().err


def test_run_missing_file(capsys):
    assert main(["run", "/nonexistent/circuit.txt"]) == EXIT_USAGE
    assert "No such file" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["run"], ["run", "x", "--shots", "0"], ["run", "x", "--seed", "-1"],
     ["rules", "--format", "xml"]],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_verify_ok(three_file, four_file, capsys):
    assert main(["verify", four_file]) == EXIT_OK
    assert main(["verify", three_file, "--seed", "3"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("OK:")


def test_verify_json(four_file, capsys):
    assert main(["verify", four_file, "--format", "json", "--trials", "2"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] and doc["mismatches"] == [] and len(doc["sites"]) == 8


def test_verify_width_limit(tmp_path, capsys):
    path = tmp_path / "wide.txt"
    path.write_text("qubits 11\nh 0\n", encoding="utf-8")
    assert main(["verify", str(path)]) == EXIT_USAGE
    assert "at most 10" in capsys.readouterr().err


def test_verify_fails_on_corrupted_engine(four_file, corrupted_engine, capsys):
    assert main(["verify", four_file]) == EXIT_VERIFY
    assert "FAIL" in capsys.readouterr().out


def test_rules_text(capsys):
    assert main(["rules"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "HXH† = Z" in out
    assert "CNOT: Y⊗Y → −X⊗Z" in out
    rows = [ln for ln in out.splitlines() if ln.startswith(("PASS", "FAIL"))]
    assert len(rows) == 31 and all(r.startswith("PASS") for r in rows)


def test_rules_json(capsys):
    assert main(["rules", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] and len(doc["rules"]) == 31


def test_rules_report_corruption(corrupted_engine, capsys):
    assert main(["rules"]) == EXIT_VERIFY
    assert "FAIL  CNOT: X⊗I → X⊗I" in capsys.readouterr().out


def test_module_entry_point(three_file):
    proc = subprocess.run(
        [sys.executable, "-m", "cliffordsim", "run", three_file, "--shots", "20", "--format", "json"],
        capture_output=True, text=True, encoding="utf-8",
    )
    assert proc.returncode == 0
    assert set(json.loads(proc.stdout)["counts"]) <= {"101", "111"}
