import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffordsim.circuit import (
    Circuit,
    CircuitParseError,
    Measure,
    format_circuit,
    histogram_json,
    parse_circuit,
    random_circuit,
    run_shots,
    sample_histogram,
)
from cliffordsim.clifford import Gate
from cliffordsim.gf2 import affine_closed
from cliffordsim.oracle import StateVector

from .conftest import THREE_QUBIT


def test_parse_three_qubit_circuit(three_qubit_circuit):
    c = three_qubit_circuit
    assert c.n_qubits == 3
    assert c.instructions == (
        Gate.of("Y", 0), Gate.of("H", 1), Gate.of("X", 2),
        Measure(0), Measure(1), Measure(2),
    )
    assert c.num_measurements == 3


def test_parse_comments_and_case():
    c = parse_circuit("# header comment\n\nQUBITS 2  # two\nCNOT 0 1\n  Measure 1 # m\n")
    assert c == Circuit(2, (Gate.of("CNOT", 0, 1), Measure(1)))


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("qubits 2\ncnot 0 0", 2, "control equals target"),
        ("h 0", 1, "header"),
        ("", 1, "missing"),
        ("# only a comment\n", 1, "missing"),
        ("qubits 2\nh 2", 2, "out of range"),
        ("qubits 2\nt 0", 2, "unknown keyword"),
        ("qubits 2\nh one", 2, "not a non-negative integer"),
        ("qubits 2\nh -1", 2, "not a non-negative integer"),
        ("qubits 2\n\nh 0 1", 3, "operand"),
        ("qubits 2\ncnot 0", 2, "operand"),
        ("qubits 0", 1, "at least one"),
        ("qubits", 1, "one operand"),
        ("qubits 2\nqubits 3", 2, "duplicate"),
        ("qubits 2\nmeasure 1.0", 2, "integer"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(CircuitParseError) as info:
        parse_circuit(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


@settings(max_examples=300)
@given(st.text(alphabet=st.sampled_from(list("qubitsmeasurecnothxyz 0123456789#\n\t-.Q")), max_size=80))
def test_parser_is_total(text):
    try:
        c = parse_circuit(text)
    except CircuitParseError as exc:
        assert exc.line >= 1
    else:
        assert isinstance(c, Circuit)


@settings(max_examples=100)
@given(st.text(max_size=60))
def test_parser_is_total_on_arbitrary_text(text):
    try:
        parse_circuit(text)
    except CircuitParseError:
        pass


@pytest.mark.parametrize("seed", range(5))
def test_format_roundtrip(seed):
    c = random_circuit(4, 20, 5, np.random.default_rng(seed))
    assert parse_circuit(format_circuit(c)) == c


def test_measure_zero_qubit_always_zero():
    c = parse_circuit("qubits 1\nmeasure 0")
    assert all(r.bits == (0,) and r.deterministic == (True,) for r in run_shots(c, 20, 3))
    assert sample_histogram(c, 5, 0) == {"0": 5}


def test_run_shots_three_qubit(three_qubit_circuit):
    for r in run_shots(three_qubit_circuit, 200, seed=11):
        assert r.bits[0] == 1 and r.bits[2] == 1
        assert r.deterministic == (True, False, True)
        assert r.eigenvalues[0] == -1


def test_run_shots_four_qubit(four_qubit_circuit):
    for r in run_shots(four_qubit_circuit, 200, seed=5):
        assert r.bits[0] == 1 and r.bits[1] == 0
        assert r.bits[2] == r.bits[3]


def test_no_measurements():
    c = parse_circuit("qubits 2\nh 0\ncnot 0 1")
    assert all(r.bits == () for r in run_shots(c, 4))
    assert sample_histogram(c, 4) == {"": 4}


def test_run_shots_rejects_zero_shots(three_qubit_circuit):
    with pytest.raises(ValueError):
        run_shots(three_qubit_circuit, 0)


def test_histogram_support(three_qubit_circuit, four_qubit_circuit):
    assert set(sample_histogram(three_qubit_circuit, 10000, 0)) == {"101", "111"}
    assert set(sample_histogram(four_qubit_circuit, 10000, 0)) == {"1000", "1011"}


def test_histogram_reproducible():
    c = parse_circuit(THREE_QUBIT)
    a = histogram_json(sample_histogram(c, 500, 42), 500, 42)
    b = histogram_json(sample_histogram(c, 500, 42), 500, 42)
    assert a == b
    doc = json.loads(a)
    assert doc["shots"] == 500 and doc["seed"] == 42
    assert sum(doc["counts"].values()) == 500
    assert list(doc["counts"]) == sorted(doc["counts"])


def test_shot_streams_do_not_depend_on_shot_count():
    c = parse_circuit("qubits 3\nh 0\nh 1\nh 2\nmeasure 0\nmeasure 1\nmeasure 2")
    assert run_shots(c, 10, 9) == run_shots(c, 30, 9)[:10]
    assert run_shots(c, 30, 9) != run_shots(c, 30, 10)


def test_mid_circuit_measurement():
    c = parse_circuit("qubits 2\nh 0\nmeasure 0\ncnot 0 1\nmeasure 1\nh 0\nmeasure 0")
    for r in run_shots(c, 100, 1):
        assert r.bits[0] == r.bits[1]
        assert r.deterministic == (False, True, False)


def oracle_support(c):
    """Bitstrings with nonzero probability, for terminal measurements of every qubit."""
    sv = StateVector.zero(c.n_qubits)
    for ins in c.instructions:
        sv.apply(ins)
    probs = np.abs(sv.amps) ** 2
    return {format(i, f"0{c.n_qubits}b") for i in np.flatnonzero(probs > 1e-9)}


@pytest.mark.parametrize("seed", range(15))
def test_histogram_support_is_affine_and_matches_oracle(seed):
    rng = np.random.default_rng(700 + seed)
    n = int(rng.integers(1, 6))
    gates = random_circuit(n, 25, 0, rng)
    c = Circuit(n, gates.instructions + tuple(Measure(q) for q in range(n)))
    counts = sample_histogram(c, 400, seed)
    support = oracle_support(gates)
    assert set(counts) <= support
    assert affine_closed(int(b, 2) for b in support)
    # 400 shots over at most 32 equally likely strings leaves nothing unseen
    assert set(counts) == support
