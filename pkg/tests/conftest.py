import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from cliffordsim.circuit import parse_circuit
from cliffordsim.pauli import PauliString

ACCEPTANCE_RESULTS: list[tuple[int, str, bool]] = []

THREE_QUBIT = """\
qubits 3
y 0
h 1
x 2
measure 0
measure 1
measure 2
"""

FOUR_QUBIT = """\
qubits 4
cnot 0 1
h 2
s 3
x 0
s 1
cnot 2 3
measure 0
measure 1
measure 2
measure 3
"""


@st.composite
def pauli_strings(draw, n=None, hermitian=False, max_n=8):
    if n is None:
        n = draw(st.integers(1, max_n))
    x = draw(st.integers(0, (1 << n) - 1))
    z = draw(st.integers(0, (1 << n) - 1))
    phase = draw(st.sampled_from([0, 2] if hermitian else [0, 1, 2, 3]))
    return PauliString(n, x, z, phase)


def all_paulis(n, phases=(0,)):
    for x, z, k in itertools.product(range(1 << n), range(1 << n), phases):
        yield PauliString(n, x, z, k)


def brute_force_group(generators):
    """Every product of a subset of generators, as (x, z, phase) triples."""
    n = generators[0].n
    group = set()
    for mask in range(1 << len(generators)):
        acc = PauliString(n)
        for j, g in enumerate(generators):
            if mask >> j & 1:
                acc = acc * g
        group.add((acc.x, acc.z, acc.phase))
    return group


@pytest.fixture
def three_qubit_circuit():
    return parse_circuit(THREE_QUBIT)


@pytest.fixture
def four_qubit_circuit():
    return parse_circuit(FOUR_QUBIT)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, ok in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {desc}")
