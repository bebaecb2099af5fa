"""Explicit matrices of the Pauli axes and Clifford gates (computational basis).

Two-qubit operators act on ``|c t>`` with the control as the more
significant tensor factor.
"""

import numpy as np

from .pauli import PauliString

SQRT_HALF = 1 / np.sqrt(2)

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

GATE_MATRICES = {
    "X": PAULI_MATRICES["X"],
    "Y": PAULI_MATRICES["Y"],
    "Z": PAULI_MATRICES["Z"],
    "H": SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
}

PHASES = (1, 1j, -1, -1j)


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense ``2**n x 2**n`` matrix of ``p``; qubit 0 is the leftmost factor."""
    out = np.array([[PHASES[p.phase]]], dtype=complex)
    for ax in p.axes:
        out = np.kron(out, PAULI_MATRICES[ax.name])
    return out


def letters_matrix(letters: str) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for ch in letters:
        out = np.kron(out, PAULI_MATRICES[ch])
    return out
