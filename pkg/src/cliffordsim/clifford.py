"""Conjugation of Pauli strings by Clifford gates through lookup tables.

The rules are transcribed one-to-one from the standard list
(``H X H^dagger = Z`` and so on).  :func:`compile_rules` turns them into
index tables keyed by the internal axis code ``2*x + z`` so that both
:func:`conjugate` and the tableau engine update bits by lookup alone;
:func:`verify_rule_tables` re-derives every entry by matrix multiplication.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .matrices import GATE_MATRICES, letters_matrix
from .pauli import PauliAxis, PauliString

__all__ = [
    "Gate",
    "GATE_KINDS",
    "SINGLE_QUBIT_RULES",
    "CNOT_RULES",
    "RuleTables",
    "TABLES",
    "compile_rules",
    "conjugate",
    "RuleCheck",
    "verify_rule_tables",
]

SINGLE_QUBIT_KINDS = ("X", "Y", "Z", "H", "S")
GATE_KINDS = SINGLE_QUBIT_KINDS + ("CNOT",)

# U P U^dagger for P in {X, Y, Z}; I always maps to +I.
SINGLE_QUBIT_RULES: dict[str, dict[str, str]] = {
    "H": {"X": "+Z", "Y": "-Y", "Z": "+X"},
    "S": {"X": "+Y", "Y": "-X", "Z": "+Z"},
    "X": {"X": "+X", "Y": "-Y", "Z": "-Z"},
    "Y": {"X": "-X", "Y": "+Y", "Z": "-Z"},
    "Z": {"X": "-X", "Y": "-Y", "Z": "+Z"},
}

# CNOT (P_control (x) P_target) CNOT^dagger, control letter first.
CNOT_RULES: dict[str, str] = {
    "II": "+II",
    "IZ": "+ZZ",
    "ZI": "+ZI",
    "ZZ": "+IZ",
    "IX": "+IX",
    "XI": "+XX",
    "XX": "+XI",
    "ZX": "+ZX",
    "XZ": "-YY",
    "IY": "+ZY",
    "YI": "+YX",
    "XY": "+YZ",
    "YX": "+YI",
    "ZY": "+IY",
    "YZ": "+XY",
    "YY": "-XZ",
}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate {self.kind!r}")
        arity = 2 if self.kind == "CNOT" else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} operand(s), got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError("CNOT control equals target")

    @classmethod
    def of(cls, kind: str, *qubits: int) -> "Gate":
        return cls(kind.upper(), tuple(qubits))

    def check_width(self, n: int) -> None:
        for q in self.qubits:
            if q >= n:
                raise IndexError(f"{self} operand {q} out of range for {n} qubits")

    def __str__(self) -> str:
        return f"{self.kind}@{','.join(map(str, self.qubits))}"


def _code(letter: str) -> int:
    bx, bz = PauliAxis[letter].xz
    return 2 * bx + bz


@dataclass(frozen=True)
class RuleTables:
    """Lookup arrays: new x bit, new z bit and sign flip per input code."""

    single: dict[str, tuple[np.ndarray, np.ndarray, np.ndarray]]
    cnot: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    single_rules: dict[str, dict[str, str]]
    cnot_rules: dict[str, str]


def compile_rules(
    single_rules: dict[str, dict[str, str]] = SINGLE_QUBIT_RULES,
    cnot_rules: dict[str, str] = CNOT_RULES,
) -> RuleTables:
    single = {}
    for kind, rules in single_rules.items():
        new_x = np.zeros(4, dtype=np.uint8)
        new_z = np.zeros(4, dtype=np.uint8)
        flip = np.zeros(4, dtype=np.uint8)
        for letter, image in rules.items():
            code = _code(letter)
            new_x[code], new_z[code] = PauliAxis[image[1]].xz
            flip[code] = image[0] == "-"
        single[kind] = (new_x, new_z, flip)

    # index: 4 * control_code + target_code
    cnot = tuple(np.zeros(16, dtype=np.uint8) for _ in range(5))
    for pair, image in cnot_rules.items():
        idx = 4 * _code(pair[0]) + _code(pair[1])
        cnot[0][idx], cnot[1][idx] = PauliAxis[image[1]].xz
        cnot[2][idx], cnot[3][idx] = PauliAxis[image[2]].xz
        cnot[4][idx] = image[0] == "-"
    return RuleTables(single, cnot, dict(single_rules), dict(cnot_rules))


TABLES = compile_rules()


def conjugate(g: Gate, p: PauliString, tables: RuleTables | None = None) -> PauliString:
    """Return ``U p U^dagger`` for the gate ``g``; ``p`` is left untouched."""
    tables = tables or TABLES
    g.check_width(p.n)
    x, z, phase = p.x, p.z, p.phase
    if g.kind == "CNOT":
        c, t = g.qubits
        idx = 4 * (2 * (x >> c & 1) + (z >> c & 1)) + 2 * (x >> t & 1) + (z >> t & 1)
        xc, zc, xt, zt, flip = (int(a[idx]) for a in tables.cnot)
        mask = (1 << c) | (1 << t)
        x = (x & ~mask) | (xc << c) | (xt << t)
        z = (z & ~mask) | (zc << c) | (zt << t)
    else:
        (q,) = g.qubits
        new_x, new_z, flips = tables.single[g.kind]
        code = 2 * (x >> q & 1) + (z >> q & 1)
        flip = int(flips[code])
        x = (x & ~(1 << q)) | (int(new_x[code]) << q)
        z = (z & ~(1 << q)) | (int(new_z[code]) << q)
    return PauliString(p.n, x, z, phase + 2 * flip)


@dataclass(frozen=True)
class RuleCheck:
    label: str
    table_image: str
    matrix_image: str

    @property
    def passed(self) -> bool:
        return self.table_image == self.matrix_image


def _signed_pauli_of(m: np.ndarray, k: int) -> str:
    """Identify ``m`` as ``+/-`` a k-qubit Pauli product, else ``"?"``."""
    for letters in itertools.product("IXYZ", repeat=k):
        ref = letters_matrix("".join(letters))
        for sign, s in ((1, "+"), (-1, "-")):
            if np.allclose(m, sign * ref, atol=1e-9):
                return s + "".join(letters)
    return "?"


def _pretty(signed: str, sep: str = "") -> str:
    sign = "−" if signed[0] == "-" else ""
    return sign + sep.join(signed[1:])


def verify_rule_tables(tables: RuleTables | None = None) -> list[RuleCheck]:
    """Check every table entry against ``U P U^dagger`` computed from matrices."""
    tables = tables or TABLES
    checks = []
    for kind in SINGLE_QUBIT_KINDS:
        u = GATE_MATRICES[kind]
        for letter in "XYZ":
            image = tables.single_rules[kind][letter]
            actual = _signed_pauli_of(u @ letters_matrix(letter) @ u.conj().T, 1)
            label = f"{kind}{letter}{kind}† = {_pretty(image)}"
            checks.append(RuleCheck(label, image, actual))
    u = GATE_MATRICES["CNOT"]
    for a, b in itertools.product("IXYZ", repeat=2):
        image = tables.cnot_rules[a + b]
        actual = _signed_pauli_of(u @ letters_matrix(a + b) @ u.conj().T, 2)
        label = f"CNOT: {a}⊗{b} → {_pretty(image, chr(0x2297))}"
        checks.append(RuleCheck(label, image, actual))
    return checks
