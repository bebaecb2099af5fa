"""Circuit text format, parser and the shot runner.

Format (UTF-8, one statement per line, ``#`` starts a comment, keywords are
case-insensitive, qubit indices are 0-based decimals)::

    qubits 3
    y 0
    h 1
    x 2
    cnot 0 1      # control, target
    measure 0
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .clifford import GATE_KINDS, Gate
from .stabilizer import PhiloxSource, StabilizerState

__all__ = [
    "Measure",
    "Instruction",
    "Circuit",
    "CircuitParseError",
    "ShotResult",
    "parse_circuit",
    "load_circuit",
    "format_circuit",
    "run_shots",
    "sample_histogram",
    "histogram_json",
    "random_circuit",
]


@dataclass(frozen=True)
class Measure:
    qubit: int

    def __str__(self) -> str:
        return f"measure {self.qubit}"


Instruction = Union[Gate, Measure]


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    instructions: tuple[Instruction, ...] = ()

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError(f"circuit needs at least one qubit, got {self.n_qubits}")
        object.__setattr__(self, "instructions", tuple(self.instructions))
        for ins in self.instructions:
            qubits = ins.qubits if isinstance(ins, Gate) else (ins.qubit,)
            if any(not 0 <= q < self.n_qubits for q in qubits):
                raise ValueError(f"{ins} out of range for {self.n_qubits} qubits")

    @property
    def num_measurements(self) -> int:
        return sum(isinstance(ins, Measure) for ins in self.instructions)


class CircuitParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


_INDEX = re.compile(r"[0-9]+")


def _index(token: str, lineno: int) -> int:
    if not _INDEX.fullmatch(token):
        raise CircuitParseError(lineno, f"operand {token!r} is not a non-negative integer")
    return int(token)


def parse_circuit(text: str) -> Circuit:
    n = None
    instructions: list[Instruction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        word, args = tokens[0].lower(), tokens[1:]
        if n is None:
            if word != "qubits":
                raise CircuitParseError(lineno, f"expected 'qubits N' header, got {tokens[0]!r}")
            if len(args) != 1:
                raise CircuitParseError(lineno, "'qubits' takes exactly one operand")
            n = _index(args[0], lineno)
            if n < 1:
                raise CircuitParseError(lineno, "circuit needs at least one qubit")
            continue
        if word == "qubits":
            raise CircuitParseError(lineno, "duplicate 'qubits' header")
        if word == "measure":
            kind, arity = "MEASURE", 1
        elif word.upper() in GATE_KINDS:
            kind = word.upper()
            arity = 2 if kind == "CNOT" else 1
        else:
            raise CircuitParseError(lineno, f"unknown keyword {tokens[0]!r}")
        if len(args) != arity:
            raise CircuitParseError(lineno, f"{word} takes {arity} operand(s), got {len(args)}")
        qubits = [_index(a, lineno) for a in args]
        for q in qubits:
            if q >= n:
                raise CircuitParseError(lineno, f"qubit index {q} out of range for {n} qubits")
        if kind == "CNOT" and qubits[0] == qubits[1]:
            raise CircuitParseError(lineno, "cnot control equals target")
        instructions.append(Measure(qubits[0]) if kind == "MEASURE" else Gate(kind, tuple(qubits)))
    if n is None:
        raise CircuitParseError(max(1, len(text.splitlines())), "missing 'qubits N' header")
    return Circuit(n, tuple(instructions))


def load_circuit(path: str | Path) -> Circuit:
    return parse_circuit(Path(path).read_text(encoding="utf-8"))


def format_circuit(c: Circuit) -> str:
    lines = [f"qubits {c.n_qubits}"]
    for ins in c.instructions:
        if isinstance(ins, Measure):
            lines.append(str(ins))
        else:
            lines.append(" ".join([ins.kind.lower(), *map(str, ins.qubits)]))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ShotResult:
    bits: tuple[int, ...]
    deterministic: tuple[bool, ...]

    @property
    def eigenvalues(self) -> tuple[int, ...]:
        return tuple(1 - 2 * b for b in self.bits)

    @property
    def bitstring(self) -> str:
        return "".join(map(str, self.bits))


def _prepared(c: Circuit) -> tuple[StabilizerState, int]:
    """State after the leading gates, which are shared by every shot."""
    state = StabilizerState(c.n_qubits)
    start = 0
    for ins in c.instructions:
        if isinstance(ins, Measure):
            break
        state.apply(ins)
        start += 1
    if start < len(c.instructions):
        # warm the group basis once so that clones inherit it
        state.membership(state.generator(0))
    return state, start


def run_shots(c: Circuit, shots: int, seed: int = 0) -> list[ShotResult]:
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    prepared, start = _prepared(c)
    rest = c.instructions[start:]
    results = []
    for shot in range(shots):
        state = prepared.copy()
        rng = PhiloxSource.for_shot(seed, shot)
        bits, flags = [], []
        for ins in rest:
            if isinstance(ins, Measure):
                out = state.measure(ins.qubit, rng)
                bits.append(out.bit)
                flags.append(out.deterministic)
            else:
                state.apply(ins)
        results.append(ShotResult(tuple(bits), tuple(flags)))
    return results


def sample_histogram(c: Circuit, shots: int, seed: int = 0) -> dict[str, int]:
    counts = Counter(r.bitstring for r in run_shots(c, shots, seed))
    return dict(sorted(counts.items()))


def histogram_json(counts: dict[str, int], shots: int, seed: int) -> str:
    return json.dumps({"shots": shots, "seed": seed, "counts": counts}, sort_keys=False)


def random_circuit(
    n: int, depth: int, measurements: int, rng: np.random.Generator
) -> Circuit:
    """``depth`` gates drawn uniformly from the gate set, with measurements mixed in.

    Measurement sites land at random positions; qubits are uniform.
    CNOT is only drawn when ``n >= 2``.
    """
    kinds = GATE_KINDS if n >= 2 else GATE_KINDS[:-1]
    body: list[Instruction] = []
    for _ in range(depth):
        kind = kinds[rng.integers(len(kinds))]
        if kind == "CNOT":
            c, t = rng.choice(n, size=2, replace=False)
            body.append(Gate(kind, (int(c), int(t))))
        else:
            body.append(Gate(kind, (int(rng.integers(n)),)))
    for _ in range(measurements):
        pos = int(rng.integers(len(body) + 1))
        body.insert(pos, Measure(int(rng.integers(n))))
    return Circuit(n, tuple(body))
