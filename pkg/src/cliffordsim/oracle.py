"""Dense statevector reference simulator and engine cross-validation.

Amplitudes are indexed so that qubit 0 is the most significant bit, which
matches the left-to-right reading of Pauli strings and bitstrings.  Only
meant for small widths (``MAX_QUBITS``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Measure, ShotResult
from .clifford import Gate
from .matrices import GATE_MATRICES, PAULI_MATRICES, PHASES
from .pauli import PauliString
from .stabilizer import PhiloxSource, StabilizerState

__all__ = [
    "MAX_QUBITS",
    "MAX_VALIDATE_QUBITS",
    "ATOL",
    "OracleWidthError",
    "StateVector",
    "Eigen",
    "pauli_eigencheck",
    "simulate_dense",
    "cross_validate",
    "ValidationReport",
    "Mismatch",
    "bell_states",
    "joint_eigenspace",
]

MAX_QUBITS = 12
MAX_VALIDATE_QUBITS = 10
ATOL = 1e-9


class OracleWidthError(ValueError):
    pass


class StateVector:
    def __init__(self, amplitudes: np.ndarray) -> None:
        amps = np.asarray(amplitudes, dtype=complex)
        n = int(amps.size).bit_length() - 1
        if amps.ndim != 1 or amps.size != 1 << n or n < 1:
            raise ValueError(f"need 2**n amplitudes with n >= 1, got shape {amps.shape}")
        if n > MAX_QUBITS:
            raise OracleWidthError(f"{n} qubits exceeds the dense limit of {MAX_QUBITS}")
        self.n = n
        self.amps = amps.copy()

    @classmethod
    def zero(cls, n: int) -> "StateVector":
        if n > MAX_QUBITS:
            raise OracleWidthError(f"{n} qubits exceeds the dense limit of {MAX_QUBITS}")
        amps = np.zeros(1 << n, dtype=complex)
        amps[0] = 1
        return cls(amps)

    def copy(self) -> "StateVector":
        return StateVector(self.amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def _tensor(self) -> np.ndarray:
        return self.amps.reshape((2,) * self.n)

    def _slices(self, q: int) -> tuple[tuple, tuple]:
        lo = [slice(None)] * self.n
        hi = [slice(None)] * self.n
        lo[q], hi[q] = 0, 1
        return tuple(lo), tuple(hi)

    def apply_single(self, u: np.ndarray, q: int) -> "StateVector":
        psi = self._tensor()
        lo, hi = self._slices(q)
        a0, a1 = psi[lo].copy(), psi[hi].copy()
        psi[lo] = u[0, 0] * a0 + u[0, 1] * a1
        psi[hi] = u[1, 0] * a0 + u[1, 1] * a1
        return self

    def apply_cnot(self, c: int, t: int) -> "StateVector":
        psi = self._tensor()
        _, hi = self._slices(c)
        sub = psi[hi]  # view on control = 1
        tt = t if t < c else t - 1
        lo_t = [slice(None)] * (self.n - 1)
        hi_t = [slice(None)] * (self.n - 1)
        lo_t[tt], hi_t[tt] = 0, 1
        a0 = sub[tuple(lo_t)].copy()
        sub[tuple(lo_t)] = sub[tuple(hi_t)]
        sub[tuple(hi_t)] = a0
        return self

    def apply(self, gate: Gate) -> "StateVector":
        gate.check_width(self.n)
        if gate.kind == "CNOT":
            return self.apply_cnot(*gate.qubits)
        return self.apply_single(GATE_MATRICES[gate.kind], gate.qubits[0])

    def apply_pauli(self, p: PauliString) -> "StateVector":
        """Return ``p|psi>`` as a new vector."""
        if p.n != self.n:
            raise ValueError(f"width mismatch: {p.n} vs {self.n}")
        out = self.copy()
        for q, ax in enumerate(p.axes):
            if ax.name != "I":
                out.apply_single(PAULI_MATRICES[ax.name], q)
        out.amps *= PHASES[p.phase]
        return out

    def prob_one(self, q: int) -> float:
        _, hi = self._slices(q)
        return float(np.sum(np.abs(self._tensor()[hi]) ** 2))

    def collapse(self, q: int, bit: int) -> "StateVector":
        lo, hi = self._slices(q)
        self._tensor()[hi if bit == 0 else lo] = 0
        norm = self.norm
        if norm < ATOL:
            raise ValueError(f"outcome {bit} on qubit {q} has zero probability")
        self.amps /= norm
        return self


class Eigen(enum.Enum):
    PLUS_ONE = "PlusOne"
    MINUS_ONE = "MinusOne"
    NOT_EIGENVECTOR = "NotEigenvector"


def pauli_eigencheck(p: PauliString, v: StateVector) -> Eigen:
    pv = v.apply_pauli(p).amps
    if np.allclose(pv, v.amps, atol=ATOL, rtol=0):
        return Eigen.PLUS_ONE
    if np.allclose(pv, -v.amps, atol=ATOL, rtol=0):
        return Eigen.MINUS_ONE
    return Eigen.NOT_EIGENVECTOR


def _oracle_rng(seed: int, shot: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(shot,))))


def simulate_dense(c: Circuit, seed: int = 0, shot: int = 0) -> ShotResult:
    """One shot by brute force: gate matrices, Born-rule sampling, collapse."""
    if c.n_qubits > MAX_QUBITS:
        raise OracleWidthError(f"{c.n_qubits} qubits exceeds the dense limit of {MAX_QUBITS}")
    rng = _oracle_rng(seed, shot)
    sv = StateVector.zero(c.n_qubits)
    bits, flags = [], []
    for ins in c.instructions:
        if isinstance(ins, Measure):
            p1 = sv.prob_one(ins.qubit)
            bit = int(rng.random() < p1)
            sv.collapse(ins.qubit, bit)
            bits.append(bit)
            flags.append(min(p1, 1 - p1) < ATOL)
        else:
            sv.apply(ins)
    return ShotResult(tuple(bits), tuple(flags))


@dataclass(frozen=True)
class Mismatch:
    trial: int
    index: int
    instruction: str
    detail: str

    def __str__(self) -> str:
        return f"trial {self.trial}, instruction {self.index} ({self.instruction}): {self.detail}"


@dataclass(frozen=True)
class MeasurementSite:
    trial: int
    index: int
    qubit: int
    deterministic: bool
    bit: int
    oracle_p1: float


@dataclass
class ValidationReport:
    n_qubits: int
    trials: int
    sites: list[MeasurementSite] = field(default_factory=list)
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "trials": self.trials,
            "ok": self.ok,
            "sites": [vars(s) for s in self.sites],
            "mismatches": [vars(m) for m in self.mismatches],
        }


def _check_site(p1: float, deterministic: bool, bit: int) -> str | None:
    if deterministic:
        if abs(p1 - bit) > ATOL:
            return f"engine says deterministic bit {bit}, oracle P(1) = {p1:.12g}"
    elif abs(p1 - 0.5) > ATOL:
        return f"engine says random, oracle P(1) = {p1:.12g}"
    return None


def cross_validate(c: Circuit, trials: int = 1, seed: int = 0) -> ValidationReport:
    """Run engine and oracle in lockstep and report every disagreement.

    At each measurement the oracle's exact ``P(bit = 1)`` must be 0 or 1 when
    the engine reports a deterministic outcome (and match it), and 1/2
    otherwise; the oracle then collapses onto the engine's outcome.  After
    every instruction each engine generator must fix the oracle state.
    """
    if c.n_qubits > MAX_VALIDATE_QUBITS:
        raise OracleWidthError(
            f"{c.n_qubits} qubits exceeds the validation limit of {MAX_VALIDATE_QUBITS}"
        )
    report = ValidationReport(c.n_qubits, trials)
    for trial in range(trials):
        rng = PhiloxSource(seed, (trial,))
        state = StabilizerState(c.n_qubits)
        sv = StateVector.zero(c.n_qubits)
        for index, ins in enumerate(c.instructions):
            label = str(ins)
            try:
                if isinstance(ins, Measure):
                    p1 = sv.prob_one(ins.qubit)
                    out = state.measure(ins.qubit, rng)
                    report.sites.append(
                        MeasurementSite(trial, index, ins.qubit, out.deterministic, out.bit, p1)
                    )
                    problem = _check_site(p1, out.deterministic, out.bit)
                    if problem:
                        report.mismatches.append(Mismatch(trial, index, label, problem))
                        break
                    sv.collapse(ins.qubit, out.bit)
                else:
                    state.apply(ins)
                    sv.apply(ins)
            except (ArithmeticError, RuntimeError, ValueError) as exc:
                report.mismatches.append(Mismatch(trial, index, label, f"error: {exc}"))
                break
            if abs(sv.norm - 1) > ATOL:
                report.mismatches.append(Mismatch(trial, index, label, f"norm {sv.norm!r}"))
                break
            bad = [g for g in state.generators if pauli_eigencheck(g, sv) is not Eigen.PLUS_ONE]
            if bad:
                detail = "generators do not stabilize oracle state: " + ", ".join(map(str, bad))
                report.mismatches.append(Mismatch(trial, index, label, detail))
                break
    return report


def bell_states() -> dict[str, StateVector]:
    r = 1 / np.sqrt(2)
    return {
        "phi+": StateVector(np.array([r, 0, 0, r])),
        "phi-": StateVector(np.array([r, 0, 0, -r])),
        "psi+": StateVector(np.array([0, r, r, 0])),
        "psi-": StateVector(np.array([0, r, -r, 0])),
    }


def joint_eigenspace(ops: list[np.ndarray], eigenvalue: complex = 1) -> np.ndarray:
    """Orthonormal columns spanning the common ``eigenvalue`` eigenspace of ``ops``."""
    dim = ops[0].shape[0]
    stacked = np.vstack([op - eigenvalue * np.eye(dim) for op in ops])
    _, s, vh = np.linalg.svd(stacked)
    rank = int(np.sum(s > 1e-9))
    return vh[rank:].conj().T
