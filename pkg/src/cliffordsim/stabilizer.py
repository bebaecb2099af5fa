"""Stabilizer-generator state and the gate / Z-measurement update rules.

A state on ``n`` qubits is held as ``n`` commuting, independent Pauli
generators with +/-1 signs, stored as two ``n x n`` bit matrices (one row per
generator) plus a sign vector.  Gates rewrite one or two columns by table
lookup.  Measuring qubit ``q`` uses ``M = Z_q``:

* ``M`` commutes with every generator: the outcome is the sign with which
  ``+/-M`` belongs to the generated group, and the state does not change.
* otherwise the outcome is a fair coin; the lowest-index anticommuting
  generator ``A`` becomes ``outcome * M`` and every other anticommuting
  generator ``g`` becomes ``g * A``.

Group membership is decided by reducing against a fully reduced GF(2)
basis of the group that is cached on the state, rebuilt after gates and
patched in place after random measurements.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Protocol, Sequence

import numpy as np

from . import clifford
from .clifford import Gate
from .gf2 import gf2_rank
from .pauli import SINGLE_PRODUCT_PHASE, PauliString, single

__all__ = [
    "Membership",
    "MeasurementOutcome",
    "RandomSource",
    "PhiloxSource",
    "ScriptedSource",
    "StabilizerState",
    "InternalEngineError",
    "init_zero_state",
    "apply_gate",
    "membership",
    "measure_z",
    "states_equivalent",
]

_PRODUCT_PHASE = np.array(SINGLE_PRODUCT_PHASE, dtype=np.int64)


class InternalEngineError(RuntimeError):
    """An engine invariant was violated; this is a bug, not a user error."""


class Membership(enum.Enum):
    PLUS = "PlusMember"
    MINUS = "MinusMember"
    NOT_IN_GROUP = "NotInGroup"


@dataclass(frozen=True)
class MeasurementOutcome:
    eigenvalue: int
    deterministic: bool

    def __post_init__(self) -> None:
        if self.eigenvalue not in (1, -1):
            raise ValueError(f"eigenvalue must be +1 or -1, got {self.eigenvalue}")

    @property
    def bit(self) -> int:
        return (1 - self.eigenvalue) // 2


class RandomSource(Protocol):
    def coin(self) -> int:
        """Return +1 or -1 with probability 1/2 each."""


class PhiloxSource:
    """Fair coin on a counter-based Philox stream keyed by ``(seed, *stream)``."""

    def __init__(self, seed: int = 0, stream: Sequence[int] = ()) -> None:
        seq = np.random.SeedSequence(seed, spawn_key=tuple(stream))
        self._gen = np.random.Generator(np.random.Philox(seq))
        self._bits: list[int] = []

    @classmethod
    def for_shot(cls, seed: int, shot: int) -> "PhiloxSource":
        return cls(seed, (shot,))

    def coin(self) -> int:
        if not self._bits:
            self._bits = self._gen.integers(0, 2, size=64).tolist()
        return 1 - 2 * self._bits.pop()


class ScriptedSource:
    """Replays a fixed list of +/-1 outcomes; for tests and worked examples."""

    def __init__(self, outcomes: Iterable[int]) -> None:
        self._outcomes = list(outcomes)
        self._pos = 0

    def coin(self) -> int:
        if self._pos >= len(self._outcomes):
            raise IndexError("scripted outcomes exhausted")
        value = self._outcomes[self._pos]
        self._pos += 1
        if value not in (1, -1):
            raise ValueError(f"scripted outcome must be +1 or -1, got {value}")
        return value


def _row_to_int(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _int_to_row(v: int, n: int) -> np.ndarray:
    raw = np.frombuffer(v.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n]


class StabilizerState:
    """``n`` stabilizer generators; row ``j`` of ``x``/``z``/``sign`` is generator ``j``."""

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"need at least one qubit, got n={n}")
        self.n = n
        self.x = np.zeros((n, n), dtype=np.uint8)
        self.z = np.eye(n, dtype=np.uint8)
        self.sign = np.zeros(n, dtype=np.uint8)
        self._basis: dict[int, PauliString] | None = None

    @classmethod
    def from_generators(cls, generators: Sequence[PauliString | str]) -> "StabilizerState":
        from .pauli import parse_pauli

        gens = [parse_pauli(g) if isinstance(g, str) else g for g in generators]
        if not gens:
            raise ValueError("empty generator list")
        state = cls(gens[0].n)
        if len(gens) != state.n:
            raise ValueError(f"{state.n} qubits need {state.n} generators, got {len(gens)}")
        for j, g in enumerate(gens):
            if g.n != state.n:
                raise ValueError(f"generator {g} has width {g.n}, expected {state.n}")
            if not g.is_hermitian:
                raise ValueError(f"generator {g} has an imaginary phase")
            state.x[j] = _int_to_row(g.x, state.n)
            state.z[j] = _int_to_row(g.z, state.n)
            state.sign[j] = g.phase // 2
        state.check_invariants()
        return state

    def copy(self) -> "StabilizerState":
        other = StabilizerState.__new__(StabilizerState)
        other.n = self.n
        other.x = self.x.copy()
        other.z = self.z.copy()
        other.sign = self.sign.copy()
        other._basis = None if self._basis is None else dict(self._basis)
        return other

    def generator(self, j: int) -> PauliString:
        return PauliString(
            self.n, _row_to_int(self.x[j]), _row_to_int(self.z[j]), 2 * int(self.sign[j])
        )

    @property
    def generators(self) -> list[PauliString]:
        return [self.generator(j) for j in range(self.n)]

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.generators)) + "}"

    def __repr__(self) -> str:
        return f"StabilizerState({self})"

    # -- invariants ---------------------------------------------------------

    def check_invariants(self) -> None:
        """Raise :class:`InternalEngineError` unless the generators are a valid state."""
        x = self.x.astype(np.int64)
        z = self.z.astype(np.int64)
        symp = (x @ z.T + z @ x.T) % 2
        if symp.any():
            i, j = np.argwhere(symp)[0]
            raise InternalEngineError(f"generators {i} and {j} anticommute")
        rows = [(_row_to_int(self.x[j]) << self.n) | _row_to_int(self.z[j]) for j in range(self.n)]
        if gf2_rank(rows) != self.n:
            raise InternalEngineError("generators are not independent")

    # -- gates --------------------------------------------------------------

    def apply(self, gate: Gate) -> "StabilizerState":
        gate.check_width(self.n)
        tables = clifford.TABLES
        x, z = self.x, self.z
        if gate.kind == "CNOT":
            c, t = gate.qubits
            idx = 4 * (2 * x[:, c] + z[:, c]) + 2 * x[:, t] + z[:, t]
            new_xc, new_zc, new_xt, new_zt, flip = tables.cnot
            x[:, c] = new_xc[idx]
            z[:, c] = new_zc[idx]
            x[:, t] = new_xt[idx]
            z[:, t] = new_zt[idx]
        else:
            (q,) = gate.qubits
            code = 2 * x[:, q] + z[:, q]
            new_x, new_z, flip = tables.single[gate.kind]
            x[:, q] = new_x[code]
            z[:, q] = new_z[code]
            idx = code
        self.sign ^= flip[idx]
        self._basis = None
        return self

    # -- group membership ---------------------------------------------------

    def _key(self, p: PauliString) -> int:
        return (p.x << self.n) | p.z

    def _reduce(self, p: PauliString) -> tuple[PauliString, bool]:
        """Multiply ``p`` on the right by basis rows to clear its pivot bits.

        Returns the remainder and whether every set bit hit a pivot.
        """
        basis = self._group_basis()
        cur = p
        v = self._key(cur)
        clean = True
        while v:
            top = v.bit_length() - 1
            row = basis.get(top)
            if row is None:
                clean = False
            else:
                cur = cur * row
            v = self._key(cur) & ((1 << top) - 1)
        return cur, clean

    def _insert(self, basis: dict[int, PauliString], p: PauliString) -> None:
        self._basis = basis
        p, _ = self._reduce(p)
        v = self._key(p)
        if v == 0:
            raise InternalEngineError(f"{p} is dependent on the current generators")
        top = v.bit_length() - 1
        for piv, row in basis.items():
            if (self._key(row) >> top) & 1:
                basis[piv] = row * p
        basis[top] = p

    def _group_basis(self) -> dict[int, PauliString]:
        if self._basis is None:
            basis: dict[int, PauliString] = {}
            for g in self.generators:
                self._insert(basis, g)
            self._basis = basis
        return self._basis

    def membership(self, p: PauliString) -> Membership:
        if p.n != self.n:
            raise ValueError(f"length mismatch: {p.n} vs {self.n} qubits")
        if not p.is_hermitian:
            raise ValueError(f"{p} has an imaginary phase")
        rest, clean = self._reduce(p)
        if not clean or rest.x or rest.z:
            return Membership.NOT_IN_GROUP
        # p * (product of group elements) = i**k I, so i**k p is in the group
        if rest.phase == 0:
            return Membership.PLUS
        if rest.phase == 2:
            return Membership.MINUS
        return Membership.NOT_IN_GROUP

    # -- measurement --------------------------------------------------------

    def measure(self, qubit: int, rng: RandomSource) -> MeasurementOutcome:
        if not 0 <= qubit < self.n:
            raise IndexError(f"qubit {qubit} out of range for {self.n} qubits")
        m = single(self.n, qubit, "Z")
        anti = np.flatnonzero(self.x[:, qubit])
        if anti.size == 0:
            found = self.membership(m)
            if found is Membership.NOT_IN_GROUP:
                raise InternalEngineError(f"Z on qubit {qubit} commutes with all generators "
                                          "but is not in the stabilizer group")
            return MeasurementOutcome(1 if found is Membership.PLUS else -1, True)

        eigenvalue = rng.coin()
        self._patch_basis(qubit, eigenvalue)
        a, others = anti[0], anti[1:]
        x, z, sign = self.x, self.z, self.sign
        if others.size:
            codes = 2 * x[others] + z[others]
            codes_a = 2 * x[a] + z[a]
            k = _PRODUCT_PHASE[codes, codes_a].sum(axis=1) + 2 * sign[others] + 2 * sign[a]
            if (k % 2).any():
                raise InternalEngineError("product of anticommuting generators is not Hermitian")
            sign[others] = (k % 4) // 2
            x[others] ^= x[a]
            z[others] ^= z[a]
        x[a] = 0
        z[a] = 0
        z[a, qubit] = 1
        sign[a] = eigenvalue == -1
        return MeasurementOutcome(eigenvalue, False)

    def _patch_basis(self, qubit: int, eigenvalue: int) -> None:
        """Keep the cached basis in step with a random measurement of ``qubit``."""
        if self._basis is None:
            return
        basis = self._basis
        bit = self.n + qubit
        anti = sorted(piv for piv, row in basis.items() if (self._key(row) >> bit) & 1)
        first = basis.pop(anti[0])
        # the remaining rows keep their pivots, which all lie above first's
        for piv in anti[1:]:
            basis[piv] = basis[piv] * first
        self._insert(basis, single(self.n, qubit, "Z", eigenvalue))


def init_zero_state(n: int) -> StabilizerState:
    """``|0...0>``: generator ``i`` is ``+Z`` on qubit ``i``."""
    return StabilizerState(n)


def apply_gate(state: StabilizerState, gate: Gate) -> StabilizerState:
    return state.apply(gate)


def membership(state: StabilizerState, p: PauliString) -> Membership:
    return state.membership(p)


def measure_z(
    state: StabilizerState, qubit: int, rng: RandomSource
) -> tuple[MeasurementOutcome, StabilizerState]:
    return state.measure(qubit, rng), state


def states_equivalent(a: StabilizerState, b: StabilizerState) -> bool:
    """Same signed stabilizer group, i.e. the same quantum state."""
    if a.n != b.n:
        raise ValueError(f"width mismatch: {a.n} vs {b.n}")
    return all(b.membership(g) is Membership.PLUS for g in a.generators) and all(
        a.membership(g) is Membership.PLUS for g in b.generators
    )
