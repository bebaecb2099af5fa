"""Signed Pauli strings stored as (x, z) bitsets.

Qubit ``q`` lives at bit ``q`` of both integers.  The axis on a qubit is
read from its bit pair::

    (x, z) = (0, 0) -> I    (1, 0) -> X    (1, 1) -> Y    (0, 1) -> Z

The scalar in front of the tensor product is ``i**phase`` with
``phase`` in ``{0, 1, 2, 3}``.  Python integers act as packed machine words,
so products and commutation tests reduce to XOR, AND and ``int.bit_count``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "PauliAxis",
    "PauliString",
    "PauliParseError",
    "identity",
    "single",
    "multiply",
    "commutes",
    "encode",
    "decode",
    "parse_pauli",
    "format_pauli",
    "SINGLE_PRODUCT_PHASE",
]


class PauliParseError(ValueError):
    pass


class PauliAxis(enum.Enum):
    """Single-qubit Pauli axis; ``value`` is the 2-bit external code."""

    I = 0b00
    X = 0b01
    Y = 0b10
    Z = 0b11

    @property
    def xz(self) -> tuple[int, int]:
        return _AXIS_TO_XZ[self]

    @classmethod
    def from_xz(cls, x: int, z: int) -> "PauliAxis":
        return _XZ_TO_AXIS[(x, z)]


_AXIS_TO_XZ = {
    PauliAxis.I: (0, 0),
    PauliAxis.X: (1, 0),
    PauliAxis.Y: (1, 1),
    PauliAxis.Z: (0, 1),
}
_XZ_TO_AXIS = {v: k for k, v in _AXIS_TO_XZ.items()}

# Phase exponent k of a*b = i**k * c for single-qubit axes, indexed by the
# internal code 2*x + z (I=0, Z=1, X=2, Y=3) of the left and right factor.
SINGLE_PRODUCT_PHASE = (
    # right:  I  Z  X  Y
    (0, 0, 0, 0),  # left I
    (0, 0, 1, 3),  # left Z: ZX = iY, ZY = -iX
    (0, 3, 0, 1),  # left X: XZ = -iY, XY = iZ
    (0, 1, 3, 0),  # left Y: YZ = iX, YX = -iZ
)

_SIGN_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True)
class PauliString:
    """An element ``i**phase * P_0 (x) P_1 (x) ... (x) P_{n-1}`` of the Pauli group."""

    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"Pauli string needs at least one qubit, got n={self.n}")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError(f"bitset does not fit in {self.n} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    def axis(self, q: int) -> PauliAxis:
        if not 0 <= q < self.n:
            raise IndexError(f"qubit {q} out of range for n={self.n}")
        return PauliAxis.from_xz((self.x >> q) & 1, (self.z >> q) & 1)

    @property
    def axes(self) -> tuple[PauliAxis, ...]:
        return tuple(self.axis(q) for q in range(self.n))

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    @property
    def sign(self) -> int:
        """+1 or -1; only defined for Hermitian strings."""
        if not self.is_hermitian:
            raise ValueError(f"{self} carries an imaginary phase")
        return 1 if self.phase == 0 else -1

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def same_axes(self, other: "PauliString") -> bool:
        return self.n == other.n and self.x == other.x and self.z == other.z

    def with_phase(self, phase: int) -> "PauliString":
        return PauliString(self.n, self.x, self.z, phase)

    def __neg__(self) -> "PauliString":
        return self.with_phase(self.phase + 2)

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_pauli(self)

    def __repr__(self) -> str:
        return f"PauliString({format_pauli(self)!r})"


def identity(n: int) -> PauliString:
    if n < 1:
        raise ValueError(f"identity needs n >= 1, got {n}")
    return PauliString(n)


def single(n: int, q: int, axis: PauliAxis | str, sign: int = 1) -> PauliString:
    """``sign * axis`` on qubit ``q``, identity elsewhere."""
    if isinstance(axis, str):
        axis = PauliAxis[axis]
    if not 0 <= q < n:
        raise IndexError(f"qubit {q} out of range for n={n}")
    bx, bz = axis.xz
    return PauliString(n, bx << q, bz << q, 0 if sign > 0 else 2)


def _check_width(a: PauliString, b: PauliString) -> None:
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n} qubits")


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Group product ``a * b`` with the exact ``i**k`` scalar."""
    _check_width(a, b)
    xa, za, xb, zb = a.x, a.z, b.x, b.z
    only_x_a, only_x_b = xa & ~za, xb & ~zb
    y_a, y_b = xa & za, xb & zb
    only_z_a, only_z_b = za & ~xa, zb & ~xb
    # cyclic pairs XY, YZ, ZX give +i; the reversed pairs give -i
    plus = ((only_x_a & y_b) | (y_a & only_z_b) | (only_z_a & only_x_b)).bit_count()
    minus = ((y_a & only_x_b) | (only_z_a & y_b) | (only_x_a & only_z_b)).bit_count()
    return PauliString(a.n, xa ^ xb, za ^ zb, a.phase + b.phase + plus - minus)


def commutes(a: PauliString, b: PauliString) -> bool:
    """Symplectic test: even overlap of ``x_a.z_b + z_a.x_b`` means ``ab = ba``."""
    _check_width(a, b)
    return ((a.x & b.z) ^ (a.z & b.x)).bit_count() % 2 == 0


def encode(p: PauliString) -> list[int]:
    """Pack a Hermitian string into ``2n + 1`` bits.

    Layout: the sign bit (0 for +, 1 for -), then per qubit in order
    0..n-1 the two code bits, high bit first (I=00, X=01, Y=10, Z=11).
    """
    if not p.is_hermitian:
        raise ValueError(f"cannot encode imaginary phase of {p}")
    bits = [0 if p.phase == 0 else 1]
    for ax in p.axes:
        bits.append(ax.value >> 1)
        bits.append(ax.value & 1)
    return bits


def decode(bits: Sequence[int], n: int) -> PauliString:
    if n < 1 or len(bits) != 2 * n + 1:
        raise ValueError(f"expected {2 * n + 1} bits for n={n}, got {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("bits must be 0 or 1")
    x = z = 0
    for q in range(n):
        bx, bz = PauliAxis((bits[1 + 2 * q] << 1) | bits[2 + 2 * q]).xz
        x |= bx << q
        z |= bz << q
    return PauliString(n, x, z, 2 * bits[0])


def parse_pauli(text: str) -> PauliString:
    """Parse ``[+|-]`` followed by letters from ``IXYZ``, e.g. ``"-ZIZ"``."""
    body = text.strip()
    phase = 0
    if body[:1] in ("+", "-"):
        phase = 0 if body[0] == "+" else 2
        body = body[1:]
    if not body:
        raise PauliParseError(f"empty Pauli string in {text!r}")
    x = z = 0
    for q, ch in enumerate(body):
        try:
            bx, bz = PauliAxis[ch].xz
        except KeyError:
            raise PauliParseError(f"unknown character {ch!r} in {text!r}") from None
        x |= bx << q
        z |= bz << q
    return PauliString(len(body), x, z, phase)


def format_pauli(p: PauliString) -> str:
    return _SIGN_TEXT[p.phase] + "".join(ax.name for ax in p.axes)
