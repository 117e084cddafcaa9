"""Pauli strings in binary-symplectic form with exact phases.

A string on ``n`` qubits is ``i**r * prod_k X_k**x_k Z_k**z_k``. Bit ``k`` of
the integer masks ``x`` and ``z`` refers to qubit ``k``. With this ordering
``Y = i X Z``, and the product rule only needs one popcount.
"""

from __future__ import annotations

from dataclasses import dataclass

_SIGN_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True)
class PauliString:
    n: int
    x: int
    z: int
    r: int = 0  # phase exponent: coefficient is i**r

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", self.r % 4)
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full:
            raise ValueError("bit masks exceed the qubit count")

    @property
    def phase(self) -> complex:
        return (1, 1j, -1, -1j)[self.r]

    @property
    def xs(self) -> tuple[int, ...]:
        return tuple((self.x >> k) & 1 for k in range(self.n))

    @property
    def zs(self) -> tuple[int, ...]:
        return tuple((self.z >> k) & 1 for k in range(self.n))

    @property
    def support(self) -> int:
        return self.x | self.z

    def is_hermitian(self) -> bool:
        # (X^x Z^z)^dagger = (-1)^{x.z} X^x Z^z
        return self.r % 2 == (self.x & self.z).bit_count() % 2

    def __mul__(self, other: PauliString) -> PauliString:
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        r = self.r + other.r + 2 * (self.z & other.x).bit_count()
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z, r)

    def __neg__(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, self.r + 2)

    def commutes(self, other: PauliString) -> bool:
        return ((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) % 2 == 0

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> PauliString:
        """One-qubit Pauli ``letter`` in ``{"X", "Y", "Z"}`` acting on ``qubit``."""
        bit = 1 << qubit
        return {
            "X": cls(n, bit, 0, 0),
            "Y": cls(n, bit, bit, 1),
            "Z": cls(n, 0, bit, 0),
        }[letter]

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        """Parse ``"-XIZ"``, ``"+iY"`` etc.; the leftmost letter is qubit 0."""
        sign = 0
        for prefix, exp in (("-i", 3), ("+i", 1), ("i", 1), ("-", 2), ("+", 0)):
            if label.startswith(prefix):
                sign, label = exp, label[len(prefix):]
                break
        x = z = 0
        ys = 0
        for k, ch in enumerate(label):
            if ch in "XY":
                x |= 1 << k
            if ch in "ZY":
                z |= 1 << k
            if ch == "Y":
                ys += 1
            elif ch not in "IXZ_":
                raise ValueError(f"bad Pauli letter {ch!r}")
        return cls(len(label), x, z, sign + ys)

    def to_label(self) -> str:
        letters = []
        ys = 0
        for k in range(self.n):
            xb, zb = (self.x >> k) & 1, (self.z >> k) & 1
            letters.append("IXZY"[xb + 2 * zb])
            ys += xb & zb
        return _SIGN_PREFIX[(self.r - ys) % 4] + "".join(letters)

    def __str__(self) -> str:
        return self.to_label()
