"""n-qubit Pauli operators in symplectic form.

An operator is ``i**phase * X^x Z^z`` with ``x`` and ``z`` packed like
:class:`qrm.gf2.BitVector` (qubit 0 in the most significant bit). The
Hermitian ones are those with ``phase + |x & z|`` even.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..gf2 import BitMatrix, BitVector

_SIGNS = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "−": 2, "-i": 3, "−i": 3}
_SIGN_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}


class PauliError(ValueError):
    pass


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.x < 0 or self.z < 0 or self.x >> self.n or self.z >> self.n:
            raise PauliError(f"x/z parts do not fit in {self.n} qubits")
        if not 0 <= self.phase < 4:
            object.__setattr__(self, "phase", self.phase % 4)

    # -- construction -----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n, 0, 0)

    @classmethod
    def from_parts(cls, x: BitVector, z: BitVector, phase: int = 0) -> "PauliOperator":
        if x.n != z.n:
            raise PauliError("x and z parts differ in length")
        return cls(x.n, x.value, z.value, phase)

    @classmethod
    def x_type(cls, v: BitVector) -> "PauliOperator":
        return cls(v.n, v.value, 0)

    @classmethod
    def z_type(cls, v: BitVector) -> "PauliOperator":
        return cls(v.n, 0, v.value)

    @classmethod
    def single(cls, n: int, qubit: int, kind: str) -> "PauliOperator":
        if not 0 <= qubit < n:
            raise PauliError(f"qubit {qubit} out of range for n = {n}")
        bit = 1 << (n - 1 - qubit)
        if kind == "X":
            return cls(n, bit, 0)
        if kind == "Z":
            return cls(n, 0, bit)
        if kind == "Y":
            return cls(n, bit, bit, 1)
        raise PauliError(f"unknown Pauli {kind!r}")

    @classmethod
    def from_str(cls, text: str) -> "PauliOperator":
        """Parse ``[sign]letters`` with sign in ``+, -, +i, -i`` (``−`` accepted for ``-``)."""
        text = text.strip()
        i = 0
        while i < len(text) and text[i] not in "IXYZ":
            i += 1
        sign, letters = text[:i], text[i:]
        if sign not in _SIGNS:
            raise PauliError(f"bad sign {sign!r}")
        n = len(letters)
        x = z = 0
        ny = 0
        for c in letters:
            if c not in "IXYZ":
                raise PauliError(f"bad Pauli letter {c!r}")
            x = (x << 1) | (c in "XY")
            z = (z << 1) | (c in "ZY")
            ny += c == "Y"
        return cls(n, x, z, _SIGNS[sign] + ny)

    # -- views ------------------------------------------------------------

    @property
    def x_part(self) -> BitVector:
        return BitVector(self.x, self.n)

    @property
    def z_part(self) -> BitVector:
        return BitVector(self.z, self.n)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def is_hermitian(self) -> bool:
        return (self.phase + (self.x & self.z).bit_count()) % 2 == 0

    @property
    def symplectic(self) -> int:
        """``x`` followed by ``z`` as one ``2n``-bit word (phase dropped)."""
        return (self.x << self.n) | self.z

    def sign(self) -> int:
        """Coefficient exponent in front of the I/X/Y/Z letters (``i**sign``)."""
        return (self.phase - (self.x & self.z).bit_count()) % 4

    def letters(self) -> str:
        out = []
        for q in range(self.n):
            s = self.n - 1 - q
            out.append("IXZY"[((self.x >> s) & 1) | (((self.z >> s) & 1) << 1)])
        return "".join(out)

    def __str__(self) -> str:
        return _SIGN_TEXT[self.sign()] + self.letters()

    def __repr__(self) -> str:
        return f"PauliOperator({self})"

    # -- algebra ----------------------------------------------------------

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise PauliError("qubit count mismatch")
        ph = self.phase + other.phase + 2 * (self.z & other.x).bit_count()
        return PauliOperator(self.n, self.x ^ other.x, self.z ^ other.z, ph % 4)

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z, (self.phase + 2) % 4)

    def commutes(self, other: "PauliOperator") -> bool:
        return symplectic_product(self, other) == 0

    def equal_up_to_phase(self, other: "PauliOperator") -> bool:
        return self.n == other.n and self.x == other.x and self.z == other.z

    def unsigned(self) -> "PauliOperator":
        """Same X/Z pattern with ``+`` sign."""
        return PauliOperator(self.n, self.x, self.z, (self.x & self.z).bit_count() % 4)

    def tensor(self, *others: "PauliOperator") -> "PauliOperator":
        n, x, z, ph = self.n, self.x, self.z, self.phase
        for o in others:
            x = (x << o.n) | o.x
            z = (z << o.n) | o.z
            n += o.n
            ph += o.phase
        return PauliOperator(n, x, z, ph % 4)

    def embed(self, n: int, offset: int) -> "PauliOperator":
        """Place this operator on qubits ``offset .. offset+self.n-1`` of ``n``."""
        if offset < 0 or offset + self.n > n:
            raise PauliError("embedding out of range")
        shift = n - offset - self.n
        return PauliOperator(n, self.x << shift, self.z << shift, self.phase)

    def restrict(self, qubits: Sequence[int]) -> "PauliOperator":
        """Letters on ``qubits`` (in order); the sign is carried over."""
        x = z = 0
        for q in qubits:
            s = self.n - 1 - q
            x = (x << 1) | ((self.x >> s) & 1)
            z = (z << 1) | ((self.z >> s) & 1)
        return PauliOperator(len(qubits), x, z, (self.sign() + (x & z).bit_count()) % 4)

    def support(self) -> list[int]:
        v = self.x | self.z
        return [q for q in range(self.n) if (v >> (self.n - 1 - q)) & 1]


def symplectic_product(a: PauliOperator, b: PauliOperator) -> int:
    if a.n != b.n:
        raise PauliError("qubit count mismatch")
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) & 1


def commutation_matrix(ops: Sequence[PauliOperator], others: Sequence[PauliOperator] | None = None) -> list[list[int]]:
    others = ops if others is None else others
    return [[symplectic_product(a, b) for b in others] for a in ops]


def symplectic_matrix(ops: Sequence[PauliOperator], n: int | None = None) -> BitMatrix:
    """Rows ``x|z`` of the operators as a ``len(ops) x 2n`` matrix."""
    if n is None:
        if not ops:
            raise PauliError("n required for an empty operator list")
        n = ops[0].n
    return BitMatrix((p.symplectic for p in ops), 2 * n)


def from_symplectic(word: int, n: int) -> PauliOperator:
    """Hermitian operator with the given ``x|z`` word and ``+`` sign."""
    x, z = word >> n, word & ((1 << n) - 1)
    return PauliOperator(n, x, z, (x & z).bit_count() % 4)


def product(ops: Iterable[PauliOperator], n: int) -> PauliOperator:
    out = PauliOperator.identity(n)
    for p in ops:
        out = out * p
    return out


def single_qubit_paulis(n: int) -> list[PauliOperator]:
    """All ``3n`` weight-one Paulis, qubit-major, in X, Y, Z order."""
    return [PauliOperator.single(n, q, k) for q in range(n) for k in "XYZ"]
