"""Dense GF(2) linear algebra on bit-packed rows.

Rows are stored as Python integers with coordinate 0 in the most significant
position of an ``n``-bit word, so the packed value of a length-``n`` string
equals its big-endian binary value (``BitVector.from_str("110").value == 6``).
That choice makes a codeword's packed value coincide with the computational
basis index used by :mod:`qrm.statevector`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import kernels

ENUMERATION_RANK_LIMIT = 20


class GF2Error(ValueError):
    """Shape or precondition violation in GF(2) routines."""


class EnumerationGuardError(GF2Error):
    """Raised when an exhaustive enumeration would exceed its guard."""


@dataclass(frozen=True)
class BitVector:
    value: int
    n: int

    def __post_init__(self):
        if self.n < 0 or self.value < 0 or self.value >> self.n:
            raise GF2Error(f"value {self.value} does not fit in {self.n} bits")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        value = 0
        n = 0
        for b in bits:
            if b not in (0, 1):
                raise GF2Error(f"not a bit: {b!r}")
            value = (value << 1) | int(b)
            n += 1
        return cls(value, n)

    @classmethod
    def from_str(cls, text: str) -> "BitVector":
        text = text.strip()
        if any(c not in "01" for c in text):
            raise GF2Error(f"bad bit string {text!r}")
        return cls(int(text, 2) if text else 0, len(text))

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls((1 << n) - 1, n)

    @classmethod
    def unit(cls, n: int, i: int) -> "BitVector":
        if not 0 <= i < n:
            raise GF2Error(f"index {i} out of range for length {n}")
        return cls(1 << (n - 1 - i), n)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.n - 1 - i)) & 1 for i in range(self.n))

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def support(self) -> list[int]:
        return [i for i, b in enumerate(self.bits) if b]

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self.n
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.value >> (self.n - 1 - i)) & 1

    def _check(self, other: "BitVector"):
        if self.n != other.n:
            raise GF2Error(f"length mismatch: {self.n} != {other.n}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.value ^ other.value, self.n)

    __add__ = __xor__

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.value & other.value, self.n)

    def dot(self, other: "BitVector") -> int:
        self._check(other)
        return (self.value & other.value).bit_count() & 1

    def concat(self, *others: "BitVector") -> "BitVector":
        value, n = self.value, self.n
        for o in others:
            value = (value << o.n) | o.value
            n += o.n
        return BitVector(value, n)

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b") if self.n else ""


class BitMatrix:
    """Immutable dense matrix over GF(2), one packed integer per row."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[int], ncols: int):
        rows = tuple(int(r) for r in rows)
        for r in rows:
            if r < 0 or r >> ncols:
                raise GF2Error(f"row {r} does not fit in {ncols} columns")
        self._rows = rows
        self._ncols = ncols

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        vecs = [BitVector.from_bits(r) for r in rows]
        if ncols is None:
            if not vecs:
                raise GF2Error("ncols required for an empty matrix")
            ncols = vecs[0].n
        if any(v.n != ncols for v in vecs):
            raise GF2Error("rows have unequal length")
        return cls((v.value for v in vecs), ncols)

    @classmethod
    def from_vectors(cls, vecs: Sequence[BitVector], ncols: int | None = None) -> "BitMatrix":
        if ncols is None:
            if not vecs:
                raise GF2Error("ncols required for an empty matrix")
            ncols = vecs[0].n
        if any(v.n != ncols for v in vecs):
            raise GF2Error("rows have unequal length")
        return cls((v.value for v in vecs), ncols)

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise GF2Error("empty matrix text")
        return cls.from_vectors([BitVector.from_str(ln) for ln in lines])

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls((1 << (n - 1 - i) for i in range(n)), n)

    @classmethod
    def empty(cls, ncols: int) -> "BitMatrix":
        return cls((), ncols)

    def to_text(self) -> str:
        return "\n".join(format(r, f"0{self._ncols}b") for r in self._rows)

    def to_numpy(self):
        import numpy as np

        out = np.zeros((len(self._rows), self._ncols), dtype=np.uint8)
        for i, r in enumerate(self._rows):
            out[i] = BitVector(r, self._ncols).bits
        return out

    @property
    def rows(self) -> tuple[int, ...]:
        """Packed row values."""
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._rows), self._ncols)

    def __len__(self) -> int:
        return len(self._rows)

    def __getitem__(self, i: int) -> BitVector:
        return BitVector(self._rows[i], self._ncols)

    def __iter__(self) -> Iterator[BitVector]:
        return (BitVector(r, self._ncols) for r in self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self._rows == other._rows and self._ncols == other._ncols

    def __hash__(self) -> int:
        return hash((self._rows, self._ncols))

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols})"

    def __str__(self) -> str:
        return self.to_text()

    def tolist(self) -> list[list[int]]:
        return [list(v.bits) for v in self]

    def transpose(self) -> "BitMatrix":
        n, r = self._ncols, len(self._rows)
        cols = []
        for j in range(n):
            shift = n - 1 - j
            val = 0
            for row in self._rows:
                val = (val << 1) | ((row >> shift) & 1)
            cols.append(val)
        return BitMatrix(cols, r)

    def mul_transpose(self, other: "BitMatrix") -> "BitMatrix":
        """Return ``self @ other.T`` over GF(2)."""
        if self._ncols != other._ncols:
            raise GF2Error(f"column mismatch: {self._ncols} != {other._ncols}")
        out = []
        for a in self._rows:
            val = 0
            for b in other._rows:
                val = (val << 1) | ((a & b).bit_count() & 1)
            out.append(val)
        return BitMatrix(out, other.nrows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self._ncols != other._ncols:
            raise GF2Error("column mismatch")
        return BitMatrix(self._rows + other._rows, self._ncols)

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.nrows != other.nrows:
            raise GF2Error("row mismatch")
        return BitMatrix(
            ((a << other._ncols) | b for a, b in zip(self._rows, other._rows)),
            self._ncols + other._ncols,
        )

    def select_rows(self, idx: Iterable[int]) -> "BitMatrix":
        return BitMatrix((self._rows[i] for i in idx), self._ncols)

    def permute_columns(self, perm: Sequence[int]) -> "BitMatrix":
        """New matrix whose column ``j`` is column ``perm[j]`` of ``self``."""
        n = self._ncols
        if sorted(perm) != list(range(n)):
            raise GF2Error("not a permutation")
        out = []
        for row in self._rows:
            val = 0
            for j in perm:
                val = (val << 1) | ((row >> (n - 1 - j)) & 1)
            out.append(val)
        return BitMatrix(out, n)

    def delete_column(self, j: int) -> "BitMatrix":
        n = self._ncols
        hi_shift = n - j
        low_mask = (1 << (n - 1 - j)) - 1
        return BitMatrix(
            (((r >> hi_shift) << (n - 1 - j)) | (r & low_mask) for r in self._rows), n - 1
        )

    @property
    def rank(self) -> int:
        return len(kernels.rref_rows(list(self._rows), self._ncols)[1])


def rref(M: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form and pivot columns (shape preserved, zero rows last)."""
    if M.nrows == 0:
        raise GF2Error("rref of an empty matrix")
    rows, pivots = kernels.rref_rows(list(M.rows), M.ncols)
    return BitMatrix(rows, M.ncols), pivots


def row_basis(M: BitMatrix) -> BitMatrix:
    """Nonzero rows of ``rref(M)``; the fixed basis used for enumeration."""
    if M.nrows == 0:
        return M
    rows, pivots = kernels.rref_rows(list(M.rows), M.ncols)
    return BitMatrix(rows[: len(pivots)], M.ncols)


def rank(M: BitMatrix) -> int:
    return M.rank if M.nrows else 0


def null_space(M: BitMatrix) -> BitMatrix:
    """Basis ``D`` of ``{v : M v = 0}``, one row per free column."""
    if M.nrows == 0:
        raise GF2Error("null space of an empty matrix")
    n = M.ncols
    rows, pivots = kernels.rref_rows(list(M.rows), n)
    pivot_set = set(pivots)
    out = []
    for f in range(n):
        if f in pivot_set:
            continue
        fbit = 1 << (n - 1 - f)
        v = fbit
        for i, p in enumerate(pivots):
            if rows[i] & fbit:
                v |= 1 << (n - 1 - p)
        out.append(v)
    return BitMatrix(out, n)


def in_row_space(M: BitMatrix, v: BitVector) -> bool:
    if v.n != M.ncols:
        raise GF2Error(f"length mismatch: {v.n} != {M.ncols}")
    if v.value == 0:
        return True
    if M.nrows == 0:
        return False
    return kernels.reduce_against(kernels.rref_rows(list(M.rows), M.ncols), v.value, M.ncols) == 0


def row_space_contains(M: BitMatrix, N: BitMatrix) -> bool:
    """True iff every row of ``N`` lies in ``row(M)``."""
    if M.ncols != N.ncols:
        raise GF2Error("column mismatch")
    if M.nrows == 0:
        return N.is_zero()
    ech = kernels.rref_rows(list(M.rows), M.ncols)
    return all(kernels.reduce_against(ech, r, M.ncols) == 0 for r in N.rows)


def same_row_space(M: BitMatrix, N: BitMatrix) -> bool:
    return row_space_contains(M, N) and row_space_contains(N, M)


def solve(M: BitMatrix, b: BitVector) -> BitVector | None:
    """Some ``x`` with ``M x = b`` (free variables zero), or ``None``."""
    if b.n != M.nrows:
        raise GF2Error("right-hand side length must equal row count")
    n = M.ncols
    # Augment each row with its rhs bit as the lowest column.
    aug = [(r << 1) | b[i] for i, r in enumerate(M.rows)]
    rows, pivots = kernels.rref_rows(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = 0
    for i, p in enumerate(pivots):
        if rows[i] & 1:
            x |= 1 << (n - 1 - p)
    return BitVector(x, n)


def inverse(M: BitMatrix) -> BitMatrix:
    """Inverse of a square invertible matrix."""
    n = M.ncols
    if M.nrows != n:
        raise GF2Error("inverse of a non-square matrix")
    aug = [(r << n) | (1 << (n - 1 - i)) for i, r in enumerate(M.rows)]
    rows, pivots = kernels.rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise GF2Error("matrix is singular")
    mask = (1 << n) - 1
    return BitMatrix((r & mask for r in rows), n)


def matmul(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    return A.mul_transpose(B.transpose())


def complete_basis(span: BitMatrix, candidates: BitMatrix) -> BitMatrix:
    """Rows of ``candidates`` that extend ``row(span)``, greedily in order."""
    n = candidates.ncols
    basis = list(span.rows)
    r = len(kernels.rref_rows(basis, n)[1]) if basis else 0
    picked = []
    for c in candidates.rows:
        trial = basis + [c]
        r2 = len(kernels.rref_rows(trial, n)[1])
        if r2 > r:
            basis, r = trial, r2
            picked.append(c)
    return BitMatrix(picked, n)


def enumerate_row_space(M: BitMatrix, limit: int = ENUMERATION_RANK_LIMIT) -> list[BitVector]:
    """All codewords of ``row(M)``; codeword ``c`` XORs basis rows at the set bits of ``c``."""
    basis = row_basis(M)
    if basis.nrows > limit:
        raise EnumerationGuardError(f"rank {basis.nrows} exceeds enumeration guard {limit}")
    n = M.ncols
    return [BitVector(w, n) for w in kernels.span_words(list(basis.rows), n)]


def weight_distribution(M: BitMatrix, limit: int = ENUMERATION_RANK_LIMIT) -> list[int]:
    """Histogram ``h[w]`` of codeword weights of ``row(M)``."""
    basis = row_basis(M)
    if basis.nrows > limit:
        raise EnumerationGuardError(f"rank {basis.nrows} exceeds enumeration guard {limit}")
    return kernels.span_weight_histogram(list(basis.rows), M.ncols)


def bitwise_and_weight(vs: Sequence[BitVector]) -> int:
    if not vs:
        raise GF2Error("bitwise_and_weight of an empty list")
    acc = vs[0]
    for v in vs[1:]:
        acc = acc & v
    return acc.weight
