"""Classical Reed-Muller codes RM(r, m), their shortened variants, and property checks.

Coordinates of RM(r, m) are the points ``j = 0 .. 2**m - 1`` of F_2^m, with
variable ``v_i`` equal to bit ``i - 1`` of ``j``. With that ordering the
monomial basis of RM(1, m) is exactly the doubling recursion
``G_{m+1} = [[G_m, G_m], [0...0, 1...1]]`` started from ``[[1, 1], [0, 1]]``.

The shortened codes used by the quantum construction live in a permuted
column order (see :func:`canonical_point_order`) in which
``Gbar_{m+1} = [[Gbar_m, Gbar_m, 0], [0...0, 1...1, 1]]``. Every module
downstream of this one uses that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Any

from . import kernels
from .gf2 import (
    ENUMERATION_RANK_LIMIT,
    BitMatrix,
    BitVector,
    EnumerationGuardError,
    GF2Error,
    complete_basis,
    enumerate_row_space,
    in_row_space,
    null_space,
    rank,
    row_basis,
    row_space_contains,
    rref,
    same_row_space,
    weight_distribution,
)


class RMIndexError(ValueError):
    """Invalid (r, m) for the requested construction."""


class RateConditionError(ValueError):
    """The (r, m) pair does not give the dual-containing codes the higher-rank construction needs."""


@dataclass(frozen=True)
class ClassicalCode:
    generator: BitMatrix
    parity_check: BitMatrix

    def __post_init__(self):
        if self.generator.ncols != self.parity_check.ncols:
            raise GF2Error("generator and parity check lengths differ")
        n = self.generator.ncols
        if rank(self.generator) != self.generator.nrows:
            raise GF2Error("generator rows are dependent")
        if rank(self.parity_check) != self.parity_check.nrows:
            raise GF2Error("parity-check rows are dependent")
        if self.generator.nrows + self.parity_check.nrows != n:
            raise GF2Error("rank(G) + rank(H) must equal n")
        if self.generator.nrows and self.parity_check.nrows:
            if not self.parity_check.mul_transpose(self.generator).is_zero():
                raise GF2Error("H G^T != 0")

    @classmethod
    def from_generator(cls, G: BitMatrix) -> "ClassicalCode":
        G = row_basis(G)
        if G.nrows == 0:
            return cls(G, BitMatrix.identity(G.ncols))
        return cls(G, null_space(G))

    @classmethod
    def from_parity_check(cls, H: BitMatrix) -> "ClassicalCode":
        H = row_basis(H)
        if H.nrows == 0:
            return cls(BitMatrix.identity(H.ncols), H)
        return cls(null_space(H), H)

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def k(self) -> int:
        return self.generator.nrows

    def dual(self) -> "ClassicalCode":
        return ClassicalCode(self.parity_check, self.generator)

    @cached_property
    def distance(self) -> int:
        return min_distance_bruteforce(self)

    @property
    def params(self) -> tuple[int, int, int | None]:
        d = self.__dict__.get("distance")
        return (self.n, self.k, d)


def _check_rm(r: int, m: int):
    if m < 1 or not 0 <= r <= m:
        raise RMIndexError(f"RM({r},{m}) requires 0 <= r <= m and m >= 1")


def monomials(r: int, m: int) -> list[tuple[int, ...]]:
    """Variable index sets of the monomials of degree <= r, by degree then lexicographic."""
    out: list[tuple[int, ...]] = []
    for deg in range(r + 1):
        out.extend(combinations(range(m), deg))
    return out


@lru_cache(maxsize=None)
def rm_generator(r: int, m: int) -> BitMatrix:
    """Generator of RM(r, m): evaluation vectors of monomials of degree <= r.

    ``r = 0`` (the repetition code) is accepted because the higher-rank
    recursion refers to RM(r - 1, m).
    """
    _check_rm(r, m)
    n = 1 << m
    rows = []
    for mono in monomials(r, m):
        mask = sum(1 << v for v in mono)
        row = 0
        for j in range(n):
            row = (row << 1) | ((j & mask) == mask)
        rows.append(row)
    return BitMatrix(rows, n)


def rm_dimension(r: int, m: int) -> int:
    return sum(comb(m, i) for i in range(r + 1))


def rm_rate(r: int, m: int) -> float:
    return rm_dimension(r, m) / (1 << m)


def shorten(G: BitMatrix) -> BitMatrix:
    """Delete the all-ones row and the first column.

    The matrix is first row reduced so that exactly one basis row has a 1 in
    column 0; the remaining rows, with column 0 removed, span
    ``{x : (0, x) in row(G)}``.
    """
    n = G.ncols
    if not in_row_space(G, BitVector.ones(n)):
        raise GF2Error("no all-ones vector in the row space; cannot shorten")
    R, pivots = rref(G)
    basis = R.select_rows(range(len(pivots)))
    keep = [i for i, p in enumerate(pivots) if p != 0]
    return basis.select_rows(keep).delete_column(0)


@lru_cache(maxsize=None)
def canonical_point_order(m: int) -> tuple[int, ...]:
    """Points of F_2^m (as integers) labelling the columns of the shortened code.

    Column ``c`` of :func:`shortened_rm_generator` is coordinate
    ``canonical_point_order(m)[c]`` of RM(1, m); point 0 is the deleted one.
    """
    if m < 2:
        raise RMIndexError("shortened codes need m >= 2")
    if m == 2:
        return (1, 2, 3)
    prev = canonical_point_order(m - 1)
    half = 1 << (m - 1)
    return prev + tuple(p + half for p in prev) + (half,)


def shortening_permutation(m: int) -> tuple[int, ...]:
    """``perm`` with ``shorten(G).permute_columns(perm)`` in canonical order."""
    return tuple(p - 1 for p in canonical_point_order(m))


@lru_cache(maxsize=None)
def shortened_rm_generator(m: int) -> BitMatrix:
    """Gbar_m built by the doubling recursion, canonical column order."""
    if m < 2:
        raise RMIndexError("shortened RM(1, m) needs m >= 2")
    if m == 2:
        return BitMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
    prev = shortened_rm_generator(m - 1)
    n = prev.ncols
    rows = [(r << (n + 1)) | (r << 1) for r in prev.rows]
    rows.append((1 << (n + 1)) - 1)
    return BitMatrix(rows, 2 * n + 1)


@lru_cache(maxsize=None)
def shortened_dual_generator(m: int) -> BitMatrix:
    """Hbar_m: shortened RM(m-2, m), canonical column order, rref basis."""
    if m < 3:
        raise RMIndexError("shortened dual RM(m-2, m) needs m >= 3")
    H = shorten(rm_generator(m - 2, m)).permute_columns(shortening_permutation(m))
    return row_basis(H)


def min_distance_bruteforce(code: ClassicalCode, limit: int = ENUMERATION_RANK_LIMIT) -> int:
    """Minimum nonzero weight of ``row(code.generator)`` by exhaustive enumeration."""
    if code.k > limit:
        raise EnumerationGuardError(f"k = {code.k} exceeds guard {limit}")
    if code.k == 0:
        raise GF2Error("zero-dimensional code has no minimum distance")
    hist = weight_distribution(code.generator, limit)
    return next(w for w in range(1, code.n + 1) if hist[w])


# ---------------------------------------------------------------------------
# Property checks


@dataclass
class FactReport:
    fact: int
    m: int
    passed: bool
    checked: int = 0
    witness: list[str] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "fact": self.fact,
            "m": self.m,
            "passed": self.passed,
            "checked": self.checked,
            "witness": self.witness,
            "details": self.details,
        }


FACT_MIN_M = {1: 2, 2: 3, 3: 2, 4: 3, 5: 3, 6: 2}
FACT6_TUPLE_LIMIT = 1 << 26


def _words(M: BitMatrix) -> list[int]:
    return [v.value for v in enumerate_row_space(M)]


def _fact1(m: int) -> FactReport:
    modulus = 1 << (m - 1)
    checked = 0
    for label, M in (("RM(1,m)", rm_generator(1, m)), ("shortened RM(1,m)", shortened_rm_generator(m))):
        for w in _words(M):
            checked += 1
            if w.bit_count() % modulus:
                return FactReport(1, m, False, checked, [format(w, f"0{M.ncols}b")], {"code": label})
    hist = weight_distribution(shortened_rm_generator(m))
    weights = [w for w, c in enumerate(hist) if c]
    return FactReport(1, m, True, checked, details={"shortened_weights": weights, "modulus": modulus})


def _fact2(m: int) -> FactReport:
    G = shortened_rm_generator(m)
    gram = G.mul_transpose(G)
    for i, row in enumerate(gram.rows):
        if row:
            j = format(row, f"0{gram.ncols}b").index("1")
            return FactReport(2, m, False, 1, [str(G[i]), str(G[j])])
    return FactReport(2, m, True, G.nrows**2)


def _weight3_word(G: BitMatrix) -> int | None:
    # Three columns summing to zero give a weight-3 word of the dual.
    n = G.ncols
    cols = G.transpose().rows
    where = {c: i for i, c in enumerate(cols)}
    for a in range(n):
        for b in range(a + 1, n):
            c = where.get(cols[a] ^ cols[b])
            if c is not None and c > b:
                return (1 << (n - 1 - a)) | (1 << (n - 1 - b)) | (1 << (n - 1 - c))
    return None


def _fact3(m: int) -> FactReport:
    G = shortened_rm_generator(m)
    n = G.ncols
    code = ClassicalCode.from_parity_check(G)
    cols = G.transpose().rows
    injective = len(set(cols)) == len(cols) and 0 not in cols
    if code.k <= ENUMERATION_RANK_LIMIT:
        d = min_distance_bruteforce(code)
        method, checked = "bruteforce", 1 << code.k
    else:
        # Distinct nonzero columns exclude weights 1 and 2; a weight-3 word pins d = 3.
        w3 = _weight3_word(G)
        d = 3 if injective and w3 is not None else -1
        method, checked = "columns", n * (n - 1) // 2
    witness = None
    if d != 3:
        low = [w for w in _words(code.generator) if w and w.bit_count() == d] if d > 0 else []
        witness = [format(low[0], f"0{n}b")] if low else None
    return FactReport(
        3, m, d == 3 and injective, checked, witness,
        {"dual_distance": d, "method": method, "single_error_syndromes_injective": injective},
    )


def _fact4(m: int) -> FactReport:
    G, H = shortened_rm_generator(m), shortened_dual_generator(m)
    prod = H.mul_transpose(G)
    for i, row in enumerate(prod.rows):
        if row:
            j = format(row, f"0{prod.ncols}b").index("1")
            return FactReport(4, m, False, 1, [str(H[i]), str(G[j])])
    return FactReport(4, m, True, H.nrows * G.nrows, details={"rank_Hbar": H.nrows})


def _fact5(m: int) -> FactReport:
    G, H = shortened_rm_generator(m), shortened_dual_generator(m)
    for row in G:
        if not in_row_space(H, row):
            return FactReport(5, m, False, 1, [str(row)])
    return FactReport(5, m, True, G.nrows)


def _fact6(m: int) -> FactReport:
    G = shortened_rm_generator(m)
    words = _words(G)
    checked = 0
    per_k = {}
    for k in range(1, m):
        modulus = 1 << (m - k)
        count, witness = kernels.ktuple_and_check(words, k, modulus, G.ncols)
        checked += count
        per_k[k] = count
        if witness is not None:
            return FactReport(
                6, m, False, checked,
                [format(words[i], f"0{G.ncols}b") for i in witness], {"k": k, "modulus": modulus},
            )
    return FactReport(6, m, True, checked, details={"tuples_per_k": per_k})


_FACTS = {1: _fact1, 2: _fact2, 3: _fact3, 4: _fact4, 5: _fact5, 6: _fact6}


def verify_fact(fact_id: int, m: int) -> FactReport:
    """Exhaustively check one of the six shortened-RM properties at a given m."""
    if fact_id not in _FACTS:
        raise ValueError(f"unknown fact {fact_id}; expected 1..6")
    if m < FACT_MIN_M[fact_id]:
        raise RMIndexError(f"fact {fact_id} holds for m >= {FACT_MIN_M[fact_id]}, got m = {m}")
    if m + 1 > ENUMERATION_RANK_LIMIT:
        raise EnumerationGuardError(f"m = {m} too large for exhaustive checks")
    if fact_id == 6:
        tuples = sum(comb((1 << m) + k - 1, k) for k in range(1, m))
        if tuples > FACT6_TUPLE_LIMIT:
            raise EnumerationGuardError(f"{tuples} codeword tuples exceed guard {FACT6_TUPLE_LIMIT}")
    return _FACTS[fact_id](m)


def rate_condition(r: int, m: int) -> bool:
    """RM(m-r-1, m) and RM(m-r, m+1) both contain their duals.

    Equivalent to rate >= 1/2 for both codes; rate exactly 1/2 (self-dual)
    is admitted so that (r, m) = (1, 3) qualifies.
    """
    if r < 1 or m < 1 or m - r - 1 < 0:
        return False
    return 2 * rm_dimension(m - r - 1, m) >= (1 << m) and 2 * rm_dimension(m - r, m + 1) >= (1 << (m + 1))


def appendixB_orthogonality(r: int, m: int) -> dict[str, Any]:
    """The four self-orthogonality identities behind the higher-rank conversion."""
    if not rate_condition(r, m):
        raise RateConditionError(
            f"(r={r}, m={m}): RM({m - r - 1},{m}) and RM({m - r},{m + 1}) must have rate >= 1/2"
        )
    G_rm = rm_generator(r, m)
    G_lo = rm_generator(r - 1, m)
    G_up = rm_generator(r, m + 1)
    checks = {
        "G_rm_self_orthogonal": G_rm.mul_transpose(G_rm).is_zero(),
        "G_r-1m_self_orthogonal": G_lo.mul_transpose(G_lo).is_zero(),
        "G_rm+1_self_orthogonal": G_up.mul_transpose(G_up).is_zero(),
        "G_rm_orthogonal_G_r-1m": G_rm.mul_transpose(G_lo).is_zero(),
    }
    return {"r": r, "m": m, "checks": checks, "passed": all(checks.values())}


def block_recursion_generator(r: int, m: int) -> BitMatrix:
    """``[[G_{r,m}, G_{r,m}], [0, G_{r-1,m}]]`` built literally from the block form."""
    _check_rm(r, m)
    if r < 1:
        raise RMIndexError("block recursion needs r >= 1")
    top = rm_generator(r, m)
    bot = rm_generator(r - 1, m)
    n = 1 << m
    return BitMatrix([(t << n) | t for t in top.rows] + list(bot.rows), 2 * n)


def shortened_completion(m: int) -> BitMatrix:
    """Rows of Hbar_m extending row(Gbar_m): the extra Z-type checks of QRM(m)."""
    return complete_basis(shortened_rm_generator(m), shortened_dual_generator(m))


__all__ = [
    "ClassicalCode",
    "FactReport",
    "RMIndexError",
    "RateConditionError",
    "appendixB_orthogonality",
    "block_recursion_generator",
    "canonical_point_order",
    "min_distance_bruteforce",
    "monomials",
    "rate_condition",
    "rm_dimension",
    "rm_generator",
    "rm_rate",
    "same_row_space",
    "row_space_contains",
    "shorten",
    "shortened_completion",
    "shortened_dual_generator",
    "shortened_rm_generator",
    "shortening_permutation",
    "verify_fact",
]
