"""Stabilizer codes: CSS construction, QRM(m), syndromes, pure errors, distance, decoding."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, product as iproduct
from math import comb
from typing import Sequence

from .. import kernels
from ..gf2 import (
    BitMatrix,
    BitVector,
    EnumerationGuardError,
    complete_basis,
    in_row_space,
    inverse,
    matmul,
    null_space,
    rank,
    row_basis,
    solve,
)
from ..rmcodes import RMIndexError, rm_generator, shortened_completion, shortened_rm_generator
from .pauli import PauliOperator, from_symplectic, symplectic_matrix, symplectic_product

PURE_ERROR_SEARCH_DIM = 14
DISTANCE_SEARCH_LIMIT = 1 << 22


class CodeConstructionError(ValueError):
    """Generators fail to commute, are dependent, or logicals are invalid."""


class SyndromeCollisionError(ValueError):
    """Two correctable errors share a syndrome (the code has distance < 3)."""


class UncorrectableError(RuntimeError):
    """Syndrome is not produced by any error the decoder can correct."""

    def __init__(self, syndrome: BitVector, message: str | None = None):
        self.syndrome = syndrome
        super().__init__(message or f"uncorrectable syndrome {syndrome}")


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    n: int
    generators: tuple[PauliOperator, ...]
    logical_x: tuple[PauliOperator, ...]
    logical_z: tuple[PauliOperator, ...]
    pure_errors: tuple[PauliOperator, ...]
    roles: tuple[str, ...] = ()
    name: str = ""
    metadata: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.logical_x)

    @property
    def r(self) -> int:
        return len(self.generators)

    @cached_property
    def distance(self) -> int:
        return code_distance(self)

    @property
    def params(self) -> tuple[int, int, int | None]:
        return (self.n, self.k, self.__dict__.get("distance"))

    def generators_with_role(self, *roles: str) -> list[PauliOperator]:
        return [g for g, r in zip(self.generators, self.roles) if r in roles]

    def role_indices(self, *roles: str) -> list[int]:
        return [i for i, r in enumerate(self.roles) if r in roles]

    def is_css(self) -> bool:
        return all(g.x == 0 or g.z == 0 for g in self.generators)

    def x_check_matrix(self) -> BitMatrix:
        return BitMatrix((g.x for g in self.generators if g.z == 0 and g.x), self.n)

    def z_check_matrix(self) -> BitMatrix:
        return BitMatrix((g.z for g in self.generators if g.x == 0 and g.z), self.n)

    def stabilizer_matrix(self) -> BitMatrix:
        return symplectic_matrix(self.generators, self.n)

    def in_stabilizer_group(self, p: PauliOperator) -> bool:
        """Membership up to sign."""
        return in_row_space(self.stabilizer_matrix(), BitVector(p.symplectic, 2 * self.n))

    def in_normalizer(self, p: PauliOperator) -> bool:
        return all(symplectic_product(p, g) == 0 for g in self.generators)

    def __repr__(self) -> str:
        n, k, d = self.params
        return f"StabilizerCode({self.name or 'unnamed'}: [[{n},{k},{d if d is not None else '?'}]])"


def _swap_word(p: PauliOperator) -> int:
    # <p, t> = popcount(swap(p) & t) mod 2 for t packed as x|z.
    return (p.z << p.n) | p.x


def _pauli_weight(word: int, n: int) -> int:
    return ((word >> n) | (word & ((1 << n) - 1))).bit_count()


def compute_pure_errors(
    generators: Sequence[PauliOperator],
    logicals: Sequence[PauliOperator],
    n: int,
    search_dim: int = PURE_ERROR_SEARCH_DIM,
    minimize: bool = True,
) -> list[PauliOperator]:
    """Pure errors ``T_j``: anticommute with generator ``j`` only, commute with logicals and each other.

    Each ``T_j`` solves a linear symplectic system that includes the earlier
    pure errors, so the set is pairwise commuting by construction. Small
    solution spaces are searched for a lowest-weight member. Every other
    valid set is ``T_j * prod_i A_i^{M_ij}`` with ``M`` symmetric over GF(2);
    for CSS generating sets the X-check/Z-check block of ``M`` is then
    searched (exhaustively when small) to lower the largest weight.
    ``minimize=False`` skips all weight searches.
    """
    gens = list(generators)
    r = len(gens)
    fixed_rows = [_swap_word(g) for g in gens] + [_swap_word(L) for L in logicals]
    words: list[int] = []
    for j in range(r):
        rows = fixed_rows + [_swap_word(from_symplectic(w, n)) for w in words]
        M = BitMatrix(rows, 2 * n)
        rhs = BitVector(1 << (len(rows) - 1 - j), len(rows))
        sol = solve(M, rhs)
        if sol is None:
            raise CodeConstructionError(f"no pure error for generator {j}; generators not independent")
        best = sol.value
        kernel = null_space(M) if minimize else None
        if minimize and kernel.nrows <= search_dim:
            best_w = _pauli_weight(best, n)
            for delta in kernels.span_words(list(kernel.rows), 2 * n):
                w = _pauli_weight(best ^ delta, n)
                if w < best_w:
                    best, best_w = best ^ delta, w
        words.append(best)
    if not minimize:
        return [from_symplectic(w, n) for w in words]
    gw = [g.symplectic for g in gens]
    xs = [i for i, g in enumerate(gens) if g.z == 0]
    zs = [i for i, g in enumerate(gens) if g.x == 0]
    if len(xs) + len(zs) == r and xs and zs:
        _css_block_search(words, gw, xs, zs, n)
    for j in range(r):
        alt = words[j] ^ gw[j]
        if _pauli_weight(alt, n) < _pauli_weight(words[j], n):
            words[j] = alt
    return [from_symplectic(w, n) for w in words]


CSS_EXHAUSTIVE_BITS = 12


def _css_block_search(words: list[int], gens: list[int], xs: list[int], zs: list[int], n: int):
    # Entry (i, j), i an X check and j a Z check, multiplies T_i by A_j and
    # T_j by A_i. Entries are independent, so the block is a bit mask.
    pairs = [(i, j) for i in xs for j in zs]
    base = list(words)

    def apply(mask: int) -> list[int]:
        out = list(base)
        for b, (i, j) in enumerate(pairs):
            if (mask >> b) & 1:
                out[i] ^= gens[j]
                out[j] ^= gens[i]
        return out

    def score(ws: list[int]) -> tuple[int, int]:
        wt = [_pauli_weight(w, n) for w in ws]
        return (max(wt), sum(wt))

    if len(pairs) <= CSS_EXHAUSTIVE_BITS:
        best = min(range(1 << len(pairs)), key=lambda mk: score(apply(mk)))
        words[:] = apply(best)
        return
    mask, cur = 0, score(base)
    improved = True
    while improved:
        improved = False
        for b in range(len(pairs)):
            trial = score(apply(mask ^ (1 << b)))
            if trial < cur:
                mask, cur, improved = mask ^ (1 << b), trial, True
    words[:] = apply(mask)


def check_pure_errors(code: StabilizerCode) -> bool:
    """Full pairwise symplectic check of the pure-error contract."""
    T, A = code.pure_errors, code.generators
    L = list(code.logical_x) + list(code.logical_z)
    for j, t in enumerate(T):
        if any(symplectic_product(t, a) != (i == j) for i, a in enumerate(A)):
            return False
        if any(symplectic_product(t, l) for l in L):
            return False
        if any(symplectic_product(t, u) for i, u in enumerate(T) if i != j):
            return False
    return True


def canonical_form_matrix(code: StabilizerCode) -> list[list[int]]:
    """Commutation matrix of (generators, pure errors, logical X, logical Z)."""
    ops = list(code.generators) + list(code.pure_errors) + list(code.logical_x) + list(code.logical_z)
    return [[symplectic_product(a, b) for b in ops] for a in ops]


def expected_canonical_matrix(r: int, k: int) -> list[list[int]]:
    size = 2 * r + 2 * k
    out = [[0] * size for _ in range(size)]
    for j in range(r):
        out[j][r + j] = out[r + j][j] = 1
    for i in range(k):
        a, b = 2 * r + i, 2 * r + k + i
        out[a][b] = out[b][a] = 1
    return out


def build_code(
    n: int,
    generators: Sequence[PauliOperator],
    logical_x: Sequence[PauliOperator],
    logical_z: Sequence[PauliOperator],
    roles: Sequence[str] = (),
    name: str = "",
    metadata: dict | None = None,
) -> StabilizerCode:
    """Validate a generating set with logical pairs and attach pure errors."""
    gens = list(generators)
    for g in gens:
        if g.n != n:
            raise CodeConstructionError("generator on wrong number of qubits")
        if not g.is_hermitian:
            raise CodeConstructionError(f"generator {g} is not Hermitian")
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            if symplectic_product(a, b):
                raise CodeConstructionError(f"generators {a} and {b} anticommute")
    if gens and rank(symplectic_matrix(gens, n)) != len(gens):
        raise CodeConstructionError("generators are not independent")
    lx, lz = list(logical_x), list(logical_z)
    if len(lx) != len(lz) or len(gens) + len(lx) != n:
        raise CodeConstructionError(f"expected {n - len(gens)} logical pairs, got {len(lx)}/{len(lz)}")
    for i, X in enumerate(lx):
        for j, Z in enumerate(lz):
            if symplectic_product(X, Z) != (i == j):
                raise CodeConstructionError("logical operators are not canonically paired")
    for i in range(len(lx)):
        for j in range(i + 1, len(lx)):
            if symplectic_product(lx[i], lx[j]) or symplectic_product(lz[i], lz[j]):
                raise CodeConstructionError("logical operators of one type must commute")
    for L in lx + lz:
        if any(symplectic_product(L, g) for g in gens):
            raise CodeConstructionError(f"logical {L} does not commute with the stabilizers")
    if len(roles) not in (0, len(gens)):
        raise CodeConstructionError("one role per generator required")
    pure = compute_pure_errors(gens, lx + lz, n)
    return StabilizerCode(
        n, tuple(gens), tuple(lx), tuple(lz), tuple(pure), tuple(roles), name, dict(metadata or {})
    )


def css_logicals(gx: BitMatrix, gz: BitMatrix) -> list[tuple[BitVector, BitVector]]:
    """A canonically paired basis of X-type and Z-type logicals of CSS(gx, gz)."""
    n = gx.ncols
    lx = complete_basis(gx, null_space(gz) if gz.nrows else BitMatrix.identity(n))
    lz = complete_basis(gz, null_space(gx) if gx.nrows else BitMatrix.identity(n))
    if lx.nrows != lz.nrows:
        raise CodeConstructionError("inconsistent logical counts")
    if lx.nrows == 0:
        return []
    # Rotate lz so that lx lz^T = I.
    M = lx.mul_transpose(lz)
    lz = matmul(inverse(M).transpose(), lz)
    return list(zip(lx, lz))


def css_code(
    gx: BitMatrix,
    gz: BitMatrix,
    logicals: Sequence[tuple[BitVector, BitVector]] | None = None,
    roles: Sequence[str] = (),
    name: str = "",
) -> StabilizerCode:
    """CSS code with X checks from rows of ``gx`` and Z checks from rows of ``gz``."""
    if gx.ncols != gz.ncols:
        raise CodeConstructionError("gx and gz have different lengths")
    n = gx.ncols
    if gx.nrows and gz.nrows and not gz.mul_transpose(gx).is_zero():
        raise CodeConstructionError("gz gx^T != 0: X and Z checks do not commute")
    if gx.nrows and rank(gx) != gx.nrows:
        raise CodeConstructionError("X checks are dependent")
    if gz.nrows and rank(gz) != gz.nrows:
        raise CodeConstructionError("Z checks are dependent")
    if logicals is None:
        logicals = css_logicals(gx, gz)
    for lx, _ in logicals:
        if gx.nrows and in_row_space(gx, lx):
            raise CodeConstructionError("logical X lies in the stabilizer group")
    for _, lz in logicals:
        if gz.nrows and in_row_space(gz, lz):
            raise CodeConstructionError("logical Z lies in the stabilizer group")
    gens = [PauliOperator.x_type(v) for v in gx] + [PauliOperator.z_type(v) for v in gz]
    if not roles:
        roles = ["x"] * gx.nrows + ["z"] * gz.nrows
    return build_code(
        n,
        gens,
        [PauliOperator.x_type(a) for a, _ in logicals],
        [PauliOperator.z_type(b) for _, b in logicals],
        roles,
        name,
    )


@lru_cache(maxsize=None)
def qrm(m: int) -> StabilizerCode:
    """QRM(m) = [[2^m - 1, 1, 3]] in canonical column order.

    Generator order: X checks (rows of Gbar_m), Z checks from the same rows
    (role ``"z'"``), then the completion to Hbar_m (role ``"z~"``).
    """
    if m < 3:
        raise RMIndexError("QRM(m) needs m >= 3")
    G = shortened_rm_generator(m)
    extra = shortened_completion(m)
    n = G.ncols
    gz = G.vstack(extra)
    roles = ["x"] * G.nrows + ["z'"] * G.nrows + ["z~"] * extra.nrows
    ones = BitVector.ones(n)
    return css_code(G, gz, [(ones, ones)], roles, name=f"QRM({m})")


@lru_cache(maxsize=None)
def qrm_rm(r: int, m: int) -> StabilizerCode:
    """Self-orthogonal CSS code with both check types from the rows of G_{r,m} (unshortened)."""
    G = rm_generator(r, m)
    if not G.mul_transpose(G).is_zero():
        raise CodeConstructionError(f"RM({r},{m}) is not self-orthogonal")
    return css_code(G, G, name=f"QRM({r},{m})")


def steane() -> StabilizerCode:
    return qrm(3)


# ---------------------------------------------------------------------------
# syndromes and decoding


def syndrome_bits(generators: Sequence[PauliOperator], e: PauliOperator) -> BitVector:
    v = 0
    for g in generators:
        if g.n != e.n:
            raise ValueError(f"error acts on {e.n} qubits, code on {g.n}")
        v = (v << 1) | symplectic_product(g, e)
    return BitVector(v, len(generators))


def syndrome(code: StabilizerCode, e: PauliOperator) -> BitVector:
    """Bit ``j`` is 1 iff ``e`` anticommutes with generator ``j``."""
    if e.n != code.n:
        raise ValueError(f"error acts on {e.n} qubits, code on {code.n}")
    return syndrome_bits(code.generators, e)


@dataclass
class LookupDecoder:
    """Syndrome table for all errors of weight <= 1 on a chosen generator subset."""

    n: int
    generators: tuple[PauliOperator, ...]
    table: dict[BitVector, PauliOperator]

    def __len__(self) -> int:
        return len(self.table)

    def syndrome(self, e: PauliOperator) -> BitVector:
        return syndrome_bits(self.generators, e)

    def decode(self, s: BitVector) -> PauliOperator:
        try:
            return self.table[s]
        except KeyError:
            raise UncorrectableError(s) from None


def lookup_decoder(generators: Sequence[PauliOperator], n: int) -> LookupDecoder:
    gens = tuple(generators)
    table: dict[BitVector, PauliOperator] = {}
    table[BitVector(0, len(gens))] = PauliOperator.identity(n)
    for q in range(n):
        for kind in "XYZ":
            e = PauliOperator.single(n, q, kind)
            s = syndrome_bits(gens, e)
            if s in table:
                raise SyndromeCollisionError(f"{e} and {table[s]} share syndrome {s}")
            table[s] = e
    return LookupDecoder(n, gens, table)


def single_error_decoder(code: StabilizerCode, rows: Sequence[int] | None = None) -> LookupDecoder:
    """Lookup table over the ``3n + 1`` Paulis of weight <= 1 (optionally on a generator subset)."""
    gens = code.generators if rows is None else [code.generators[i] for i in rows]
    return lookup_decoder(gens, code.n)


# ---------------------------------------------------------------------------
# distance


def _logical_at_weight(check_rows, ech, n: int, w: int) -> bool:
    for supp in combinations(range(n), w):
        v = 0
        for q in supp:
            v |= 1 << (n - 1 - q)
        if any((v & c).bit_count() & 1 for c in check_rows):
            continue
        if kernels.reduce_against(ech, v, n):
            return True
    return False


def _echelon(stab: BitMatrix, n: int):
    return kernels.rref_rows(list(row_basis(stab).rows), n) if stab.nrows else ([], [])


def code_distance(code: StabilizerCode, limit: int = DISTANCE_SEARCH_LIMIT) -> int:
    """Minimum weight of an element of N(S) \\ S, by increasing-weight exhaustive search."""
    if code.k == 0:
        raise CodeConstructionError("distance undefined for k = 0")
    n = code.n
    if code.is_css():
        # X and Z sides are searched together, weight by weight, so a code
        # with one short side stops early.
        hx, hz = code.x_check_matrix(), code.z_check_matrix()
        sides = [(hz.rows, _echelon(hx, n)), (hx.rows, _echelon(hz, n))]
        budget = 0
        for w in range(1, n + 1):
            budget += 2 * comb(n, w)
            if budget > limit:
                raise EnumerationGuardError(f"distance search exceeded {limit} candidates")
            if any(_logical_at_weight(c, e, n, w) for c, e in sides):
                return w
        raise CodeConstructionError("no logical operator found")
    S = code.stabilizer_matrix()
    ech = kernels.rref_rows(list(row_basis(S).rows), 2 * n)
    budget = 0
    for w in range(1, n + 1):
        budget += comb(n, w) * 3**w
        if budget > limit:
            raise EnumerationGuardError(f"distance search exceeded {limit} candidates")
        for supp in combinations(range(n), w):
            for kinds in iproduct("XYZ", repeat=w):
                p = PauliOperator.identity(n)
                for q, kd in zip(supp, kinds):
                    p = p * PauliOperator.single(n, q, kd)
                if code.in_normalizer(p) and kernels.reduce_against(ech, p.symplectic, 2 * n):
                    return w
    raise CodeConstructionError("no logical operator found")
