"""Generating sets used by the QRM(m) <-> QRM(m+1) conversion.

Qubit layout on ``2n + 1`` qubits (``n = 2^m - 1``): block 1 is qubits
``0..n-1``, block 2 is ``n..2n-1`` and the bare qubit is ``2n``. This is the
column order of :func:`qrm.rmcodes.shortened_rm_generator` for ``m + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Sequence

from ..gf2 import BitMatrix, BitVector, complete_basis, rank, row_space_contains, same_row_space
from ..rmcodes import RMIndexError, shortened_rm_generator
from ..stabilizer.code import (
    StabilizerCode,
    compute_pure_errors,
    lookup_decoder,
    LookupDecoder,
    qrm,
    syndrome_bits,
)
from ..stabilizer.pauli import PauliOperator, symplectic_matrix, symplectic_product

EXTENDED_ROLES = (
    "retained_z",
    "retained_x",
    "bridge_z",
    "bridge_x",
    "gauge_z_tilde",
    "first_block_z",
    "first_block_x",
)
# The first six role groups are common to QRM(m+1) and the extended code.
COMMON_ROLES = EXTENDED_ROLES[:6]


def times(a: Sequence[PauliOperator], b: Sequence[PauliOperator]) -> list[PauliOperator]:
    """Elementwise tensor product ``{A_1 ⊗ B_1, A_2 ⊗ B_2, ...}``."""
    if len(a) != len(b):
        raise ValueError("ordered sets differ in length")
    return [x.tensor(y) for x, y in zip(a, b)]


@dataclass(frozen=True)
class RecursiveASets:
    m: int
    a_x: tuple[PauliOperator, ...]
    a_prime_z: tuple[PauliOperator, ...]


@lru_cache(maxsize=None)
def recursive_a_sets(m: int) -> RecursiveASets:
    """``A^x_m`` and ``A'^z_m`` by the doubling recursion, starting from the rows of Gbar_2."""
    if m < 2:
        raise RMIndexError("recursion starts at m = 2")
    if m == 2:
        G = shortened_rm_generator(2)
        return RecursiveASets(
            2,
            tuple(PauliOperator.x_type(r) for r in G),
            tuple(PauliOperator.z_type(r) for r in G),
        )
    prev = recursive_a_sets(m - 1)
    n = (1 << (m - 1)) - 1
    I = PauliOperator.identity
    ax = [p.tensor(I(1)) for p in times(prev.a_x, prev.a_x)]
    ax.append(I(n).tensor(PauliOperator(n, (1 << n) - 1, 0), PauliOperator.single(1, 0, "X")))
    az = [p.tensor(I(1)) for p in times(prev.a_prime_z, prev.a_prime_z)]
    az.append(I(n).tensor(PauliOperator(n, 0, (1 << n) - 1), PauliOperator.single(1, 0, "Z")))
    return RecursiveASets(m, tuple(ax), tuple(az))


@dataclass(frozen=True, eq=False)
class ExtendedGeneratorSet:
    """Generators of the extended QRM(m) code grouped by role, in row order."""

    m: int
    groups: dict[str, tuple[PauliOperator, ...]]

    @property
    def n_block(self) -> int:
        return (1 << self.m) - 1

    @property
    def n_total(self) -> int:
        return 2 * self.n_block + 1

    @property
    def generators(self) -> list[PauliOperator]:
        return [g for role in EXTENDED_ROLES for g in self.groups[role]]

    @property
    def roles(self) -> list[str]:
        return [role for role in EXTENDED_ROLES for _ in self.groups[role]]

    @property
    def common(self) -> list[PauliOperator]:
        return [g for role in COMMON_ROLES for g in self.groups[role]]

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.groups[r]) for r in EXTENDED_ROLES)


def _pre_rewrite(m: int) -> list[PauliOperator]:
    code = qrm(m)
    n = code.n
    I = PauliOperator.identity
    out = [g.tensor(I(n + 1)) for g in code.generators]
    out += [I(n).tensor(g, I(1)) for g in code.generators]
    out.append(I(n).tensor(code.logical_z[0], PauliOperator.single(1, 0, "Z")))
    out.append(I(n).tensor(code.logical_x[0], PauliOperator.single(1, 0, "X")))
    return out


@lru_cache(maxsize=None)
def build_extended_set(m: int) -> ExtendedGeneratorSet:
    """The rewritten generating set of ``QRM(m) ⊗ |Phi>``; invariants are checked on construction."""
    if m < 3:
        raise RMIndexError("extended set needs m >= 3")
    code = qrm(m)
    n = code.n
    I = PauliOperator.identity
    ax = code.generators_with_role("x")
    azp = code.generators_with_role("z'")
    azt = code.generators_with_role("z~")
    az = code.generators_with_role("z'", "z~")
    groups = {
        "retained_z": tuple(p.tensor(I(1)) for p in times(azp, azp)),
        "retained_x": tuple(p.tensor(I(1)) for p in times(ax, ax)),
        "bridge_z": (I(n).tensor(code.logical_z[0], PauliOperator.single(1, 0, "Z")),),
        "bridge_x": (I(n).tensor(code.logical_x[0], PauliOperator.single(1, 0, "X")),),
        "gauge_z_tilde": tuple(p.tensor(I(1)) for p in times(azt, azt)),
        "first_block_z": tuple(g.tensor(I(n + 1)) for g in az),
        "first_block_x": tuple(g.tensor(I(n + 1)) for g in ax),
    }
    ext = ExtendedGeneratorSet(m, groups)
    gens = ext.generators
    N = ext.n_total
    if len(gens) != (1 << (m + 1)) - 2:
        raise AssertionError("extended set has the wrong size")
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            if symplectic_product(a, b):
                raise AssertionError(f"{a} and {b} anticommute")
    if not same_row_space(symplectic_matrix(gens, N), symplectic_matrix(_pre_rewrite(m), N)):
        raise AssertionError("rewritten set generates a different group")
    return ext


def superfluous_check(m: int) -> dict[str, Any]:
    """Do ``A^x_m ∪ A'^z_m`` alone give distinct syndromes to all ``3n`` single-qubit Paulis?"""
    code = qrm(m)
    rows = code.role_indices("x", "z'")
    gens = [code.generators[i] for i in rows]
    seen: dict[BitVector, str] = {}
    collisions = []
    zero = BitVector(0, len(gens))
    for q in range(code.n):
        for kind in "XYZ":
            e = PauliOperator.single(code.n, q, kind)
            s = syndrome_bits(gens, e)
            if s == zero or s in seen:
                collisions.append((str(e), seen.get(s, "identity")))
            seen.setdefault(s, str(e))
    return {
        "m": m,
        "errors": 3 * code.n,
        "syndrome_bits_used": len(gens),
        "syndrome_bits_total": code.r,
        "collisions": collisions,
        "passed": not collisions,
    }


# ---------------------------------------------------------------------------
# conversion plan


@dataclass(frozen=True, eq=False)
class ConversionPlan:
    """Everything both conversion directions need for a given ``m``.

    ``up_generators`` is a generating set of QRM(m+1): the common stabilizers
    followed by ``m`` Z-type completions. ``down_generators`` is the
    extended set. Each comes with pure errors and a decoder over the common
    rows.
    """

    m: int
    extended: ExtendedGeneratorSet
    common: tuple[PauliOperator, ...]
    z_completion: tuple[PauliOperator, ...]
    up_generators: tuple[PauliOperator, ...]
    up_pure_errors: tuple[PauliOperator, ...]
    down_generators: tuple[PauliOperator, ...]
    down_pure_errors: tuple[PauliOperator, ...]
    decoder: LookupDecoder
    data_x: PauliOperator
    data_z: PauliOperator
    target: StabilizerCode = field(repr=False)

    @property
    def n_common(self) -> int:
        return len(self.common)


def _embed_block1(p: PauliOperator, N: int) -> PauliOperator:
    return p.tensor(PauliOperator.identity(N - p.n))


@lru_cache(maxsize=None)
def conversion_plan(m: int) -> ConversionPlan:
    ext = build_extended_set(m)
    N = ext.n_total
    big = qrm(m + 1)
    common = ext.common
    # m Z-type stabilizers of QRM(m+1) completing the common Z span.
    common_z = BitMatrix((g.z for g in common if g.x == 0), N)
    big_z = BitMatrix((g.z for g in big.generators if g.x == 0), N)
    if not row_space_contains(big_z, common_z):
        raise AssertionError("common Z stabilizers are not QRM(m+1) stabilizers")
    extra = complete_basis(common_z, big_z)
    if extra.nrows != m:
        raise AssertionError(f"expected {m} completing Z stabilizers, found {extra.nrows}")
    zc = tuple(PauliOperator.z_type(v) for v in extra)
    up = tuple(common) + zc
    if rank(symplectic_matrix(up, N)) != big.r or not same_row_space(
        symplectic_matrix(up, N), big.stabilizer_matrix()
    ):
        raise AssertionError("common + completion does not generate QRM(m+1)")
    small = qrm(m)
    data_x = _embed_block1(small.logical_x[0], N)
    data_z = _embed_block1(small.logical_z[0], N)
    up_pe = compute_pure_errors(up, [big.logical_x[0], big.logical_z[0]], N)
    down = tuple(ext.generators)
    down_pe = compute_pure_errors(down, [data_x, data_z], N)
    return ConversionPlan(
        m=m,
        extended=ext,
        common=tuple(common),
        z_completion=zc,
        up_generators=up,
        up_pure_errors=tuple(up_pe),
        down_generators=down,
        down_pure_errors=tuple(down_pe),
        decoder=lookup_decoder(common, N),
        data_x=data_x,
        data_z=data_z,
        target=big,
    )
