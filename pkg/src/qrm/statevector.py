"""Dense statevector simulation for small codes.

Basis index ``k`` is big-endian: qubit 0 is the most significant bit, the
same packing as :class:`qrm.gf2.BitVector` rows, so a packed codeword is
directly an amplitude index.
"""

from __future__ import annotations

import cmath
import math
import os
import random
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import kernels
from .gf2 import BitVector, enumerate_row_space
from .rmcodes import shortened_rm_generator
from .stabilizer.pauli import PauliError, PauliOperator

DEFAULT_MAX_QUBITS = 16
NORM_TOL = 1e-10
PHASE_TOL = 1e-9
BRANCH_EPS = 1e-12
MULTIBLOCK_GUARD = 1 << 24


class SimulationRangeError(ValueError):
    """Requested state would exceed the qubit cap."""


class ZeroProbabilityError(ValueError):
    """A forced measurement branch has (numerically) zero probability."""


def max_qubits() -> int:
    return int(os.environ.get("QRM_MAX_QUBITS", DEFAULT_MAX_QUBITS))


def _check_size(n: int) -> None:
    cap = max_qubits()
    if n > cap:
        raise SimulationRangeError(f"{n} qubits exceeds the statevector cap of {cap} (set QRM_MAX_QUBITS)")


class StateVector:
    __slots__ = ("n", "amps")

    def __init__(self, n: int, amps: np.ndarray, normalize: bool = False):
        _check_size(n)
        amps = np.asarray(amps, dtype=np.complex128)
        if amps.shape != (1 << n,):
            raise ValueError(f"expected {1 << n} amplitudes, got shape {amps.shape}")
        if normalize:
            nrm = np.linalg.norm(amps)
            if nrm == 0:
                raise ValueError("zero vector")
            amps = amps / nrm
        elif abs(np.linalg.norm(amps) - 1) > NORM_TOL:
            raise ValueError(f"state not normalized (norm {np.linalg.norm(amps)})")
        self.n = n
        self.amps = amps

    @classmethod
    def basis(cls, n: int, index: int = 0) -> "StateVector":
        a = np.zeros(1 << n, dtype=np.complex128)
        a[index] = 1
        return cls(n, a)

    @classmethod
    def from_bits(cls, bits: str) -> "StateVector":
        return cls.basis(len(bits), int(bits, 2))

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amps.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tensor(self, other: "StateVector") -> "StateVector":
        return StateVector(self.n + other.n, np.kron(self.amps, other.amps))

    def inner(self, other: "StateVector") -> complex:
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return complex(np.vdot(self.amps, other.amps))

    def dump(self, eps: float = BRANCH_EPS) -> str:
        """``bits re im`` per nonzero amplitude, sorted by index."""
        lines = []
        for k in np.flatnonzero(np.abs(self.amps) >= eps):
            a = self.amps[k]
            lines.append(f"{int(k):0{self.n}b} {a.real:.12g} {a.imag:.12g}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"StateVector(n={self.n}, nnz={int(np.count_nonzero(np.abs(self.amps) > BRANCH_EPS))})"


# ---------------------------------------------------------------------------
# encoding


@dataclass(frozen=True)
class LogicalCodewordSet:
    m: int
    y: int
    words: tuple[BitVector, ...] = field(repr=False)


def logical_codewords(m: int, y: int) -> LogicalCodewordSet:
    """Classical strings in the superposition for logical ``|y>`` of QRM(m)."""
    G = shortened_rm_generator(m)
    ones = BitVector.ones(G.ncols)
    words = [w ^ ones if y else w for w in enumerate_row_space(G)]
    return LogicalCodewordSet(m, y, tuple(words))


def encode_logical(m: int, amplitudes: tuple[complex, complex]) -> StateVector:
    """``alpha|0̄> + beta|1̄>`` for QRM(m), each codeword with amplitude ``1/sqrt(2^m)``."""
    if m < 3:
        raise SimulationRangeError("QRM(m) needs m >= 3")
    n = (1 << m) - 1
    _check_size(n)
    alpha, beta = (complex(a) for a in amplitudes)
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1) > NORM_TOL:
        raise ValueError("|alpha|^2 + |beta|^2 must be 1")
    amps = np.zeros(1 << n, dtype=np.complex128)
    c = 1 / math.sqrt(1 << m)
    for y, coef in ((0, alpha), (1, beta)):
        if coef == 0:
            continue
        for w in logical_codewords(m, y).words:
            amps[w.value] += coef * c
    return StateVector(n, amps)


# 8 logical test points: Pauli eigenstates plus two generic points.
LOGICAL_GRID: tuple[tuple[complex, complex], ...] = (
    (1, 0),
    (0, 1),
    (1 / math.sqrt(2), 1 / math.sqrt(2)),
    (1 / math.sqrt(2), -1 / math.sqrt(2)),
    (1 / math.sqrt(2), 1j / math.sqrt(2)),
    (1 / math.sqrt(2), -1j / math.sqrt(2)),
    (0.6, 0.8j),
    (math.cos(0.3), cmath.exp(1.1j) * math.sin(0.3)),
)


# ---------------------------------------------------------------------------
# gates

_SQ2 = 1 / math.sqrt(2)
ONE_QUBIT = {
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=np.complex128),
    "P": np.diag([1, 1j]).astype(np.complex128),
    "PDG": np.diag([1, -1j]).astype(np.complex128),
    "T": np.diag([1, cmath.exp(1j * math.pi / 4)]).astype(np.complex128),
    "TDG": np.diag([1, cmath.exp(-1j * math.pi / 4)]).astype(np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.diag([1, -1]).astype(np.complex128),
}
ONE_QUBIT["S"] = ONE_QUBIT["P"]


def _indices(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def _check_qubits(n: int, qubits: Sequence[int]) -> None:
    if len(set(qubits)) != len(qubits):
        raise IndexError("repeated qubit index")
    for q in qubits:
        if not 0 <= q < n:
            raise IndexError(f"qubit {q} out of range for n = {n}")


def apply_gate(psi: StateVector, gate: str, qubits: Sequence[int] | int) -> StateVector:
    """Apply one of H, P (S), T, X, Y, Z, their daggers PDG/TDG, CNOT, CZ, CCZ."""
    qs = [qubits] if isinstance(qubits, int) else list(qubits)
    _check_qubits(psi.n, qs)
    g = gate.upper()
    n = psi.n
    if g in ONE_QUBIT:
        if len(qs) != 1:
            raise IndexError(f"{g} acts on one qubit")
        t = psi.amps.reshape((2,) * n)
        t = np.moveaxis(np.tensordot(ONE_QUBIT[g], t, axes=([1], [qs[0]])), 0, qs[0])
        return StateVector(n, t.reshape(-1))
    idx = _indices(n)
    bits = [1 << (n - 1 - q) for q in qs]
    if g in ("CNOT", "CX"):
        if len(qs) != 2:
            raise IndexError("CNOT acts on two qubits")
        c, t = bits
        src = np.where(idx & c, idx ^ t, idx)
        return StateVector(n, psi.amps[src])
    if g in ("CZ", "CCZ"):
        if len(qs) != (2 if g == "CZ" else 3):
            raise IndexError(f"{g} arity mismatch")
        mask = sum(bits)
        sign = np.where((idx & mask) == mask, -1.0, 1.0)
        return StateVector(n, psi.amps * sign)
    raise ValueError(f"unsupported gate {gate!r}")


def apply_transversal(psi: StateVector, gate: str, blocks: Sequence[Sequence[int]]) -> StateVector:
    """Apply ``gate`` to each tuple ``(blocks[0][i], blocks[1][i], ...)``."""
    out = psi
    for qs in zip(*blocks):
        out = apply_gate(out, gate, qs)
    return out


def apply_transversal_zrot(psi: StateVector, ell: int, dagger: bool = False) -> StateVector:
    """``Z(omega_ell)`` on every qubit: amplitude ``k`` gains ``omega_ell**weight(k)``."""
    if ell < 1 or ell & (ell - 1):
        raise ValueError("ell must be a power of two")
    w = np.bitwise_count(_indices(psi.n)).astype(np.float64)
    sgn = -1 if dagger else 1
    return StateVector(psi.n, psi.amps * np.exp(sgn * 2j * np.pi * w / ell))


def zrot_amplitudes(amplitudes: tuple[complex, complex], ell: int, dagger: bool = False) -> tuple[complex, complex]:
    """Single-qubit ``Z(omega_ell)`` (or its inverse) on ``(alpha, beta)``."""
    a, b = amplitudes
    s = -1 if dagger else 1
    return (complex(a), complex(b) * cmath.exp(s * 2j * math.pi / ell))


def apply_pauli(psi: StateVector, p: PauliOperator) -> StateVector:
    if p.n != psi.n:
        raise PauliError("Pauli acts on a different number of qubits")
    k = _indices(psi.n)
    sign = 1 - 2 * (np.bitwise_count(k & p.z) & 1).astype(np.int8)
    out = np.empty_like(psi.amps)
    out[k ^ p.x] = (1j**p.phase) * sign * psi.amps
    return StateVector(psi.n, out)


def expectation(psi: StateVector, p: PauliOperator) -> float:
    if not p.is_hermitian:
        raise PauliError(f"{p} is not Hermitian")
    return float(np.vdot(psi.amps, apply_pauli(psi, p).amps).real)


def measure_pauli(
    psi: StateVector,
    p: PauliOperator,
    forced_outcome: int | None = None,
    rng: random.Random | None = None,
) -> tuple[StateVector, int, float]:
    """Project onto the ``(I ± p)/2`` eigenspace; return ``(state, outcome, probability)``.

    Without ``forced_outcome`` the outcome is drawn from ``rng`` if given,
    otherwise ``+1`` is taken whenever it has nonzero probability.
    """
    if not p.is_hermitian:
        raise PauliError(f"{p} is not Hermitian")
    if forced_outcome not in (None, 1, -1):
        raise ValueError("forced outcome must be +1 or -1")
    pp = apply_pauli(psi, p).amps
    plus = (psi.amps + pp) / 2
    p_plus = float(np.vdot(plus, plus).real)
    p_minus = max(0.0, 1.0 - p_plus)
    if forced_outcome is not None:
        out = forced_outcome
    elif rng is not None:
        out = 1 if rng.random() < p_plus else -1
    else:
        out = 1 if p_plus > BRANCH_EPS else -1
    prob = p_plus if out == 1 else p_minus
    if prob <= BRANCH_EPS:
        raise ZeroProbabilityError(f"outcome {out:+d} of {p} has probability {prob:.3g}")
    branch = plus if out == 1 else psi.amps - plus
    return StateVector(psi.n, branch / math.sqrt(prob)), out, prob


def equal_up_to_global_phase(a: StateVector, b: StateVector, tol: float = PHASE_TOL) -> bool:
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    return abs(np.vdot(a.amps, b.amps)) >= 1 - tol


def overlap(a: StateVector, b: StateVector) -> float:
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    return float(abs(np.vdot(a.amps, b.amps)))


# ---------------------------------------------------------------------------
# multi-block controlled-Z by codeword enumeration


@dataclass
class MultiblockReport:
    m: int
    k: int
    settings: list[dict[str, Any]]
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return {"m": self.m, "k": self.k, "passed": self.passed, "settings": self.settings}


def verify_multiblock_cz(m: int, k: int) -> MultiblockReport:
    """Transversal k-fold controlled-Z across ``k+1`` QRM(m) blocks acts as the logical one.

    For each logical setting ``y`` every ``(k+1)``-tuple of codewords is
    enumerated; the phase ``(-1)^{|x_1 & ... & x_{k+1}|}`` must be the same
    for all tuples and equal ``(-1)^{y_1 ... y_{k+1}}``.
    """
    if m < 3:
        raise ValueError("QRM(m) needs m >= 3")
    if not 1 <= k <= m - 2:
        raise ValueError(f"k = {k} outside 1..m-2 = 1..{m - 2}")
    if (1 << (m * (k + 1))) > MULTIBLOCK_GUARD:
        raise ValueError(f"2^{m * (k + 1)} codeword tuples exceeds the guard 2^24")
    G = shortened_rm_generator(m)
    n = G.ncols
    words = [w.value for w in enumerate_row_space(G)]
    ones = (1 << n) - 1
    nb = k + 1
    settings = []
    ok = True
    for y_mask in range(1 << nb):
        even, odd = kernels.multiblock_parity_counts(words, nb, ones, y_mask, n)
        y = [(y_mask >> b) & 1 for b in range(nb)]
        expected = -1 if all(y) else 1
        constant = even == 0 or odd == 0
        phase = (1 if odd == 0 else -1) if constant else None
        good = constant and phase == expected
        ok &= good
        settings.append({"y": y, "even": even, "odd": odd, "phase": phase, "expected": expected, "passed": good})
    return MultiblockReport(m, k, settings, ok)


# ---------------------------------------------------------------------------
# Steane transversal Cliffords

LOGICAL_GATES = {
    "H": ONE_QUBIT["H"],
    "P": ONE_QUBIT["P"],
    "PDG": ONE_QUBIT["PDG"],
}


def encode_two_blocks(m: int, coeffs: Sequence[complex]) -> StateVector:
    """``sum_ab c_ab |ā>|b̄>`` over two QRM(m) blocks; ``coeffs`` ordered 00, 01, 10, 11."""
    basis = [encode_logical(m, (1, 0)).amps, encode_logical(m, (0, 1)).amps]
    n = (1 << m) - 1
    amps = np.zeros(1 << (2 * n), dtype=np.complex128)
    for ab, c in enumerate(coeffs):
        if c:
            amps += c * np.kron(basis[ab >> 1], basis[ab & 1])
    return StateVector(2 * n, amps, normalize=True)


def _logical_1q(gate: np.ndarray, amplitudes) -> tuple[complex, complex]:
    a, b = gate @ np.asarray(amplitudes, dtype=np.complex128)
    return complex(a), complex(b)


def transversal_1q_check(m: int, physical: str, logical: str, grid=LOGICAL_GRID) -> dict[str, Any]:
    """Is ``physical`` on every qubit the ``logical`` gate on each grid point (up to global phase)?"""
    n = (1 << m) - 1
    overlaps = []
    for amp in grid:
        psi = apply_transversal(encode_logical(m, amp), physical, [range(n)])
        overlaps.append(overlap(psi, encode_logical(m, _logical_1q(LOGICAL_GATES[logical], amp))))
    return {
        "physical": physical,
        "logical": logical,
        "min_overlap": min(overlaps),
        "passed": min(overlaps) >= 1 - PHASE_TOL,
    }


def transversal_cnot_check(m: int = 3, grid=LOGICAL_GRID) -> dict[str, Any]:
    """CNOT between matching qubits of two blocks against logical CNOT.

    Inputs are all products of two grid points plus the two logical Bell states.
    """
    n = (1 << m) - 1
    inputs = []
    for a in grid:
        for b in grid:
            inputs.append(np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)))
    s = 1 / math.sqrt(2)
    inputs += [np.array([s, 0, 0, s]), np.array([0, s, s, 0])]
    perm = [0, 1, 3, 2]
    overlaps = []
    for c in inputs:
        psi = apply_transversal(encode_two_blocks(m, c), "CNOT", [range(n), range(n, 2 * n)])
        overlaps.append(overlap(psi, encode_two_blocks(m, c[perm])))
    return {"inputs": len(inputs), "min_overlap": min(overlaps), "passed": min(overlaps) >= 1 - PHASE_TOL}


def logical_phase_of_zrot(m: int, ell: int) -> complex:
    """Relative phase picked up by ``|1̄>`` under ``Z(omega_ell)`` on every qubit."""
    one = encode_logical(m, (0, 1))
    rotated = apply_transversal_zrot(one, ell)
    return complex(np.vdot(one.amps, rotated.amps))
