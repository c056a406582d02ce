"""Stabilizer-state tableau with destabilizers and phases.

Row ``i < n`` is destabilizer ``i``, row ``n + i`` is stabilizer ``i``. Each
row is ``i**phase X^x Z^z`` with the same packing as :class:`PauliOperator`.
Measurements are ideal projective Pauli measurements; random outcomes are
forced to ``+1`` unless a random generator is supplied.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .code import compute_pure_errors
from .pauli import PauliError, PauliOperator, symplectic_product


class TableauError(ValueError):
    pass


class ResidualEntanglementError(TableauError):
    """Qubits to be discarded are entangled with the rest."""


class Tableau:
    __slots__ = ("n", "xs", "zs", "ph")

    def __init__(self, n: int, xs: list[int], zs: list[int], ph: list[int]):
        if not (len(xs) == len(zs) == len(ph) == 2 * n):
            raise TableauError("a tableau needs 2n rows")
        self.n = n
        self.xs, self.zs, self.ph = xs, zs, ph

    # -- construction -----------------------------------------------------

    @classmethod
    def zero_state(cls, n: int) -> "Tableau":
        xs = [1 << (n - 1 - q) for q in range(n)] + [0] * n
        zs = [0] * n + [1 << (n - 1 - q) for q in range(n)]
        return cls(n, xs, zs, [0] * (2 * n))

    @classmethod
    def from_stabilizers(cls, generators: Sequence[PauliOperator]) -> "Tableau":
        """Tableau of the state fixed by ``n`` independent commuting Hermitian generators."""
        gens = list(generators)
        if not gens:
            raise TableauError("no generators")
        n = gens[0].n
        if len(gens) != n:
            raise TableauError(f"need {n} generators for a state on {n} qubits, got {len(gens)}")
        for g in gens:
            if not g.is_hermitian:
                raise TableauError(f"{g} is not Hermitian")
        for i, a in enumerate(gens):
            for b in gens[i + 1 :]:
                if symplectic_product(a, b):
                    raise TableauError(f"generators {a} and {b} anticommute")
        destab = compute_pure_errors(gens, [], n, minimize=False)
        rows = destab + gens
        return cls(n, [p.x for p in rows], [p.z for p in rows], [p.phase for p in rows])

    def copy(self) -> "Tableau":
        return Tableau(self.n, list(self.xs), list(self.zs), list(self.ph))

    def tensor(self, other: "Tableau") -> "Tableau":
        """``self ⊗ other``; ``self`` occupies the leading qubits."""
        n, m = self.n, other.n
        xs, zs, ph = [], [], []
        for half in (0, 1):
            for i in range(n):
                r = half * n + i
                xs.append(self.xs[r] << m)
                zs.append(self.zs[r] << m)
                ph.append(self.ph[r])
            for i in range(m):
                r = half * m + i
                xs.append(other.xs[r])
                zs.append(other.zs[r])
                ph.append(other.ph[r])
        return Tableau(n + m, xs, zs, ph)

    # -- views ------------------------------------------------------------

    def row(self, i: int) -> PauliOperator:
        return PauliOperator(self.n, self.xs[i], self.zs[i], self.ph[i])

    @property
    def stabilizers(self) -> list[PauliOperator]:
        return [self.row(self.n + i) for i in range(self.n)]

    @property
    def destabilizers(self) -> list[PauliOperator]:
        return [self.row(i) for i in range(self.n)]

    def is_valid(self) -> bool:
        """Symplectic-basis check: destab_i anticommutes with stab_j iff i == j, all else commute."""
        rows = [self.row(i) for i in range(2 * self.n)]
        n = self.n
        for i in range(2 * n):
            for j in range(i + 1, 2 * n):
                want = int(j == i + n)
                if symplectic_product(rows[i], rows[j]) != want:
                    return False
        return all(rows[n + i].is_hermitian for i in range(n))

    # -- row arithmetic ---------------------------------------------------

    def _rowmul(self, h: int, i: int) -> None:
        # row h <- row h * row i
        self.ph[h] = (self.ph[h] + self.ph[i] + 2 * (self.zs[h] & self.xs[i]).bit_count()) % 4
        self.xs[h] ^= self.xs[i]
        self.zs[h] ^= self.zs[i]

    def _anticommutes(self, i: int, p: PauliOperator) -> bool:
        return ((self.xs[i] & p.z).bit_count() + (self.zs[i] & p.x).bit_count()) & 1 == 1

    # -- gates ------------------------------------------------------------

    def _bit(self, q: int) -> int:
        if not 0 <= q < self.n:
            raise TableauError(f"qubit {q} out of range for n = {self.n}")
        return 1 << (self.n - 1 - q)

    def h(self, q: int) -> "Tableau":
        b = self._bit(q)
        for r in range(2 * self.n):
            x, z = self.xs[r] & b, self.zs[r] & b
            if x and z:
                self.ph[r] = (self.ph[r] + 2) % 4
            self.xs[r] = (self.xs[r] & ~b) | z
            self.zs[r] = (self.zs[r] & ~b) | x
        return self

    def s(self, q: int) -> "Tableau":
        b = self._bit(q)
        for r in range(2 * self.n):
            if self.xs[r] & b:
                self.ph[r] = (self.ph[r] + 1) % 4
                self.zs[r] ^= b
        return self

    def s_dag(self, q: int) -> "Tableau":
        return self.s(q).z(q)

    def x(self, q: int) -> "Tableau":
        return self.apply_pauli(PauliOperator.single(self.n, q, "X"))

    def y(self, q: int) -> "Tableau":
        return self.apply_pauli(PauliOperator.single(self.n, q, "Y"))

    def z(self, q: int) -> "Tableau":
        return self.apply_pauli(PauliOperator.single(self.n, q, "Z"))

    def cnot(self, c: int, t: int) -> "Tableau":
        if c == t:
            raise TableauError("control and target coincide")
        bc, bt = self._bit(c), self._bit(t)
        for r in range(2 * self.n):
            if self.xs[r] & bc:
                self.xs[r] ^= bt
            if self.zs[r] & bt:
                self.zs[r] ^= bc
        return self

    def cz(self, a: int, b: int) -> "Tableau":
        if a == b:
            raise TableauError("CZ needs two distinct qubits")
        ba, bb = self._bit(a), self._bit(b)
        for r in range(2 * self.n):
            xa, xb = self.xs[r] & ba, self.xs[r] & bb
            if xa and xb:
                self.ph[r] = (self.ph[r] + 2) % 4
            if xa:
                self.zs[r] ^= bb
            if xb:
                self.zs[r] ^= ba
        return self

    def apply_pauli(self, p: PauliOperator) -> "Tableau":
        """Conjugate by ``p``: rows anticommuting with ``p`` change sign."""
        if p.n != self.n:
            raise TableauError("Pauli acts on a different number of qubits")
        for r in range(2 * self.n):
            if self._anticommutes(r, p):
                self.ph[r] = (self.ph[r] + 2) % 4
        return self

    def apply(self, gate: str, *qubits: int) -> "Tableau":
        """Apply a named Clifford gate: H, S (alias P), SDG, X, Y, Z, CNOT (alias CX), CZ."""
        fn = {
            "H": self.h,
            "S": self.s,
            "P": self.s,
            "SDG": self.s_dag,
            "X": self.x,
            "Y": self.y,
            "Z": self.z,
            "CNOT": self.cnot,
            "CX": self.cnot,
            "CZ": self.cz,
        }.get(gate.upper())
        if fn is None:
            raise TableauError(f"unsupported gate {gate!r}")
        return fn(*qubits)

    # -- measurement ------------------------------------------------------

    def _stabilizer_product(self, p: PauliOperator) -> PauliOperator:
        # For p in the stabilizer group (up to sign), the signed group element
        # with the same X/Z pattern.
        n = self.n
        acc = PauliOperator.identity(n)
        for i in range(n):
            if self._anticommutes(i, p):
                acc = acc * self.row(n + i)
        return acc

    def expectation(self, p: PauliOperator) -> int:
        """``+1``/``-1`` if ``±p`` stabilizes the state, ``0`` otherwise."""
        if p.n != self.n:
            raise TableauError("Pauli acts on a different number of qubits")
        if not p.is_hermitian:
            raise PauliError(f"{p} is not Hermitian")
        n = self.n
        if any(self._anticommutes(n + i, p) for i in range(n)):
            return 0
        acc = self._stabilizer_product(p)
        return 1 if acc.phase == p.phase else -1

    def measure(
        self,
        p: PauliOperator,
        force: int | None = None,
        rng: random.Random | None = None,
    ) -> tuple[int, bool]:
        """Measure Hermitian ``p``; return ``(outcome, deterministic)`` with outcome ``±1``.

        Random outcomes use ``force`` if given, else ``rng``, else ``+1``.
        Forcing a deterministic measurement to the other value raises.
        """
        if p.n != self.n:
            raise TableauError("Pauli acts on a different number of qubits")
        if not p.is_hermitian:
            raise PauliError(f"{p} is not Hermitian")
        if force not in (None, 1, -1):
            raise TableauError("forced outcome must be +1 or -1")
        n = self.n
        pivot = next((i for i in range(n) if self._anticommutes(n + i, p)), None)
        if pivot is None:
            out = 1 if self._stabilizer_product(p).phase == p.phase else -1
            if force is not None and force != out:
                raise TableauError(f"outcome {force:+d} has probability 0")
            return out, True
        sp = n + pivot
        for r in range(2 * n):
            if r != sp and self._anticommutes(r, p):
                self._rowmul(r, sp)
        if force is not None:
            out = force
        elif rng is not None:
            out = rng.choice((1, -1))
        else:
            out = 1
        self.xs[pivot], self.zs[pivot], self.ph[pivot] = self.xs[sp], self.zs[sp], self.ph[sp]
        self.xs[sp], self.zs[sp] = p.x, p.z
        self.ph[sp] = p.phase if out == 1 else (p.phase + 2) % 4
        return out, False

    # -- comparison and partial trace -------------------------------------

    def same_state(self, other: "Tableau") -> bool:
        """Equal signed stabilizer groups."""
        if self.n != other.n:
            return False
        return all(self.expectation(g) == 1 for g in other.stabilizers)

    def stabilized_by(self, ops: Iterable[PauliOperator]) -> bool:
        return all(self.expectation(g) == 1 for g in ops)

    def discard(self, qubits: Sequence[int]) -> "Tableau":
        """Trace out ``qubits``; they must be unentangled with the remaining ones."""
        drop = sorted(set(qubits))
        keep = [q for q in range(self.n) if q not in set(drop)]
        if not keep:
            raise TableauError("cannot discard every qubit")
        dmask = 0
        for q in drop:
            dmask |= self._bit(q)
        rows = self.stabilizers
        # Eliminate on discarded columns; rows left with no support there form
        # the stabilizer group restricted to the kept block.
        pivots = [(self._bit(q), kind) for q in drop for kind in ("x", "z")]
        used: set[int] = set()
        for bit, kind in pivots:
            sel = next(
                (i for i, g in enumerate(rows) if i not in used and (g.x if kind == "x" else g.z) & bit), None
            )
            if sel is None:
                continue
            used.add(sel)
            for i, g in enumerate(rows):
                if i != sel and (g.x if kind == "x" else g.z) & bit:
                    rows[i] = g * rows[sel]
        local = [g for i, g in enumerate(rows) if i not in used and not ((g.x | g.z) & dmask)]
        if len(local) != len(keep):
            raise ResidualEntanglementError(
                f"kept block has {len(local)} local stabilizers, expected {len(keep)}"
            )
        return Tableau.from_stabilizers([g.restrict(keep) for g in local])

    def __repr__(self) -> str:
        return f"Tableau(n={self.n}, stabilizers=[{', '.join(str(g) for g in self.stabilizers)}])"


def tableau_measure(t: Tableau, p: PauliOperator, force: int | None = None, rng=None):
    """Non-mutating measurement: returns ``(new_tableau, outcome, deterministic)``."""
    out = t.copy()
    o, det = out.measure(p, force=force, rng=rng)
    return out, o, det


def tableau_apply_clifford(t: Tableau, gates: Iterable[tuple]) -> Tableau:
    """Apply ``(name, *qubits)`` gates to a copy of ``t``."""
    out = t.copy()
    for gate, *qs in gates:
        out.apply(gate, *qs)
    return out
