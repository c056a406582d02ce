"""The conversion as gauge fixing of one subsystem code.

The stabilizers shared by QRM(m+1) and the extended QRM(m) define a code
with ``m + 1`` logical qubits. Qubit 0 carries the data; the other ``m`` are
gauge qubits. Fixing every gauge ``X̄^j`` to +1 gives the extended code,
fixing every gauge ``Z̄^j`` to +1 gives QRM(m+1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from ..gf2 import BitMatrix, inverse
from ..rmcodes import RMIndexError
from ..stabilizer.code import StabilizerCode, build_code
from ..stabilizer.pauli import PauliOperator, product, symplectic_product
from .extended import conversion_plan
from .protocol import State, _apply, _expect, _measure, convert_down, convert_up, encoded_state, prepare_bridge_state


@dataclass(frozen=True, eq=False)
class SubsystemView:
    m: int
    common_stabilizers: tuple[PauliOperator, ...]
    data_logical: tuple[PauliOperator, PauliOperator]
    gauge_logicals: tuple[tuple[PauliOperator, PauliOperator], ...]

    @property
    def n(self) -> int:
        return self.common_stabilizers[0].n

    @property
    def k(self) -> int:
        return 1 + len(self.gauge_logicals)

    def gauge_x(self) -> list[PauliOperator]:
        return [x for x, _ in self.gauge_logicals]

    def gauge_z(self) -> list[PauliOperator]:
        return [z for _, z in self.gauge_logicals]

    def as_code(self) -> StabilizerCode:
        """The common stabilizers with all ``m + 1`` logical pairs."""
        lx = [self.data_logical[0]] + self.gauge_x()
        lz = [self.data_logical[1]] + self.gauge_z()
        return build_code(self.n, self.common_stabilizers, lx, lz, name=f"common({self.m})")

    def pairing_ok(self) -> bool:
        lx = [self.data_logical[0]] + self.gauge_x()
        lz = [self.data_logical[1]] + self.gauge_z()
        for i, a in enumerate(lx):
            for j, b in enumerate(lz):
                if symplectic_product(a, b) != (i == j):
                    return False
        ops = lx + lz
        for L in ops:
            if any(symplectic_product(L, s) for s in self.common_stabilizers):
                return False
        same_type = all(symplectic_product(a, b) == 0 for i, a in enumerate(lx) for b in lx[i + 1 :])
        return same_type and all(symplectic_product(a, b) == 0 for i, a in enumerate(lz) for b in lz[i + 1 :])


@lru_cache(maxsize=None)
def subsystem_view(m: int) -> SubsystemView:
    if m < 3:
        raise RMIndexError("subsystem view needs m >= 3")
    plan = conversion_plan(m)
    gx = list(plan.extended.groups["first_block_x"])
    zc = list(plan.z_completion)
    # Recombine the Z completions so that <X̄^i, Z̄^j> = delta_ij.
    M = BitMatrix.from_rows([[symplectic_product(a, b) for b in zc] for a in gx])
    A = inverse(M)
    N = plan.extended.n_total
    gz = []
    for j in range(m):
        picks = [zc[k] for k in range(m) if A[k][j]]
        gz.append(product(picks, N))
    view = SubsystemView(m, plan.common, (plan.data_x, plan.data_z), tuple(zip(gx, gz)))
    if not view.pairing_ok():
        raise AssertionError("gauge logicals are not canonically paired")
    return view


def gauge_fix(
    state: State, view: SubsystemView, target: str, rng: random.Random | None = None
) -> tuple[State, list[str]]:
    """Fix every gauge qubit: ``target="extended"`` measures X̄^j and flips with Z̄^j;
    ``target="qrm"`` measures Z̄^j and flips with X̄^j."""
    if target == "extended":
        pairs = [(x, z) for x, z in view.gauge_logicals]
    elif target == "qrm":
        pairs = [(z, x) for x, z in view.gauge_logicals]
    else:
        raise ValueError("target must be 'extended' or 'qrm'")
    fixes = []
    for meas, flip in pairs:
        state, out = _measure(state, meas, rng)
        if out == -1:
            state = _apply(state, flip)
            fixes.append(str(flip))
    return state, fixes


def randomize_gauge(state: State, view: SubsystemView, rng: random.Random) -> State:
    """Apply a random product of gauge logicals (data logical untouched)."""
    for x, z in view.gauge_logicals:
        if rng.random() < 0.5:
            state = _apply(state, x)
        if rng.random() < 0.5:
            state = _apply(state, z)
    return state


def subsystem_equivalence(m: int = 3, seed: int = 0, bases=("0", "1", "+", "-")) -> dict[str, Any]:
    """Compare gauge fixing with measurement-based conversion on tableaux.

    For each logical basis state: (a) gauge-fixing the extended state to
    QRM(m+1) equals ``convert_up``; (b) gauge-fixing the QRM(m+1) state to the
    extended code equals ``convert_down`` before discarding; (c) the same
    holds from randomized gauge states. Data-logical signs are compared too.
    """
    view = subsystem_view(m)
    rng = random.Random(seed)
    X0, Z0 = view.data_logical
    rows = []

    def signs(t):
        return (_expect(t, X0), _expect(t, Z0))

    for b in bases:
        small = encoded_state(m, "tableau", basis=b)
        extended = small.tensor(prepare_bridge_state(m, "tableau"))
        up, _ = convert_up(small, m)
        down_ext, _ = convert_down(up, m, discard=False)
        fixed_up, _ = gauge_fix(extended.copy(), view, "qrm")
        fixed_down, _ = gauge_fix(up.copy(), view, "extended")
        rand_up, _ = gauge_fix(randomize_gauge(extended.copy(), view, rng), view, "qrm")
        rand_down, _ = gauge_fix(randomize_gauge(up.copy(), view, rng), view, "extended")
        checks = {
            "up_equal": fixed_up.same_state(up),
            "down_equal": fixed_down.same_state(down_ext),
            "random_up_equal": rand_up.same_state(up),
            "random_down_equal": rand_down.same_state(down_ext),
            "data_signs_equal": signs(fixed_up) == signs(up) == signs(extended)
            and signs(fixed_down) == signs(down_ext),
        }
        rows.append({"basis": b, **checks, "passed": all(checks.values())})
    return {"m": m, "cases": rows, "passed": all(r["passed"] for r in rows)}
