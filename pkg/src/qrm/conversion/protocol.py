"""QRM(m) <-> QRM(m+1) conversion on the tableau and statevector backends."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from typing import Any, Union

import numpy as np

from ..gf2 import BitVector
from ..stabilizer.code import UncorrectableError, qrm, syndrome_bits
from ..stabilizer.pauli import PauliOperator
from ..stabilizer.tableau import ResidualEntanglementError, Tableau
from ..statevector import (
    PHASE_TOL,
    StateVector,
    apply_pauli,
    encode_logical,
    equal_up_to_global_phase,
    expectation,
    measure_pauli,
)
from .extended import ConversionPlan, conversion_plan

State = Union[Tableau, StateVector]
BACKENDS = ("tableau", "statevector")


class BackendError(ValueError):
    pass


def backend_of(state: State) -> str:
    if isinstance(state, Tableau):
        return "tableau"
    if isinstance(state, StateVector):
        return "statevector"
    raise BackendError(f"unsupported state type {type(state).__name__}")


# -- backend primitives -------------------------------------------------------


def _measure(state: State, p: PauliOperator, rng: random.Random | None) -> tuple[State, int]:
    if isinstance(state, Tableau):
        out, _ = state.measure(p, rng=rng)
        return state, out
    new, out, _ = measure_pauli(state, p, rng=rng)
    return new, out


def _apply(state: State, p: PauliOperator) -> State:
    if isinstance(state, Tableau):
        return state.apply_pauli(p)
    return apply_pauli(state, p)


def _tensor(a: State, b: State) -> State:
    return a.tensor(b)


def _expect(state: State, p: PauliOperator) -> float:
    if isinstance(state, Tableau):
        return float(state.expectation(p))
    return expectation(state, p)


def logical_y(x: PauliOperator, z: PauliOperator) -> PauliOperator:
    """Hermitian ``i X̄ Z̄``."""
    p = x * z
    return PauliOperator(p.n, p.x, p.z, (p.phase + 1) % 4)


def bloch(state: State, x: PauliOperator, z: PauliOperator) -> tuple[float, float, float]:
    return (_expect(state, x), _expect(state, logical_y(x, z)), _expect(state, z))


# -- states -------------------------------------------------------------------


def bridge_generators(m: int) -> list[PauliOperator]:
    code = qrm(m)
    I1 = PauliOperator.identity(1)
    gens = [g.tensor(I1) for g in code.generators]
    gens.append(code.logical_z[0].tensor(PauliOperator.single(1, 0, "Z")))
    gens.append(code.logical_x[0].tensor(PauliOperator.single(1, 0, "X")))
    return gens


def prepare_bridge_state(m: int, backend: str = "tableau") -> State:
    """``(|0̄>|0> + |1̄>|1>)/sqrt(2)`` on ``2^m`` qubits (QRM(m) block, then the bare qubit)."""
    if backend == "tableau":
        return Tableau.from_stabilizers(bridge_generators(m))
    if backend == "statevector":
        zero = encode_logical(m, (1, 0)).amps
        one = encode_logical(m, (0, 1)).amps
        amps = (np.kron(zero, [1, 0]) + np.kron(one, [0, 1])) / math.sqrt(2)
        return StateVector(1 << m, amps)
    raise BackendError(f"unknown backend {backend!r}")


def encoded_state(m: int, backend: str, amplitudes=(1, 0), basis: str | None = None) -> State:
    """QRM(m) logical state: amplitudes (statevector) or a Pauli eigenstate ``basis`` in
    ``{"0", "1", "+", "-", "+i", "-i"}`` (either backend)."""
    if basis is not None:
        table = {
            "0": (1, 0),
            "1": (0, 1),
            "+": (1 / math.sqrt(2), 1 / math.sqrt(2)),
            "-": (1 / math.sqrt(2), -1 / math.sqrt(2)),
            "+i": (1 / math.sqrt(2), 1j / math.sqrt(2)),
            "-i": (1 / math.sqrt(2), -1j / math.sqrt(2)),
        }
        if basis not in table:
            raise ValueError(f"unknown logical basis state {basis!r}")
        amplitudes = table[basis]
    if backend == "statevector":
        return encode_logical(m, amplitudes)
    if backend != "tableau":
        raise BackendError(f"unknown backend {backend!r}")
    if basis is None:
        raise BackendError("tableau backend needs a stabilizer basis state")
    code = qrm(m)
    X, Z = code.logical_x[0], code.logical_z[0]
    op = {"0": Z, "1": -Z, "+": X, "-": -X, "+i": logical_y(X, Z), "-i": -logical_y(X, Z)}[basis]
    return Tableau.from_stabilizers(list(code.generators) + [op])


# -- report -------------------------------------------------------------------


@dataclass
class ConversionReport:
    direction: str
    m: int
    backend: str
    outcomes: list[int] = field(default_factory=list)
    syndrome: str = ""
    corrections: list[str] = field(default_factory=list)
    gauge_fixes: list[str] = field(default_factory=list)
    injected_error: str | None = None
    verdict: str = "fail"
    fidelity: float | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _bloch_match(a, b, backend: str) -> bool:
    if backend == "tableau":
        return tuple(a) == tuple(b)
    return all(abs(x - y) <= 1e-9 for x, y in zip(a, b))


def _bloch_fidelity(a, b) -> float:
    return float(max(0.0, min(1.0, (1 + sum(x * y for x, y in zip(a, b))) / 2)))


def _stabilized(state: State, gens) -> bool:
    if isinstance(state, Tableau):
        return state.stabilized_by(gens)
    return all(abs(expectation(state, g) - 1) <= 1e-9 for g in gens)


# -- the two directions -------------------------------------------------------


def _measure_and_restore(
    state: State,
    plan: ConversionPlan,
    gens: tuple[PauliOperator, ...],
    pure: tuple[PauliOperator, ...],
    rng: random.Random | None,
    report: ConversionReport,
    error: PauliOperator | None,
    inject_after: int,
) -> State:
    if error is not None and inject_after < 0:
        state = _apply(state, error)
    outcomes = []
    for i, g in enumerate(gens):
        state, out = _measure(state, g, rng)
        outcomes.append(out)
        if error is not None and inject_after == i:
            state = _apply(state, error)
    report.outcomes = outcomes
    nc = plan.n_common
    bits = 0
    for o in outcomes[:nc]:
        bits = (bits << 1) | (o == -1)
    s = BitVector(bits, nc)
    report.syndrome = str(s)
    correction = plan.decoder.decode(s)
    if correction.weight:
        state = _apply(state, correction)
        report.corrections.append(str(correction))
    # Gauge bits: measured value, as seen after the correction, must end at +1.
    for j in range(nc, len(gens)):
        flipped = syndrome_bits([gens[j]], correction).value
        if (outcomes[j] == -1) ^ flipped:
            state = _apply(state, pure[j])
            report.gauge_fixes.append(str(pure[j]))
    return state


def convert_up(
    state: State,
    m: int,
    rng: random.Random | None = None,
    error: PauliOperator | None = None,
    inject_after: int = -1,
) -> tuple[State, ConversionReport]:
    """QRM(m) -> QRM(m+1): append the bridge state, measure, correct, restore gauge.

    ``error`` (on all ``2^{m+1}-1`` qubits) is applied after appending the
    bridge state, or after measurement ``inject_after`` if that is >= 0.
    """
    backend = backend_of(state)
    plan = conversion_plan(m)
    small = qrm(m)
    if state.n != small.n:
        raise BackendError(f"expected a {small.n}-qubit QRM({m}) state, got {state.n} qubits")
    report = ConversionReport("up", m, backend, injected_error=str(error) if error is not None else None)
    before = bloch(state, small.logical_x[0], small.logical_z[0])
    joint = _tensor(state, prepare_bridge_state(m, backend))
    out = _measure_and_restore(joint, plan, plan.up_generators, plan.up_pure_errors, rng, report, error, inject_after)
    big = plan.target
    after = bloch(out, big.logical_x[0], big.logical_z[0])
    ok = _stabilized(out, big.generators) and _bloch_match(before, after, backend)
    report.verdict = "pass" if ok else "fail"
    report.fidelity = _bloch_fidelity(before, after) if backend == "statevector" else None
    report.details = {"bloch_in": list(before), "bloch_out": list(after)}
    return out, report


def _discard_bridge(state: State, m: int) -> State:
    n = (1 << m) - 1
    if isinstance(state, Tableau):
        I = PauliOperator.identity(n)
        if not state.stabilized_by(I.tensor(g) for g in bridge_generators(m)):
            raise ResidualEntanglementError("discarded block is not in the bridge state")
        return state.discard(range(n, 2 * n + 1))
    phi = prepare_bridge_state(m, "statevector").amps
    M = state.amps.reshape(1 << n, 1 << (n + 1))
    v = M @ phi.conj()
    resid = np.linalg.norm(M - np.outer(v, phi))
    if resid > 1e-9:
        raise ResidualEntanglementError(f"discarded block not in the bridge state (residual {resid:.3g})")
    return StateVector(n, v, normalize=True)


def convert_down(
    state: State,
    m: int,
    rng: random.Random | None = None,
    error: PauliOperator | None = None,
    inject_after: int = -1,
    discard: bool = True,
) -> tuple[State, ConversionReport]:
    """QRM(m+1) -> QRM(m): measure the extended set, correct, restore gauge, drop ``2^m`` qubits."""
    backend = backend_of(state)
    plan = conversion_plan(m)
    big = plan.target
    if state.n != big.n:
        raise BackendError(f"expected a {big.n}-qubit QRM({m + 1}) state, got {state.n} qubits")
    report = ConversionReport("down", m, backend, injected_error=str(error) if error is not None else None)
    before = bloch(state, big.logical_x[0], big.logical_z[0])
    work = state.copy()
    out = _measure_and_restore(
        work, plan, plan.down_generators, plan.down_pure_errors, rng, report, error, inject_after
    )
    if not discard:
        after = bloch(out, plan.data_x, plan.data_z)
        ok = _stabilized(out, plan.down_generators) and _bloch_match(before, after, backend)
        report.verdict = "pass" if ok else "fail"
        return out, report
    out = _discard_bridge(out, m)
    small = qrm(m)
    after = bloch(out, small.logical_x[0], small.logical_z[0])
    ok = _stabilized(out, small.generators) and _bloch_match(before, after, backend)
    report.verdict = "pass" if ok else "fail"
    report.fidelity = _bloch_fidelity(before, after) if backend == "statevector" else None
    report.details = {"bloch_in": list(before), "bloch_out": list(after)}
    return out, report


def same_output(a: State, b: State) -> bool:
    """Tableau equality or equality up to global phase."""
    if isinstance(a, Tableau) and isinstance(b, Tableau):
        return a.same_state(b)
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return equal_up_to_global_phase(a, b, PHASE_TOL)
    raise BackendError("states from different backends")


# -- fault injection ----------------------------------------------------------


def _sweep_input(m: int, direction: str, backend: str) -> State:
    if backend == "statevector":
        amps = (0.6, 0.8j)
        return encode_logical(m if direction == "up" else m + 1, amps)
    return encoded_state(m if direction == "up" else m + 1, "tableau", basis="+")


def _convert(direction: str):
    if direction == "up":
        return convert_up
    if direction == "down":
        return convert_down
    raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")


def fault_injection_sweep(
    m: int,
    direction: str,
    backend: str = "statevector",
    seed: int | None = None,
    between_measurements: bool = False,
    errors: list[PauliOperator] | None = None,
) -> dict[str, Any]:
    """Inject every single-qubit Pauli on the joint system and compare with the error-free run.

    With ``between_measurements`` each error is also injected after every
    individual generator measurement; those runs are reported, not judged.
    """
    convert = _convert(direction)
    psi = _sweep_input(m, direction, backend)
    N = 2 * ((1 << m) - 1) + 1

    def rng():
        return random.Random(seed) if seed is not None else None

    reference, _ = convert(psi.copy(), m, rng=rng())
    if errors is None:
        errors = [PauliOperator.single(N, q, k) for q in range(N) for k in "XYZ"]
    positions = [-1]
    if between_measurements:
        positions += list(range(len(conversion_plan(m).up_generators)))
    runs, failures, uncorrectable = 0, [], []
    between = {"runs": 0, "mismatches": 0, "uncorrectable": 0}
    for e in errors:
        for pos in positions:
            try:
                out, rep = convert(psi.copy(), m, rng=rng(), error=e, inject_after=pos)
                good = rep.passed and same_output(out, reference)
            except (UncorrectableError, ResidualEntanglementError) as exc:
                good = False
                if pos < 0:
                    uncorrectable.append({"error": str(e), "reason": type(exc).__name__})
                else:
                    between["uncorrectable"] += 1
            if pos < 0:
                runs += 1
                if not good:
                    failures.append(str(e))
            else:
                between["runs"] += 1
                between["mismatches"] += not good
    report = {
        "m": m,
        "direction": direction,
        "backend": backend,
        "seed": seed,
        "injections": runs,
        "failures": failures,
        "uncorrectable": uncorrectable,
        "passed": not failures,
    }
    if between_measurements:
        report["between_measurements"] = between
    return report


def uncorrectable_demo(m: int = 3, backend: str = "statevector") -> dict[str, Any]:
    """Weight-2 error ``X_0 Z_1`` before up-conversion: its syndrome is outside the lookup table."""
    N = 2 * ((1 << m) - 1) + 1
    e = PauliOperator.single(N, 0, "X") * PauliOperator.single(N, 1, "Z")
    e = PauliOperator(N, e.x, e.z, 0)
    psi = _sweep_input(m, "up", backend)
    try:
        convert_up(psi, m, error=e)
    except UncorrectableError as exc:
        return {"error": str(e), "flagged": True, "syndrome": str(exc.syndrome)}
    return {"error": str(e), "flagged": False, "syndrome": None}


def logical_t_via_conversion(amplitudes: tuple[complex, complex], rng: random.Random | None = None) -> dict[str, Any]:
    """Steane state -> QRM(4) -> transversal T-dagger -> Steane; should equal logical T."""
    from ..statevector import apply_transversal_zrot, overlap, zrot_amplitudes

    psi = encode_logical(3, amplitudes)
    up, r_up = convert_up(psi, 3, rng=rng)
    rotated = apply_transversal_zrot(up, 8, dagger=True)
    down, r_down = convert_down(rotated, 3, rng=rng)
    want = encode_logical(3, zrot_amplitudes(amplitudes, 8))
    ov = overlap(down, want)
    return {"amplitudes": [str(complex(a)) for a in amplitudes], "overlap": ov, "passed": ov >= 1 - PHASE_TOL}
