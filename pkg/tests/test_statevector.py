import cmath
import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import controlled_op, one_qubit_op, pauli_matrix
from qrm.stabilizer import PauliOperator, qrm
from qrm.statevector import (
    LOGICAL_GRID,
    ONE_QUBIT,
    SimulationRangeError,
    StateVector,
    ZeroProbabilityError,
    apply_gate,
    apply_pauli,
    apply_transversal,
    apply_transversal_zrot,
    encode_logical,
    encode_two_blocks,
    equal_up_to_global_phase,
    expectation,
    logical_codewords,
    logical_phase_of_zrot,
    measure_pauli,
    overlap,
    transversal_1q_check,
    transversal_cnot_check,
    verify_multiblock_cz,
    zrot_amplitudes,
)


@st.composite
def states(draw, n=None):
    n = n if n is not None else draw(st.integers(1, 4))
    re = draw(st.lists(st.floats(-1, 1), min_size=1 << n, max_size=1 << n))
    im = draw(st.lists(st.floats(-1, 1), min_size=1 << n, max_size=1 << n))
    v = np.array(re) + 1j * np.array(im)
    if np.linalg.norm(v) < 1e-3:
        v[0] = 1
    return StateVector(n, v, normalize=True)


@given(states(), st.data())
def test_one_qubit_gates_match_dense(psi, data):
    g = data.draw(st.sampled_from(sorted(ONE_QUBIT)))
    q = data.draw(st.integers(0, psi.n - 1))
    out = apply_gate(psi, g, q)
    assert np.allclose(out.amps, one_qubit_op(ONE_QUBIT[g], q, psi.n) @ psi.amps)
    assert abs(out.norm() - 1) < 1e-10


@given(states(n=3), st.data())
def test_two_qubit_gates_match_dense(psi, data):
    a, b = data.draw(st.lists(st.integers(0, 2), min_size=2, max_size=2, unique=True))
    assert np.allclose(apply_gate(psi, "CNOT", (a, b)).amps, controlled_op(a, b, 3) @ psi.amps)
    Zm = np.diag([1, -1]).astype(complex)
    assert np.allclose(apply_gate(psi, "CZ", (a, b)).amps, controlled_op(a, b, 3, Zm) @ psi.amps)


@given(states(), st.data())
def test_apply_pauli_matches_dense(psi, data):
    n = psi.n
    p = PauliOperator(n, data.draw(st.integers(0, (1 << n) - 1)), data.draw(st.integers(0, (1 << n) - 1)),
                      data.draw(st.integers(0, 3)))
    assert np.allclose(apply_pauli(psi, p).amps, pauli_matrix(p) @ psi.amps)


@given(states(n=3), st.data())
def test_measurement_branches_sum_to_one(psi, data):
    n = psi.n
    p = PauliOperator(n, data.draw(st.integers(1, 7)), data.draw(st.integers(0, 7))).unsigned()
    pp = (1 + expectation(psi, p)) / 2
    total = 0.0
    for out in (1, -1):
        try:
            post, o, prob = measure_pauli(psi, p, forced_outcome=out)
        except ZeroProbabilityError:
            continue
        total += prob
        assert expectation(post, p) == pytest.approx(out, abs=1e-9)
    assert total == pytest.approx(1.0, abs=1e-10)
    assert pp == pytest.approx(measure_pauli(psi, p, forced_outcome=1)[2] if pp > 1e-12 else 0, abs=1e-9)


def test_basic_gate_examples():
    plus = apply_gate(StateVector.basis(1), "H", 0)
    assert np.allclose(plus.amps, [1 / math.sqrt(2)] * 2)
    s = apply_gate(StateVector.from_bits("111"), "CCZ", (0, 1, 2))
    assert np.allclose(s.amps[7], -1)
    psi = StateVector(1, [0.6, 0.8j])
    assert np.allclose(apply_gate(psi, "T", 0).amps, apply_transversal_zrot(psi, 8).amps)
    one = apply_transversal_zrot(StateVector.from_bits("1"), 2)
    assert np.allclose(one.amps, [0, -1])


def test_gate_errors():
    psi = StateVector.basis(2)
    with pytest.raises(IndexError):
        apply_gate(psi, "CNOT", (0, 0))
    with pytest.raises(IndexError):
        apply_gate(psi, "H", 3)
    with pytest.raises(ValueError):
        apply_gate(psi, "SWAP", (0, 1))
    with pytest.raises(ValueError):
        apply_transversal_zrot(psi, 3)


def test_size_guard(monkeypatch):
    with pytest.raises(SimulationRangeError):
        StateVector.basis(17)
    monkeypatch.setenv("QRM_MAX_QUBITS", "17")
    assert StateVector.basis(17).n == 17


def test_norm_check():
    with pytest.raises(ValueError):
        StateVector(1, [1, 1])


def test_measure_z_on_plus():
    plus = apply_gate(StateVector.basis(1), "H", 0)
    post, out, prob = measure_pauli(plus, PauliOperator.from_str("Z"), forced_outcome=1)
    assert out == 1 and prob == pytest.approx(0.5) and np.allclose(post.amps, [1, 0])
    with pytest.raises(ZeroProbabilityError):
        measure_pauli(StateVector.basis(1), PauliOperator.from_str("Z"), forced_outcome=-1)
    rng = random.Random(3)
    outs = {measure_pauli(plus, PauliOperator.from_str("Z"), rng=rng)[1] for _ in range(30)}
    assert outs == {1, -1}


def test_encode_logical_supports():
    zero = encode_logical(3, (1, 0))
    nz = np.flatnonzero(np.abs(zero.amps) > 1e-12)
    assert len(nz) == 8 and np.allclose(np.abs(zero.amps[nz]), 1 / math.sqrt(8))
    one = encode_logical(3, (0, 1))
    assert all(bin(i).count("1") % 4 == 3 for i in np.flatnonzero(np.abs(one.amps) > 1e-12))
    z4 = encode_logical(4, (1, 0))
    assert {bin(i).count("1") for i in np.flatnonzero(np.abs(z4.amps) > 1e-12)} <= {0, 8}
    for y in (0, 1):
        words = logical_codewords(4, y).words
        assert all((w.weight + y) % 8 == 0 for w in words)


@pytest.mark.parametrize("m", [3, 4])
def test_encoded_states_are_stabilized(m):
    code = qrm(m)
    for a in LOGICAL_GRID:
        psi = encode_logical(m, a)
        for g in code.generators:
            assert np.allclose(apply_pauli(psi, g).amps, psi.amps, atol=1e-10)


def test_measure_logical_x_on_zero():
    psi = encode_logical(3, (1, 0))
    for g in qrm(3).generators:
        assert measure_pauli(psi, g)[1:] == (1, pytest.approx(1.0))
    X = qrm(3).logical_x[0]
    assert measure_pauli(psi, X, forced_outcome=1)[2] == pytest.approx(0.5)
    assert measure_pauli(psi, X, forced_outcome=-1)[2] == pytest.approx(0.5)


@pytest.mark.parametrize("m", [3, 4])
def test_transversal_zrot_is_logical_dagger(m):
    ell = 1 << (m - 1)
    for a in LOGICAL_GRID:
        got = apply_transversal_zrot(encode_logical(m, a), ell)
        want = encode_logical(m, zrot_amplitudes(a, ell, dagger=True))
        assert equal_up_to_global_phase(got, want, tol=1e-9)


def test_logical_phases():
    assert logical_phase_of_zrot(3, 4) == pytest.approx(-1j)
    assert logical_phase_of_zrot(4, 8) == pytest.approx(cmath.exp(-1j * math.pi / 4))


def test_transversal_t_twice_is_logical_pdg():
    for a in LOGICAL_GRID:
        psi = encode_logical(4, a)
        twice = apply_transversal_zrot(apply_transversal_zrot(psi, 8), 8)
        want = encode_logical(4, zrot_amplitudes(a, 4, dagger=True))
        assert equal_up_to_global_phase(twice, want)


def test_global_phase_helpers():
    psi = encode_logical(3, LOGICAL_GRID[-1])
    rotated = StateVector(psi.n, psi.amps * cmath.exp(0.7j))
    assert equal_up_to_global_phase(psi, rotated)
    assert not equal_up_to_global_phase(StateVector.basis(1, 0), StateVector.basis(1, 1))
    assert overlap(psi, rotated) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        overlap(StateVector.basis(1), StateVector.basis(2))


def test_steane_clifford_actions():
    assert transversal_1q_check(3, "H", "H")["passed"]
    assert transversal_1q_check(3, "P", "PDG")["passed"]
    assert transversal_1q_check(3, "PDG", "P")["passed"]
    assert not transversal_1q_check(3, "P", "P")["passed"]
    rep = transversal_cnot_check(3)
    assert rep["passed"] and rep["inputs"] == 66


def test_encode_two_blocks_and_transversal_cnot():
    psi = encode_two_blocks(3, (0, 0, 1, 0))  # |1̄>|0̄>
    out = apply_transversal(psi, "CNOT", [range(7), range(7, 14)])
    want = encode_two_blocks(3, (0, 0, 0, 1))
    assert equal_up_to_global_phase(out, want)


@pytest.mark.parametrize("m,k", [(3, 1), (4, 1), (4, 2)])
def test_multiblock_cz(m, k):
    rep = verify_multiblock_cz(m, k)
    assert rep.passed
    minus = [tuple(s["y"]) for s in rep.settings if s["phase"] == -1]
    assert minus == [(1,) * (k + 1)]
    assert len(rep.settings) == 2 ** (k + 1)


def test_multiblock_cz_preconditions():
    with pytest.raises(ValueError):
        verify_multiblock_cz(4, 3)


def test_dump_format():
    psi = apply_gate(StateVector.basis(2), "H", 0)
    lines = psi.dump().splitlines()
    assert len(lines) == 2 and lines[0].startswith("00") and lines[1].startswith("10")
