import json
import random

import numpy as np
import pytest

from qrm.gf2 import same_row_space
from qrm.rmcodes import RateConditionError, RMIndexError
from qrm.stabilizer import PauliOperator, UncorrectableError, qrm, symplectic_matrix, symplectic_product
from qrm.stabilizer.code import code_distance
from qrm.conversion import (
    GaugeConflictError,
    BackendError,
    bloch,
    bridge_generators,
    build_extended_set,
    conversion_plan,
    convert_down,
    convert_down_rank,
    convert_up,
    convert_up_rank,
    encoded_state,
    fault_injection_sweep,
    gauge_code,
    higher_rank_conversion,
    logical_basis_state,
    logical_t_via_conversion,
    prepare_bridge_state,
    recursive_a_sets,
    same_output,
    subsystem_equivalence,
    subsystem_view,
    superfluous_check,
    uncorrectable_demo,
)
from qrm.statevector import LOGICAL_GRID, apply_pauli, encode_logical, equal_up_to_global_phase, overlap

BASES = ("0", "1", "+", "-")


# -- generating sets ----------------------------------------------------------


@pytest.mark.parametrize("m,counts", [(3, (3, 3, 1, 1, 0, 3, 3)), (4, (4, 4, 1, 1, 6, 10, 4)), (5, (5, 5, 1, 1, 20, 25, 5))])
def test_extended_counts(m, counts):
    ext = build_extended_set(m)
    assert ext.counts() == counts
    assert len(ext.generators) == (1 << (m + 1)) - 2
    assert ext.n_total == (1 << (m + 1)) - 1


@pytest.mark.parametrize("m", [3, 4])
def test_first_generators_match_next_code(m):
    # retained X/Z plus both bridges generate the X and Z' checks of QRM(m+1).
    ext = build_extended_set(m)
    rows = [g for r in ("retained_z", "retained_x", "bridge_z", "bridge_x") for g in ext.groups[r]]
    big = qrm(m + 1)
    want = big.generators_with_role("x", "z'")
    N = ext.n_total
    assert same_row_space(symplectic_matrix(rows, N), symplectic_matrix(want, N))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_recursive_a_sets_match_direct_construction(m):
    sets = recursive_a_sets(m + 1)
    big = qrm(m + 1)
    N = (1 << (m + 1)) - 1
    assert same_row_space(symplectic_matrix(sets.a_x, N), symplectic_matrix(big.generators_with_role("x"), N))
    assert same_row_space(symplectic_matrix(sets.a_prime_z, N), symplectic_matrix(big.generators_with_role("z'"), N))


def test_extended_set_invalid():
    with pytest.raises(RMIndexError):
        build_extended_set(2)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_superfluous(m):
    rep = superfluous_check(m)
    assert rep["passed"] and rep["errors"] == 3 * ((1 << m) - 1)
    if m == 4:
        assert (rep["syndrome_bits_used"], rep["syndrome_bits_total"]) == (8, 14)


@pytest.mark.parametrize("m", [3, 4])
def test_pure_errors_respect_retained_bits(m):
    plan = conversion_plan(m)
    nc = plan.n_common
    for T in plan.up_pure_errors[nc:]:
        assert not any(symplectic_product(T, g) for g in plan.common)
        assert not symplectic_product(T, plan.data_x) and not symplectic_product(T, plan.data_z)
    for T in plan.down_pure_errors[nc:]:
        assert not any(symplectic_product(T, g) for g in plan.common)
        assert not symplectic_product(T, plan.data_x) and not symplectic_product(T, plan.data_z)


# -- bridge state -------------------------------------------------------------


def test_bridge_statevector_m3():
    phi = prepare_bridge_state(3, "statevector")
    assert phi.n == 8 and np.count_nonzero(np.abs(phi.amps) > 1e-12) == 16
    for g in bridge_generators(3):
        assert np.allclose(apply_pauli(phi, g).amps, phi.amps)


@pytest.mark.parametrize("m", [3, 5])
def test_bridge_tableau(m):
    phi = prepare_bridge_state(m, "tableau")
    gens = bridge_generators(m)
    assert len(gens) == 1 << m
    assert phi.stabilized_by(gens)
    zz = gens[-2] if gens[-2].x == 0 else gens[-1]
    assert phi.copy().measure(zz) == (1, True)


def test_bridge_backend_errors():
    with pytest.raises(BackendError):
        prepare_bridge_state(3, "qasm")


# -- conversion, statevector --------------------------------------------------


@pytest.mark.parametrize("a", LOGICAL_GRID)
def test_up_matches_direct_encoding_and_round_trips(a):
    psi = encode_logical(3, a)
    up, r1 = convert_up(psi, 3)
    assert r1.passed
    assert overlap(up, encode_logical(4, a)) >= 1 - 1e-9
    down, r2 = convert_down(up, 3)
    assert r2.passed
    assert overlap(down, psi) >= 1 - 1e-9


def test_down_basis_case():
    down, rep = convert_down(encode_logical(4, (0, 1)), 3)
    assert rep.passed and equal_up_to_global_phase(down, encode_logical(3, (0, 1)))


def test_seeded_random_outcomes_use_gauge_fixes():
    rng = random.Random(11)
    fixes = 0
    for a in LOGICAL_GRID[:4]:
        psi = encode_logical(3, a)
        up, r1 = convert_up(psi, 3, rng=rng)
        down, r2 = convert_down(up, 3, rng=rng)
        fixes += len(r1.gauge_fixes) + len(r2.gauge_fixes)
        assert r1.passed and r2.passed
        assert equal_up_to_global_phase(up, encode_logical(4, a))
        assert equal_up_to_global_phase(down, psi)
    assert fixes > 0


def test_report_json_fields():
    _, rep = convert_up(encode_logical(3, (1, 0)), 3, error=PauliOperator.single(15, 4, "Y"))
    d = json.loads(json.dumps(rep.to_dict()))
    for key in ("direction", "m", "backend", "outcomes", "corrections", "gauge_fixes", "injected_error", "verdict", "fidelity"):
        assert key in d
    assert d["verdict"] == "pass" and d["injected_error"] and d["corrections"]
    assert all(o in (1, -1) for o in d["outcomes"])


def test_logical_t_via_conversion():
    for a in LOGICAL_GRID:
        assert logical_t_via_conversion(a)["passed"]


# -- conversion, tableau ------------------------------------------------------


@pytest.mark.parametrize("m", [3, 4, 5])
@pytest.mark.parametrize("basis", BASES)
def test_tableau_round_trip_preserves_data(m, basis):
    s = encoded_state(m, "tableau", basis=basis)
    up, r1 = convert_up(s, m)
    big = qrm(m + 1)
    assert r1.passed and up.stabilized_by(big.generators)
    assert bloch(up, big.logical_x[0], big.logical_z[0]) == bloch(s, qrm(m).logical_x[0], qrm(m).logical_z[0])
    down, r2 = convert_down(up, m)
    assert r2.passed and same_output(down, s)


def test_up_plus_state_m5_stabilized_by_logical_x():
    up, rep = convert_up(encoded_state(5, "tableau", basis="+"), 5)
    assert rep.passed and up.stabilized_by(list(qrm(6).generators) + [qrm(6).logical_x[0]])


def test_tableau_and_statevector_agree_on_outcomes():
    psi = encode_logical(3, (1, 0))
    t = encoded_state(3, "tableau", basis="0")
    e = PauliOperator.single(15, 9, "X")
    _, rs = convert_up(psi, 3, error=e)
    _, rt = convert_up(t, 3, error=e)
    assert rs.outcomes == rt.outcomes and rs.corrections == rt.corrections


def test_down_without_discard_keeps_bridge():
    up, _ = convert_up(encoded_state(3, "tableau", basis="0"), 3)
    full, rep = convert_down(up, 3, discard=False)
    assert rep.passed and full.n == 15
    assert full.stabilized_by(build_extended_set(3).generators)


# -- fault injection ----------------------------------------------------------


@pytest.mark.parametrize("backend", ["statevector", "tableau"])
@pytest.mark.parametrize("direction", ["up", "down"])
def test_single_qubit_sweep(backend, direction):
    rep = fault_injection_sweep(3, direction, backend)
    assert rep["injections"] == 45
    assert rep["failures"] == [] and rep["uncorrectable"] == []


@pytest.mark.parametrize("direction", ["up", "down"])
def test_single_qubit_sweep_seeded_tableau_m4(direction):
    rep = fault_injection_sweep(4, direction, "tableau", seed=5)
    assert rep["injections"] == 93 and rep["passed"]


def test_between_measurement_sweep_reports_only():
    errs = [PauliOperator.single(15, q, "X") for q in (0, 14)]
    rep = fault_injection_sweep(3, "up", "tableau", between_measurements=True, errors=errs)
    b = rep["between_measurements"]
    assert b["runs"] == 2 * len(conversion_plan(3).up_generators)
    assert rep["passed"]


@pytest.mark.parametrize("backend", ["statevector", "tableau"])
def test_weight_two_error_flagged(backend):
    demo = uncorrectable_demo(3, backend)
    assert demo["flagged"]


def test_uncorrectable_raises():
    e = PauliOperator.single(15, 0, "X") * PauliOperator.single(15, 1, "Z")
    e = PauliOperator(15, e.x, e.z)
    with pytest.raises(UncorrectableError):
        convert_up(encode_logical(3, (1, 0)), 3, error=e)


# -- subsystem view -----------------------------------------------------------


@pytest.mark.parametrize("m", [3, 4])
def test_subsystem_view(m):
    v = subsystem_view(m)
    assert len(v.common_stabilizers) == (1 << (m + 1)) - m - 2
    assert v.k == m + 1 and v.pairing_ok()
    plan = conversion_plan(m)
    assert list(v.gauge_x()) == list(plan.extended.groups["first_block_x"])


def test_subsystem_code_distance_m3():
    code = subsystem_view(3).as_code()
    assert (code.n, code.k) == (15, 4)
    assert code_distance(code) == 3


@pytest.mark.parametrize("m", [3, 4])
def test_subsystem_equivalence(m):
    rep = subsystem_equivalence(m, seed=1)
    assert rep["passed"], rep


# -- higher order -------------------------------------------------------------


@pytest.mark.parametrize("r,m", [(1, 3), (1, 4), (2, 5)])
@pytest.mark.parametrize("direction", ["down", "up", "roundtrip"])
def test_higher_rank(r, m, direction):
    rep = higher_rank_conversion(r, m, direction, seed=2)
    assert rep.passed, rep.details


def test_higher_rank_down_block1_in_small_code():
    from qrm.stabilizer import qrm_rm

    start = logical_basis_state(qrm_rm(1, 4))
    down, rep = convert_down_rank(start, 1, 3, rng=random.Random(0))
    assert rep.details["checks"]["small_on_block1"]
    block1 = down.discard(range(8, 16))
    assert block1.stabilized_by(qrm_rm(1, 3).generators)


def test_higher_rank_rate_condition():
    with pytest.raises(RateConditionError):
        higher_rank_conversion(3, 3)
    with pytest.raises(RateConditionError):
        gauge_code(3, 3)


def test_higher_rank_gauge_conflict():
    from qrm.stabilizer import qrm_rm

    small, big = qrm_rm(1, 4), qrm_rm(1, 5)
    I = PauliOperator.identity(16)
    block1_logicals = [L.tensor(I) for L in list(small.logical_x) + list(small.logical_z)]
    # A big-code logical commutes with every QRM(1,5) stabilizer; pick one that
    # anticommutes with a block-1 logical, so fixing it would disturb the data.
    cand = next(
        L for L in list(big.logical_x) + list(big.logical_z)
        if any(symplectic_product(L, B) for B in block1_logicals)
    )
    with pytest.raises(GaugeConflictError):
        convert_up_rank(logical_basis_state(small), 1, 4, extra_stabilizers=[cand])


def test_higher_rank_extra_stabilizer_fixed():
    from qrm.stabilizer import qrm_rm

    small, big = qrm_rm(1, 4), qrm_rm(1, 5)
    I = PauliOperator.identity(16)
    block1_logicals = [L.tensor(I) for L in list(small.logical_x) + list(small.logical_z)]
    ok = [
        L for L in big.logical_z
        if not any(symplectic_product(L, B) for B in block1_logicals)
    ]
    assert ok
    out, rep = convert_up_rank(logical_basis_state(small), 1, 4, extra_stabilizers=ok[:1], rng=random.Random(4))
    assert rep.passed and out.stabilized_by(ok[:1])
