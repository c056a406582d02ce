"""Conversion between QRM(r, m) and QRM(r, m+1) for higher-order RM codes.

QRM(r, m) is the self-orthogonal CSS code with X and Z checks from the rows
of ``G_{r,m}`` (unshortened, ``2^m`` qubits). The gauge code lives on the
second ``2^m``-qubit block of QRM(r, m+1) and is the CSS code built from the
rows of RM(r, m) together with RM(r-1, m). Only the tableau backend is used.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Sequence

from ..gf2 import row_basis, same_row_space
from ..rmcodes import RateConditionError, block_recursion_generator, rate_condition, rm_generator
from ..stabilizer.code import StabilizerCode, compute_pure_errors, css_code, qrm_rm
from ..stabilizer.pauli import PauliOperator, symplectic_product
from ..stabilizer.tableau import ResidualEntanglementError, Tableau
from .protocol import ConversionReport


class GaugeConflictError(ValueError):
    """An extra gauge stabilizer anticommutes with a block-1 logical that must be preserved."""


def _require(r: int, m: int) -> None:
    if not rate_condition(r, m):
        raise RateConditionError(
            f"(r={r}, m={m}): RM({m - r - 1},{m}) and RM({m - r},{m + 1}) must have rate >= 1/2"
        )


@lru_cache(maxsize=None)
def gauge_code(r: int, m: int) -> StabilizerCode:
    """Self-orthogonal CSS code from the rows of RM(r, m) and RM(r-1, m)."""
    _require(r, m)
    G = row_basis(rm_generator(r, m).vstack(rm_generator(r - 1, m)))
    return css_code(G, G, name=f"gauge({r},{m})")


@lru_cache(maxsize=None)
def _codes(r: int, m: int) -> tuple[StabilizerCode, StabilizerCode, StabilizerCode]:
    _require(r, m)
    big = qrm_rm(r, m + 1)
    if not same_row_space(rm_generator(r, m + 1), block_recursion_generator(r, m)):
        raise AssertionError("RM(r, m+1) does not split into (x, x+y) blocks")
    return qrm_rm(r, m), big, gauge_code(r, m)


def _block(p: PauliOperator, which: int, half: int) -> PauliOperator:
    I = PauliOperator.identity(half)
    return p.tensor(I) if which == 1 else I.tensor(p)


def _block1_logicals(small: StabilizerCode, half: int) -> list[PauliOperator]:
    return [_block(L, 1, half) for L in list(small.logical_x) + list(small.logical_z)]


def logical_basis_state(code: StabilizerCode, signs: Sequence[int] | None = None) -> Tableau:
    """All stabilizers plus each logical Z with the given sign (default +1)."""
    signs = list(signs) if signs is not None else [1] * code.k
    ops = [Lz if s == 1 else -Lz for Lz, s in zip(code.logical_z, signs)]
    return Tableau.from_stabilizers(list(code.generators) + ops)


def _expectations(t: Tableau, ops: Sequence[PauliOperator]) -> list[int]:
    return [t.expectation(p) for p in ops]


def convert_down_rank(
    state: Tableau, r: int, m: int, rng: random.Random | None = None
) -> tuple[Tableau, ConversionReport]:
    """Measure the gauge code on block 2; fix each -1 with its pure error on both blocks."""
    small, big, gauge = _codes(r, m)
    half = 1 << m
    if state.n != big.n:
        raise ValueError(f"expected {big.n} qubits")
    report = ConversionReport("down", m, "tableau")
    L1 = _block1_logicals(small, half)
    before = _expectations(state, L1)
    t = state.copy()
    for g, T in zip(gauge.generators, gauge.pure_errors):
        out, _ = t.measure(_block(g, 2, half), rng=rng)
        report.outcomes.append(out)
        if out == -1:
            fix = T.tensor(T)
            t.apply_pauli(fix)
            report.gauge_fixes.append(str(fix))
    after = _expectations(t, L1)
    checks = {
        "big_stabilized": t.stabilized_by(big.generators),
        "gauge_on_block2": t.stabilized_by(_block(g, 2, half) for g in gauge.generators),
        "small_on_block1": t.stabilized_by(_block(g, 1, half) for g in small.generators),
        "block1_logicals_preserved": all(a == b for a, b in zip(before, after) if a != 0),
    }
    report.verdict = "pass" if all(checks.values()) else "fail"
    report.details = {"r": r, "checks": checks, "block1_logicals_before": before, "block1_logicals_after": after}
    return t, report


def convert_up_rank(
    block1: Tableau,
    r: int,
    m: int,
    extra_stabilizers: Sequence[PauliOperator] = (),
    rng: random.Random | None = None,
) -> tuple[Tableau, ConversionReport]:
    """Append the gauge-code state (all its logical Zs +1), then fix any extra stabilizers."""
    small, big, gauge = _codes(r, m)
    half = 1 << m
    if block1.n != half:
        raise ValueError(f"expected {half} qubits")
    report = ConversionReport("up", m, "tableau")
    L1 = _block1_logicals(small, half)
    before = _expectations(block1, list(small.logical_x) + list(small.logical_z))
    t = block1.tensor(logical_basis_state(gauge))
    extras = list(extra_stabilizers)
    for e in extras:
        if any(symplectic_product(e, s) for s in big.generators):
            raise ValueError(f"extra stabilizer {e} does not commute with QRM({r},{m + 1})")
        clash = [str(L) for L in L1 if symplectic_product(e, L)]
        if clash:
            raise GaugeConflictError(f"{e} anticommutes with block-1 logicals {clash}")
    if extras:
        gens = list(big.generators) + extras
        pure = compute_pure_errors(gens, L1, big.n)
        for j, e in enumerate(extras):
            out, _ = t.measure(e, rng=rng)
            report.outcomes.append(out)
            if out == -1:
                T = pure[len(big.generators) + j]
                t.apply_pauli(T)
                report.gauge_fixes.append(str(T))
    after = _expectations(t, L1)
    checks = {
        "big_stabilized": t.stabilized_by(big.generators),
        "extras_stabilized": t.stabilized_by(extras),
        "block1_logicals_preserved": all(a == b for a, b in zip(before, after) if a != 0),
    }
    report.verdict = "pass" if all(checks.values()) else "fail"
    report.details = {"r": r, "checks": checks, "block1_logicals_before": before, "block1_logicals_after": after}
    return t, report


def higher_rank_conversion(r: int, m: int, direction: str = "roundtrip", seed: int | None = None) -> ConversionReport:
    """Run one tableau-level instance starting from a QRM(r, m+1) logical basis state.

    ``direction`` is ``"down"``, ``"up"`` (from a QRM(r, m) basis state) or
    ``"roundtrip"`` (down, discard block 2, up).
    """
    small, big, _ = _codes(r, m)
    rng = random.Random(seed) if seed is not None else None
    half = 1 << m
    if direction == "up":
        _, rep = convert_up_rank(logical_basis_state(small), r, m, rng=rng)
        return rep
    start = logical_basis_state(big)
    down, rep = convert_down_rank(start, r, m, rng=rng)
    if direction == "down":
        return rep
    if direction != "roundtrip":
        raise ValueError("direction must be 'up', 'down' or 'roundtrip'")
    try:
        block1 = down.discard(range(half, 2 * half))
    except ResidualEntanglementError as exc:
        rep.verdict = "fail"
        rep.details["discard_error"] = str(exc)
        return rep
    up, rep_up = convert_up_rank(block1, r, m, rng=rng)
    rep_up.direction = "roundtrip"
    rep_up.outcomes = rep.outcomes + rep_up.outcomes
    rep_up.gauge_fixes = rep.gauge_fixes + rep_up.gauge_fixes
    rep_up.details["down_checks"] = rep.details["checks"]
    if rep.verdict != "pass":
        rep_up.verdict = "fail"
    return rep_up
