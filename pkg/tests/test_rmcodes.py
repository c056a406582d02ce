import numpy as np
import pytest

from oracles import codewords, gf2_rank, rm_by_evaluation
from qrm.gf2 import BitMatrix, EnumerationGuardError, GF2Error, rank, same_row_space, weight_distribution
from qrm.rmcodes import (
    FACT_MIN_M,
    ClassicalCode,
    RateConditionError,
    RMIndexError,
    appendixB_orthogonality,
    block_recursion_generator,
    min_distance_bruteforce,
    rate_condition,
    rm_dimension,
    rm_generator,
    shorten,
    shortened_completion,
    shortened_dual_generator,
    shortened_rm_generator,
    shortening_permutation,
    verify_fact,
)


def test_rm11_base_case():
    assert rm_generator(1, 1).tolist() == [[1, 1], [0, 1]]


@pytest.mark.parametrize("r,m", [(1, 2), (1, 3), (2, 4), (1, 5), (3, 5)])
def test_rm_matches_evaluation_oracle(r, m):
    G = rm_generator(r, m)
    assert G.shape == (rm_dimension(r, m), 1 << m)
    assert rank(G) == G.nrows
    assert gf2_rank(np.vstack([G.to_numpy(), rm_by_evaluation(r, m)])) == G.nrows


def test_rm12_weight_spectrum():
    hist = weight_distribution(rm_generator(1, 2))
    assert {w for w, c in enumerate(hist) if c} == {0, 2, 4}


def test_rm_invalid():
    with pytest.raises(RMIndexError):
        rm_generator(4, 3)
    with pytest.raises(RMIndexError):
        rm_generator(1, 0)


def test_shortened_g2_g3_literal():
    assert shortened_rm_generator(2).tolist() == [[1, 0, 1], [0, 1, 1]]
    assert shortened_rm_generator(3).tolist() == [
        [1, 0, 1, 1, 0, 1, 0],
        [0, 1, 1, 0, 1, 1, 0],
        [0, 0, 0, 1, 1, 1, 1],
    ]
    assert shortened_rm_generator(4).shape == (4, 15)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_shorten_matches_recursion_up_to_permutation(m):
    S = shorten(rm_generator(1, m))
    assert rank(S) == rank(rm_generator(1, m)) - 1
    assert same_row_space(S.permute_columns(shortening_permutation(m)), shortened_rm_generator(m))


@pytest.mark.parametrize("m", [2, 3])
def test_shortened_code_is_zero_prefixed_subcode(m):
    # {x : (0, x) in RM(1, m)} computed directly from the evaluation oracle.
    full = codewords(rm_by_evaluation(1, m))
    short = {c[1:] for c in full if c[0] == 0}
    ours = codewords(shorten(rm_generator(1, m)).tolist())
    assert ours == short


def test_shorten_requires_all_ones():
    with pytest.raises(GF2Error):
        shorten(BitMatrix.from_text("1100\n0110"))


@pytest.mark.parametrize("m,rk", [(3, 3), (4, 10), (5, 25)])
def test_shortened_dual(m, rk):
    H, G = shortened_dual_generator(m), shortened_rm_generator(m)
    assert H.nrows == rk == (1 << m) - m - 2
    assert H.mul_transpose(G).is_zero()
    assert shortened_completion(m).nrows == rk - m


def test_m3_self_dual_case():
    # For m = 3 the shortened dual RM(m-2, m) is shortened RM(1, 3) itself; its dual is the (7,4,3) Hamming code.
    assert same_row_space(shortened_dual_generator(3), shortened_rm_generator(3))
    hamming = ClassicalCode.from_parity_check(shortened_rm_generator(3))
    assert (hamming.n, hamming.k, min_distance_bruteforce(hamming)) == (7, 4, 3)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_dual_distance_three(m):
    code = ClassicalCode.from_parity_check(shortened_rm_generator(m))
    assert min_distance_bruteforce(code) == 3


def test_repetition_code_distance():
    assert min_distance_bruteforce(ClassicalCode.from_generator(BitMatrix.from_text("111"))) == 3


def test_distance_guard():
    code = ClassicalCode.from_generator(BitMatrix.identity(6))
    with pytest.raises(EnumerationGuardError):
        min_distance_bruteforce(code, limit=4)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_rm_doubling(m):
    # RM(1, m+1) = {(x, x), (x, x + 1)}, enumerated.
    small = codewords(rm_by_evaluation(1, m))
    ones = tuple([1] * (1 << m))
    expected = {x + x for x in small} | {x + tuple(a ^ b for a, b in zip(x, ones)) for x in small}
    ours = codewords(rm_generator(1, m + 1).tolist())
    assert ours == expected


@pytest.mark.parametrize("r,m", [(1, 3), (1, 4), (2, 4), (2, 5)])
def test_block_recursion(r, m):
    assert same_row_space(block_recursion_generator(r, m), rm_generator(r, m + 1))


@pytest.mark.parametrize("m", [3, 4])
def test_recursion_first_blocks(m):
    G1 = shortened_rm_generator(m + 1)
    n = (1 << m) - 1
    G = shortened_rm_generator(m)
    for row in G1.rows[:-1]:
        a, b = row >> (n + 1), (row >> 1) & ((1 << n) - 1)
        assert a == b and a in set(G.rows)


@pytest.mark.parametrize("fact", range(1, 7))
@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_facts_pass(fact, m):
    if m < FACT_MIN_M[fact]:
        with pytest.raises(RMIndexError):
            verify_fact(fact, m)
        return
    rep = verify_fact(fact, m)
    assert rep.passed, rep.to_dict()
    assert rep.witness is None


def test_fact1_weights_m3():
    rep = verify_fact(1, 3)
    assert set(rep.details["shortened_weights"]) <= {0, 4}


def test_fact6_tuple_count_m4():
    # k = 1, 2, 3 over 16 words: multisets of size k.
    rep = verify_fact(6, 4)
    assert rep.details["tuples_per_k"][2] == 16 * 17 // 2


def test_unknown_fact():
    with pytest.raises((RMIndexError, ValueError)):
        verify_fact(7, 3)


@pytest.mark.parametrize("m", [3, 4])
def test_appendix_b_orthogonality(m):
    rep = appendixB_orthogonality(1, m)
    assert rep["passed"] and len(rep["checks"]) == 4


def test_rate_condition():
    assert rate_condition(1, 3) and rate_condition(1, 4) and rate_condition(2, 5)
    assert not rate_condition(3, 3)
    with pytest.raises(RateConditionError):
        appendixB_orthogonality(3, 3)
