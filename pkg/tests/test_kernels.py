"""The compiled kernels and the pure-Python fallback must agree bit for bit."""

import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import gf2_rank, bits
from qrm import KERNEL_BACKEND, _purepy, kernels

try:
    from qrm import _ext
except ImportError:
    _ext = None

needs_ext = pytest.mark.skipif(_ext is None, reason="compiled extension not built")

words64 = st.integers(0, (1 << 64) - 1)


@st.composite
def row_sets(draw, max_cols=64):
    ncols = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << ncols) - 1), min_size=1, max_size=12))
    return rows, ncols


@given(row_sets())
def test_purepy_rref_rank_matches_oracle(args):
    rows, ncols = args
    _, piv = _purepy.rref_rows(rows, ncols)
    assert len(piv) == gf2_rank([bits(r, ncols) for r in rows])


@needs_ext
@given(row_sets())
def test_rref_agrees(args):
    rows, ncols = args
    assert _ext.rref_rows(rows, ncols) == _purepy.rref_rows(rows, ncols)


@needs_ext
@given(st.lists(words64, min_size=0, max_size=10))
def test_span_words_agree(basis):
    assert list(_ext.span_words(basis)) == list(_purepy.span_words(basis))


@needs_ext
@given(st.integers(1, 64), st.data())
def test_histogram_agrees(n, data):
    basis = data.draw(st.lists(st.integers(0, (1 << n) - 1), max_size=10))
    assert list(_ext.span_weight_histogram(basis, n)) == _purepy.span_weight_histogram(basis, n)


@needs_ext
@given(st.lists(st.integers(0, (1 << 16) - 1), min_size=1, max_size=12), st.integers(1, 3), st.sampled_from([1, 2, 4, 8]))
def test_ktuple_agrees(words, k, modulus):
    assert tuple(_ext.ktuple_and_check(words, k, modulus)) == tuple(_purepy.ktuple_and_check(words, k, modulus))


@needs_ext
@given(st.lists(st.integers(0, 127), min_size=1, max_size=8), st.integers(1, 3), st.integers(0, 7))
def test_multiblock_agrees(words, nblocks, y_mask):
    y_mask &= (1 << nblocks) - 1
    a = _ext.multiblock_parity_counts(words, nblocks, 127, y_mask)
    b = _purepy.multiblock_parity_counts(words, nblocks, 127, y_mask)
    assert tuple(a) == tuple(b)


def test_wide_rows_use_fallback():
    # 70-bit rows exceed the compiled word size; dispatch must still succeed.
    rows = [1 << 69, (1 << 69) | 1, 3]
    out, piv = kernels.rref_rows(rows, 70)
    assert piv == [0, 68, 69]


def test_backend_flag():
    assert KERNEL_BACKEND in ("cython", "python")
    forced = os.environ.get("QRM_PURE_PYTHON", "") not in ("", "0")
    if _ext is not None:
        assert KERNEL_BACKEND == ("python" if forced else "cython")


def test_env_forces_pure_python():
    env = dict(os.environ, QRM_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import qrm; print(qrm.KERNEL_BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
