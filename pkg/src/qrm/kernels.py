"""Kernel dispatch: compiled ``_ext`` when importable, ``_purepy`` otherwise.

The compiled kernels work on single 64-bit words; wider inputs always take
the pure-Python path. Set ``QRM_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _purepy

try:
    if os.environ.get("QRM_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _ext
except ImportError:
    _ext = None

BACKEND = "cython" if _ext is not None else "python"

WORD_BITS = 64


def _fast(width: int):
    return _ext if _ext is not None and width <= WORD_BITS else _purepy


def rref_rows(rows, ncols):
    """Reduced row echelon form of packed rows; returns ``(rows, pivot_columns)``."""
    return _fast(ncols).rref_rows(rows, ncols)


def reduce_against(echelon, v, ncols):
    """Residue of ``v`` after elimination by an rref ``(rows, pivots)`` pair."""
    rows, pivots = echelon
    for i, p in enumerate(pivots):
        if v >> (ncols - 1 - p) & 1:
            v ^= rows[i]
    return v


def span_words(basis, width=WORD_BITS):
    return _fast(width).span_words(basis)


def span_weight_histogram(basis, n):
    return _fast(n).span_weight_histogram(basis, n)


def ktuple_and_check(words, k, modulus, width=WORD_BITS):
    count, witness = _fast(width).ktuple_and_check(words, k, modulus)
    return count, witness


def multiblock_parity_counts(words, nblocks, ones, y_mask, width=WORD_BITS):
    return _fast(width).multiblock_parity_counts(words, nblocks, ones, y_mask)
