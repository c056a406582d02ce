"""Pure-Python kernels; reference semantics for the compiled ``_ext`` module.

Rows and codewords are non-negative ints, coordinate 0 at the most
significant of ``n`` bits.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product


def rref_rows(rows, ncols):
    rows = list(rows)
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(ncols):
        if r == nrows:
            break
        bit = 1 << (ncols - 1 - col)
        p = r
        while p < nrows and not rows[p] & bit:
            p += 1
        if p == nrows:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(col)
        r += 1
    return rows, pivots


def span_words(basis):
    k = len(basis)
    out = [0] * (1 << k)
    for j, b in enumerate(basis):
        step = 1 << j
        for c in range(step):
            out[step + c] = out[c] ^ b
    return out


def span_weight_histogram(basis, n):
    hist = [0] * (n + 1)
    for w in span_words(basis):
        hist[w.bit_count()] += 1
    return hist


def ktuple_and_check(words, k, modulus):
    """First multiset of ``k`` word indices whose AND weight is nonzero mod ``modulus``."""
    count = 0
    for idx in combinations_with_replacement(range(len(words)), k):
        acc = -1
        for i in idx:
            acc &= words[i]
        count += 1
        if acc.bit_count() % modulus:
            return count, tuple(idx)
    return count, None


def multiblock_parity_counts(words, nblocks, ones, y_mask):
    """Count tuples with even/odd AND weight, block ``b`` offset by ``ones`` if bit ``b`` of ``y_mask``."""
    shifted = [[w ^ ones for w in words] if (y_mask >> b) & 1 else list(words) for b in range(nblocks)]
    even = odd = 0
    first, rest = shifted[0], shifted[1:]
    for tail in product(*rest):
        acc = -1
        for t in tail:
            acc &= t
        for w in first:
            if (acc & w).bit_count() & 1:
                odd += 1
            else:
                even += 1
    return even, odd
