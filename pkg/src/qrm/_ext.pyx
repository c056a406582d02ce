# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over single 64-bit words; see ``_purepy`` for semantics."""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil


cdef uint64_t* _words(object seq, Py_ssize_t* size) except NULL:
    cdef Py_ssize_t n = len(seq)
    cdef uint64_t* buf = <uint64_t*> malloc((n if n > 0 else 1) * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <uint64_t> seq[i]
    size[0] = n
    return buf


def rref_rows(rows, int ncols):
    cdef Py_ssize_t nrows
    cdef uint64_t* buf = _words(rows, &nrows)
    cdef Py_ssize_t r = 0, p, i
    cdef int col
    cdef uint64_t bit, pr, tmp
    pivots = []
    try:
        for col in range(ncols):
            if r == nrows:
                break
            bit = (<uint64_t> 1) << (ncols - 1 - col)
            p = r
            while p < nrows and not (buf[p] & bit):
                p += 1
            if p == nrows:
                continue
            tmp = buf[r]
            buf[r] = buf[p]
            buf[p] = tmp
            pr = buf[r]
            for i in range(nrows):
                if i != r and (buf[i] & bit):
                    buf[i] ^= pr
            pivots.append(col)
            r += 1
        return [buf[i] for i in range(nrows)], pivots
    finally:
        free(buf)


def span_words(basis):
    cdef Py_ssize_t k
    cdef uint64_t* b = _words(basis, &k)
    cdef Py_ssize_t total = (<Py_ssize_t> 1) << k
    cdef uint64_t* out = <uint64_t*> malloc(total * sizeof(uint64_t))
    cdef Py_ssize_t j, c, step
    try:
        if out == NULL:
            raise MemoryError()
        out[0] = 0
        for j in range(k):
            step = (<Py_ssize_t> 1) << j
            for c in range(step):
                out[step + c] = out[c] ^ b[j]
        return [out[c] for c in range(total)]
    finally:
        free(b)
        free(out)


def span_weight_histogram(basis, int n):
    cdef Py_ssize_t k
    cdef uint64_t* b = _words(basis, &k)
    cdef int64_t* hist = <int64_t*> malloc((n + 1) * sizeof(int64_t))
    cdef uint64_t total = (<uint64_t> 1) << k
    cdef uint64_t c, gray, word = 0
    cdef int j
    try:
        for j in range(n + 1):
            hist[j] = 0
        hist[0] = 1
        # Gray-code walk: codeword c differs from c-1 in exactly one basis row.
        for c in range(1, total):
            gray = c & (~c + 1)
            j = popcount64(gray - 1)
            word ^= b[j]
            hist[popcount64(word)] += 1
        return [hist[j] for j in range(n + 1)]
    finally:
        free(b)
        free(hist)


def ktuple_and_check(words, int k, int modulus):
    cdef Py_ssize_t nw
    cdef uint64_t* w = _words(words, &nw)
    cdef Py_ssize_t* idx = <Py_ssize_t*> malloc((k + 1) * sizeof(Py_ssize_t))
    cdef uint64_t* acc = <uint64_t*> malloc((k + 1) * sizeof(uint64_t))
    cdef Py_ssize_t i, pos
    cdef long long count = 0
    try:
        if nw == 0 or k <= 0:
            return 0, None
        # acc[i] holds the AND of the first i chosen words.
        acc[0] = ~(<uint64_t> 0)
        for i in range(k):
            idx[i] = 0
            acc[i + 1] = acc[i] & w[0]
        while True:
            count += 1
            if popcount64(acc[k]) % modulus:
                return count, tuple(idx[i] for i in range(k))
            pos = k - 1
            while pos >= 0 and idx[pos] == nw - 1:
                pos -= 1
            if pos < 0:
                return count, None
            idx[pos] += 1
            acc[pos + 1] = acc[pos] & w[idx[pos]]
            for i in range(pos + 1, k):
                idx[i] = idx[pos]
                acc[i + 1] = acc[i] & w[idx[i]]
    finally:
        free(w)
        free(idx)
        free(acc)


def multiblock_parity_counts(words, int nblocks, ones, int y_mask):
    cdef Py_ssize_t nw
    cdef uint64_t* w = _words(words, &nw)
    cdef uint64_t ones_w = <uint64_t> ones
    cdef Py_ssize_t* idx = <Py_ssize_t*> malloc((nblocks + 1) * sizeof(Py_ssize_t))
    cdef uint64_t* acc = <uint64_t*> malloc((nblocks + 1) * sizeof(uint64_t))
    cdef uint64_t* flip = <uint64_t*> malloc((nblocks + 1) * sizeof(uint64_t))
    cdef long long even = 0, odd = 0
    cdef Py_ssize_t i, pos, j
    cdef uint64_t tail, first_flip
    try:
        if nw == 0:
            return 0, 0
        for i in range(nblocks):
            flip[i] = ones_w if (y_mask >> i) & 1 else 0
        first_flip = flip[0]
        if nblocks == 1:
            for j in range(nw):
                if popcount64(w[j] ^ first_flip) & 1:
                    odd += 1
                else:
                    even += 1
            return even, odd
        # Odometer over blocks 1..nblocks-1; block 0 is the innermost loop.
        acc[1] = ~(<uint64_t> 0)
        for i in range(1, nblocks):
            idx[i] = 0
            acc[i + 1] = acc[i] & (w[0] ^ flip[i])
        while True:
            tail = acc[nblocks]
            for j in range(nw):
                if popcount64(tail & (w[j] ^ first_flip)) & 1:
                    odd += 1
                else:
                    even += 1
            pos = nblocks - 1
            while pos >= 1 and idx[pos] == nw - 1:
                pos -= 1
            if pos < 1:
                return even, odd
            idx[pos] += 1
            acc[pos + 1] = acc[pos] & (w[idx[pos]] ^ flip[pos])
            for i in range(pos + 1, nblocks):
                idx[i] = 0
                acc[i + 1] = acc[i] & (w[0] ^ flip[i])
    finally:
        free(w)
        free(idx)
        free(acc)
        free(flip)
