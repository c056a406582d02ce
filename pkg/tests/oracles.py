"""Independent reference implementations used only by the tests.

These deliberately avoid the package's packed-integer code paths: GF(2)
algebra runs on numpy arrays, Paulis and gates are dense matrices.
"""

from __future__ import annotations

import itertools
from functools import reduce

import numpy as np

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S2 = np.diag([1, 1j])


def gf2_rank(A) -> int:
    A = np.array(A, dtype=np.uint8) % 2
    r = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
    return r


def bits(word: int, n: int) -> list[int]:
    return [(word >> (n - 1 - i)) & 1 for i in range(n)]


def codewords(G) -> set[tuple[int, ...]]:
    """All F_2 combinations of the rows of a 0/1 array."""
    G = np.array(G, dtype=np.uint8)
    out = set()
    for coeffs in itertools.product((0, 1), repeat=G.shape[0]):
        out.add(tuple(np.array(coeffs, dtype=np.uint8) @ G % 2))
    return out


def rm_by_evaluation(r: int, m: int) -> np.ndarray:
    """RM(r, m) as evaluations of all monomials of degree <= r, points in binary order."""
    pts = [bits(j, m)[::-1] for j in range(1 << m)]
    rows = []
    for deg in range(r + 1):
        for mono in itertools.combinations(range(m), deg):
            rows.append([int(all(p[v] for v in mono)) for p in pts])
    return np.array(rows, dtype=np.uint8)


def pauli_matrix(p) -> np.ndarray:
    """Dense matrix of ``i^phase X^x Z^z`` with qubit 0 as the most significant factor."""
    facs = []
    for q in range(p.n):
        xb = (p.x >> (p.n - 1 - q)) & 1
        zb = (p.z >> (p.n - 1 - q)) & 1
        facs.append((X2 if xb else I2) @ (Z2 if zb else I2))
    return (1j ** p.phase) * reduce(np.kron, facs, np.eye(1, dtype=complex))


def one_qubit_op(U: np.ndarray, q: int, n: int) -> np.ndarray:
    facs = [U if i == q else I2 for i in range(n)]
    return reduce(np.kron, facs)


def controlled_op(c: int, t: int, n: int, U: np.ndarray = X2) -> np.ndarray:
    P0 = np.diag([1, 0]).astype(complex)
    P1 = np.diag([0, 1]).astype(complex)
    a = reduce(np.kron, [P0 if i == c else I2 for i in range(n)])
    b = reduce(np.kron, [P1 if i == c else (U if i == t else I2) for i in range(n)])
    return a + b


def stabilizer_projector_state(gens, n: int) -> np.ndarray:
    """The unique +1 common eigenvector of ``n`` independent commuting Paulis."""
    P = np.eye(1 << n, dtype=complex)
    for g in gens:
        P = P @ (np.eye(1 << n) + pauli_matrix(g)) / 2
    col = np.argmax(np.linalg.norm(P, axis=0))
    v = P[:, col]
    return v / np.linalg.norm(v)
