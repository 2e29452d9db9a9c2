"""Smith normal form over the integers.

``smith_normal_form(M)`` returns (D, U, V) with U M V = D, U and V
unimodular and D diagonal with d_1 | d_2 | ... (nonnegative).  Matrices
are lists of rows of Python ints, so entries never overflow.
"""

from __future__ import annotations


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M, src, dst, k):
    """row[dst] += k * row[src]"""
    if k:
        M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]


def _add_col(M, src, dst, k):
    if k:
        for row in M:
            row[dst] += k * row[src]


def smith_normal_form(M):
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [list(map(int, r)) for r in M]
    U = _identity(rows)
    V = _identity(cols)
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        _swap_rows(A, t, i)
        _swap_rows(U, t, i)
        _swap_cols(A, t, j)
        _swap_cols(V, t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // p
                    _add_row(A, t, i, -q)
                    _add_row(U, t, i, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // p
                    _add_col(A, t, j, -q)
                    _add_col(V, t, j, -q)
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # divisibility: the pivot must divide the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                _add_row(A, bad[0], t, 1)
                _add_row(U, bad[0], t, 1)
            # move the smallest remaining entry of row/column t to the pivot
            best = (t, t)
            for i in range(t, rows):
                if A[i][t] and abs(A[i][t]) < abs(A[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, cols):
                if A[t][j] and abs(A[t][j]) < abs(A[best[0]][best[1]]):
                    best = (t, j)
            if best[0] != t:
                _swap_rows(A, t, best[0])
                _swap_rows(U, t, best[0])
            if best[1] != t:
                _swap_cols(A, t, best[1])
                _swap_cols(V, t, best[1])
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def invariant_factors(M) -> list[int]:
    """Diagonal of the Smith form (including zeros and ones)."""
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def mat_mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
