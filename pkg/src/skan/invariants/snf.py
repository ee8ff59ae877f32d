"""Invariant factors of integer matrices.

Boundary matrices are sparse with mostly unit entries, so unit pivots are
eliminated first on a sparse representation; whatever remains is diagonalized
densely and the diagonal is put into divisibility order.
"""
from __future__ import annotations

from math import gcd


def _sparse(rows, ncols):
    mat = {}
    cols: dict[int, set] = {}
    for r, row in enumerate(rows):
        entries = {c: v for c, v in enumerate(row) if v} if isinstance(row, (list, tuple)) else \
            {c: v for c, v in row.items() if v}
        if entries:
            mat[r] = entries
            for c in entries:
                cols.setdefault(c, set()).add(r)
    return mat, cols


def _eliminate_units(mat, cols) -> int:
    """Remove unit pivots in place; return how many were removed."""
    removed = 0
    while True:
        pivot = None
        best = None
        for r, row in mat.items():
            for c, v in row.items():
                if v in (1, -1):
                    cost = len(row) * len(cols[c])
                    if best is None or cost < best:
                        pivot, best = (r, c), cost
                        if cost == 1:
                            break
            if best == 1:
                break
        if pivot is None:
            return removed
        r, c = pivot
        prow = mat.pop(r)
        pv = prow[c]
        for c2 in prow:
            cols[c2].discard(r)
        for r2 in list(cols[c]):
            row2 = mat[r2]
            factor = row2[c] * pv  # pv is ±1, so this divides exactly
            for c2, v in prow.items():
                nv = row2.get(c2, 0) - factor * v
                if nv:
                    if c2 not in row2:
                        cols[c2].add(r2)
                    row2[c2] = nv
                elif c2 in row2:
                    del row2[c2]
                    cols[c2].discard(r2)
            if not row2:
                del mat[r2]
        del cols[c]
        removed += 1


def _dense_diagonal(mat) -> list[int]:
    if not mat:
        return []
    colset = sorted({c for row in mat.values() for c in row})
    cidx = {c: i for i, c in enumerate(colset)}
    A = [[0] * len(colset) for _ in mat]
    for i, row in enumerate(mat.values()):
        for c, v in row.items():
            A[i][cidx[c]] = v
    m, n = len(A), len(colset)
    diag = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        Ai, At = A[i], A[t]
                        for j in range(t, n):
                            Ai[j] -= q * At[j]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for i in range(t, m):
                            A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        done = False
            if done:
                break
            # move the smallest remaining entry of row/column t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]] + \
                    [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cands)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def _divisibility_chain(diag: list[int]) -> list[int]:
    d = sorted(x for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                g = gcd(d[i], d[j])
                if g != d[i]:
                    l = d[i] * d[j] // g
                    d[i], d[j] = g, l
                    changed = True
        d.sort()
    return d


def invariant_factors(rows, ncols: int | None = None) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix.

    ``rows`` is a list of rows, each a list or a ``{column: value}`` dict.
    """
    mat, cols = _sparse(rows, ncols)
    units = _eliminate_units(mat, cols)
    return [1] * units + [x for x in _divisibility_chain(_dense_diagonal(mat))]


def rank(rows) -> int:
    return len(invariant_factors(rows))
