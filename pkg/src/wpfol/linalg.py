"""Exact dense linear algebra over any field whose elements support + - * / and truth testing."""

from __future__ import annotations

from typing import List, Sequence, Tuple


def rref(rows: Sequence[Sequence], zero) -> Tuple[List[list], List[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c] if not hasattr(M[r][c], "inverse") else M[r][c].inverse()
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows: Sequence[Sequence], zero) -> int:
    return len(rref(rows, zero)[1])


def kernel(rows: Sequence[Sequence], ncols: int, zero, one) -> List[list]:
    """Basis of the right kernel, one vector per free column (free entry = 1)."""
    if not rows:
        return [[one if j == c else zero for j in range(ncols)] for c in range(ncols)]
    R, pivots = rref(rows, zero)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def det(rows: Sequence[Sequence], zero, one):
    """Determinant by Gaussian elimination."""
    M = [list(r) for r in rows]
    n = len(M)
    d = one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d = d * M[c][c]
        inv = M[c][c].inverse() if hasattr(M[c][c], "inverse") else 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def independent_rows(rows: Sequence[Sequence], zero) -> List[int]:
    """Indices of the first maximal set of linearly independent rows (greedy, in order)."""
    chosen: List[int] = []
    basis: List[list] = []
    for idx, row in enumerate(rows):
        trial = basis + [list(row)]
        if rank(trial, zero) > len(basis):
            basis.append(list(row))
            chosen.append(idx)
    return chosen


def solve(rows: Sequence[Sequence], rhs: Sequence, zero):
    """One solution of rows * x = rhs, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, zero)
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for i, p in enumerate(pivots):
        x[p] = R[i][ncols]
    return x
