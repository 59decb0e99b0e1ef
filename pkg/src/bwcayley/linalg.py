"""Exact Gaussian elimination over a field object.

Pivoting is deterministic (first nonzero column, smallest row index), so
reduced forms and nullspace bases are byte-stable across runs.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .field import Field


def rref(rows: Sequence[Sequence], F: Field) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form. Returns (rref rows, pivot column indices)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c] != F.zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != F.zero:
                factor = m[i][c]
                m[i] = [F.sub(v, F.mul(factor, w)) for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r] + [[F.zero] * ncols for _ in range(len(m) - r)], pivots


def rank(rows: Sequence[Sequence], F: Field) -> int:
    return len(rref(rows, F)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, F: Field) -> List[List]:
    """Basis of {x : A x = 0}, one vector per free column, in column order."""
    reduced, pivots = rref(rows, F)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [F.zero] * ncols
        vec[fc] = F.one
        for r, pc in enumerate(pivots):
            vec[pc] = F.neg(reduced[r][fc])
        basis.append(vec)
    return basis


def same_span(rows_a: Sequence[Sequence], rows_b: Sequence[Sequence], F: Field) -> bool:
    """Whether two row sets span the same subspace (by rref comparison)."""
    ra, _ = rref(rows_a, F)
    rb, _ = rref(rows_b, F)
    ra = [r for r in ra if any(v != F.zero for v in r)]
    rb = [r for r in rb if any(v != F.zero for v in r)]
    return ra == rb
