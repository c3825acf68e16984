"""Exact linear algebra on small matrices of field scalars.

Matrices are plain lists of lists of Scalar.  Everything here runs full
Gauss-Jordan over the field; matrix sizes stay tiny throughout the package.
"""

from __future__ import annotations

from .exactfield import Field

__all__ = ["rref", "rank", "nullspace", "invert", "right_inverse", "identity_grid"]


def identity_grid(field: Field, n: int):
    return [[field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]


def rref(rows):
    """Reduced row echelon form; returns (new rows, pivot column list)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int, field: Field):
    """Canonical basis of {v : rows * v = 0}, normalized by a final rref."""
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [field.zero()] * ncols
        vec[f] = field.one()
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(vec)
    if not basis:
        return []
    normalized, _ = rref(basis)
    return [tuple(v) for v in normalized]


def invert(rows, field: Field):
    """Inverse of a square scalar matrix, or None when singular."""
    n = len(rows)
    aug = [list(r) + list(e) for r, e in zip(rows, identity_grid(field, n))]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [r[n:] for r in reduced]


def right_inverse(rows, field: Field):
    """C with rows * C = I for a full-row-rank m x n matrix.

    For each pivot column p_k of the echelon form, row p_k of C carries the
    corresponding unit response; all free-column rows of C stay zero.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [list(r) + list(e) for r, e in zip(rows, identity_grid(field, m))]
    reduced, pivots = rref(aug)
    pivots = [p for p in pivots if p < n]
    if len(pivots) != m:
        raise ValueError("matrix does not have full row rank")
    out = [[field.zero()] * m for _ in range(n)]
    for k, p in enumerate(pivots):
        for j in range(m):
            out[p][j] = reduced[k][n + j]
    return out
