"""Small exact linear-algebra routines over Fraction matrices."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def rref(mat: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [[Fraction(x) for x in row] for row in mat]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                t = m[i][c]
                m[i] = [x - t * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(mat: Sequence[Sequence]) -> int:
    return len(rref(mat)[1])


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of a square or overdetermined system, else None."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if n in piv or len(piv) < n:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = red[i][n]
    return x


def nullspace(mat: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of the right null space."""
    if not mat:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, piv = rref(mat)
    n = len(red[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a point set (-1 for no points)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(x) - Fraction(y) for x, y in zip(p, base)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def dot(u: Sequence, v: Sequence):
    return sum((x * y for x, y in zip(u, v)), Fraction(0))
