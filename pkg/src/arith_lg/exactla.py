"""Exact linear algebra over the rationals.

Matrices are tuples of row tuples of Fraction.  Subspaces of Q^n are
represented by their reduced-row-echelon basis, which is canonical, so
two subspaces are equal iff their representations are.  Everything here
is small and dense; callers stay at desk scale.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

__all__ = [
    "to_fractions", "rref", "rank", "nullspace", "solve",
    "identity", "transpose", "mat_add", "mat_scale", "mat_mul", "mat_vec", "mat_pow",
    "subspace_basis", "subspace_sum", "subspace_intersect",
    "subspace_contains", "subspace_equal", "subspace_dim",
]


def to_fractions(rows: Iterable[Sequence]) -> Mat:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def rref(mat: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    rows = [list(r) for r in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = next((i for i in range(r, nrows) if rows[i][c]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def rank(mat: Mat) -> int:
    return len(rref(to_fractions(mat))[0])


def nullspace(mat: Mat) -> list[Vec]:
    """Basis of the right kernel, one vector per free column."""
    m = to_fractions(mat)
    if not m:
        return []
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def solve(mat: Mat, rhs: Sequence) -> Vec | None:
    """One exact solution of mat x = rhs (free variables zero), or None."""
    m = to_fractions(mat)
    b = [Fraction(x) for x in rhs]
    if not m:
        return () if not any(b) else None
    aug = tuple(row + (bv,) for row, bv in zip(m, b))
    red, pivots = rref(aug)
    ncols = len(m[0])
    for row in red:
        if not any(row[:ncols]) and row[ncols]:
            return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None  # pivot in the constant column: inconsistent
        x[pc] = red[r][ncols]
    return tuple(x)


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def transpose(mat: Mat) -> Mat:
    return tuple(zip(*mat)) if mat else ()


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Mat, c) -> Mat:
    c = Fraction(c)
    return tuple(tuple(x * c for x in row) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Mat, v: Sequence) -> Vec:
    vv = [Fraction(x) for x in v]
    return tuple(sum(x * y for x, y in zip(row, vv)) for row in a)


def mat_pow(a: Mat, k: int) -> Mat:
    n = len(a)
    out = identity(n)
    base = a
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def subspace_basis(vectors: Iterable[Sequence]) -> Mat:
    """Canonical (RREF) basis of the span of the given row vectors."""
    m = to_fractions(vectors)
    if not m:
        return ()
    return rref(m)[0]


def subspace_sum(b1: Mat, b2: Mat) -> Mat:
    return subspace_basis(tuple(b1) + tuple(b2))


def subspace_intersect(b1: Mat, b2: Mat) -> Mat:
    """Zassenhaus: reduce [[u|u]; [w|0]]; rows with zero left half carry
    a basis of the intersection in their right half."""
    if not b1 or not b2:
        return ()
    n = len(b1[0])
    stacked = [tuple(u) + tuple(u) for u in b1] + [tuple(w) + (Fraction(0),) * n for w in b2]
    red, _ = rref(to_fractions(stacked))
    out = [row[n:] for row in red if not any(row[:n])]
    return subspace_basis(out)


def subspace_contains(basis: Mat, v: Sequence) -> bool:
    vv = tuple(Fraction(x) for x in v)
    if not any(vv):
        return True
    if not basis:
        return False
    return len(rref(to_fractions(tuple(basis) + (vv,)))[0]) == len(basis)


def subspace_equal(b1: Mat, b2: Mat) -> bool:
    return subspace_basis(b1) == subspace_basis(b2)


def subspace_dim(basis: Mat) -> int:
    return len(subspace_basis(basis))
