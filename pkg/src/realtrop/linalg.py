"""Small exact linear algebra toolkit over the rationals.

Vectors are tuples of Fraction; matrices are tuples of row tuples.
Everything here is dense Gaussian elimination at desk scale, used for
the trivially valued regime (constant coefficients), where field
division is available.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def vec(xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def mat(rows) -> Mat:
    return tuple(vec(r) for r in rows)


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in u)


def vec_dot(u: Vec, v: Vec) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vec(u: Vec) -> bool:
    return all(a == 0 for a in u)


def rref(rows: Iterable[Sequence]) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (zero rows dropped)."""
    work = [list(vec(r)) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def rank(rows) -> int:
    return len(rref(rows)[0])


def nullspace(rows) -> tuple[Vec, ...]:
    """Basis of {x : A x = 0} where the input rows are the equations."""
    rows = mat(rows)
    if not rows:
        return ()
    ncols = len(rows[0])
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -R[r][fc]
        basis.append(tuple(x))
    return tuple(basis)


def solve(rows, b: Sequence) -> Vec | None:
    """One solution of A x = b, or None when inconsistent."""
    rows = mat(rows)
    b = vec(b)
    aug = [r + (bb,) for r, bb in zip(rows, b)]
    R, pivots = rref(aug)
    ncols = len(rows[0]) if rows else 0
    for row in R:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = R[r][-1]
    return tuple(x)


def inverse(rows) -> Mat:
    rows = mat(rows)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("inverse of a non-square matrix")
    aug = [rows[i] + tuple(Fraction(1 if j == i else 0) for j in range(n)) for i in range(n)]
    R, pivots = rref(aug)
    if len(R) < n or pivots != tuple(range(n)):
        raise ValueError("singular matrix")
    return tuple(r[n:] for r in R)


def span_basis(vectors: Iterable[Sequence]) -> Mat:
    """Canonical (rref) basis of the span of the given vectors."""
    return rref(list(vectors))[0]


def in_span(basis_rref: Mat, v: Sequence) -> bool:
    v = vec(v)
    if not basis_rref:
        return is_zero_vec(v)
    return rank(basis_rref + (v,)) == len(basis_rref)


def span_eq(vs: Iterable[Sequence], ws: Iterable[Sequence]) -> bool:
    return span_basis(vs) == span_basis(ws)


def span_intersection(vs: Sequence[Sequence], ws: Sequence[Sequence]) -> Mat:
    """Basis of span(vs) intersected with span(ws)."""
    vs, ws = mat(vs), mat(ws)
    if not vs or not ws:
        return ()
    # x = sum a_i v_i = sum b_j w_j: solve for (a, b) in the kernel of [V^T | -W^T].
    ncols = len(vs[0])
    eqs = []
    for c in range(ncols):
        eqs.append(tuple(v[c] for v in vs) + tuple(-w[c] for w in ws))
    combos = nullspace(eqs)
    vectors = []
    for combo in combos:
        x = [Fraction(0)] * ncols
        for coef, v in zip(combo[: len(vs)], vs):
            for c in range(ncols):
                x[c] += coef * v[c]
        vectors.append(tuple(x))
    return span_basis(vectors)


def complete_basis(vectors: Sequence[Sequence], dim: int) -> Mat:
    """Extend independent vectors to a basis using standard unit vectors."""
    out = [vec(v) for v in vectors]
    if rank(out) != len(out):
        raise ValueError("given vectors are dependent")
    for i in range(dim):
        e = tuple(Fraction(1 if j == i else 0) for j in range(dim))
        if rank(out + [e]) > len(out):
            out.append(e)
        if len(out) == dim:
            break
    return tuple(out)
