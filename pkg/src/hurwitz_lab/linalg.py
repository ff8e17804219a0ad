"""Exact integer/rational linear algebra on tuple-based vectors and matrices.

Vectors are tuples of ints, matrices are tuples of row tuples.  Everything is
immutable and hashable so group elements can live in sets and dict keys.  No
floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def vec(xs: Iterable[int]) -> Vector:
    return tuple(int(x) for x in xs)


def mat(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_vec(n: int) -> Vector:
    return (0,) * n


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_pow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def add_vec(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def sub_vec(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def scale_vec(c: int, v: Vector) -> Vector:
    return tuple(c * x for x in v)


def neg_vec(v: Vector) -> Vector:
    return tuple(-x for x in v)


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def canonical_sign(v: Vector) -> Vector:
    """Of {v, -v} return the one whose first nonzero coordinate is positive."""
    for x in v:
        if x > 0:
            return v
        if x < 0:
            return neg_vec(v)
    return v


def rank(a: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in a]
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == m:
            break
    return r


def frac_mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def frac_mat_inv(a):
    """Inverse of a square matrix over Q; raises ValueError if singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def det(a: Matrix) -> int:
    """Determinant of an integer matrix (Bareiss elimination)."""
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def hnf(rows: Sequence[Vector]) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by the rows.

    Zero rows are dropped.  Pivots are positive, entries above each pivot are
    reduced into [0, pivot).  The result is the canonical basis of the span,
    so two spans are equal iff their HNFs are equal.
    """
    work = [list(r) for r in rows if not is_zero(r)]
    if not work:
        return ()
    ncols = len(work[0])
    basis: list[list[int]] = []
    col = 0
    while work and col < ncols:
        pool = [r for r in work if r[col] != 0]
        if not pool:
            col += 1
            continue
        # Euclidean reduction in this column.
        while True:
            pool.sort(key=lambda r: abs(r[col]))
            piv = pool[0]
            rest = pool[1:]
            done = True
            for r in rest:
                q = r[col] // piv[col]
                if q:
                    for j in range(ncols):
                        r[j] -= q * piv[j]
                if r[col] != 0:
                    done = False
            pool = [piv] + [r for r in rest if r[col] != 0]
            if done or len(pool) == 1:
                break
        piv = pool[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        work = [r for r in work if r[col] == 0 and not is_zero(r)]
        col += 1
    # Reduce entries above pivots.
    for i in range(len(basis) - 1, -1, -1):
        pc = next(j for j in range(ncols) if basis[i][j] != 0)
        p = basis[i][pc]
        for k in range(i):
            q = basis[k][pc] // p
            if q:
                for j in range(ncols):
                    basis[k][j] -= q * basis[i][j]
    return tuple(tuple(r) for r in basis)


def in_span(v: Vector, basis: Matrix) -> bool:
    """Whether v lies in the integer row span of an HNF basis."""
    r = list(v)
    ncols = len(v)
    for row in basis:
        pc = next(j for j in range(ncols) if row[j] != 0)
        if r[pc] % row[pc] == 0:
            q = r[pc] // row[pc]
            if q:
                r = [x - q * y for x, y in zip(r, row)]
        if r[pc] != 0:
            return False
    return is_zero(r)


def signature(g: Matrix) -> tuple[int, int, int]:
    """Signature (#positive, #zero, #negative) of a symmetric matrix.

    Exact congruence diagonalization over Q: simultaneous row and column
    operations preserve the signature by Sylvester's law of inertia.
    """
    n = len(g)
    a = [[Fraction(x) for x in row] for row in g]
    pos = neg = zero = 0
    todo = list(range(n))
    while todo:
        k = todo[0]
        if a[k][k] == 0:
            j = next((j for j in todo[1:] if a[k][j] != 0), None)
            if j is None:
                zero += 1
                todo.pop(0)
                continue
            # Create a nonzero diagonal entry: row/col k += row/col j.
            for t in range(n):
                a[k][t] += a[j][t]
            for t in range(n):
                a[t][k] += a[t][j]
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        # Clear row and column k with the same multipliers; the matrix stays
        # symmetric, so the signature is preserved (Sylvester).
        for i in todo[1:]:
            if a[i][k] != 0:
                f = a[i][k] / piv
                for t in range(n):
                    a[i][t] -= f * a[k][t]
                for t in range(n):
                    a[t][i] -= f * a[t][k]
        todo.pop(0)
    return pos, zero, neg
