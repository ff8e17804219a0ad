"""Translation parts, the invariant splitting of the Coxeter transformation,
the projection to the finite quotient, congruence-subgroup membership, fiber
transporters, and the braid-to-matrix map.

The splitting is computed in the orthonormal-flavoured coordinate systems of
the classical plates (for E6/E7 the last basis vector is the shortened one),
because the reference values for the row vectors c_a, c_b live there.  All
other computations stay in the simple-root coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import canonical_root
from .linalg import (
    Matrix,
    Vector,
    frac_mat_inv,
    frac_mat_mul,
    identity,
    mat_mul,
    mat_vec,
    vec,
)
from .rootsys import (
    EllipticRootSystem,
    FiniteRootSystem,
    build_finite,
    coxeter_transformation,
)
from .weyl import ReflectionTuple, is_generating, product, reflection_tuple

Mat2 = tuple[tuple[int, int], tuple[int, int]]

IDENTITY2: Mat2 = ((1, 0), (0, 1))


def mat2_mul(a: Mat2, b: Mat2) -> Mat2:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat2_det(a: Mat2) -> int:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def mat2_inv(a: Mat2) -> Mat2:
    d = mat2_det(a)
    if d not in (1, -1):
        raise ValueError("matrix is not invertible over Z")
    return ((d * a[1][1], -d * a[0][1]), (-d * a[1][0], d * a[0][0]))


def gamma_membership(m: Mat2, ell: int) -> bool:
    """Principal congruence subgroup test: det 1 and m = I mod ell."""
    if mat2_det(m) != 1:
        return False
    return (
        (m[0][0] - 1) % ell == 0
        and (m[1][1] - 1) % ell == 0
        and m[0][1] % ell == 0
        and m[1][0] % ell == 0
    )


# ---------------------------------------------------------------------------
# Eichler-Siegel translation parts.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TranslationPart:
    """The two linear forms of a radical translation: w(v) = v - mu_a(v) a
    - mu_b(v) b, each form given by its coefficients on alpha_1..alpha_n."""

    mu_a: Vector
    mu_b: Vector

    def __add__(self, other: "TranslationPart") -> "TranslationPart":
        return TranslationPart(
            mu_a=tuple(x + y for x, y in zip(self.mu_a, other.mu_a)),
            mu_b=tuple(x + y for x, y in zip(self.mu_b, other.mu_b)),
        )


def translation_part(w: Matrix, sys: EllipticRootSystem) -> TranslationPart:
    n = sys.finite_part.rank
    ident = identity(n + 2)
    for i in range(n):
        if w[i][: n + 2] != ident[i]:
            raise ValueError("finite block of the automorphism is not identity")
    for i in (n, n + 1):
        if w[i][n] != ident[i][n] or w[i][n + 1] != ident[i][n + 1]:
            raise ValueError("automorphism does not fix the radical pointwise")
    return TranslationPart(
        mu_a=tuple(-w[n][j] for j in range(n)),
        mu_b=tuple(-w[n + 1][j] for j in range(n)),
    )


def pairing_form(sys: EllipticRootSystem, alpha_finite: Vector) -> Vector:
    """Coefficients of (alpha | -) on the finite sublattice."""
    g = sys.finite_part.gram.matrix
    return mat_vec(g, alpha_finite)


# ---------------------------------------------------------------------------
# Bourbaki plate coordinates for the invariant splitting.
# ---------------------------------------------------------------------------

def _half(*xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x, 2) for x in xs)


def plate_basis(tag: str) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[Fraction, ...]]:
    """(columns of the simple roots in plate coordinates, diagonal Gram).

    For D4 and E8 the plate basis is orthonormal.  For E6 and E7 the last
    basis vector is the projected one with squared length 1/3 resp. 1/2.
    """
    F = Fraction
    if tag == "D4":
        cols = [
            (F(1), F(-1), F(0), F(0)),
            (F(0), F(1), F(-1), F(0)),
            (F(0), F(0), F(1), F(-1)),
            (F(0), F(0), F(1), F(1)),
        ]
        diag = (F(1),) * 4
    elif tag == "E6":
        cols = [
            _half(1, -1, -1, -1, -1, 3),
            (F(1), F(1), F(0), F(0), F(0), F(0)),
            (F(-1), F(1), F(0), F(0), F(0), F(0)),
            (F(0), F(-1), F(1), F(0), F(0), F(0)),
            (F(0), F(0), F(-1), F(1), F(0), F(0)),
            (F(0), F(0), F(0), F(-1), F(1), F(0)),
        ]
        diag = (F(1),) * 5 + (F(1, 3),)
    elif tag == "E7":
        cols = [
            _half(1, -1, -1, -1, -1, -1, 2),
            (F(1), F(1), F(0), F(0), F(0), F(0), F(0)),
            (F(-1), F(1), F(0), F(0), F(0), F(0), F(0)),
            (F(0), F(-1), F(1), F(0), F(0), F(0), F(0)),
            (F(0), F(0), F(-1), F(1), F(0), F(0), F(0)),
            (F(0), F(0), F(0), F(-1), F(1), F(0), F(0)),
            (F(0), F(0), F(0), F(0), F(-1), F(1), F(0)),
        ]
        diag = (F(1),) * 6 + (F(1, 2),)
    elif tag == "E8":
        cols = [
            _half(1, -1, -1, -1, -1, -1, -1, 1),
            (F(1), F(1), F(0), F(0), F(0), F(0), F(0), F(0)),
            (F(-1), F(1), F(0), F(0), F(0), F(0), F(0), F(0)),
            (F(0), F(-1), F(1), F(0), F(0), F(0), F(0), F(0)),
            (F(0), F(0), F(-1), F(1), F(0), F(0), F(0), F(0)),
            (F(0), F(0), F(0), F(-1), F(1), F(0), F(0), F(0)),
            (F(0), F(0), F(0), F(0), F(-1), F(1), F(0), F(0)),
            (F(0), F(0), F(0), F(0), F(0), F(-1), F(1), F(0)),
        ]
        diag = (F(1),) * 8
    else:
        raise ValueError(f"no plate coordinates for {tag!r}")
    n = len(cols)
    p = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return p, diag


@dataclass(frozen=True)
class InvariantSplitting:
    """Change of basis M with rows (I | 0), (c_a | 1 0), (c_b | 0 1) such
    that M c M^{-1} is block diagonal over the plate coordinates."""

    tag: str
    m: tuple[tuple[Fraction, ...], ...]
    c_a: tuple[Fraction, ...]
    c_b: tuple[Fraction, ...]
    w_block: tuple[tuple[Fraction, ...], ...]
    d_a: tuple[Fraction, ...]
    d_b: tuple[Fraction, ...]


class SplittingError(RuntimeError):
    pass


def invariant_splitting(sys: EllipticRootSystem) -> InvariantSplitting:
    tag = sys.finite_part.tag
    n = sys.finite_part.rank
    ell = sys.ell
    p, diag = plate_basis(tag)
    p_inv = frac_mat_inv(p)
    c_int = coxeter_transformation(sys)
    # Conjugate into plate coordinates (radical coordinates untouched).
    p_hat = tuple(
        tuple(list(row) + [Fraction(0), Fraction(0)]) for row in p
    ) + (
        tuple([Fraction(0)] * n + [Fraction(1), Fraction(0)]),
        tuple([Fraction(0)] * n + [Fraction(0), Fraction(1)]),
    )
    p_hat_inv = frac_mat_inv(p_hat)
    c_plate = frac_mat_mul(frac_mat_mul(p_hat, c_int), p_hat_inv)
    w_block = tuple(tuple(c_plate[i][j] for j in range(n)) for i in range(n))
    # Off-diagonal blocks of the first n rows must vanish and the radical
    # corner must be the identity.
    for i in range(n):
        if c_plate[i][n] != 0 or c_plate[i][n + 1] != 0:
            raise SplittingError("Coxeter matrix does not fix the radical flag")
    if any(
        c_plate[n + i][n + j] != (1 if i == j else 0)
        for i in range(2) for j in range(2)
    ):
        raise SplittingError("Coxeter matrix does not restrict to 1 on R")
    d_a = tuple(c_plate[n][j] for j in range(n))
    d_b = tuple(c_plate[n + 1][j] for j in range(n))
    # Cross-check the two translation rows against the defining pairings
    # d_a = (-alpha_t | b_i), d_b = (highest root | b_i).
    alpha_t = tuple(p[i][sys.t_index - 1] for i in range(n))
    tilde = mat_vec_frac(p, sys.finite_part.highest_root)
    for i in range(n):
        e_i = tuple(Fraction(int(k == i)) for k in range(n))
        if d_a[i] != -_plate_pair(alpha_t, e_i, diag):
            raise SplittingError("translation row a does not match (-alpha_t|.)")
        if d_b[i] != _plate_pair(tilde, e_i, diag):
            raise SplittingError("translation row b does not match (tilde|.)")
    # c_x = -(1/l) (d_x + 2 d_x w + ... + l d_x w^{l-1}) as row vectors.
    c_a = _weighted_row_sum(d_a, w_block, ell)
    c_b = _weighted_row_sum(d_b, w_block, ell)
    for c_x, d_x in ((c_a, d_a), (c_b, d_b)):
        lhs = _row_times(c_x, w_block)
        if tuple(l - c + d for l, c, d in zip(lhs, c_x, d_x)) != (Fraction(0),) * n:
            raise SplittingError("row identity c_x w - c_x + d_x = 0 fails")
    m = _splitting_matrix(c_a, c_b)
    m_inv = frac_mat_inv(m)
    conj = frac_mat_mul(frac_mat_mul(m, c_plate), m_inv)
    for i in range(n + 2):
        for j in range(n + 2):
            expect = w_block[i][j] if (i < n and j < n) else Fraction(int(i == j))
            if conj[i][j] != expect:
                raise SplittingError("M c M^{-1} is not block diagonal")
    return InvariantSplitting(
        tag=tag, m=m, c_a=c_a, c_b=c_b, w_block=w_block, d_a=d_a, d_b=d_b
    )


def _splitting_matrix(c_a, c_b):
    n = len(c_a)
    rows = [tuple(Fraction(int(i == j)) for j in range(n + 2)) for i in range(n)]
    rows.append(tuple(list(c_a) + [Fraction(1), Fraction(0)]))
    rows.append(tuple(list(c_b) + [Fraction(0), Fraction(1)]))
    return tuple(rows)


def mat_vec_frac(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _plate_pair(x, y, diag):
    return sum(a * d * b for a, d, b in zip(x, diag, y))


def _row_times(row, m):
    return tuple(sum(row[i] * m[i][j] for i in range(len(row))) for j in range(len(row)))


def _weighted_row_sum(d, w, ell):
    n = len(d)
    acc = [Fraction(0)] * n
    cur = d
    for k in range(1, ell + 1):
        acc = [a + k * c for a, c in zip(acc, cur)]
        cur = _row_times(cur, w)
    return tuple(-x / ell for x in acc)


# ---------------------------------------------------------------------------
# Projection to the finite quotient and fiber transporters.
# ---------------------------------------------------------------------------

def project_tuple(t: ReflectionTuple) -> ReflectionTuple:
    sys = t.ambient
    if isinstance(sys, FiniteRootSystem):
        return t
    if not isinstance(sys, EllipticRootSystem):
        raise TypeError("projection needs an elliptic ambient")
    fin = sys.finite_part
    return reflection_tuple(fin, [canonical_root(r[: fin.rank]) for r in t.roots()])


class FiberError(ValueError):
    pass


def fiber_transporter(t1: ReflectionTuple, t2: ReflectionTuple) -> Mat2:
    """The unique lattice automorphism carrying t1 to t2 entrywise, returned
    as its 2x2 restriction to the radical in the basis (a, b).

    Both tuples must be generating, lie in the same fiber of the projection,
    and multiply to the same element.
    """
    sys = t1.ambient
    if not isinstance(sys, EllipticRootSystem) or t2.ambient is not sys:
        raise FiberError("tuples must share an elliptic ambient")
    if len(t1) != len(t2):
        raise FiberError("tuples have different lengths")
    if project_tuple(t1).roots() != project_tuple(t2).roots():
        raise FiberError("tuples are not in the same fiber of the projection")
    if not (is_generating(t1) and is_generating(t2)):
        raise FiberError("fiber transport needs generating tuples")
    if product(t1) != product(t2):
        raise FiberError("tuples do not multiply to the same element")
    phi = _solve_transporter(sys, t1.roots(), t2.roots())
    n = sys.finite_part.rank
    gamma: Mat2 = (
        (phi[n][n], phi[n][n + 1]),
        (phi[n + 1][n], phi[n + 1][n + 1]),
    )
    if not gamma_membership(gamma, sys.ell):
        raise FiberError("transporter restriction is not in the congruence subgroup")
    return gamma


def _solve_transporter(sys: EllipticRootSystem, roots1, roots2) -> Matrix:
    dim = sys.dim
    cols1 = tuple(tuple(Fraction(roots1[j][i]) for j in range(dim)) for i in range(dim))
    cols2 = tuple(tuple(Fraction(roots2[j][i]) for j in range(dim)) for i in range(dim))
    phi_frac = frac_mat_mul(cols2, frac_mat_inv(cols1))
    phi_rows = []
    for row in phi_frac:
        ints = []
        for x in row:
            if x.denominator != 1:
                raise FiberError("transporter is not integral (non-generating input?)")
            ints.append(int(x))
        phi_rows.append(tuple(ints))
    phi = tuple(phi_rows)
    c = coxeter_transformation(sys)
    if mat_mul(phi, c) != mat_mul(c, phi):
        raise FiberError("transporter does not commute with the Coxeter matrix")
    g = sys.gram.matrix
    pt = tuple(zip(*phi))
    if mat_mul(mat_mul(pt, g), phi) != g:
        raise FiberError("transporter does not preserve the Gram form")
    return phi


def transporter_matrix(sys: EllipticRootSystem, gamma: Mat2) -> Matrix:
    """Lift an element of the congruence subgroup to the integral
    automorphism that is the identity on the invariant complement of the
    radical and acts by gamma on (a, b)."""
    split = invariant_splitting(sys)
    n = sys.finite_part.rank
    p, _ = plate_basis(sys.finite_part.tag)
    p_hat = tuple(tuple(list(row) + [Fraction(0), Fraction(0)]) for row in p) + (
        tuple([Fraction(0)] * n + [Fraction(1), Fraction(0)]),
        tuple([Fraction(0)] * n + [Fraction(0), Fraction(1)]),
    )
    t_mat = frac_mat_mul(split.m, p_hat)
    blk = [[Fraction(int(i == j)) for j in range(n + 2)] for i in range(n + 2)]
    blk[n][n] = Fraction(gamma[0][0])
    blk[n][n + 1] = Fraction(gamma[0][1])
    blk[n + 1][n] = Fraction(gamma[1][0])
    blk[n + 1][n + 1] = Fraction(gamma[1][1])
    phi = frac_mat_mul(frac_mat_mul(frac_mat_inv(t_mat), tuple(map(tuple, blk))), t_mat)
    rows = []
    for row in phi:
        ints = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("gamma does not lift integrally (not in Gamma(l)?)")
            ints.append(int(x))
        rows.append(tuple(ints))
    return tuple(rows)


def act_on_tuple(phi: Matrix, t: ReflectionTuple) -> ReflectionTuple:
    """Entrywise action of a lattice automorphism on a reflection tuple."""
    return reflection_tuple(t.ambient, [mat_vec(phi, r) for r in t.roots()])


class StabilizerError(ValueError):
    pass


def braid_matrix(t: ReflectionTuple, word) -> Mat2:
    """Transporter from t to its braid image; the word must stabilize the
    projected tuple."""
    from .hurwitz import apply_braid_word

    image = apply_braid_word(t, word)
    if project_tuple(image).roots() != project_tuple(t).roots():
        raise StabilizerError("braid word does not stabilize the projection")
    return fiber_transporter(t, image)


def canonical_tuple(sys: EllipticRootSystem) -> ReflectionTuple:
    return reflection_tuple(sys, sys.canonical_word_roots())
