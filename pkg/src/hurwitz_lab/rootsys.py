"""Finite simply-laced root systems, the F4 crystallographic system, and
tubular elliptic root systems with their Coxeter transformations.

Finite roots live in Z^n over the simple-root basis (alpha_i = i-th standard
basis vector), so the Gram form is the symmetrized Cartan matrix.  Elliptic
roots live in Z^(n+2) over the ordered basis (alpha_1..alpha_n, a, b); the
radical generators a, b pad the Gram form with two zero rows/columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .diagram import (
    Diagram,
    GramForm,
    Lattice,
    T_INDEX,
    _family_of,
    canonical_root,
    elliptic_diagram,
    finite_diagram,
    full_lattice,
    gram_from_diagram,
    hnf_span,
    lattice_equal,
)
from .linalg import (
    Matrix,
    Vector,
    identity,
    mat_mul,
    mat_vec,
    rank,
    vec,
)


@dataclass(frozen=True)
class FiniteRootSystem:
    tag: str
    gram: GramForm
    simple_roots: tuple[Vector, ...]
    all_roots: tuple[Vector, ...]
    highest_root: Vector
    marks: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def root_set(self) -> frozenset[Vector]:
        return frozenset(self.all_roots)

    def bilinear(self, x: Vector, y: Vector) -> int:
        gy = mat_vec(self.gram.matrix, y)
        return sum(a * b for a, b in zip(x, gy))

    def reflect(self, root: Vector, x: Vector) -> Vector:
        c = self.bilinear(x, root)
        return tuple(a - c * r for a, r in zip(x, root))

    def reflection_matrix(self, root: Vector) -> Matrix:
        gr = mat_vec(self.gram.matrix, root)
        n = self.rank
        return tuple(
            tuple((1 if i == j else 0) - root[i] * gr[j] for j in range(n))
            for i in range(n)
        )

    def positive_reflection_roots(self) -> tuple[Vector, ...]:
        """One canonical root per reflection, lexicographically sorted."""
        return tuple(sorted({canonical_root(r) for r in self.all_roots}))


def _closure(simple: list[Vector], refl) -> tuple[Vector, ...]:
    """Worklist saturation of the simple roots under the simple reflections.

    Every root is a Weyl image of a simple root, so saturating under the
    simple reflections already yields the whole system; closure under all
    reflections is checked separately as a property test.
    """
    roots = set(simple) | {tuple(-x for x in r) for r in simple}
    frontier = list(roots)
    while frontier:
        nxt = []
        for beta in frontier:
            for alpha in simple:
                img = refl(alpha, beta)
                if img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    return tuple(sorted(roots))


EXPECTED_COUNTS = {"A": lambda n: n * (n + 1), "D": lambda n: 2 * n * (n - 1),
                   "E": lambda n: {6: 72, 7: 126, 8: 240}[n]}


@lru_cache(maxsize=None)
def build_finite(tag: str) -> FiniteRootSystem:
    """Reflection closure of the simple roots of an A/D/E type."""
    fam, n = _family_of(tag)
    gram = gram_from_diagram(finite_diagram(tag))
    simple = [vec([1 if j == i else 0 for j in range(n)]) for i in range(n)]

    def refl(alpha: Vector, beta: Vector) -> Vector:
        gy = mat_vec(gram.matrix, alpha)
        c = sum(a * b for a, b in zip(beta, gy))
        return tuple(a - c * r for a, r in zip(beta, alpha))

    roots = _closure(simple, refl)
    assert len(roots) == EXPECTED_COUNTS[fam](n), (tag, len(roots))
    highest = max(roots, key=lambda r: (sum(r), r))
    return FiniteRootSystem(
        tag=tag,
        gram=gram,
        simple_roots=tuple(simple),
        all_roots=roots,
        highest_root=highest,
        marks=highest,
    )


@dataclass(frozen=True)
class EllipticRootSystem:
    """Tubular elliptic root system over the basis (alpha_1..alpha_n, a, b)."""

    tag: str
    finite_part: FiniteRootSystem
    gram: GramForm
    a: Vector
    b: Vector
    basis_gamma: tuple[Vector, ...]
    t_index: int
    ell: int

    @property
    def rank(self) -> int:
        return self.finite_part.rank + 2

    @property
    def dim(self) -> int:
        return self.rank

    def bilinear(self, x: Vector, y: Vector) -> int:
        gy = mat_vec(self.gram.matrix, y)
        return sum(p * q for p, q in zip(x, gy))

    def reflect(self, root: Vector, x: Vector) -> Vector:
        c = self.bilinear(x, root)
        return tuple(p - c * r for p, r in zip(x, root))

    def reflection_matrix(self, root: Vector) -> Matrix:
        gr = mat_vec(self.gram.matrix, root)
        n = self.dim
        return tuple(
            tuple((1 if i == j else 0) - root[i] * gr[j] for j in range(n))
            for i in range(n)
        )

    def embed_finite(self, beta: Vector, ell_a: int = 0, k_b: int = 0) -> Vector:
        return tuple(beta) + (ell_a, k_b)

    def finite_coords(self, v: Vector) -> Vector:
        return v[: self.finite_part.rank]

    def alpha(self, i: int) -> Vector:
        """Simple root alpha_i (1-based) embedded in the elliptic lattice."""
        n = self.finite_part.rank
        return vec([1 if j == i - 1 else 0 for j in range(n)]) + (0, 0)

    def canonical_word_roots(self) -> tuple[Vector, ...]:
        """Roots of the canonical Coxeter factorization.

        The order is: the simple roots with alpha_t omitted, then alpha_0,
        then alpha_t, then alpha_t + a.
        """
        n = self.finite_part.rank
        t = self.t_index
        alpha0 = self.basis_gamma[0]
        star = self.basis_gamma[-1]
        word = [self.alpha(i) for i in range(1, n + 1) if i != t]
        word += [alpha0, self.alpha(t), star]
        return tuple(word)


@lru_cache(maxsize=None)
def build_elliptic(tag: str) -> EllipticRootSystem:
    if not tag.endswith(".1.1"):
        raise ValueError(f"unsupported elliptic type {tag!r}")
    base = tag.split(".")[0]
    if base not in T_INDEX:
        raise ValueError(f"unsupported elliptic type {tag!r}")
    fin = build_finite(base)
    n = fin.rank
    gram_rows = [list(row) + [0, 0] for row in fin.gram.matrix]
    gram_rows += [[0] * (n + 2), [0] * (n + 2)]
    gram = GramForm(tuple(tuple(r) for r in gram_rows))
    a = vec([0] * n + [1, 0])
    b = vec([0] * n + [0, 1])
    t = T_INDEX[base]
    alpha0 = tuple(-m for m in fin.highest_root) + (0, 1)
    gammas = [alpha0]
    gammas += [vec([1 if j == i else 0 for j in range(n)]) + (0, 0)
               for i in range(n)]
    star = vec([1 if j == t - 1 else 0 for j in range(n)]) + (1, 0)
    gammas.append(star)
    sys = EllipticRootSystem(
        tag=tag,
        finite_part=fin,
        gram=gram,
        a=a,
        b=b,
        basis_gamma=tuple(gammas),
        t_index=t,
        ell={"D4": 2, "E6": 3, "E7": 4, "E8": 6}[base],
    )
    # The elliptic basis must span the full lattice, and the stored order of
    # the Coxeter transformation must be its actual matrix order.
    assert lattice_equal(hnf_span(list(gammas)), full_lattice(n + 2))
    assert matrix_order(coxeter_transformation(sys)) == sys.ell
    return sys


def roots_window(sys: EllipticRootSystem, window: int) -> list[Vector]:
    """All roots beta + l*a + k*b with |l| <= window and |k| <= window."""
    if window < 0:
        raise ValueError("window must be >= 0")
    out = []
    rng = range(-window, window + 1)
    for beta in sys.finite_part.all_roots:
        for la in rng:
            for kb in rng:
                out.append(tuple(beta) + (la, kb))
    return out


def coxeter_transformation(sys: EllipticRootSystem) -> Matrix:
    """Product of the canonical word's reflections, leftmost factor first."""
    m = identity(sys.dim)
    for root in sys.canonical_word_roots():
        m = mat_mul(m, sys.reflection_matrix(root))
    return m


def matrix_order(m: Matrix, cap: int = 64) -> int:
    p = m
    ident = identity(len(m))
    for k in range(1, cap + 1):
        if p == ident:
            return k
        p = mat_mul(p, m)
    raise ValueError(f"order exceeds {cap}")


def mark_obstruction(sys: EllipticRootSystem) -> bool:
    """True iff alpha_t is not an integer combination of the other simple
    roots together with the highest root."""
    fin = sys.finite_part
    t = sys.t_index
    gens = [fin.highest_root]
    gens += [fin.simple_roots[i] for i in range(fin.rank) if i != t - 1]
    lattice = hnf_span(gens)
    return not lattice.contains(fin.simple_roots[t - 1])


# ---------------------------------------------------------------------------
# F4: the crystallographic, non-simply-laced system needed for the two-length
# conjugacy-class example.  Roots in Z^4 over the simple-root basis; the Gram
# matrix is doubled so it stays integral (long roots have norm 4, short 2).
# ---------------------------------------------------------------------------

F4_GRAM: Matrix = (
    (4, -2, 0, 0),
    (-2, 4, -2, 0),
    (0, -2, 2, -1),
    (0, 0, -1, 2),
)


@dataclass(frozen=True)
class CrystallographicRootSystem:
    """Two-length root system behind the same interface as the finite ones."""

    tag: str
    gram_matrix: Matrix
    simple_roots: tuple[Vector, ...]
    all_roots: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    def bilinear(self, x: Vector, y: Vector) -> int:
        gy = mat_vec(self.gram_matrix, y)
        return sum(a * b for a, b in zip(x, gy))

    def norm(self, root: Vector) -> int:
        return self.bilinear(root, root)

    def reflect(self, root: Vector, x: Vector) -> Vector:
        num = 2 * self.bilinear(x, root)
        den = self.norm(root)
        c, r = divmod(num, den)
        if r:
            raise ValueError("non-crystallographic pairing")
        return tuple(a - c * q for a, q in zip(x, root))

    def reflection_matrix(self, root: Vector) -> Matrix:
        n = self.rank
        cols = []
        for j in range(n):
            e = vec([1 if i == j else 0 for i in range(n)])
            cols.append(self.reflect(root, e))
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def positive_reflection_roots(self) -> tuple[Vector, ...]:
        return tuple(sorted({canonical_root(r) for r in self.all_roots}))


@lru_cache(maxsize=None)
def build_f4() -> CrystallographicRootSystem:
    n = 4
    simple = [vec([1 if j == i else 0 for j in range(n)]) for i in range(n)]
    proto = CrystallographicRootSystem(
        tag="F4", gram_matrix=F4_GRAM,
        simple_roots=tuple(simple), all_roots=tuple(simple),
    )
    roots = _closure(simple, proto.reflect)
    assert len(roots) == 48
    return CrystallographicRootSystem(
        tag="F4", gram_matrix=F4_GRAM,
        simple_roots=tuple(simple), all_roots=roots,
    )
