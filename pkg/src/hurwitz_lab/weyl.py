"""Weyl-group elements as integer lattice automorphisms: reflection length,
generation tests, conjugacy classes of reflections, and factorization
enumeration for finite groups.

Group elements are compared by matrix equality; finite-group closures are
kept in dicts keyed by the matrix tuples themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .diagram import canonical_root, full_lattice, hnf_span, lattice_equal
from .linalg import Matrix, Vector, identity, mat_mul, rank, sub_vec
from .rootsys import CrystallographicRootSystem, EllipticRootSystem, FiniteRootSystem

AmbientSystem = Union[FiniteRootSystem, CrystallographicRootSystem, EllipticRootSystem]


class CapExceededError(RuntimeError):
    """An enumeration hit its resource cap; carries the partial count."""

    def __init__(self, message: str, partial: int):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class Reflection:
    """A reflection named by its canonical root representative."""

    root: Vector

    def __post_init__(self):
        object.__setattr__(self, "root", canonical_root(self.root))


@dataclass(frozen=True)
class ReflectionTuple:
    entries: tuple[Reflection, ...]
    ambient: AmbientSystem

    def __len__(self) -> int:
        return len(self.entries)

    def roots(self) -> tuple[Vector, ...]:
        return tuple(r.root for r in self.entries)

    def key(self) -> tuple[Vector, ...]:
        return self.roots()


def reflection_tuple(ambient: AmbientSystem, roots: Iterable[Vector]) -> ReflectionTuple:
    return ReflectionTuple(
        entries=tuple(Reflection(r) for r in roots), ambient=ambient
    )


def product(t: ReflectionTuple) -> Matrix:
    """Left-to-right matrix product; the empty tuple gives the identity."""
    dim = ambient_dim(t.ambient)
    m = identity(dim)
    for r in t.entries:
        m = mat_mul(m, t.ambient.reflection_matrix(r.root))
    return m


def ambient_dim(sys: AmbientSystem) -> int:
    if isinstance(sys, EllipticRootSystem):
        return sys.dim
    return sys.rank


def is_orthogonal(sys: AmbientSystem, m: Matrix) -> bool:
    g = sys.gram.matrix if not isinstance(sys, CrystallographicRootSystem) else sys.gram_matrix
    mt = tuple(zip(*m))
    return mat_mul(mat_mul(mt, g), m) == g


def reflection_length_finite(w: Matrix,
                             sys: FiniteRootSystem | CrystallographicRootSystem) -> int:
    """Carter's lemma: the reflection length in a finite Weyl group is the
    codimension of the fixed space, i.e. rank(w - 1) over Q."""
    if not is_orthogonal(sys, w):
        raise ValueError("matrix does not preserve the Gram form")
    n = sys.rank
    diff = tuple(sub_vec(row, ident_row) for row, ident_row in zip(w, identity(n)))
    return rank(diff)


def is_generating(t: ReflectionTuple) -> bool:
    """Whether the roots of the tuple Z-span the full root lattice."""
    if not t.entries:
        return False
    dim = ambient_dim(t.ambient)
    return lattice_equal(hnf_span(list(t.roots())), full_lattice(dim))


# ---------------------------------------------------------------------------
# Finite group machinery: explicit element tables for the desk-scale sweeps.
# ---------------------------------------------------------------------------

@dataclass
class FiniteGroupTable:
    """Explicit multiplication structure of a finite Weyl group.

    Elements are integers 0..order-1 (0 = identity).  `refl_elems[i]` is the
    element id of the reflection with root `refl_roots[i]`; `mult[g][i]`
    multiplies g on the right by reflection i; `conj_root[i][j]` is the root
    index of s_i s_j s_i.
    """

    sys: FiniteRootSystem | CrystallographicRootSystem
    elements: list[Matrix]
    index: dict[Matrix, int]
    refl_roots: list[Vector]
    refl_elems: list[int]
    mult: list[list[int]]
    inverse: list[int]
    conj_root: list[list[int]]
    length: list[int]
    root_class: list[int]
    num_classes: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def root_id(self, root: Vector) -> int:
        return self.refl_roots.index(canonical_root(root))


def build_group_table(sys: FiniteRootSystem | CrystallographicRootSystem) -> FiniteGroupTable:
    refl_roots = list(sys.positive_reflection_roots())
    refl_mats = [sys.reflection_matrix(r) for r in refl_roots]
    ident = identity(sys.rank)
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for m in refl_mats:
                h = mat_mul(g, m)
                if h not in index:
                    index[h] = len(elements)
                    elements.append(h)
                    nxt.append(h)
        frontier = nxt
    mult = [[index[mat_mul(g, m)] for m in refl_mats] for g in elements]
    refl_elems = [index[m] for m in refl_mats]
    inverse = _inverses(elements, index, mult, refl_elems)
    conj_root = []
    root_index = {r: i for i, r in enumerate(refl_roots)}
    for i, ri in enumerate(refl_roots):
        row = []
        for rj in refl_roots:
            img = canonical_root(sys.reflect(ri, rj))
            row.append(root_index[img])
        conj_root.append(row)
    length = [reflection_length_finite(g, sys) for g in elements]
    root_class, num_classes = _root_classes(refl_roots, conj_root)
    return FiniteGroupTable(
        sys=sys, elements=elements, index=index, refl_roots=refl_roots,
        refl_elems=refl_elems, mult=mult, inverse=inverse,
        conj_root=conj_root, length=length,
        root_class=root_class, num_classes=num_classes,
    )


def _inverses(elements, index, mult, refl_elems) -> list[int]:
    inv = [-1] * len(elements)
    # BFS words back to the identity: reflections are involutions, so the
    # inverse of g = t_{i1}...t_{ik} is t_{ik}...t_{i1}.
    word: list[tuple[int, ...]] = [()] * len(elements)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for g in frontier:
            for i, _ in enumerate(refl_elems):
                h = mult[g][i]
                if h not in seen:
                    seen.add(h)
                    word[h] = word[g] + (i,)
                    nxt.append(h)
        frontier = nxt
    for g in range(len(elements)):
        h = 0
        for i in reversed(word[g]):
            h = mult[h][i]
        inv[g] = h
    return inv


def _root_classes(refl_roots, conj_root) -> tuple[list[int], int]:
    n = len(refl_roots)
    cls = [-1] * n
    cid = 0
    for start in range(n):
        if cls[start] != -1:
            continue
        stack = [start]
        cls[start] = cid
        while stack:
            i = stack.pop()
            for j in range(n):
                img = conj_root[j][i]
                if cls[img] == -1:
                    cls[img] = cid
                    stack.append(img)
        cid += 1
    return cls, cid


def reflection_conjugacy_classes(
    sys: FiniteRootSystem | CrystallographicRootSystem,
) -> list[list[Vector]]:
    """Orbits of the W-action on reflections, as lists of canonical roots."""
    table = build_group_table(sys)
    out: list[list[Vector]] = [[] for _ in range(table.num_classes)]
    for root, c in zip(table.refl_roots, table.root_class):
        out[c].append(root)
    return out


def subgroup_is_full(table: FiniteGroupTable, root_ids: frozenset[int]) -> bool:
    """Whether the reflections with the given root ids generate the group."""
    seen = {0}
    frontier = [0]
    gens = sorted(root_ids)
    while frontier:
        nxt = []
        for g in frontier:
            for i in gens:
                h = table.mult[g][i]
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
        if len(seen) == table.order:
            return True
    return len(seen) == table.order


def enumerate_fac(
    w: Matrix,
    sys: FiniteRootSystem | CrystallographicRootSystem,
    m: int,
    require_generating: bool = False,
    table: FiniteGroupTable | None = None,
    max_half: int = 40_000_000,
) -> Iterator[ReflectionTuple]:
    """All m-tuples of reflections multiplying to w, meet-in-the-middle.

    Tuples stream in lexicographic order of their root-index words.  With
    `require_generating` only tuples whose reflections generate the full
    group survive (membership is memoized per root-id set).  `max_half`
    caps the number of half-products kept in memory (roughly 100 bytes
    each, so the default guards around 2 GiB).
    """
    if table is None:
        table = build_group_table(sys)
    if w not in table.index:
        raise ValueError("target element is not in the group")
    target = table.index[w]
    if m < 0:
        raise ValueError("m must be >= 0")
    lw = table.length[target]
    if m < lw or (m - lw) % 2 != 0:
        return
    k = len(table.refl_roots)
    if k ** (m // 2) > max_half:
        raise CapExceededError(
            f"meet-in-the-middle half size {k**(m//2)} exceeds cap", 0
        )
    left_len = m // 2
    right_len = m - left_len
    # Group all right-half words by their product.
    right: dict[int, list[tuple[int, ...]]] = {}
    for word, g in _words_with_products(table, right_len):
        right.setdefault(g, []).append(word)
    gen_cache: dict[frozenset[int], bool] = {}
    for word, g in _words_with_products(table, left_len):
        # Need g * h = target, i.e. h = g^{-1} * target.
        need = _mult_elem(table, table.inverse[g], target)
        for tail in right.get(need, ()):
            full = word + tail
            if require_generating:
                key = frozenset(full)
                ok = gen_cache.get(key)
                if ok is None:
                    ok = subgroup_is_full(table, key)
                    gen_cache[key] = ok
                if not ok:
                    continue
            yield reflection_tuple(
                table.sys, [table.refl_roots[i] for i in full]
            )


def _words_with_products(table: FiniteGroupTable, length: int):
    k = len(table.refl_roots)
    word = [0] * length
    # Iterative odometer over words, maintaining prefix products.
    prods = [0] * (length + 1)

    def emit():
        for i in range(length):
            prods[i + 1] = table.mult[prods[i]][word[i]]
        return tuple(word), prods[length]

    if length == 0:
        yield (), 0
        return
    total = k ** length
    for _ in range(total):
        yield emit()
        pos = length - 1
        while pos >= 0:
            word[pos] += 1
            if word[pos] < k:
                break
            word[pos] = 0
            pos -= 1
        if pos < 0:
            break


def _mult_elem(table: FiniteGroupTable, g: int, h: int) -> int:
    # Multiply two elements via matrices (the reflection table only covers
    # right-multiplication by reflections).
    return table.index[mat_mul(table.elements[g], table.elements[h])]
