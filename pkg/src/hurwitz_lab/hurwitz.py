"""Hurwitz moves, braid words, orbit enumeration, and the desk-scale
verification harness for the orbit/multiset correspondence.

The positive move at position i replaces (t_i, t_{i+1}) by
(t_{i+1}, t_{i+1} t_i t_{i+1}^{-1}); the inverse move replaces it by
(t_i t_{i+1} t_i^{-1}, t_i).  On roots, conjugation acts by the reflection
matrix and the result is re-canonicalized to its +/- representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .diagram import canonical_root
from .linalg import Matrix, Vector
from .rootsys import CrystallographicRootSystem, FiniteRootSystem
from .weyl import (
    AmbientSystem,
    CapExceededError,
    FiniteGroupTable,
    ReflectionTuple,
    build_group_table,
    enumerate_fac,
    reflection_length_finite,
    reflection_tuple,
    subgroup_is_full,
)

BraidWord = Sequence[int]


@dataclass(frozen=True)
class OrbitReport:
    orbit_size: int
    representative: ReflectionTuple
    invariant_multiset: tuple[int, ...]
    truncated: bool


def _conjugate_root(ambient: AmbientSystem, by: Vector, root: Vector) -> Vector:
    return canonical_root(ambient.reflect(by, root))


def hurwitz_move(t: ReflectionTuple, i: int, inverse: bool = False) -> ReflectionTuple:
    """Apply sigma_i (or its inverse) to the tuple; i is 1-based."""
    m = len(t)
    if not 1 <= i < m:
        raise IndexError(f"move index {i} out of range for tuple of length {m}")
    roots = list(t.roots())
    x, y = roots[i - 1], roots[i]
    if inverse:
        roots[i - 1], roots[i] = _conjugate_root(t.ambient, x, y), x
    else:
        roots[i - 1], roots[i] = y, _conjugate_root(t.ambient, y, x)
    return reflection_tuple(t.ambient, roots)


def apply_braid_word(t: ReflectionTuple, word: BraidWord) -> ReflectionTuple:
    """Left-to-right composition: the first letter acts first.

    Letters are signed 1-based generator indices; a negative letter applies
    the inverse move.
    """
    for letter in word:
        if letter == 0:
            raise IndexError("braid letters are nonzero signed indices")
        t = hurwitz_move(t, abs(letter), inverse=letter < 0)
    return t


def inverse_word(word: BraidWord) -> list[int]:
    return [-letter for letter in reversed(word)]


def all_moves(t: ReflectionTuple) -> Iterable[ReflectionTuple]:
    for i in range(1, len(t)):
        yield hurwitz_move(t, i, inverse=False)
        yield hurwitz_move(t, i, inverse=True)


def hurwitz_orbit(t: ReflectionTuple, cap: int = 10_000_000) -> OrbitReport:
    """BFS closure of the tuple under all Hurwitz moves.

    If the orbit exceeds `cap` tuples the report is truncated rather than an
    error: moves over an infinite root system can escape any window.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    seen = {t.key(): t}
    frontier = [t]
    truncated = False
    while frontier and not truncated:
        nxt = []
        for cur in frontier:
            for img in all_moves(cur):
                k = img.key()
                if k not in seen:
                    seen[k] = img
                    nxt.append(img)
                    if len(seen) >= cap:
                        truncated = True
                        break
            if truncated:
                break
        frontier = nxt
    rep = seen[min(seen)]
    return OrbitReport(
        orbit_size=len(seen),
        representative=rep,
        invariant_multiset=multiset_invariant_or_empty(rep),
        truncated=truncated,
    )


def conjugacy_class_map(
    sys: FiniteRootSystem | CrystallographicRootSystem,
    table: FiniteGroupTable | None = None,
) -> dict[Vector, int]:
    if table is None:
        table = build_group_table(sys)
    return {r: c for r, c in zip(table.refl_roots, table.root_class)}


def multiset_invariant(t: ReflectionTuple, classes: dict[Vector, int]) -> tuple[int, ...]:
    """Sorted class ids of the entries; invariant under Hurwitz moves."""
    out = []
    for r in t.roots():
        if r not in classes:
            raise KeyError(f"root {r} not in any conjugacy class")
        out.append(classes[r])
    return tuple(sorted(out))


def multiset_invariant_or_empty(t: ReflectionTuple) -> tuple[int, ...]:
    if isinstance(t.ambient, (FiniteRootSystem, CrystallographicRootSystem)):
        try:
            return multiset_invariant(t, conjugacy_class_map(t.ambient))
        except KeyError:
            return ()
    return ()


# ---------------------------------------------------------------------------
# Orbit classification over a finite group: index-based fast path.
# ---------------------------------------------------------------------------

def _index_orbit_partition(
    tuples: list[tuple[int, ...]], conj: list[list[int]]
) -> list[list[tuple[int, ...]]]:
    """Partition root-index tuples into Hurwitz orbits (moves stay inside)."""
    pool = set(tuples)
    orbits = []
    while pool:
        seed = min(pool)
        orbit = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for cur in frontier:
                for i in range(len(cur) - 1):
                    x, y = cur[i], cur[i + 1]
                    pos = cur[:i] + (y, conj[y][x]) + cur[i + 2:]
                    neg = cur[:i] + (conj[x][y], x) + cur[i + 2:]
                    for img in (pos, neg):
                        if img not in orbit:
                            orbit.add(img)
                            nxt.append(img)
            frontier = nxt
        if not orbit <= pool:
            raise AssertionError("orbit escaped the enumerated factorization set")
        pool -= orbit
        orbits.append(sorted(orbit))
    return orbits


def classify_orbits(
    w: Matrix,
    sys: FiniteRootSystem | CrystallographicRootSystem,
    m: int,
    require_generating: bool = True,
    table: FiniteGroupTable | None = None,
    cap: int = 10_000_000,
) -> list[OrbitReport]:
    """Partition the m-reflection factorizations of w into Hurwitz orbits."""
    if table is None:
        table = build_group_table(sys)
    tuples = []
    for t in enumerate_fac(w, sys, m, require_generating=require_generating,
                           table=table):
        tuples.append(tuple(table.root_id(r) for r in t.roots()))
        if len(tuples) > cap:
            raise CapExceededError("factorization enumeration exceeded cap",
                                   len(tuples))
    orbits = _index_orbit_partition(tuples, table.conj_root)
    reports = []
    for orbit in orbits:
        rep_ids = orbit[0]
        rep = reflection_tuple(sys, [table.refl_roots[i] for i in rep_ids])
        multiset = tuple(sorted(table.root_class[i] for i in rep_ids))
        reports.append(OrbitReport(
            orbit_size=len(orbit), representative=rep,
            invariant_multiset=multiset, truncated=False,
        ))
    return reports


@dataclass(frozen=True)
class SweepResult:
    tag: str
    m: int
    elements_swept: int
    eligible: int
    all_match: bool
    max_orbits: int
    details: tuple[tuple[int, int, int], ...]  # (element id, #orbits, #multisets)


def orbit_multiset_sweep(
    sys: FiniteRootSystem, m: int | None = None,
    table: FiniteGroupTable | None = None,
) -> SweepResult:
    """Full sweep: for every w of maximal reflection length with a nonempty
    generating factorization set in length rank+2, check that Hurwitz orbits
    biject with distinct conjugacy-class multisets."""
    if table is None:
        table = build_group_table(sys)
    n = sys.rank
    if m is None:
        m = n + 2
    details = []
    all_match = True
    max_orbits = 0
    eligible = 0
    for g in range(table.order):
        if table.length[g] != n:
            continue
        reports = classify_orbits(table.elements[g], sys, m, table=table)
        if not reports:
            continue
        eligible += 1
        norb = len(reports)
        nmult = len({r.invariant_multiset for r in reports})
        max_orbits = max(max_orbits, norb)
        if norb != nmult:
            all_match = False
        details.append((g, norb, nmult))
    return SweepResult(
        tag=sys.tag, m=m, elements_swept=table.order, eligible=eligible,
        all_match=all_match, max_orbits=max_orbits, details=tuple(details),
    )


# ---------------------------------------------------------------------------
# Lewis-Reiner duplicate form.
# ---------------------------------------------------------------------------

def lr_duplicate_form(
    t: ReflectionTuple,
    sys: FiniteRootSystem | CrystallographicRootSystem,
    table: FiniteGroupTable | None = None,
    cap: int = 10_000_000,
) -> ReflectionTuple:
    """A Hurwitz-equivalent tuple whose leading pairs are equal duplicates
    followed by a reduced tail.

    For a tuple of length m with product of reflection length r, the target
    shape is t_1 = t_2, ..., t_{m-r-1} = t_{m-r} with the last r entries
    multiplying (necessarily reducedly) to the same product.  Found by orbit
    BFS with early exit.
    """
    if table is None:
        table = build_group_table(sys)
    ids = tuple(table.root_id(r) for r in t.roots())
    m = len(ids)
    g = 0
    for i in ids:
        g = table.mult[g][i]
    r = table.length[g]
    if (m - r) % 2 != 0:
        raise ValueError("length parity mismatch: no factorization exists")

    def is_target(word: tuple[int, ...]) -> bool:
        return all(word[2 * j] == word[2 * j + 1] for j in range((m - r) // 2))

    if is_target(ids):
        return t
    conj = table.conj_root
    seen = {ids}
    frontier = [ids]
    while frontier:
        nxt = []
        for cur in frontier:
            for i in range(m - 1):
                x, y = cur[i], cur[i + 1]
                for img in (cur[:i] + (y, conj[y][x]) + cur[i + 2:],
                            cur[:i] + (conj[x][y], x) + cur[i + 2:]):
                    if img in seen:
                        continue
                    if is_target(img):
                        return reflection_tuple(
                            sys, [table.refl_roots[k] for k in img])
                    seen.add(img)
                    nxt.append(img)
                    if len(seen) >= cap:
                        raise CapExceededError(
                            "duplicate-form search hit the cap before the "
                            "target shape (cap too small, or a counterexample)",
                            len(seen))
        frontier = nxt
    raise AssertionError("orbit exhausted without reaching the duplicate form")
