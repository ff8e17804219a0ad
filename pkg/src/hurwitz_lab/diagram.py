"""Generalized Coxeter-Dynkin diagrams, Gram forms, and lattice utilities.

A diagram is a graph on labelled vertices whose edges carry one of four kinds.
The Gram form read off a diagram is the symmetric integer matrix with 2 on the
diagonal and off-diagonal entries -1 (single), +1 (dotted-single), -2 (double)
or +2 (dotted-double).  Dotted means the positive sign.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Matrix,
    Vector,
    canonical_sign,
    hnf,
    in_span,
    is_zero,
    mat_vec,
    signature,
    sub_vec,
    vec,
)

EDGE_KINDS = ("single", "dotted-single", "double", "dotted-double")

_EDGE_VALUE = {
    "single": -1,
    "dotted-single": 1,
    "double": -2,
    "dotted-double": 2,
}


class MalformedDiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Diagram:
    """Vertex labels plus edges (i, j, kind) indexing into the labels."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int, str], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise MalformedDiagramError("duplicate vertex labels")
        seen = set()
        for i, j, kind in self.edges:
            if kind not in EDGE_KINDS:
                raise MalformedDiagramError(f"unknown edge kind {kind!r}")
            if not (0 <= i < n and 0 <= j < n):
                raise MalformedDiagramError("edge endpoint out of range")
            if i == j:
                raise MalformedDiagramError("self-edge")
            key = frozenset((i, j))
            if key in seen:
                raise MalformedDiagramError(f"duplicate edge {i}-{j}")
            seen.add(key)

    @staticmethod
    def from_json(text: str) -> "Diagram":
        data = json.loads(text)
        return Diagram(
            vertices=tuple(str(v) for v in data["vertices"]),
            edges=tuple((int(i), int(j), str(k)) for i, j, k in data["edges"]),
        )

    def to_json(self) -> str:
        return json.dumps(
            {"vertices": list(self.vertices),
             "edges": [list(e) for e in self.edges]}
        )


@dataclass(frozen=True)
class GramForm:
    """Symmetric integer matrix with diagonal entries 2 (root coordinates)
    or 0 (radical coordinates, whose whole row must vanish)."""

    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        n = len(m)
        for i in range(n):
            if m[i][i] == 0:
                if any(m[i][j] != 0 for j in range(n)):
                    raise ValueError("zero-diagonal row must be entirely zero")
            elif m[i][i] != 2:
                raise ValueError("diagonal entry must be 2 or 0")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise ValueError("matrix not symmetric")
                if i != j and m[i][j] not in (0, 1, -1, 2, -2):
                    raise ValueError("off-diagonal entry out of range")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def signature(self) -> tuple[int, int, int]:
        """(#positive, #zero, #negative) by exact congruence diagonalization."""
        return signature(self.matrix)


@dataclass(frozen=True)
class Lattice:
    """Integer row span in Hermite normal form."""

    basis: Matrix
    dim: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Vector) -> bool:
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        return in_span(v, self.basis)


def gram_from_diagram(d: Diagram) -> GramForm:
    n = len(d.vertices)
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, kind in d.edges:
        m[i][j] = m[j][i] = _EDGE_VALUE[kind]
    return GramForm(tuple(tuple(row) for row in m))


def bilinear(g: GramForm, x: Vector, y: Vector) -> int:
    if len(x) != g.dim or len(y) != g.dim:
        raise ValueError("dimension mismatch")
    return sum(xi * v for xi, v in zip(x, mat_vec(g.matrix, y)))


def reflect(g: GramForm, root: Vector, x: Vector) -> Vector:
    """x - (x|root) root.  Requires (root|root) = 2."""
    if bilinear(g, root, root) != 2:
        raise ValueError("reflection root must have norm 2")
    c = bilinear(g, x, root)
    return sub_vec(x, tuple(c * r for r in root))


def reflection_matrix(g: GramForm, root: Vector) -> Matrix:
    """Matrix of reflect(g, root, -) acting on column coordinate vectors."""
    if bilinear(g, root, root) != 2:
        raise ValueError("reflection root must have norm 2")
    growt = mat_vec(g.matrix, root)
    n = g.dim
    return tuple(
        tuple((1 if i == j else 0) - root[i] * growt[j] for j in range(n))
        for i in range(n)
    )


def hnf_span(vectors: list[Vector]) -> Lattice:
    if not vectors:
        raise ValueError("empty vector list")
    dim = len(vectors[0])
    return Lattice(basis=hnf(vectors), dim=dim)


def lattice_equal(l1: Lattice, l2: Lattice) -> bool:
    if l1.dim != l2.dim:
        raise ValueError("ambient dimensions differ")
    return l1.basis == l2.basis


def full_lattice(dim: int) -> Lattice:
    return Lattice(basis=tuple(vec([1 if j == i else 0 for j in range(dim)])
                               for i in range(dim)), dim=dim)


# ---------------------------------------------------------------------------
# Named diagrams: finite A/D/E, and the four tubular elliptic diagrams.
# ---------------------------------------------------------------------------

def _simply_laced_edges(tag: str, n: int) -> list[tuple[int, int]]:
    """Edges of the finite Dynkin diagram, vertices 0..n-1 in Bourbaki order."""
    if tag == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if tag == "D":
        # Path 1-2-...-(n-2) with both n-1 and n attached to n-2
        # (Bourbaki: alpha_{n-1}, alpha_n hang off alpha_{n-2}).
        edges = [(i, i + 1) for i in range(n - 3)]
        edges += [(n - 3, n - 2), (n - 3, n - 1)]
        return edges
    if tag == "E":
        # Bourbaki: path 1-3-4-5-...-n with 2 attached to 4.
        edges = [(0, 2), (1, 3)]
        edges += [(i, i + 1) for i in range(2, n - 1)]
        return edges
    raise ValueError(f"unknown family {tag}")


FINITE_TAGS = {
    "A2": ("A", 2), "A3": ("A", 3), "A4": ("A", 4), "A5": ("A", 5),
    "D4": ("D", 4), "D5": ("D", 5), "D6": ("D", 6),
    "E6": ("E", 6), "E7": ("E", 7), "E8": ("E", 8),
}

# Marks: coefficients of the highest root over the simple roots, and the
# vertex (1-based) that the affine node attaches to.
MARKS = {
    "D4": (1, 2, 1, 1),
    "D5": (1, 2, 2, 1, 1),
    "D6": (1, 2, 2, 2, 1, 1),
    "E6": (1, 2, 2, 3, 2, 1),
    "E7": (2, 2, 3, 4, 3, 2, 1),
    "E8": (2, 3, 4, 6, 5, 4, 3, 2),
}

AFFINE_ATTACH = {"D4": (2,), "E6": (2,), "E7": (1,), "E8": (8,)}

# Max-mark vertex of the tubular types; the elliptic basis doubles it.
T_INDEX = {"D4": 2, "E6": 4, "E7": 4, "E8": 4}

ELLIPTIC_TAGS = ("D4.1.1", "E6.1.1", "E7.1.1", "E8.1.1")


def finite_diagram(tag: str) -> Diagram:
    fam, n = _family_of(tag)
    labels = tuple(str(i + 1) for i in range(n))
    edges = tuple((i, j, "single") for i, j in _simply_laced_edges(fam, n))
    return Diagram(vertices=labels, edges=edges)


def _family_of(tag: str) -> tuple[str, int]:
    fam = tag[0]
    n = int(tag[1:])
    if fam == "A" and n >= 1:
        return fam, n
    if fam == "D" and n >= 4:
        return fam, n
    if fam == "E" and n in (6, 7, 8):
        return fam, n
    raise ValueError(f"unsupported finite type {tag!r}")


def elliptic_diagram(tag: str) -> Diagram:
    """Tubular elliptic diagram: affine diagram plus the doubled max vertex.

    Vertices are labelled 0..n (affine) plus 't*'.  The starred vertex gets a
    single edge to every neighbour of t and a dotted double edge to t itself.
    """
    if tag not in ELLIPTIC_TAGS:
        raise ValueError(f"unsupported elliptic type {tag!r}")
    base = tag.split(".")[0]
    fam, n = _family_of(base)
    t = T_INDEX[base]
    finite_edges = _simply_laced_edges(fam, n)
    # Vertex order: alpha_1..alpha_n at 0..n-1, alpha_0 at n, starred at n+1.
    labels = tuple(str(i + 1) for i in range(n)) + ("0", f"{t}*")
    edges: list[tuple[int, int, str]] = [(i, j, "single") for i, j in finite_edges]
    a0 = n
    star = n + 1
    for v in AFFINE_ATTACH[base]:
        edges.append((v - 1, a0, "single"))
    t0 = t - 1
    neighbours = {j for i, j in finite_edges if i == t0}
    neighbours |= {i for i, j in finite_edges if j == t0}
    if (t - 1) in {v - 1 for v in AFFINE_ATTACH[base]}:
        neighbours.add(a0)
    for v in sorted(neighbours):
        edges.append((v, star, "single"))
    edges.append((t0, star, "dotted-double"))
    return Diagram(vertices=labels, edges=tuple(edges))


def named_diagram(tag: str) -> Diagram:
    if tag in ELLIPTIC_TAGS:
        return elliptic_diagram(tag)
    return finite_diagram(tag)


def canonical_root(v: Vector) -> Vector:
    """Representative of {v, -v} with positive first nonzero coordinate."""
    if is_zero(v):
        raise ValueError("zero vector has no root representative")
    return canonical_sign(v)
