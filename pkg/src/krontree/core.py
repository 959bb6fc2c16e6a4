"""Quivers, dimension vectors, representations, and coefficient quivers.

A quiver is a finite directed multigraph with opaque string ids for both
vertices and arrows.  Bipartite quivers carry their (sources, sinks)
partition explicitly; every arrow then runs from the source side to the
sink side.  Dimension vectors are plain dicts carried separately from the
shape, so a single shape can serve many dimension assignments.

All values are immutable after construction.  Canonical ordering, wherever
a tie needs breaking, is lexicographic over id tokens.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .linalg import Matrix, zeros

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Arrow(NamedTuple):
    id: str
    source: str
    target: str
    colour: Optional[int] = None


@dataclass(frozen=True)
class Quiver:
    """Finite directed multigraph, optionally bipartite.

    bipartition, when present, is a pair (sources, sinks) of frozensets
    covering the vertex set; arrows must run from sources to sinks.
    """

    vertices: tuple
    arrows: tuple
    bipartition: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "arrows", tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows)
        )
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate arrow ids")
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise ValueError(f"arrow {a.id} references missing vertex")
        if self.bipartition is not None:
            left, right = self.bipartition
            left, right = frozenset(left), frozenset(right)
            object.__setattr__(self, "bipartition", (left, right))
            if left & right:
                raise ValueError("bipartition sides overlap")
            if left | right != vset:
                raise ValueError("bipartition does not cover the vertex set")
            for a in self.arrows:
                if a.source not in left or a.target not in right:
                    raise ValueError(f"arrow {a.id} does not run from sources to sinks")

    @property
    def sources(self) -> frozenset:
        if self.bipartition is None:
            raise ValueError("quiver has no bipartition")
        return self.bipartition[0]

    @property
    def sinks(self) -> frozenset:
        if self.bipartition is None:
            raise ValueError("quiver has no bipartition")
        return self.bipartition[1]

    def out_arrows(self, v: str) -> list:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list:
        return [a for a in self.arrows if a.target == v]

    def arrows_at(self, v: str) -> list:
        return [a for a in self.arrows if v in (a.source, a.target)]

    def neighbours(self, v: str) -> set:
        out = set()
        for a in self.arrows:
            if a.source == v:
                out.add(a.target)
            elif a.target == v:
                out.add(a.source)
        return out

    def is_connected(self) -> bool:
        if len(self.vertices) <= 1:
            return True
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for w in self.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)

    def reverse(self) -> "Quiver":
        """All arrows reversed (ids and colours kept); bipartition swapped."""
        flipped = tuple(Arrow(a.id, a.target, a.source, a.colour) for a in self.arrows)
        bip = None
        if self.bipartition is not None:
            bip = (self.bipartition[1], self.bipartition[0])
        return Quiver(self.vertices, flipped, bip)


class NeighbourData(NamedTuple):
    """Per-vertex adjacency views of a bipartite quiver.

    n[v]: all vertices adjacent to v through arrows (dimension-blind).
    a[v]: adjacent vertices carrying positive dimension.
    r[v]: len(a[v]).
    """

    n: dict
    a: dict
    r: dict


def neighbour_data(quiver: Quiver, dims=None) -> NeighbourData:
    n = {v: frozenset(quiver.neighbours(v)) for v in quiver.vertices}
    if dims is None:
        a = dict(n)
    else:
        a = {v: frozenset(w for w in n[v] if dims.get(w, 0) > 0) for v in quiver.vertices}
    return NeighbourData(n=n, a=a, r={v: len(a[v]) for v in quiver.vertices})


def dim_total(dims: Mapping) -> int:
    return sum(dims.values())


def kronecker_type(quiver: Quiver, dims: Mapping) -> tuple:
    """(sum of source dims, sum of sink dims) of a bipartite quiver."""
    return (
        sum(dims[v] for v in quiver.sources),
        sum(dims[v] for v in quiver.sinks),
    )


def subquiver(quiver: Quiver, keep: Iterable) -> Quiver:
    """Full subquiver on the given vertices (arrows with both ends kept)."""
    keep = set(keep)
    missing = keep - set(quiver.vertices)
    if missing:
        raise ValueError(f"unknown vertices: {sorted(missing)}")
    vertices = tuple(v for v in quiver.vertices if v in keep)
    arrows = tuple(a for a in quiver.arrows if a.source in keep and a.target in keep)
    bip = None
    if quiver.bipartition is not None:
        bip = (quiver.bipartition[0] & keep, quiver.bipartition[1] & keep)
    return Quiver(vertices, arrows, bip)


def bfs_order(quiver: Quiver, root: str) -> list:
    """Vertices reachable from root, breadth first, neighbours in lex order."""
    if root not in quiver.vertices:
        raise ValueError(f"unknown root {root!r}")
    seen = {root}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in sorted(quiver.neighbours(v)):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


@dataclass(frozen=True, eq=False)
class Representation:
    """A representation of a quiver together with a chosen basis.

    matrices[arrow id] has shape dims[target] x dims[source] over exact
    rationals.  basis[vertex id] lists that vertex's basis-vector tokens;
    tokens are globally distinct so they can serve as coefficient-quiver
    vertex names.
    """

    quiver: Quiver
    dims: dict
    matrices: dict
    basis: dict

    def __post_init__(self):
        vset = set(self.quiver.vertices)
        if set(self.dims) != vset:
            raise ValueError("dims keys do not match the vertex set")
        if any(d < 0 for d in self.dims.values()):
            raise ValueError("negative dimension")
        if set(self.matrices) != {a.id for a in self.quiver.arrows}:
            raise ValueError("matrices keys do not match the arrow set")
        for a in self.quiver.arrows:
            mat = self.matrices[a.id]
            rows, cols = self.dims[a.target], self.dims[a.source]
            if len(mat) != rows or any(len(r) != cols for r in mat):
                raise ValueError(
                    f"matrix for arrow {a.id} is not {rows}x{cols}"
                )
        if set(self.basis) != vset:
            raise ValueError("basis keys do not match the vertex set")
        tokens = [b for v in self.quiver.vertices for b in self.basis[v]]
        if len(set(tokens)) != len(tokens):
            raise ValueError("basis tokens are not globally distinct")
        for v in self.quiver.vertices:
            if len(self.basis[v]) != self.dims[v]:
                raise ValueError(f"basis size at {v} does not match its dimension")

    def matrix(self, arrow_id: str) -> Matrix:
        return self.matrices[arrow_id]


def default_basis(quiver: Quiver, dims: Mapping) -> dict:
    return {v: tuple(f"{v}.{k}" for k in range(dims[v])) for v in quiver.vertices}


def unit_representation(quiver: Quiver, dims=None) -> Representation:
    """All-ones representation: every arrow matrix is filled with 1 entries.

    With the default all-ones dimension vector this realizes a tree-shaped
    quiver as the representation whose coefficient quiver is the quiver
    itself.  Zero-dimensional endpoints give empty matrices.
    """
    if dims is None:
        dims = {v: 1 for v in quiver.vertices}
    else:
        dims = dict(dims)
    matrices = {}
    for a in quiver.arrows:
        mat = zeros(dims[a.target], dims[a.source])
        for i in range(dims[a.target]):
            for j in range(dims[a.source]):
                mat[i][j] = _ONE
        matrices[a.id] = mat
    return Representation(quiver, dims, matrices, default_basis(quiver, dims))


class CoefficientArrow(NamedTuple):
    arrow: str  # originating quiver arrow id
    source: str  # basis token
    target: str  # basis token
    coefficient: Fraction


@dataclass(frozen=True)
class CoefficientQuiver:
    """Graph on basis tokens with one arrow per nonzero matrix entry."""

    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(CoefficientArrow(*a) for a in self.arrows))
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise ValueError("coefficient arrow references missing basis token")


def coefficient_quiver(rep: Representation) -> CoefficientQuiver:
    vertices = tuple(tok for v in rep.quiver.vertices for tok in rep.basis[v])
    arrows = []
    for a in rep.quiver.arrows:
        mat = rep.matrices[a.id]
        src_tokens = rep.basis[a.source]
        tgt_tokens = rep.basis[a.target]
        for r, row in enumerate(mat):
            for c, val in enumerate(row):
                if val:
                    arrows.append(CoefficientArrow(a.id, src_tokens[c], tgt_tokens[r], val))
    return CoefficientQuiver(vertices, tuple(arrows))


def is_tree(gamma: CoefficientQuiver) -> bool:
    """Connected and acyclic as an undirected multigraph.

    Parallel arrows count as a cycle, so the edge-count criterion
    len(arrows) == len(vertices) - 1 together with connectivity is exact.
    """
    nverts = len(gamma.vertices)
    if nverts == 0:
        return False
    if len(gamma.arrows) != nverts - 1:
        return False
    adj = {v: set() for v in gamma.vertices}
    for a in gamma.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen = {gamma.vertices[0]}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == nverts


def _fresh_id(candidate: str, taken: set) -> str:
    while candidate in taken:
        candidate = candidate + "+"
    return candidate


def glue_renaming(q0: Quiver, j0: str, q1: Quiver, j1: str):
    """Glue two bipartite quivers by identifying the sinks j0 and j1.

    Returns (glued quiver, vertex rename map for q1).  The identified sink
    keeps j0's id.  Other q1 ids colliding with q0's get "+" appended until
    free; arrow ids are renamed the same way.
    """
    if q0.bipartition is None or q1.bipartition is None:
        raise ValueError("glueing needs bipartite quivers")
    if j0 not in q0.sinks:
        raise ValueError(f"{j0!r} is not a sink of the left quiver")
    if j1 not in q1.sinks:
        raise ValueError(f"{j1!r} is not a sink of the right quiver")
    taken_v = set(q0.vertices)
    vmap = {j1: j0}
    for v in q1.vertices:
        if v == j1:
            continue
        new = _fresh_id(v, taken_v)
        vmap[v] = new
        taken_v.add(new)
    taken_a = {a.id for a in q0.arrows}
    amap = {}
    for a in q1.arrows:
        new = _fresh_id(a.id, taken_a)
        amap[a.id] = new
        taken_a.add(new)
    vertices = q0.vertices + tuple(vmap[v] for v in q1.vertices if v != j1)
    arrows = q0.arrows + tuple(
        Arrow(amap[a.id], vmap[a.source], vmap[a.target], a.colour) for a in q1.arrows
    )
    left = q0.sources | frozenset(vmap[v] for v in q1.sources)
    right = q0.sinks | frozenset(vmap[v] for v in q1.sinks if v != j1)
    return Quiver(vertices, arrows, (left, right)), vmap


def glue(q0: Quiver, j0: str, q1: Quiver, j1: str) -> Quiver:
    return glue_renaming(q0, j0, q1, j1)[0]


def glue_with_dims(q0: Quiver, dims0: Mapping, j0: str, q1: Quiver, dims1: Mapping, j1: str):
    """Glue and merge dimension vectors.

    The glued sink gets dimension dims0[j0] + dims1[j1] - 1, which makes the
    dimension type of the result equal to type(q0) + type(q1) - (0, 1).
    """
    glued, vmap = glue_renaming(q0, j0, q1, j1)
    dims = dict(dims0)
    for v, new in vmap.items():
        if v == j1:
            continue
        dims[new] = dims1[v]
    dims[j0] = dims0[j0] + dims1[j1] - 1
    if dims[j0] < 0:
        raise ValueError("glueing vertex would get negative dimension")
    return glued, dims


def boundary_quivers(quiver: Quiver) -> list:
    """All proper boundary subquivers of a connected bipartite quiver.

    A boundary subquiver is generated by a source subset I' such that
    exactly one source of I' shares exactly one sink with the complement's
    sinks and every other source of I' shares none.  Proper means minimal:
    it contains no smaller boundary subquiver.  A quiver that is a single
    star has no proper boundary quiver (the complement would be empty).
    """
    if quiver.bipartition is None:
        raise ValueError("boundary quivers need a bipartite quiver")
    nb = neighbour_data(quiver)
    srcs = sorted(quiver.sources)
    found = []
    for mask in range(1, (1 << len(srcs)) - 1):
        inside = [srcs[k] for k in range(len(srcs)) if mask >> k & 1]
        outside_sinks = set()
        for k, s in enumerate(srcs):
            if not mask >> k & 1:
                outside_sinks |= nb.n[s]
        hits = [len(nb.n[s] & outside_sinks) for s in inside]
        if sorted(hits) == [0] * (len(inside) - 1) + [1]:
            found.append(frozenset(inside))
    minimal = [
        iset for iset in found if not any(other < iset for other in found)
    ]
    out = []
    for iset in sorted(minimal, key=lambda s: tuple(sorted(s))):
        verts = set(iset)
        for s in iset:
            verts |= nb.n[s]
        out.append(subquiver(quiver, verts))
    return out


def restrict_support(rep: Representation) -> Representation:
    """The representation restricted to its positive-dimension vertices."""
    keep = {v for v in rep.quiver.vertices if rep.dims[v] > 0}
    q = subquiver(rep.quiver, keep)
    dims = {v: rep.dims[v] for v in q.vertices}
    matrices = {a.id: rep.matrices[a.id] for a in q.arrows}
    basis = {v: rep.basis[v] for v in q.vertices}
    return Representation(q, dims, matrices, basis)
