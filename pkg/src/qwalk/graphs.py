"""Weighted directed multigraphs and their adjacency matrices.

Vertices are contiguous integers 0..n-1 (the basis-vector correspondence
used everywhere else in the package). Parallel arcs are allowed, weights
are complex, and an optional ``coin_tag`` records which coin state an arc
is associated with after a decomposition.

Self-loop convention: an undirected self-loop {v, v, w} contributes 2w to
the diagonal cell, i.e. the "add to both endpoints" rule is applied
literally even when both endpoints coincide.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError
from .linalg import ComplexMatrix, Tolerance, DEFAULT_TOL, as_matrix

__all__ = [
    "Arc",
    "Edge",
    "MultiGraph",
    "adjacency",
    "split_directed",
    "split_undirected",
    "union",
    "from_adjacency",
]


@dataclass(frozen=True)
class Arc:
    """A directed edge with tail, head, nonzero complex weight and an
    optional coin tag."""

    tail: int
    head: int
    weight: complex = 1.0
    coin_tag: int | None = None

    def __post_init__(self):
        if self.tail < 0 or self.head < 0:
            raise PreconditionError("arc endpoints must be nonnegative")
        if self.weight == 0:
            raise PreconditionError("zero-weight arcs are not stored")
        if self.coin_tag is not None and self.coin_tag < 0:
            raise PreconditionError("coin_tag must be nonnegative")


@dataclass(frozen=True)
class Edge:
    """An undirected weighted edge {u, v}."""

    u: int
    v: int
    weight: complex = 1.0

    def __post_init__(self):
        if self.u < 0 or self.v < 0:
            raise PreconditionError("edge endpoints must be nonnegative")
        if self.weight == 0:
            raise PreconditionError("zero-weight edges are not stored")


@dataclass(frozen=True)
class MultiGraph:
    """Vertex count plus arc and undirected-edge lists; parallel arcs OK."""

    n: int
    arcs: tuple[Arc, ...] = ()
    undirected: tuple[Edge, ...] = ()
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError("vertex count must be at least 1")
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "undirected", tuple(self.undirected))
        for a in self.arcs:
            if a.tail >= self.n or a.head >= self.n:
                raise PreconditionError(f"arc {a} references a vertex >= n={self.n}")
        for e in self.undirected:
            if e.u >= self.n or e.v >= self.n:
                raise PreconditionError(f"edge {e} references a vertex >= n={self.n}")
        if self.names is not None and len(self.names) != self.n:
            raise PreconditionError("names table must have one entry per vertex")


def adjacency(g: MultiGraph) -> ComplexMatrix:
    """n x n matrix with a_ij the summed weight of arcs i -> j; each
    undirected edge contributes its weight to both a_ij and a_ji."""
    a = np.zeros((g.n, g.n), dtype=np.complex128)
    for arc in g.arcs:
        a[arc.tail, arc.head] += arc.weight
    for e in g.undirected:
        a[e.u, e.v] += e.weight
        a[e.v, e.u] += e.weight
    return a


def split_directed(a: Arc, weights, tol: Tolerance = DEFAULT_TOL) -> list[Arc]:
    """Split one arc into parallel arcs whose weights sum to the original.

    Weights may be negative or complex (useful for cancelling pairs).
    Exact-zero split weights are dropped since zero arcs are not stored;
    adjacency is unaffected either way.
    """
    weights = [complex(w) for w in weights]
    total = sum(weights)
    if abs(total - a.weight) > tol.abs_eps:
        raise PreconditionError(
            f"split weights sum to {total}, expected {a.weight}")
    return [Arc(a.tail, a.head, w, a.coin_tag) for w in weights if w != 0]


def split_undirected(e: Edge) -> tuple[Arc, Arc]:
    """Replace an undirected edge by two opposite arcs, each carrying the
    full weight."""
    return Arc(e.u, e.v, e.weight), Arc(e.v, e.u, e.weight)


def union(graphs) -> MultiGraph:
    """Concatenate the edge sets of graphs sharing a vertex set.

    adjacency(union(gs)) equals the sum of the individual adjacencies.
    """
    graphs = list(graphs)
    if not graphs:
        raise PreconditionError("union of zero graphs is undefined")
    n = graphs[0].n
    for g in graphs[1:]:
        if g.n != n:
            raise PreconditionError(f"vertex-count mismatch: {g.n} != {n}")
    arcs: list[Arc] = []
    edges: list[Edge] = []
    for g in graphs:
        arcs.extend(g.arcs)
        edges.extend(g.undirected)
    return MultiGraph(n, tuple(arcs), tuple(edges))


def from_adjacency(a: ComplexMatrix) -> MultiGraph:
    """Canonical digraph preimage: one arc per nonzero entry, no
    undirected edges. Other preimages are reachable via the split
    operations."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise PreconditionError("adjacency matrix must be square")
    n = a.shape[0]
    arcs = tuple(Arc(i, j, complex(a[i, j]))
                 for i in range(n) for j in range(n) if a[i, j] != 0)
    return MultiGraph(n, arcs)
