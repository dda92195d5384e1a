"""Bipartite multigraphs and their component structure.

Vertices are numbered left part first (``0 .. n_left-1``) and then the right
part (``n_left .. n_left+n_right-1``).  Parallel edges are kept.

A connected multigraph with ``v`` vertices and ``e`` edges is a tree when
``e = v - 1``, unicyclic when ``e = v`` and complex (more than one cycle)
when ``e >= v + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

__all__ = [
    "BipartiteMultigraph",
    "ComponentStats",
    "UnionFind",
    "component_census",
    "component_stats",
    "find_complex_component",
    "giant_component_fraction",
    "has_complex_component",
]

Kind = Literal["tree", "unicyclic", "complex"]


@dataclass(frozen=True, eq=False)
class BipartiteMultigraph:
    n_left: int
    n_right: int
    left: np.ndarray
    right: np.ndarray
    # Trailing right vertices that belong to U' (degree <= 1 in G').
    n_primed: int = 0

    def __post_init__(self):
        left = np.ascontiguousarray(self.left, dtype=np.int64)
        right = np.ascontiguousarray(self.right, dtype=np.int64)
        if left.shape != right.shape or left.ndim != 1:
            raise ValueError("left and right endpoint arrays must be 1-d and equal length")
        if left.size and (left.min() < 0 or left.max() >= self.n_left):
            raise ValueError("left endpoint out of range")
        if right.size and (right.min() < 0 or right.max() >= self.n_right):
            raise ValueError("right endpoint out of range")
        if not 0 <= self.n_primed <= self.n_right:
            raise ValueError("n_primed must lie in [0, n_right]")
        left.setflags(write=False)
        right.setflags(write=False)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def n_vertices(self) -> int:
        return self.n_left + self.n_right

    @property
    def n_edges(self) -> int:
        return int(self.left.size)

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.left.tolist(), self.right.tolist()))

    def right_degrees(self) -> np.ndarray:
        return np.bincount(self.right, minlength=self.n_right)

    def left_degrees(self) -> np.ndarray:
        return np.bincount(self.left, minlength=self.n_left)

    def without_primed(self) -> "BipartiteMultigraph":
        """Drop the U' vertices and every edge touching them."""
        keep_right = self.n_right - self.n_primed
        mask = self.right < keep_right
        return BipartiteMultigraph(self.n_left, keep_right, self.left[mask], self.right[mask])


class UnionFind:
    """Disjoint sets that also track vertex and edge counts per root."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.vertices = [1] * size
        self.edges = [0] * size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def add_edge(self, u: int, v: int) -> int:
        """Merge the endpoints' sets, count the edge, return the new root."""
        ru, rv = self.find(u), self.find(v)
        if ru != rv:
            if self.vertices[ru] < self.vertices[rv]:
                ru, rv = rv, ru
            self.parent[rv] = ru
            self.vertices[ru] += self.vertices[rv]
            self.edges[ru] += self.edges[rv]
        self.edges[ru] += 1
        return ru

    def excess(self, x: int) -> int:
        r = self.find(x)
        return self.edges[r] - self.vertices[r]


def find_complex_component(graph: BipartiteMultigraph) -> int | None:
    """Root vertex of some complex component, or None if there is none.

    Stops at the first edge that pushes a component's excess to one.
    """
    uf = UnionFind(graph.n_vertices)
    offset = graph.n_left
    for u, v in zip(graph.left.tolist(), graph.right.tolist()):
        root = uf.add_edge(u, v + offset)
        if uf.edges[root] > uf.vertices[root]:
            return root
    return None


def has_complex_component(graph: BipartiteMultigraph) -> bool:
    return find_complex_component(graph) is not None


@dataclass(frozen=True)
class ComponentStats:
    label: int
    vertices: int
    edges: int

    @property
    def kind(self) -> Kind:
        if self.edges <= self.vertices - 1:
            return "tree"
        if self.edges == self.vertices:
            return "unicyclic"
        return "complex"


def _labels(graph: BipartiteMultigraph) -> tuple[int, np.ndarray]:
    nv = graph.n_vertices
    adj = coo_matrix(
        (np.ones(graph.n_edges, dtype=np.int32), (graph.left, graph.right + graph.n_left)),
        shape=(nv, nv),
    )
    return connected_components(adj, directed=False)


def component_stats(graph: BipartiteMultigraph, include_isolated: bool = False) -> list[ComponentStats]:
    """Vertex and edge counts (with multiplicity) for every component.

    Labels come from scipy's connected-components routine, so this is an
    independent route from the union-find used by the complex test.
    """
    count, labels = _labels(graph)
    vcount = np.bincount(labels, minlength=count)
    ecount = np.bincount(labels[graph.left], minlength=count)
    out = []
    for lab in range(count):
        if vcount[lab] == 1 and ecount[lab] == 0 and not include_isolated:
            continue
        out.append(ComponentStats(lab, int(vcount[lab]), int(ecount[lab])))
    return out


def component_census(graph: BipartiteMultigraph) -> dict[str, int]:
    """Counts of trees, unicyclic and complex components plus isolated vertices."""
    census = {"tree": 0, "unicyclic": 0, "complex": 0, "isolated": 0}
    for comp in component_stats(graph, include_isolated=True):
        if comp.edges == 0:
            census["isolated"] += 1
        else:
            census[comp.kind] += 1
    return census


def giant_component_fraction(graph: BipartiteMultigraph) -> float:
    """Largest component size over total vertex count."""
    if graph.n_vertices == 0:
        return 0.0
    _, labels = _labels(graph)
    return float(np.bincount(labels).max()) / graph.n_vertices
