"""Loop-free multi-graphs with stable integer edge ids."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

VertexId = int
EdgeId = int
Pair = tuple[VertexId, VertexId]


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph queries."""


def pair_key(u: VertexId, v: VertexId) -> Pair:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class MultiGraph:
    """A finite loop-free multi-graph.

    Parallel copies of a vertex pair are distinct edges with their own ids.
    Instances are immutable; every operation that changes the graph returns
    a new one.
    """

    vertices: frozenset[VertexId]
    edges: Mapping[EdgeId, Pair] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        normalised: dict[EdgeId, Pair] = {}
        for eid in sorted(self.edges):
            u, v = self.edges[eid]
            if eid < 0:
                raise GraphError(f"negative edge id {eid}")
            if u == v:
                raise GraphError(f"edge {eid} is a loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge {eid} has an endpoint outside the vertex set")
            normalised[eid] = pair_key(u, v)
        object.__setattr__(self, "edges", normalised)
        if any(v < 0 for v in self.vertices):
            raise GraphError("vertex ids must be non-negative")

    @classmethod
    def from_edges(
        cls, edges: Iterable[Pair], vertices: Iterable[VertexId] | None = None
    ) -> MultiGraph:
        """Build a graph numbering the given edges 0, 1, 2, ..."""
        edge_list = list(edges)
        verts = set(vertices) if vertices is not None else set()
        for u, v in edge_list:
            verts.update((u, v))
        return cls(frozenset(verts), dict(enumerate(edge_list)))

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self.edges.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.vertices == other.vertices and dict(self.edges) == dict(other.edges)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def _incidence(self) -> dict[VertexId, tuple[EdgeId, ...]]:
        inc: dict[VertexId, list[EdgeId]] = {v: [] for v in self.vertices}
        for eid, (u, v) in self.edges.items():
            inc[u].append(eid)
            inc[v].append(eid)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def _pairs(self) -> dict[Pair, tuple[EdgeId, ...]]:
        classes: dict[Pair, list[EdgeId]] = defaultdict(list)
        for eid, pr in self.edges.items():
            classes[pr].append(eid)
        return {pr: tuple(es) for pr, es in sorted(classes.items())}

    def _check_vertex(self, v: VertexId) -> None:
        if v not in self.vertices:
            raise GraphError(f"unknown vertex {v}")

    def incident_edges(self, v: VertexId) -> tuple[EdgeId, ...]:
        self._check_vertex(v)
        return self._incidence[v]

    def other_end(self, eid: EdgeId, v: VertexId) -> VertexId:
        a, b = self.edges[eid]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an endpoint of edge {eid}")

    def degree(self, v: VertexId) -> int:
        """Number of incident edges, counting parallel copies separately."""
        return len(self.incident_edges(v))

    def neighbours(self, v: VertexId) -> frozenset[VertexId]:
        return frozenset(self.other_end(e, v) for e in self.incident_edges(v))

    def min_degree(self) -> int:
        if not self.vertices:
            raise GraphError("minimum degree of the empty graph is undefined")
        return min(len(self._incidence[v]) for v in self.vertices)

    def edges_between(self, u: VertexId, v: VertexId) -> tuple[EdgeId, ...]:
        return self._pairs.get(pair_key(u, v), ())

    def multiplicity(self, u: VertexId, v: VertexId) -> int:
        return len(self.edges_between(u, v))

    def pair_classes(self) -> dict[Pair, tuple[EdgeId, ...]]:
        """Map each adjacent vertex pair to its parallel copies, in id order."""
        return dict(self._pairs)

    def induced_edge_count(self, X: Iterable[VertexId]) -> int:
        """Number of edges with both endpoints in the nonempty set ``X``."""
        xs = set(X)
        if not xs:
            raise GraphError("induced_edge_count needs a nonempty vertex set")
        unknown = xs - self.vertices
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)}")
        return sum(1 for u, v in self.edges.values() if u in xs and v in xs)

    def next_edge_id(self) -> EdgeId:
        return max(self.edges, default=-1) + 1

    def next_vertex_id(self) -> VertexId:
        return max(self.vertices, default=-1) + 1

    def without_edges(self, eids: Iterable[EdgeId]) -> MultiGraph:
        drop = set(eids)
        return MultiGraph(self.vertices, {e: p for e, p in self.edges.items() if e not in drop})

    def connected_components(self) -> list[frozenset[VertexId]]:
        parent = {v: v for v in self.vertices}

        def find(a: VertexId) -> VertexId:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges.values():
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups: dict[VertexId, set[VertexId]] = defaultdict(set)
        for v in self.vertices:
            groups[find(v)].add(v)
        return sorted((frozenset(g) for g in groups.values()), key=min)


def parallel_components(
    g: MultiGraph, excluded: Iterable[EdgeId] = ()
) -> list[frozenset[VertexId]]:
    """Classes of vertices linked by chains of parallel edges.

    Two vertices are related when they are equal or joined by a sequence of
    vertex pairs each carrying at least two edges of ``g`` minus ``excluded``.
    A pair left with a single copy does not link its endpoints.
    """
    excluded = set(excluded)
    unknown = excluded - set(g.edges)
    if unknown:
        raise GraphError(f"unknown excluded edges {sorted(unknown)}")
    links: list[Pair] = []
    for pr, eids in g.pair_classes().items():
        if sum(1 for e in eids if e not in excluded) >= 2:
            links.append(pr)
    return MultiGraph(g.vertices, dict(enumerate(links))).connected_components()


def class_of(classes: list[frozenset[VertexId]], v: VertexId) -> frozenset[VertexId]:
    for c in classes:
        if v in c:
            return c
    raise GraphError(f"vertex {v} is in no class")


def contract_vertex_pair(
    g: MultiGraph, y: VertexId, z: VertexId
) -> tuple[MultiGraph, dict[VertexId, VertexId]]:
    """Identify ``y`` and ``z`` into a fresh vertex, dropping every yz edge.

    Returns the contracted graph and the map from old to new vertex ids.
    Edge ids of surviving edges are kept.
    """
    if y == z:
        raise GraphError("cannot contract a vertex with itself")
    g._check_vertex(y)
    g._check_vertex(z)
    dropped = set(g.edges_between(y, z))
    if not dropped:
        raise GraphError(f"no edge joins {y} and {z}")
    w0 = g.next_vertex_id()
    vmap = {v: (w0 if v in (y, z) else v) for v in g.vertices}
    edges = {
        e: (vmap[u], vmap[v]) for e, (u, v) in g.edges.items() if e not in dropped
    }
    verts = (g.vertices - {y, z}) | {w0}
    return MultiGraph(frozenset(verts), edges), vmap
