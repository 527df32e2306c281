"""(d,d)-tightness checks and spanning-tree packings of multi-graphs."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Literal, Mapping

import numpy as np

from .multigraph import EdgeId, GraphError, MultiGraph, VertexId

EXHAUSTIVE_LIMIT = 20
ENUMERATION_LIMIT = 8


class DecompositionError(ValueError):
    """Raised when an assignment is not a valid tree decomposition."""


@dataclass(frozen=True)
class TreeDecomposition:
    """A multi-graph whose edges are split into ``d`` spanning trees.

    ``assignment`` maps every edge id to a tree index in ``1..d``.  The
    constructor only checks that the assignment is total and in range; use
    :func:`verify_decomposition` for the spanning-tree property.
    """

    graph: MultiGraph
    d: int
    assignment: Mapping[EdgeId, int]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise DecompositionError("d must be positive")
        assignment = {e: int(self.assignment[e]) for e in sorted(self.assignment)}
        if set(assignment) != set(self.graph.edges):
            raise DecompositionError("assignment must cover exactly the edges of the graph")
        bad = [e for e, t in assignment.items() if not 1 <= t <= self.d]
        if bad:
            raise DecompositionError(f"tree index out of range on edges {bad}")
        object.__setattr__(self, "assignment", assignment)

    def __hash__(self) -> int:
        return hash((self.graph, self.d, tuple(self.assignment.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreeDecomposition):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.d == other.d
            and dict(self.assignment) == dict(other.assignment)
        )

    def tree_edges(self, i: int) -> tuple[EdgeId, ...]:
        return tuple(e for e, t in self.assignment.items() if t == i)

    def tree_degree(self, v: VertexId, i: int) -> int:
        return sum(1 for e in self.graph.incident_edges(v) if self.assignment[e] == i)

    def tree_neighbours(self, v: VertexId, i: int) -> list[VertexId]:
        return sorted(
            self.graph.other_end(e, v)
            for e in self.graph.incident_edges(v)
            if self.assignment[e] == i
        )

    def trees_of_pair(self, u: VertexId, v: VertexId) -> tuple[int, ...]:
        """Sorted tree indices carried by the copies of the pair ``uv``."""
        return tuple(sorted(self.assignment[e] for e in self.graph.edges_between(u, v)))


@dataclass(frozen=True)
class TightnessCertificate:
    verdict: Literal["tight", "violating"]
    witness: frozenset[VertexId] | None = None
    reason: str = ""

    @property
    def tight(self) -> bool:
        return self.verdict == "tight"


def _acyclic_spanning(vertices: frozenset[VertexId], pairs: list[tuple[VertexId, VertexId]]) -> bool:
    if len(pairs) != len(vertices) - 1:
        return False
    parent = {v: v for v in vertices}

    def find(a: VertexId) -> VertexId:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def verify_decomposition(dec: TreeDecomposition) -> bool:
    """True iff every tree class is a spanning tree of the graph."""
    g = dec.graph
    if not g.vertices:
        return False
    for i in range(1, dec.d + 1):
        pairs = [g.edges[e] for e in dec.tree_edges(i)]
        if not _acyclic_spanning(g.vertices, pairs):
            return False
    return True


def _count_certificate(g: MultiGraph, d: int) -> TightnessCertificate | None:
    target = d * g.num_vertices - d
    if g.num_edges > target:
        return TightnessCertificate(
            "violating", g.vertices, f"|E|={g.num_edges} exceeds d|V|-d={target}"
        )
    if g.num_edges < target:
        return TightnessCertificate(
            "violating", None, f"|E|={g.num_edges} is below d|V|-d={target}"
        )
    return None


def induced_counts(g: MultiGraph) -> tuple[list[VertexId], np.ndarray]:
    """Induced edge counts of all vertex subsets, indexed by bitmask.

    Bit ``k`` of a mask stands for the ``k``-th smallest vertex id.
    """
    order = sorted(g.vertices)
    if len(order) > EXHAUSTIVE_LIMIT:
        raise GraphError(f"subset enumeration limited to {EXHAUSTIVE_LIMIT} vertices")
    pos = {v: k for k, v in enumerate(order)}
    masks = np.arange(1 << len(order), dtype=np.int64)
    counts = np.zeros(masks.shape, dtype=np.int64)
    for (u, v), eids in g.pair_classes().items():
        m = (1 << pos[u]) | (1 << pos[v])
        counts += ((masks & m) == m) * len(eids)
    return order, counts


def _exhaustive_witness(g: MultiGraph, d: int) -> frozenset[VertexId] | None:
    order, counts = induced_counts(g)
    masks = np.arange(len(counts), dtype=np.int64)
    sizes = np.zeros(masks.shape, dtype=np.int64)
    for k in range(len(order)):
        sizes += (masks >> k) & 1
    bad = (counts > d * sizes - d) & (sizes > 0)
    if not bad.any():
        return None
    # smallest violating set, ties broken by mask value
    cand = np.flatnonzero(bad)
    best = int(cand[np.lexsort((cand, sizes[cand]))[0]])
    return frozenset(v for k, v in enumerate(order) if best >> k & 1)


class _Packing:
    """Edmonds matroid partitioning into ``d`` forests."""

    def __init__(self, g: MultiGraph, d: int) -> None:
        self.g = g
        self.d = d
        self.forest_of: dict[EdgeId, int] = {}
        self.adj: list[dict[VertexId, dict[VertexId, EdgeId]]] = [
            {v: {} for v in g.vertices} for _ in range(d + 1)
        ]

    def _path(self, i: int, s: VertexId, t: VertexId) -> list[EdgeId] | None:
        adj = self.adj[i]
        prev: dict[VertexId, tuple[VertexId, EdgeId] | None] = {s: None}
        queue = deque([s])
        while queue:
            a = queue.popleft()
            if a == t:
                break
            for b, eid in adj[a].items():
                if b not in prev:
                    prev[b] = (a, eid)
                    queue.append(b)
        if t not in prev:
            return None
        path = []
        cur = t
        while prev[cur] is not None:
            a, eid = prev[cur]  # type: ignore[misc]
            path.append(eid)
            cur = a
        return path

    def _move(self, eid: EdgeId, i: int) -> None:
        u, v = self.g.edges[eid]
        old = self.forest_of.get(eid)
        if old is not None:
            del self.adj[old][u][v]
            del self.adj[old][v][u]
        self.forest_of[eid] = i
        self.adj[i][u][v] = eid
        self.adj[i][v][u] = eid

    def insert(self, e: EdgeId) -> set[EdgeId] | None:
        """Insert ``e``; on failure return the set of labelled edges."""
        parent: dict[EdgeId, tuple[EdgeId, int] | None] = {e: None}
        queue = deque([e])
        while queue:
            f = queue.popleft()
            u, v = self.g.edges[f]
            for i in range(1, self.d + 1):
                if self.forest_of.get(f) == i:
                    continue
                path = self._path(i, u, v)
                if path is None:
                    self._augment(f, i, parent)
                    return None
                for h in path:
                    if h not in parent:
                        parent[h] = (f, i)
                        queue.append(h)
        return set(parent)

    def _augment(
        self, f: EdgeId, i: int, parent: dict[EdgeId, tuple[EdgeId, int] | None]
    ) -> None:
        while True:
            self._move(f, i)
            link = parent[f]
            if link is None:
                return
            f, i = link


def decompose(g: MultiGraph, d: int) -> TreeDecomposition | TightnessCertificate:
    """Split ``g`` into ``d`` edge-disjoint spanning trees if possible.

    Returns the decomposition, or a violating certificate when ``g`` is not
    (d,d)-tight.  Edges are inserted in id order so the result is
    reproducible.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if not g.vertices:
        raise GraphError("empty graph")
    bad = _count_certificate(g, d)
    if bad is not None:
        return bad
    packing = _Packing(g, d)
    for e in sorted(g.edges):
        failed = packing.insert(e)
        if failed is not None:
            sub = MultiGraph.from_edges(g.edges[f] for f in failed)
            comp = next(c for c in sub.connected_components() if g.edges[e][0] in c)
            return TightnessCertificate(
                "violating",
                comp,
                f"{g.induced_edge_count(comp)} edges on {len(comp)} vertices",
            )
    return TreeDecomposition(g, d, dict(packing.forest_of))


def check_tight(g: MultiGraph, d: int) -> TightnessCertificate:
    """Decide (d,d)-tightness; violating verdicts carry a witness when possible."""
    if d < 1:
        raise ValueError("d must be positive")
    if not g.vertices:
        raise GraphError("empty graph")
    bad = _count_certificate(g, d)
    if bad is not None:
        return bad
    if g.num_vertices <= EXHAUSTIVE_LIMIT:
        witness = _exhaustive_witness(g, d)
        if witness is None:
            return TightnessCertificate("tight")
        return TightnessCertificate(
            "violating",
            witness,
            f"{g.induced_edge_count(witness)} edges on {len(witness)} vertices",
        )
    result = decompose(g, d)
    if isinstance(result, TreeDecomposition):
        return TightnessCertificate("tight")
    return result


# ---------------------------------------------------------------- enumeration


def _assignments(g: MultiGraph, d: int) -> Iterator[dict[EdgeId, int]]:
    n = g.num_vertices
    edges = sorted(g.edges)
    vidx = {v: k for k, v in enumerate(sorted(g.vertices))}
    parents = [list(range(n)) for _ in range(d + 1)]
    sizes = [0] * (d + 1)
    current: dict[EdgeId, int] = {}

    def find(p: list[int], a: int) -> int:
        while p[a] != a:
            a = p[a]
        return a

    def rec(k: int) -> Iterator[dict[EdgeId, int]]:
        if k == len(edges):
            yield dict(current)
            return
        u, v = (vidx[w] for w in g.edges[edges[k]])
        for i in range(1, d + 1):
            if sizes[i] == n - 1:
                continue
            p = parents[i]
            ru, rv = find(p, u), find(p, v)
            if ru == rv:
                continue
            p[ru] = rv
            sizes[i] += 1
            current[edges[k]] = i
            yield from rec(k + 1)
            del current[edges[k]]
            sizes[i] -= 1
            p[ru] = ru

    if g.num_edges == d * (n - 1):
        yield from rec(0)


def automorphisms(g: MultiGraph) -> list[dict[VertexId, VertexId]]:
    """All multiplicity-preserving vertex permutations, by backtracking."""
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    mult = {pr: len(es) for pr, es in g.pair_classes().items()}
    result: list[dict[VertexId, VertexId]] = []
    current: dict[VertexId, VertexId] = {}
    used: set[VertexId] = set()

    def m(a: VertexId, b: VertexId) -> int:
        return mult.get((a, b) if a <= b else (b, a), 0)

    def rec(k: int) -> None:
        if k == len(order):
            result.append(dict(current))
            return
        v = order[k]
        for w in sorted(g.vertices - used):
            if g.degree(w) != g.degree(v):
                continue
            if any(m(u, v) != m(current[u], w) for u in order[:k]):
                continue
            current[v] = w
            used.add(w)
            rec(k + 1)
            used.discard(w)
            del current[v]

    rec(0)
    return result


def _canonical_key(
    g: MultiGraph,
    assignment: Mapping[EdgeId, int],
    auts: list[dict[VertexId, VertexId]],
    tree_perms: list[tuple[int, ...]],
) -> tuple:
    by_pair = {
        pr: tuple(assignment[e] for e in eids) for pr, eids in g.pair_classes().items()
    }
    best = None
    for a in auts:
        for perm in tree_perms:
            key = tuple(
                sorted(
                    (
                        (min(a[u], a[v]), max(a[u], a[v])),
                        tuple(sorted(perm[t - 1] for t in trees)),
                    )
                    for (u, v), trees in by_pair.items()
                )
            )
            if best is None or key < best:
                best = key
    return best  # type: ignore[return-value]


def enumerate_decompositions(
    g: MultiGraph, d: int, up_to_iso: bool = False, relabel_trees: bool = True
) -> list[TreeDecomposition]:
    """List every d-tree decomposition of a small multi-graph.

    With ``up_to_iso`` one representative is kept per orbit of the group
    generated by graph automorphisms, permutations of parallel copies and,
    when ``relabel_trees`` is set, permutations of the tree indices.
    """
    if g.num_vertices > ENUMERATION_LIMIT:
        raise GraphError(f"enumeration limited to {ENUMERATION_LIMIT} vertices")
    if not g.vertices:
        raise GraphError("empty graph")
    decs = [TreeDecomposition(g, d, a) for a in _assignments(g, d)]
    if not up_to_iso:
        return decs
    auts = automorphisms(g)
    perms = (
        list(itertools.permutations(range(1, d + 1)))
        if relabel_trees
        else [tuple(range(1, d + 1))]
    )
    seen: set[tuple] = set()
    reps = []
    for dec in decs:
        key = _canonical_key(g, dec.assignment, auts, perms)
        if key not in seen:
            seen.add(key)
            reps.append(dec)
    return reps
