"""Henneberg extensions and reductions of d-tree decompositions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .multigraph import EdgeId, MultiGraph, VertexId
from .sparsity import TreeDecomposition, verify_decomposition


class StepError(ValueError):
    """Raised for a malformed or inapplicable extension step."""


@dataclass(frozen=True)
class TreeMove:
    """The part of an extension step acting on one tree.

    ``deleted`` lists ``(edge_id, u, w)`` for the edges F_i removed from the
    tree; ``added`` lists ``(edge_id, neighbour)`` for the new edges at the
    new vertex.  A valid move has ``len(added) == len(deleted) + 1``.
    """

    tree: int
    deleted: tuple[tuple[EdgeId, VertexId, VertexId], ...] = ()
    added: tuple[tuple[EdgeId, VertexId], ...] = ()

    @property
    def k(self) -> int:
        return len(self.deleted)

    @property
    def neighbours(self) -> list[VertexId]:
        return sorted(w for _, w in self.added)


@dataclass(frozen=True)
class ExtensionStep:
    new_vertex: VertexId
    per_tree: tuple[TreeMove, ...]

    @property
    def j(self) -> int:
        return sum(m.k for m in self.per_tree)

    def move(self, tree: int) -> TreeMove:
        for m in self.per_tree:
            if m.tree == tree:
                return m
        raise StepError(f"step has no move for tree {tree}")

    def deleted_ids(self) -> set[EdgeId]:
        return {eid for m in self.per_tree for eid, _, _ in m.deleted}


@dataclass(frozen=True)
class ConstructionSequence:
    """Steps that rebuild ``target`` from the single vertex ``root``."""

    d: int
    root: VertexId
    steps: tuple[ExtensionStep, ...]
    target: TreeDecomposition = field(compare=False)

    def replay(self) -> list[TreeDecomposition]:
        """All intermediate decompositions, starting at the root K1."""
        dec = single_vertex(self.root, self.d)
        out = [dec]
        for step in self.steps:
            dec = extend(dec, step)
            out.append(dec)
        return out


def single_vertex(v: VertexId = 0, d: int = 2) -> TreeDecomposition:
    return TreeDecomposition(MultiGraph(frozenset({v}), {}), d, {})


def _is_spanning_tree(g: MultiGraph, dec_edges: list[EdgeId]) -> bool:
    sub = MultiGraph(g.vertices, {e: g.edges[e] for e in dec_edges})
    return len(dec_edges) == g.num_vertices - 1 and len(sub.connected_components()) == 1


def extend(dec: TreeDecomposition, step: ExtensionStep) -> TreeDecomposition:
    """Apply a d-tree j-extension."""
    g = dec.graph
    v = step.new_vertex
    if v in g.vertices or v < 0:
        raise StepError(f"new vertex {v} is not fresh")
    if sorted(m.tree for m in step.per_tree) != list(range(1, dec.d + 1)):
        raise StepError("step needs exactly one move per tree")
    if not 0 <= step.j <= dec.d - 1:
        raise StepError(f"j={step.j} outside 0..{dec.d - 1}")
    edges = dict(g.edges)
    assignment = dict(dec.assignment)
    for m in step.per_tree:
        if len(m.added) != m.k + 1:
            raise StepError(f"tree {m.tree} needs {m.k + 1} new edges, got {len(m.added)}")
        for eid, a, b in m.deleted:
            if eid not in edges or assignment.get(eid) != m.tree:
                raise StepError(f"edge {eid} is not in tree {m.tree}")
            if set(edges[eid]) != {a, b}:
                raise StepError(f"edge {eid} does not join {a} and {b}")
            del edges[eid]
            del assignment[eid]
    for m in step.per_tree:
        for eid, w in m.added:
            if eid in edges or eid < 0:
                raise StepError(f"edge id {eid} is already in use")
            if w not in g.vertices:
                raise StepError(f"neighbour {w} is not an existing vertex")
            edges[eid] = (v, w)
            assignment[eid] = m.tree
    new = TreeDecomposition(MultiGraph(g.vertices | {v}, edges), dec.d, assignment)
    for m in step.per_tree:
        if not _is_spanning_tree(new.graph, list(new.tree_edges(m.tree))):
            raise StepError(f"tree {m.tree} is not a spanning tree after the step")
    return new


def find_reducible_vertex(dec: TreeDecomposition) -> VertexId:
    """Lowest vertex id with degree between d and 2d-1."""
    return reducible_vertices(dec)[0]


def reducible_vertices(dec: TreeDecomposition) -> list[VertexId]:
    g = dec.graph
    if g.num_vertices < 2:
        raise StepError("a single vertex cannot be reduced")
    found = [v for v in sorted(g.vertices) if dec.d <= g.degree(v) <= 2 * dec.d - 1]
    if not found:
        raise StepError("no vertex of degree d..2d-1; the input is not a tree decomposition")
    return found


def reduce(dec: TreeDecomposition, v: VertexId) -> tuple[TreeDecomposition, ExtensionStep]:
    """Remove ``v`` and reconnect each tree by a path over its neighbours.

    Returns the smaller decomposition and the step that rebuilds ``dec``
    from it exactly, including edge ids.
    """
    g = dec.graph
    if g.num_vertices < 2:
        raise StepError("a single vertex cannot be reduced")
    deg = g.degree(v)
    if not dec.d <= deg <= 2 * dec.d - 1:
        raise StepError(f"degree {deg} of vertex {v} outside {dec.d}..{2 * dec.d - 1}")
    incident = set(g.incident_edges(v))
    edges = {e: pr for e, pr in g.edges.items() if e not in incident}
    assignment = {e: t for e, t in dec.assignment.items() if e not in incident}
    next_id = g.next_edge_id()
    moves = []
    for i in range(1, dec.d + 1):
        added = sorted(
            ((e, g.other_end(e, v)) for e in incident if dec.assignment[e] == i),
            key=lambda a: (a[1], a[0]),
        )
        if not added:
            raise StepError(f"vertex {v} has no edge in tree {i}")
        nbrs = [w for _, w in added]
        deleted = []
        for a, b in zip(nbrs, nbrs[1:]):
            edges[next_id] = (a, b)
            assignment[next_id] = i
            deleted.append((next_id, a, b))
            next_id += 1
        moves.append(TreeMove(i, tuple(deleted), tuple(added)))
    smaller = TreeDecomposition(MultiGraph(g.vertices - {v}, edges), dec.d, assignment)
    return smaller, ExtensionStep(v, tuple(moves))


def build_sequence(dec: TreeDecomposition, seed: int | None = None) -> ConstructionSequence:
    """Reduce ``dec`` to a single vertex and record the inverse steps.

    By default the lowest reducible vertex is taken; a ``seed`` picks a
    random reducible vertex instead, giving alternative sequences.
    """
    if not verify_decomposition(dec):
        raise StepError("input is not a valid tree decomposition")
    rng = random.Random(seed) if seed is not None else None
    steps = []
    cur = dec
    while cur.graph.num_vertices > 1:
        cands = reducible_vertices(cur)
        v = cands[0] if rng is None else rng.choice(cands)
        cur, step = reduce(cur, v)
        steps.append(step)
    (root,) = cur.graph.vertices
    return ConstructionSequence(dec.d, root, tuple(reversed(steps)), dec)


def relabel_edges(dec: TreeDecomposition) -> TreeDecomposition:
    """Renumber edges densely from 0, keeping their relative order."""
    order = sorted(dec.graph.edges)
    new_id = {e: k for k, e in enumerate(order)}
    g = MultiGraph(dec.graph.vertices, {new_id[e]: dec.graph.edges[e] for e in order})
    return TreeDecomposition(g, dec.d, {new_id[e]: dec.assignment[e] for e in order})


def random_extension(
    dec: TreeDecomposition, rng: random.Random, j: int | None = None
) -> ExtensionStep:
    """A random j-extension of ``dec`` adding the next free vertex id."""
    g = dec.graph
    d = dec.d
    v = g.next_vertex_id()
    tree_size = g.num_vertices - 1
    if j is None:
        j = rng.randint(0, d - 1)
    j = min(j, tree_size * d)
    ks = [0] * d
    for _ in range(j):
        open_trees = [i for i in range(d) if ks[i] < tree_size]
        ks[rng.choice(open_trees)] += 1
    next_id = g.next_edge_id()
    moves = []
    for i in range(1, d + 1):
        tree = list(dec.tree_edges(i))
        dropped = sorted(rng.sample(tree, ks[i - 1]))
        rest = MultiGraph(g.vertices, {e: g.edges[e] for e in tree if e not in dropped})
        added = []
        for comp in rest.connected_components():
            added.append((next_id, rng.choice(sorted(comp))))
            next_id += 1
        deleted = tuple((e, *g.edges[e]) for e in dropped)
        moves.append(TreeMove(i, deleted, tuple(added)))
    return ExtensionStep(v, tuple(moves))


def random_decomposition(n: int, d: int = 2, seed: int = 0) -> TreeDecomposition:
    """A random d-tree decomposition on vertices ``0..n-1``.

    Built by ``n - 1`` random extensions from K1, then relabelled so edge
    ids are ``0..|E|-1``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    dec = single_vertex(0, d)
    for _ in range(n - 1):
        dec = extend(dec, random_extension(dec, rng))
    return relabel_edges(dec)
