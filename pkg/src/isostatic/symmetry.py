"""Reflection-symmetric 2-tree decompositions and their realisations.

The symmetry is an involution ``theta`` on the vertices that maps each tree
onto itself.  Realisations use the reflection in the y-axis, so a vertex
``v`` and its image ``theta[v]`` sit at mirrored points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .geometry import Placement, Point
from .henneberg import ExtensionStep, TreeMove, extend, reduce, single_vertex
from .multigraph import EdgeId, MultiGraph, VertexId, contract_vertex_pair, parallel_components
from .realise2d import (
    MAX_ATTEMPTS,
    ORIGIN,
    StepFailure,
    StepTrace,
    SymmetryHooks,
    _injective,
    _pairs_ok,
    mirror,
    place_symmetric_1_extension,
    zero_extension_candidates,
)
from .sparsity import TreeDecomposition, verify_decomposition
from .verify import is_realisation_of


class SymmetryError(ValueError):
    """A symmetry condition fails; ``clause`` names which one."""

    def __init__(self, clause: str, message: str) -> None:
        super().__init__(f"{clause}: {message}")
        self.clause = clause


@dataclass(frozen=True)
class SymmetricDecomposition:
    dec: TreeDecomposition
    theta: Mapping[VertexId, VertexId]
    edge_theta: Mapping[EdgeId, EdgeId]

    @property
    def fixed_vertices(self) -> list[VertexId]:
        return sorted(v for v, w in self.theta.items() if v == w)


def _edge_involution(dec: TreeDecomposition, theta: Mapping[VertexId, VertexId]) -> dict[EdgeId, EdgeId]:
    g = dec.graph
    out: dict[EdgeId, EdgeId] = {}
    for (u, w), eids in g.pair_classes().items():
        img = g.edges_between(theta[u], theta[w])
        if len(img) != len(eids):
            raise SymmetryError("automorphism", f"pair ({u},{w}) and its image differ in multiplicity")
        by_tree = {dec.assignment[f]: f for f in img}
        for e in eids:
            t = dec.assignment[e]
            if t not in by_tree:
                raise SymmetryError("trees", f"edge {e} in tree {t} has no image in tree {t}")
            out[e] = by_tree[t]
    return out


def validate_symmetric(dec: TreeDecomposition, theta: Mapping[VertexId, VertexId]) -> SymmetricDecomposition:
    """Check every condition on a symmetric 2-tree decomposition without fixed edges."""
    g = dec.graph
    theta = {int(k): int(v) for k, v in theta.items()}
    if dec.d != 2:
        raise SymmetryError("dimension", "symmetric decompositions use two trees")
    if set(theta) != set(g.vertices) or not set(theta.values()) <= g.vertices:
        raise SymmetryError("total", "theta must map the vertex set to itself")
    if any(theta[theta[v]] != v for v in theta):
        raise SymmetryError("involution", "theta is not an involution")
    for (u, w) in g.pair_classes():
        if {theta[u], theta[w]} == {u, w} and theta[u] != u:
            raise SymmetryError("fixed-edge", f"pair ({u},{w}) is fixed by theta")
    if not verify_decomposition(dec):
        raise SymmetryError("decomposition", "tree classes are not spanning trees")
    identity = all(theta[v] == v for v in theta)
    if g.num_vertices == 1:
        return SymmetricDecomposition(dec, theta, {})
    if identity:
        raise SymmetryError("nontrivial", "theta is the identity")
    for (u, w) in g.pair_classes():
        if {theta[u], theta[w]} == {u, w}:
            raise SymmetryError("fixed-edge", f"pair ({u},{w}) is fixed by theta")
    edge_theta = _edge_involution(dec, theta)
    fixed = [v for v in g.vertices if theta[v] == v]
    if len(fixed) != 1:
        raise SymmetryError("fixed-vertex", f"{len(fixed)} fixed vertices, expected exactly one")
    deg = g.degree(fixed[0])
    if deg < 4 or deg % 2:
        raise SymmetryError("fixed-vertex", f"fixed vertex {fixed[0]} has degree {deg}")
    return SymmetricDecomposition(dec, theta, edge_theta)


@dataclass(frozen=True)
class SymmetricStep:
    """Two mirrored extensions; ``first`` is applied before ``second``."""

    first: ExtensionStep
    second: ExtensionStep

    @property
    def j(self) -> int:
        return self.first.j


@dataclass(frozen=True)
class SymmetricSequence:
    root: VertexId
    steps: tuple[SymmetricStep, ...]
    target: SymmetricDecomposition = field(compare=False)

    def replay(self) -> list[SymmetricDecomposition]:
        sd = symmetric_single_vertex(self.root)
        out = [sd]
        for step in self.steps:
            sd = sym_extend(sd, step)
            out.append(sd)
        return out


def symmetric_single_vertex(v: VertexId = 0) -> SymmetricDecomposition:
    return SymmetricDecomposition(single_vertex(v, 2), {v: v}, {})


def sym_extend(sd: SymmetricDecomposition, step: SymmetricStep) -> SymmetricDecomposition:
    a, b = step.first.new_vertex, step.second.new_vertex
    if a == b:
        raise SymmetryError("orbit", "a symmetric step adds two distinct vertices")
    mid = extend(sd.dec, step.first)
    new = extend(mid, step.second)
    theta = dict(sd.theta)
    theta[a], theta[b] = b, a
    return validate_symmetric(new, theta)


def _guard_clash(sd: SymmetricDecomposition, v: VertexId) -> tuple[VertexId, VertexId] | None:
    """The fixed pair a degree-3 reduction at ``v`` would join, if any."""
    if sd.dec.graph.degree(v) != 3:
        return None
    k_tree = 1 if sd.dec.tree_degree(v, 1) == 2 else 2
    u1, u3 = sd.dec.tree_neighbours(v, k_tree)
    if {u1, u3} == {sd.theta[u1], sd.theta[u3]}:
        return u1, u3
    return None


def sym_reduce(
    sd: SymmetricDecomposition, rng: random.Random | None = None
) -> tuple[SymmetricDecomposition, SymmetricStep]:
    """Remove the orbit of the lowest non-fixed vertex of degree 2 or 3.

    With ``rng`` a random eligible orbit whose reduction adds no fixed edge
    is taken instead.
    """
    g = sd.dec.graph
    if g.num_vertices == 1:
        raise SymmetryError("base", "K1 cannot be reduced")
    cands = [v for v in sorted(g.vertices) if sd.theta[v] != v and g.degree(v) in (2, 3)]
    if not cands:
        raise SymmetryError("degree", "no non-fixed vertex of degree 2 or 3")
    if rng is not None:
        safe = [v for v in cands if _guard_clash(sd, v) is None]
        cands = [rng.choice(safe)] if safe else cands
    v = cands[0]
    w = sd.theta[v]
    clash = _guard_clash(sd, v)
    if clash is not None:
        raise SymmetryError("no-cycle guard", f"reduction at {v} would add a fixed edge {clash}")
    mid, step_v = reduce(sd.dec, v)
    smaller, step_w = reduce(mid, w)
    theta = {u: t for u, t in sd.theta.items() if u not in (v, w)}
    return validate_symmetric(smaller, theta), SymmetricStep(step_w, step_v)


def build_sym_sequence(sd: SymmetricDecomposition, seed: int | None = None) -> SymmetricSequence:
    rng = random.Random(seed) if seed is not None else None
    steps = []
    cur = sd
    while cur.dec.graph.num_vertices > 1:
        cur, step = sym_reduce(cur, rng)
        steps.append(step)
    (root,) = cur.dec.graph.vertices
    return SymmetricSequence(root, tuple(reversed(steps)), sd)


def sym_parallel_components(
    g: MultiGraph, theta: Mapping[VertexId, VertexId], excluded: set[EdgeId] | frozenset[EdgeId] = frozenset()
) -> list[frozenset[VertexId]]:
    """Classes of parallel-edge chains merged with their mirror images.

    Overlapping unions are merged further, so the result is a partition even
    when ``excluded`` is not closed under ``theta``.
    """
    classes = parallel_components(g, excluded)
    owner = {v: k for k, c in enumerate(classes) for v in c}
    parent = list(range(len(classes)))

    def find(k: int) -> int:
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for k, c in enumerate(classes):
        for u in c:
            a, b = find(k), find(owner[theta[u]])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, set[VertexId]] = {}
    for k, c in enumerate(classes):
        groups.setdefault(find(k), set()).update(c)
    return sorted((frozenset(s) for s in groups.values()), key=min)


# ------------------------------------------------------------ generator


def _random_sym_step(sd: SymmetricDecomposition, rng: random.Random) -> SymmetricStep:
    dec, th = sd.dec, sd.theta
    g = dec.graph
    a = g.next_vertex_id()
    b = a + 1
    nid = g.next_edge_id()
    verts = sorted(g.vertices)
    if g.num_edges == 0 or rng.random() < 0.5:
        n1, n2 = rng.choice(verts), rng.choice(verts)
        first = ExtensionStep(a, (TreeMove(1, (), ((nid, n1),)), TreeMove(2, (), ((nid + 1, n2),))))
        second = ExtensionStep(
            b, (TreeMove(1, (), ((nid + 2, th[n1]),)), TreeMove(2, (), ((nid + 3, th[n2]),)))
        )
        return SymmetricStep(first, second)
    k = rng.choice((1, 2))
    other = 3 - k
    f = rng.choice(list(dec.tree_edges(k)))
    u1, u3 = g.edges[f]
    (f_img,) = [h for h in g.edges_between(th[u1], th[u3]) if dec.assignment[h] == k]
    x = rng.choice(verts)

    def moves(vnew: VertexId, fid: EdgeId, p: VertexId, q: VertexId, xx: VertexId, base: int):
        mk = TreeMove(k, ((fid, p, q),), ((base, p), (base + 1, q)))
        mo = TreeMove(other, (), ((base + 2, xx),))
        return ExtensionStep(vnew, tuple(sorted((mk, mo), key=lambda m: m.tree)))

    first = moves(a, f, u1, u3, x, nid)
    second = moves(b, f_img, th[u1], th[u3], th[x], nid + 3)
    return SymmetricStep(first, second)


def _relabel(sd: SymmetricDecomposition) -> SymmetricDecomposition:
    order = sorted(sd.dec.graph.edges)
    new_id = {e: k for k, e in enumerate(order)}
    g = MultiGraph(sd.dec.graph.vertices, {new_id[e]: sd.dec.graph.edges[e] for e in order})
    dec = TreeDecomposition(g, 2, {new_id[e]: sd.dec.assignment[e] for e in order})
    return validate_symmetric(dec, sd.theta)


def random_symmetric_decomposition(n_orbits: int, seed: int = 0) -> SymmetricDecomposition:
    """A random member of the class on ``2 * n_orbits + 1`` vertices."""
    if n_orbits < 0:
        raise ValueError("n_orbits must be non-negative")
    rng = random.Random(seed)
    sd = symmetric_single_vertex(0)
    for _ in range(n_orbits):
        sd = sym_extend(sd, _random_sym_step(sd, rng))
    return _relabel(sd)


# ------------------------------------------------------------ realisations


@dataclass
class CsRealisation:
    placement: Placement
    sequence: SymmetricSequence
    axis: str = "y"
    trace: list[StepTrace] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    def reflection_holds(self, theta: Mapping[VertexId, VertexId]) -> bool:
        return all(mirror(self.placement[v]) == self.placement[theta[v]] for v in theta)


def contract_symmetric(
    sd: SymmetricDecomposition, y: VertexId, z: VertexId
) -> tuple[SymmetricDecomposition, dict[VertexId, VertexId]]:
    """Contract the orbit of the pair ``yz``; raises if the result leaves the class."""
    th = sd.theta
    g = sd.dec.graph
    g1, m1 = contract_vertex_pair(g, y, z)
    a, b = m1[th[y]], m1[th[z]]
    if a == b:
        vmap = m1
        g_o = g1
    else:
        g_o, m2 = contract_vertex_pair(g1, a, b)
        vmap = {u: m2[m1[u]] for u in g.vertices}
    assignment = {e: sd.dec.assignment[e] for e in g_o.edges}
    dec_o = TreeDecomposition(g_o, 2, assignment)
    theta_o: dict[VertexId, VertexId] = {}
    for u in g.vertices:
        theta_o[vmap[u]] = vmap[th[u]]
    return validate_symmetric(dec_o, theta_o), vmap


def realise_cs(sd: SymmetricDecomposition, _depth: int = 0) -> CsRealisation:
    """A certified realisation that is symmetric under reflection in the y-axis.

    The lowest-id sequence is tried first, then seeded alternatives.
    """
    last: StepFailure | None = None
    for attempt in range(MAX_ATTEMPTS):
        seq = build_sym_sequence(sd, None if attempt == 0 else attempt)
        try:
            return _realise_cs_sequence(sd, seq, _depth)
        except StepFailure as exc:
            last = exc
    assert last is not None
    raise last


def _realise_cs_sequence(sd: SymmetricDecomposition, seq: SymmetricSequence, _depth: int) -> CsRealisation:
    trace: list[StepTrace] = []
    diagnostics: list[str] = []
    pl: Placement = {seq.root: ORIGIN}
    decs = seq.replay()
    for step, before, after in zip(seq.steps, decs, decs[1:]):
        a, b = step.first.new_vertex, step.second.new_vertex
        if step.j == 0:
            pl = _place_sym_zero(pl, after, step, trace, _depth)
            continue

        def contract(y: VertexId, z: VertexId, before: SymmetricDecomposition = before):
            try:
                sd_o, vmap = contract_symmetric(before, y, z)
            except SymmetryError as exc:
                diagnostics.append(f"orbit contraction at vertex {a} left the symmetric class: {exc}")
                return None
            try:
                sub = realise_cs(sd_o, _depth + 1)
            except StepFailure:
                return None
            trace.extend(sub.trace)
            diagnostics.extend(sub.diagnostics)
            return sub.placement, vmap, sd_o.dec.graph

        hooks = SymmetryHooks(
            after.theta,
            b,
            frozenset({step.first.deleted_ids().pop(), step.second.deleted_ids().pop()}),
            contract,
        )
        pl = place_symmetric_1_extension(pl, before.dec, after.dec, step.first, hooks, trace, _depth)
    if _depth == 0:
        report = is_realisation_of(sd.dec, pl)
        if not report.isostatic:
            raise StepFailure("; ".join(report.failures))
    result = CsRealisation(pl, seq, "y", trace, diagnostics)
    if not result.reflection_holds(sd.theta):
        raise StepFailure("placement is not reflection-symmetric")
    return result


def _place_sym_zero(
    pl: Placement,
    after: SymmetricDecomposition,
    step: SymmetricStep,
    trace: list[StepTrace],
    depth: int,
) -> Placement:
    a, b = step.first.new_vertex, step.second.new_vertex
    for label, cand in zero_extension_candidates(pl, step.first):
        if cand.x == 0:
            continue
        new = dict(pl)
        new[a] = cand
        new[b] = mirror(cand)
        if _injective(new) and _pairs_ok(new, after.dec, [a, b]):
            trace.append(StepTrace(a, label, "standard", depth))
            return new
    raise StepFailure(f"no symmetric position found for vertex {a}")


__all__ = [
    "CsRealisation",
    "Point",
    "SymmetricDecomposition",
    "SymmetricSequence",
    "SymmetricStep",
    "SymmetryError",
    "build_sym_sequence",
    "contract_symmetric",
    "random_symmetric_decomposition",
    "realise_cs",
    "sym_extend",
    "sym_parallel_components",
    "sym_reduce",
    "validate_symmetric",
]
