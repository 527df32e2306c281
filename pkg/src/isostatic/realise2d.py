"""Exact plane realisations of 2-tree decompositions.

A construction sequence is replayed from a single vertex at the origin.
Each 0-extension keeps the old coordinates and places the new vertex; each
1-extension may also translate whole parallel classes by a small vector.
Every candidate placement is checked exactly before it is accepted, so the
case analysis below only proposes positions and never has to be trusted.

Working frame: before a 1-extension the placement is mapped by a signed
coordinate permutation so that the tree in which the new vertex is a leaf
is measured along the first axis and the deleted edge ``yz`` points into
the closed positive quadrant from ``z`` to ``y``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Literal, Mapping

from .geometry import Placement, Point, maximisers
from .henneberg import ConstructionSequence, ExtensionStep, build_sequence, extend
from .multigraph import (
    EdgeId,
    GraphError,
    MultiGraph,
    VertexId,
    contract_vertex_pair,
    parallel_components,
)
from .sparsity import TreeDecomposition, verify_decomposition
from .verify import FrameworkColouring, framework_colouring, is_realisation_of

__all__ = [
    "BRANCHES",
    "Placement",
    "Point",
    "RealisationResult",
    "StepFailure",
    "StepTrace",
    "place_0_extension",
    "place_1_extension",
    "realise",
    "realise_sequence",
    "reflect",
    "safe_epsilon",
]

ZERO = Fraction(0)
ONE = Fraction(1)
ORIGIN = Point(ZERO, ZERO)

# case labels that a replay can report; 0-extensions first, then 1-extensions
BRANCHES = ("0-distinct", "0-double", "2", "3A", "3B", "3C", "3D", "3D1", "3D2", "4", "5")

# how many halvings of the step sizes are tried before giving up a candidate
HALVINGS = 24
MAX_ATTEMPTS = 12


class StepFailure(RuntimeError):
    """No valid placement was found for a step."""


@dataclass(frozen=True)
class StepTrace:
    vertex: VertexId
    case: str
    method: Literal["standard", "variant", "contract", "perturb", "fallback"]
    depth: int = 0


@dataclass
class RealisationResult:
    placement: Placement
    colouring: FrameworkColouring
    sequence: ConstructionSequence
    trace: list[StepTrace] = field(default_factory=list)


# ------------------------------------------------------------ small helpers


def reflect(pl: Mapping[VertexId, Point], axis: Literal["x", "y"]) -> Placement:
    """Reflect through a coordinate axis: ``"x"`` negates y, ``"y"`` negates x."""
    if axis == "x":
        return {v: Point(p.x, -p.y) for v, p in pl.items()}
    if axis == "y":
        return {v: Point(-p.x, p.y) for v, p in pl.items()}
    raise ValueError(f"unknown axis {axis!r}")


def mirror(p: Point) -> Point:
    """Reflection in the y-axis."""
    return Point(-p.x, p.y)


def _slopes() -> Iterator[Fraction]:
    yield ZERO
    for k in range(2, 200):
        yield Fraction(1, k)
        yield Fraction(-1, k)


def _halvings(start: Fraction, n: int = HALVINGS) -> Iterator[Fraction]:
    for k in range(n):
        yield start / (1 << k)


def _injective(pl: Mapping[VertexId, Point]) -> bool:
    return len(set(pl.values())) == len(pl)


def _pairs_ok(pl: Mapping[VertexId, Point], dec: TreeDecomposition, moved: Iterable[VertexId]) -> bool:
    """Every pair at a moved vertex has exactly its prescribed colours."""
    g = dec.graph
    done: set[tuple[VertexId, VertexId]] = set()
    for u in moved:
        for w in g.neighbours(u):
            key = (u, w) if u < w else (w, u)
            if key in done:
                continue
            done.add(key)
            delta = pl[u] - pl[w]
            if delta == ORIGIN:
                return False
            if maximisers(delta) != frozenset(dec.trees_of_pair(u, w)):
                return False
    return True


def safe_epsilon(
    pl: Mapping[VertexId, Point], g: MultiGraph, excluded: Iterable[EdgeId] = ()
) -> Fraction:
    """A translation size that is harmless for any single parallel class.

    Translating one class of ``parallel_components(g, excluded)`` by a
    vector of sup norm below the returned value keeps the colour of every
    edge between different classes and keeps the placement injective.
    Pairs whose parallel copies were reduced below two by ``excluded`` are
    ignored: those ties are the ones a construction step wants to break.
    """
    pts = list(pl.items())
    if not _injective(pl):
        raise GraphError("placement is not injective")
    excluded = set(excluded)
    classes = parallel_components(g, excluded)
    cls = {v: k for k, c in enumerate(classes) for v in c}
    bound: Fraction | None = None

    def take(b: Fraction) -> None:
        nonlocal bound
        if bound is None or b < bound:
            bound = b

    for (u, w), eids in g.pair_classes().items():
        if cls[u] == cls[w]:
            continue
        live = [e for e in eids if e not in excluded]
        if not live or len(eids) >= 2:
            continue
        delta = pl[u] - pl[w]
        take(abs(abs(delta.x) - abs(delta.y)) / 2)
    for (a, pa), (b, pb) in itertools.combinations(pts, 2):
        if cls.get(a) is None or cls.get(a) != cls.get(b):
            take((pa - pb).norm() / 2)
    if bound is None:
        return ONE
    if bound <= 0:
        raise GraphError("placement is not well-positioned")
    return bound


# ------------------------------------------------------------ 0-extensions


def _zero_neighbours(step: ExtensionStep) -> tuple[VertexId, VertexId]:
    if step.j != 0 or len(step.per_tree) != 2:
        raise StepFailure("not a 2-tree 0-extension")
    return step.move(1).added[0][1], step.move(2).added[0][1]


def _zero_candidates(pl: Mapping[VertexId, Point], x: VertexId, y: VertexId) -> Iterator[tuple[str, Point]]:
    X, Y = pl[x], pl[y]
    if x != y:
        c = Point(Y.x, X.y)
        yield "0-distinct", c
        dirs = [(1, 0), (0, 1), (-1, 0), (0, -1), (2, 1), (1, 2), (-2, 1), (-1, 2),
                (2, -1), (1, -2), (-2, -1), (-1, -2)]
        scale = max((X - Y).norm(), ONE)
        for t in _halvings(scale / 4):
            for dx, dy in dirs:
                yield "0-distinct", c + (t * dx, t * dy)
    else:
        for t in _halvings(ONE, 40):
            for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                yield "0-double", X + (t * sx, t * sy)


def place_0_extension(
    pl: Mapping[VertexId, Point],
    dec_before: TreeDecomposition,
    step: ExtensionStep,
    trace: list[StepTrace] | None = None,
    _depth: int = 0,
) -> Placement:
    """Place the new vertex of a 0-extension; old coordinates stay put.

    With distinct neighbours the vertex goes to (or next to) the crossing
    of the horizontal line through its tree-1 neighbour and the vertical
    line through its tree-2 neighbour.  A double edge puts it on a line of
    slope one through the neighbour.
    """
    x, y = _zero_neighbours(step)
    after = extend(dec_before, step)
    v = step.new_vertex
    for label, cand in _zero_candidates(pl, x, y):
        new = dict(pl)
        new[v] = cand
        if _injective(new) and _pairs_ok(new, after, [v]):
            if trace is not None:
                trace.append(StepTrace(v, label, "standard", _depth))
            return new
    raise StepFailure(f"no position found for vertex {v}")


# ------------------------------------------------------------ 1-extensions


@dataclass(frozen=True)
class _Frame:
    swap: bool
    sx: int = 1
    sy: int = 1

    def to_work(self, p: Point) -> Point:
        q = p.transpose() if self.swap else p
        return Point(self.sx * q.x, self.sy * q.y)

    def from_work(self, p: Point) -> Point:
        q = Point(self.sx * p.x, self.sy * p.y)
        return q.transpose() if self.swap else q


@dataclass
class SymmetryHooks:
    """What a 1-extension needs to know to stay reflection-symmetric.

    ``theta`` is the vertex involution of the decomposition after the step,
    ``partner`` the mirror image of the new vertex, ``excluded`` the deleted
    edge orbit and ``contract`` realises the orbit-contracted decomposition
    (returning its placement and the vertex map) or returns ``None``.
    """

    theta: Mapping[VertexId, VertexId]
    partner: VertexId
    excluded: frozenset[EdgeId]
    contract: Callable[
        [VertexId, VertexId], tuple[Placement, dict[VertexId, VertexId], MultiGraph] | None
    ]


@dataclass(frozen=True)
class _Roles:
    v: VertexId
    x: VertexId
    y: VertexId
    z: VertexId
    e: EdgeId
    tree_a: int
    tree_b: int


def _one_roles(step: ExtensionStep) -> _Roles:
    if step.j != 1 or len(step.per_tree) != 2:
        raise StepFailure("not a 2-tree 1-extension")
    (mb,) = [m for m in step.per_tree if m.k == 1]
    (ma,) = [m for m in step.per_tree if m.k == 0]
    x = ma.added[0][1]
    (e, a, b), = mb.deleted
    nbrs = {w for _, w in mb.added}
    if nbrs != {a, b}:
        raise StepFailure("deleted edge must join the two new neighbours in its tree")
    if x == a:
        y, z = b, a
    elif x == b:
        y, z = a, b
    else:
        y, z = a, b
    return _Roles(step.new_vertex, x, y, z, e, ma.tree, mb.tree)


class _OneExtension:
    """State for placing one 1-extension (or its mirrored pair)."""

    def __init__(
        self,
        pl: Mapping[VertexId, Point],
        before: TreeDecomposition,
        after: TreeDecomposition,
        roles: _Roles,
        sym: SymmetryHooks | None,
        trace: list[StepTrace],
        depth: int,
    ) -> None:
        self.pl = dict(pl)
        self.before = before
        self.after = after
        self.r = roles
        self.sym = sym
        self.trace = trace
        self.depth = depth
        excluded = set(sym.excluded) if sym else {roles.e}
        self.excluded = excluded
        self.classes = parallel_components(before.graph, excluded)
        self.class_of = {u: c for c in self.classes for u in c}
        self.yz_in_a = any(
            before.assignment[f] == roles.tree_a
            for f in before.graph.edges_between(roles.y, roles.z)
            if f not in excluded
        )
        base = _Frame(swap=roles.tree_a == 2)
        d = base.to_work(self.pl[roles.y]) - base.to_work(self.pl[roles.z])
        self.frame = _Frame(base.swap, 1 if d.x >= 0 else -1, 1 if d.y >= 0 else -1)
        self.X = self.w(roles.x)
        self.Y = self.w(roles.y)
        self.Z = self.w(roles.z)
        eps = safe_epsilon(self.pl, before.graph, excluded)
        self.eps0 = eps / (4 if sym else 2)

    def w(self, u: VertexId) -> Point:
        return self.frame.to_work(self.pl[u])

    # -- materialising a candidate

    def movement(self, shifts: list[tuple[VertexId, Point]]) -> dict[VertexId, Point] | None:
        mv: dict[VertexId, Point] = {}
        for u, vec_work in shifts:
            vec = self.frame.from_work(vec_work)
            cls = self.class_of[u]
            parts = [(cls, vec)]
            if self.sym is not None:
                img = frozenset(self.sym.theta[c] for c in cls)
                if img == cls:
                    if mirror(vec) != vec:
                        return None
                else:
                    parts.append((img, mirror(vec)))
            for members, vv in parts:
                for c in members:
                    if mv.get(c, vv) != vv:
                        return None
                    mv[c] = vv
        return mv

    def build(self, shifts: list[tuple[VertexId, Point]], v_work: Point) -> Placement | None:
        mv = self.movement(shifts)
        if mv is None:
            return None
        new = dict(self.pl)
        for c, vec in mv.items():
            new[c] = self.pl[c] + vec
        pv = self.frame.from_work(v_work)
        new[self.r.v] = pv
        # the deleted pair loses a copy, so its endpoints are always rechecked
        moved = set(mv) | {self.r.v, self.r.y, self.r.z}
        if self.sym is not None:
            if mirror(pv) == pv:
                return None
            new[self.sym.partner] = mirror(pv)
            moved |= {self.sym.partner, self.sym.theta[self.r.y], self.sym.theta[self.r.z]}
        if not _injective(new) or not _pairs_ok(new, self.after, moved):
            return None
        return new

    def shifted_base(self, shifts: list[tuple[VertexId, Point]]) -> Placement | None:
        """The old vertices after ``shifts``, if that still realises ``before``."""
        mv = self.movement(shifts)
        if mv is None:
            return None
        new = dict(self.pl)
        for c, vec in mv.items():
            new[c] = self.pl[c] + vec
        if not _injective(new) or not _pairs_ok(new, self.before, set(mv)):
            return None
        return new

    # -- case dispatch

    def case(self) -> str:
        X, Y, Z = self.X, self.Y, self.Z
        if self.r.x != self.r.z:
            if not self.yz_in_a:
                return "2"
            s = Y.x - Z.x
            t = X.y - Z.y
            o = Point(Z.x + t, X.y)
            g = X.x - o.x
            if t <= 0:
                return "3A"
            if g > 0:
                return "3B"
            if g < 0:
                return "3C" if t <= s else "3D"
            return "3D1" if t > s else "3D2"
        return "5" if self.yz_in_a else "4"

    def scales(self) -> Iterator[tuple[Fraction, Fraction]]:
        for eps in _halvings(self.eps0):
            for ratio in (Fraction(1, 2), Fraction(2), Fraction(1, 8)):
                yield eps, eps * ratio

    def standard_candidates(self, case: str) -> Iterator[tuple[str, list, Point]]:
        """Yield ``(method, shifts, v)`` following the case analysis."""
        X, Y, Z = self.X, self.Y, self.Z
        r = self.r
        up = lambda eps: Point(ZERO, eps)  # noqa: E731
        down = lambda eps: Point(ZERO, -eps)  # noqa: E731
        if case == "2":
            dz = Y - Z
            cross = (X.x - Z.x) * dz.y - (X.y - Z.y) * dz.x
            if cross == 0:
                # x on the line yz: every slope meets it at x itself
                for _, delta in self.scales():
                    for sgn in (1, -1):
                        yield "variant", [], X + (sgn * delta, ZERO)
                return
            for a in _slopes():
                det = a * dz.x - dz.y
                lam = (dz.x * (Z.y - X.y) - dz.y * (Z.x - X.x)) / det
                yield "standard", [], X + (lam, lam * a)
            return
        if case in ("3A", "3B", "3C", "3D", "3D1"):
            t = X.y - Z.y
            o = Point(Z.x + t, X.y)
            for eps, delta in self.scales():
                if case == "3A":
                    yield "standard", [(r.z, up(eps))], o + (delta, ZERO)
                elif case == "3B":
                    yield "standard", [(r.z, up(eps))], Z + (ZERO, -delta)
                elif case == "3C":
                    yield "standard", [(r.y, down(eps))], Y + (ZERO, delta)
                elif case == "3D":
                    yield "standard", [(r.y, down(eps))], o + (ZERO, delta)
                else:
                    yield "standard", [(r.y, down(eps))], Point(Y.x, X.y)
            if case == "3D1":
                for eps, delta in self.scales():
                    for off in ((ZERO, delta), (ZERO, -delta), (delta, ZERO), (-delta, ZERO)):
                        yield "variant", [(r.y, down(eps))], Point(Y.x, X.y) + off
            return
        if case == "4":
            dz = Y - X
            for a in _slopes():
                lam = (dz.x - a * dz.y) / (1 - a)
                yield "standard", [], X + (lam, lam)
            return
        if case == "5":
            for eps, _ in self.scales():
                yield "standard", [(r.y, down(eps))], Y
            for eps, delta in self.scales():
                yield "variant", [(r.y, down(eps))], Y + (delta, delta)
            return
        raise AssertionError(case)

    def fallback_candidates(self) -> Iterator[list]:
        r = self.r
        dirs = [Point(ONE, ZERO), Point(-ONE, ZERO), Point(ZERO, ONE), Point(ZERO, -ONE)]
        movers = [r.z, r.y] if r.x == r.z else [r.z, r.y, r.x]
        options: list[list[tuple[VertexId, Point]]] = [[]]
        for u in movers:
            for dv in dirs:
                options.append([(u, dv)])
        for dz in dirs:
            for dy in dirs:
                options.append([(r.z, dz), (r.y, dy)])
        return iter(options)

    def fallback(self) -> Placement | None:
        compass = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1),
                   (2, 1), (1, 2), (-2, 1), (-1, 2), (2, -1), (1, -2), (-2, -1), (-1, -2)]
        units = list(self.fallback_candidates())
        for eps in _halvings(self.eps0, 16):
            for unit in units:
                shifts = [(u, dv.scale(eps)) for u, dv in unit]
                mv = self.movement(shifts)
                if mv is None:
                    continue
                moved = {c: self.pl[c] + vec for c, vec in mv.items()}
                X, Y, Z = (self.frame.to_work(moved.get(u, self.pl[u])) for u in (self.r.x, self.r.y, self.r.z))
                t = X.y - Z.y
                bases = [X, Y, Z, Point(Z.x + t, X.y), Point(Y.x, X.y), Point(Z.x, X.y),
                         Point(X.x, Y.y), Point(X.x, Z.y)]
                for ratio in (Fraction(1, 2), Fraction(2), Fraction(1, 8)):
                    delta = eps * ratio
                    for b in bases:
                        for dx, dy in compass:
                            new = self.build(shifts, b + (delta * dx, delta * dy))
                            if new is not None:
                                return new
        return None

    def record(self, case: str, method: str) -> None:
        self.trace.append(StepTrace(self.r.v, case, method, self.depth))  # type: ignore[arg-type]

    def solve(self, allow_rebuild: bool = True) -> Placement:
        case = self.case()
        if case == "3D2" and allow_rebuild:
            rebuilt = self.rebuild_by_contraction()
            method = "contract"
            if rebuilt is None:
                rebuilt = self.rebuild_by_perturbation()
                method = "perturb"
            if rebuilt is not None:
                self.record(case, method)
                sub = _OneExtension(rebuilt, self.before, self.after, self.r, self.sym,
                                    self.trace, self.depth)
                return sub.solve(allow_rebuild=False)
        if case != "3D2":
            for method, shifts, v in self.standard_candidates(case):
                new = self.build(shifts, v)
                if new is not None:
                    self.record(case, method)
                    return new
        new = self.fallback()
        if new is not None:
            self.record(case, "fallback")
            return new
        raise StepFailure(f"no placement found for vertex {self.r.v} (case {case})")

    # -- the collinear sub-case z < x < y

    def rebuild_by_contraction(self) -> Placement | None:
        r = self.r
        if self.sym is not None:
            got = self.sym.contract(r.y, r.z)
            if got is None:
                return None
            p_o, vmap, g_o = got
        else:
            dec_o, vmap = contract_decomposition(self.before, r.y, r.z)
            g_o = dec_o.graph
            try:
                p_o = _realise_placement(dec_o, self.trace, self.depth + 1)
            except StepFailure:
                return None
        g = self.before.graph
        w0 = vmap[r.y]
        touched = {r.y, r.z}
        if self.sym is not None:
            touched |= {self.sym.theta[r.y], self.sym.theta[r.z]}
        lam0 = safe_epsilon(p_o, g_o) / 2
        half = Fraction(1, 2)
        diagonals = [Point(ONE, ONE), Point(ONE, -ONE), Point(-ONE, ONE), Point(-ONE, -ONE)] + [
            Point(a * sx, b * sy)
            for a, b in ((ONE, half), (half, ONE), (ONE, ZERO), (ZERO, ONE))
            for sx in (1, -1)
            for sy in (1, -1)
        ]
        steps = [Point(ZERO, ZERO)] + [
            Point(Fraction(a), Fraction(b))
            for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1), (2, 1), (1, 2), (-2, 1), (-1, 2),
                         (2, -1), (1, -2), (-2, -1), (-1, -2), (1, 3), (3, 1), (-1, 3), (-3, 1),
                         (1, -3), (3, -1), (-1, -3), (-3, -1))
        ]
        for lam in _halvings(lam0, 12):
            for alpha in steps:
                for anchor, other in ((r.z, r.y), (r.y, r.z)):
                    for dg in diagonals:
                        new = {u: p_o[vmap[u]] for u in g.vertices}
                        new[anchor] = p_o[w0] + alpha.scale(lam / 4)
                        new[other] = new[anchor] + dg.scale(lam)
                        if self.sym is not None:
                            th = self.sym.theta
                            if th[anchor] == anchor and mirror(new[anchor]) != new[anchor]:
                                continue
                            for u in (anchor, other):
                                if th[u] != u:
                                    new[th[u]] = mirror(new[u])
                            if any(mirror(new[u]) != new[th[u]] for u in touched):
                                continue
                        if _injective(new) and _pairs_ok(new, self.before, touched):
                            return new
        return None

    def rebuild_by_perturbation(self) -> Placement | None:
        r = self.r
        if self.class_of[r.x] in (self.class_of[r.y], self.class_of[r.z]):
            return None
        for eps in _halvings(self.eps0, 16):
            for dv in (Point(eps, ZERO), Point(-eps, ZERO), Point(ZERO, eps), Point(ZERO, -eps)):
                new = self.shifted_base([(r.x, dv)])
                if new is not None:
                    return new
        return None


def contract_decomposition(
    dec: TreeDecomposition, y: VertexId, z: VertexId
) -> tuple[TreeDecomposition, dict[VertexId, VertexId]]:
    """Identify ``y`` and ``z`` and drop their edges; trees stay trees."""
    g_o, vmap = contract_vertex_pair(dec.graph, y, z)
    assignment = {e: dec.assignment[e] for e in g_o.edges}
    dec_o = TreeDecomposition(g_o, dec.d, assignment)
    if not verify_decomposition(dec_o):
        raise StepFailure("contraction did not leave spanning trees")
    return dec_o, vmap


def place_1_extension(
    pl: Mapping[VertexId, Point],
    dec_before: TreeDecomposition,
    step: ExtensionStep,
    trace: list[StepTrace] | None = None,
    _depth: int = 0,
) -> Placement:
    """Place the new vertex of a 1-extension, translating classes as needed.

    Old vertices move only as whole classes of ``parallel_components`` of
    the graph minus the deleted edge, except in the collinear case
    ``z < x < y`` where the placement is rebuilt from a realisation of the
    graph with ``y`` and ``z`` contracted.
    """
    roles = _one_roles(step)
    after = extend(dec_before, step)
    solver = _OneExtension(pl, dec_before, after, roles, None,
                           trace if trace is not None else [], _depth)
    return solver.solve()


def place_symmetric_1_extension(
    pl: Mapping[VertexId, Point],
    dec_before: TreeDecomposition,
    dec_after: TreeDecomposition,
    step: ExtensionStep,
    hooks: SymmetryHooks,
    trace: list[StepTrace],
    depth: int = 0,
) -> Placement:
    roles = _one_roles(step)
    return _OneExtension(pl, dec_before, dec_after, roles, hooks, trace, depth).solve()


def zero_extension_candidates(pl: Mapping[VertexId, Point], step: ExtensionStep) -> Iterator[tuple[str, Point]]:
    x, y = _zero_neighbours(step)
    return _zero_candidates(pl, x, y)


# ------------------------------------------------------------ whole sequences


def realise_sequence(seq: ConstructionSequence, trace: list[StepTrace] | None = None, depth: int = 0) -> Placement:
    """Replay ``seq`` from a vertex at the origin."""
    if seq.d != 2:
        raise ValueError("plane realisations need d = 2")
    trace = trace if trace is not None else []
    pl: Placement = {seq.root: ORIGIN}
    decs = seq.replay()
    for step, before in zip(seq.steps, decs):
        if step.j == 0:
            pl = place_0_extension(pl, before, step, trace, depth)
        else:
            pl = place_1_extension(pl, before, step, trace, depth)
    return pl


def _realise_placement(dec: TreeDecomposition, trace: list[StepTrace], depth: int) -> Placement:
    last: Exception | None = None
    for attempt in range(MAX_ATTEMPTS):
        seq = build_sequence(dec, seed=None if attempt == 0 else attempt)
        local: list[StepTrace] = []
        try:
            pl = realise_sequence(seq, local, depth)
        except StepFailure as exc:
            last = exc
            continue
        trace.extend(local)
        return pl
    raise StepFailure(f"all {MAX_ATTEMPTS} construction sequences failed: {last}")


def realise(dec: TreeDecomposition) -> RealisationResult:
    """A certified plane realisation of a 2-tree decomposition.

    The default construction sequence (lowest reducible vertex first) is
    tried first; if a step cannot be placed, alternative sequences are
    replayed.  The result is checked with the independent verifier.
    """
    if dec.d != 2:
        raise ValueError("plane realisations need d = 2")
    if not verify_decomposition(dec):
        raise ValueError("input is not a valid 2-tree decomposition")
    last: Exception | None = None
    for attempt in range(MAX_ATTEMPTS):
        seq = build_sequence(dec, seed=None if attempt == 0 else attempt)
        trace: list[StepTrace] = []
        try:
            pl = realise_sequence(seq, trace)
        except StepFailure as exc:
            last = exc
            continue
        report = is_realisation_of(dec, pl)
        if report.isostatic:
            return RealisationResult(pl, framework_colouring(dec.graph, pl, 2), seq, trace)
        last = StepFailure("; ".join(report.failures))
    raise StepFailure(f"no realisation found: {last}")
