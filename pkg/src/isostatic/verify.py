"""Independent certification of l-infinity frameworks.

Nothing here trusts the construction code: colours are recomputed from
coordinates, tree membership is compared edge set by edge set, and the
rigidity rank comes from exact elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .multigraph import EdgeId, MultiGraph, VertexId
from .sparsity import TreeDecomposition


class PositionError(ValueError):
    """The placement does not define a well-positioned framework."""

    def __init__(self, message: str, pair: tuple[VertexId, VertexId] | None = None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class FrameworkColouring:
    colour: Mapping[EdgeId, int]

    def classes(self, d: int) -> dict[int, list[EdgeId]]:
        out: dict[int, list[EdgeId]] = {k: [] for k in range(1, d + 1)}
        for e, k in sorted(self.colour.items()):
            out[k].append(e)
        return out


def _maximising(delta: Sequence[Fraction]) -> list[int]:
    m = max(abs(c) for c in delta)
    return [k + 1 for k, c in enumerate(delta) if abs(c) == m]


def framework_colouring(
    g: MultiGraph, pl: Mapping[VertexId, Sequence], d: int = 2
) -> FrameworkColouring:
    """Colour every edge by a coordinate attaining its sup-norm length.

    A pair with ``t`` parallel copies must have exactly ``t`` maximising
    coordinates; they are handed to the copies in edge id order.  Raises
    :class:`PositionError` otherwise or when the placement is not injective.
    """
    missing = g.vertices - set(pl)
    if missing:
        raise PositionError(f"no coordinates for vertices {sorted(missing)}")
    seen: dict[tuple, VertexId] = {}
    for v in sorted(g.vertices):
        pt = tuple(Fraction(c) for c in pl[v])
        if len(pt) != d:
            raise PositionError(f"vertex {v} has {len(pt)} coordinates, expected {d}")
        if pt in seen:
            raise PositionError(f"vertices {seen[pt]} and {v} coincide", (seen[pt], v))
        seen[pt] = v
    colour: dict[EdgeId, int] = {}
    for (u, w), eids in g.pair_classes().items():
        delta = [Fraction(a) - Fraction(b) for a, b in zip(pl[u], pl[w])]
        ks = _maximising(delta)
        if len(ks) != len(eids):
            raise PositionError(
                f"pair ({u},{w}) has {len(eids)} edge(s) but {len(ks)} maximising coordinate(s)",
                (u, w),
            )
        for e, k in zip(eids, ks):
            colour[e] = k
    return FrameworkColouring(colour)


def monochrome_trees_ok(dec: TreeDecomposition, col: FrameworkColouring) -> bool:
    """Colour classes equal the trees after permuting colours within each pair."""
    g = dec.graph
    if set(col.colour) != set(g.edges):
        return False
    for eids in g.pair_classes().values():
        if sorted(col.colour[e] for e in eids) != sorted(dec.assignment[e] for e in eids):
            return False
    return True


def _is_spanning_tree(vertices: frozenset[VertexId], pairs: list[tuple[VertexId, VertexId]]) -> bool:
    if len(pairs) != len(vertices) - 1:
        return False
    sub = MultiGraph(vertices, dict(enumerate(pairs)))
    return len(sub.connected_components()) == 1


def monochrome_spanning_trees(g: MultiGraph, col: FrameworkColouring, d: int) -> bool:
    """Every colour class is a spanning tree of ``g``."""
    return all(
        _is_spanning_tree(g.vertices, [g.edges[e] for e in es])
        for es in col.classes(d).values()
    )


@dataclass(frozen=True)
class RigidityMatrix:
    vertices: tuple[VertexId, ...]
    d: int
    edge_ids: tuple[EdgeId, ...]
    rows: tuple[dict[int, int], ...]

    @property
    def num_columns(self) -> int:
        return self.d * len(self.vertices)

    def dense(self) -> list[list[int]]:
        return [[row.get(c, 0) for c in range(self.num_columns)] for row in self.rows]


def rigidity_matrix(
    g: MultiGraph, pl: Mapping[VertexId, Sequence], col: FrameworkColouring, d: int = 2
) -> RigidityMatrix:
    """Sparse rows of the differential of the edge-length map.

    Column ``d*k + (c-1)`` holds coordinate ``c`` of the ``k``-th smallest
    vertex.  The row of edge ``uw`` with colour ``c`` is ``s`` at ``(u, c)``
    and ``-s`` at ``(w, c)`` with ``s`` the sign of the coordinate gap.
    """
    verts = tuple(sorted(g.vertices))
    idx = {v: k for k, v in enumerate(verts)}
    rows = []
    eids = tuple(sorted(g.edges))
    for e in eids:
        u, w = g.edges[e]
        c = col.colour[e]
        gap = Fraction(pl[u][c - 1]) - Fraction(pl[w][c - 1])
        s = 1 if gap > 0 else -1 if gap < 0 else 0
        if s == 0:
            raise PositionError(f"edge {e} has zero gap in its colour", (u, w))
        rows.append({d * idx[u] + c - 1: s, d * idx[w] + c - 1: -s})
    return RigidityMatrix(verts, d, eids, tuple(rows))


def matrix_rank(rows: Sequence[Mapping[int, int | Fraction]]) -> int:
    """Exact rank by sparse Gaussian elimination over the rationals."""
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v != 0}
        while row:
            c = min(row)
            if c not in pivots:
                lead = row[c]
                pivots[c] = {k: v / lead for k, v in row.items()}
                rank += 1
                break
            factor = row[c]
            for k, v in pivots[c].items():
                nv = row.get(k, Fraction(0)) - factor * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def rigidity_kernel_dim(
    g: MultiGraph,
    pl: Mapping[VertexId, Sequence],
    col: FrameworkColouring,
    d: int = 2,
    drop_row: EdgeId | None = None,
) -> int:
    """Dimension of the space of infinitesimal flexes.

    ``drop_row`` removes one edge's row, for minimality checks.
    """
    m = rigidity_matrix(g, pl, col, d)
    rows = [r for e, r in zip(m.edge_ids, m.rows) if e != drop_row]
    return m.num_columns - matrix_rank(rows)


def kernel_dim_by_components(g: MultiGraph, col: FrameworkColouring, d: int = 2) -> int:
    """Kernel dimension from the block structure of the rigidity matrix.

    Each colour block is a signed incidence matrix of the colour class, so
    its kernel has one dimension per connected component.
    """
    total = 0
    for es in col.classes(d).values():
        sub = MultiGraph(g.vertices, {e: g.edges[e] for e in es})
        total += len(sub.connected_components())
    return total


@dataclass
class VerificationReport:
    well_positioned: bool
    colouring: FrameworkColouring | None
    trees_ok: bool
    kernel_dim: int
    isostatic: bool
    monochrome_spanning: bool = False
    equivalence_holds: bool = True
    failures: list[str] = field(default_factory=list)
    bad_pair: tuple[VertexId, VertexId] | None = None

    def to_json(self) -> dict:
        return {
            "well_positioned": self.well_positioned,
            "trees_ok": self.trees_ok,
            "monochrome_spanning_trees": self.monochrome_spanning,
            "kernel_dim": self.kernel_dim,
            "infinitesimally_isostatic": self.isostatic,
            "equivalence_holds": self.equivalence_holds,
            "colour": (
                {str(e): k for e, k in sorted(self.colouring.colour.items())}
                if self.colouring
                else None
            ),
            "failures": list(self.failures),
            "bad_pair": list(self.bad_pair) if self.bad_pair else None,
        }


def is_realisation_of(dec: TreeDecomposition, pl: Mapping[VertexId, Sequence]) -> VerificationReport:
    """Check that ``pl`` realises ``dec`` and is infinitesimally isostatic."""
    g, d = dec.graph, dec.d
    failures: list[str] = []
    extra = set(pl) - g.vertices
    if extra:
        failures.append(f"coordinates given for unknown vertices {sorted(extra)}")
    try:
        col = framework_colouring(g, pl, d)
    except PositionError as exc:
        failures.append(f"not well-positioned: {exc}")
        return VerificationReport(
            False, None, False, -1, False, failures=failures, bad_pair=exc.pair
        )
    trees_ok = monochrome_trees_ok(dec, col)
    if not trees_ok:
        failures.append("monochrome subgraphs differ from the prescribed trees")
    spanning = monochrome_spanning_trees(g, col, d)
    kdim = rigidity_kernel_dim(g, pl, col, d)
    # for a well-positioned framework, monochrome spanning trees and a
    # d-dimensional kernel each characterise minimal rigidity
    equivalence = spanning == (kdim == d)
    if not equivalence:
        failures.append("spanning-tree test and rank test disagree")
    if kdim != d:
        failures.append(f"kernel dimension {kdim}, expected {d}")
    iso = trees_ok and kdim == d and not extra
    return VerificationReport(True, col, trees_ok, kdim, iso, spanning, equivalence, failures)
