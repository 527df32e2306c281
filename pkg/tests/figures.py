"""Hand-built graphs and placements shared by the tests."""

from __future__ import annotations

from fractions import Fraction as F

from isostatic.geometry import Point
from isostatic.henneberg import ExtensionStep, TreeMove
from isostatic.multigraph import MultiGraph
from isostatic.sparsity import TreeDecomposition

# wheel with hub 0 and rim 1-2-4-3
W5_PAIRS = [(1, 2), (3, 4), (1, 3), (2, 4), (0, 1), (0, 2), (0, 3), (0, 4)]
W5 = MultiGraph.from_edges(W5_PAIRS)

# the two decompositions drawn for the wheel; tree 1 is solid
W5_LEFT_T1 = {(1, 2), (3, 4), (0, 1), (0, 4)}
W5_CENTRE_T1 = {(0, 1), (0, 4), (1, 2), (0, 3)}


def w5_decomposition(t1: set[tuple[int, int]]) -> TreeDecomposition:
    assignment = {e: 1 if W5.edges[e] in t1 else 2 for e in W5.edges}
    return TreeDecomposition(W5, 2, assignment)


W5_LEFT = w5_decomposition(W5_LEFT_T1)
W5_CENTRE = w5_decomposition(W5_CENTRE_T1)


def pts(coords: dict[int, tuple]) -> dict[int, Point]:
    return {v: Point(F(x), F(y)) for v, (x, y) in coords.items()}


# as drawn, except the hub is lowered by 1/20 to undo a slope -1 tie on 0-2
W5_LEFT_PLACEMENT = pts({1: (-1, -1), 2: (1, -1), 3: (-1, F(6, 5)), 4: (1, F(3, 5)), 0: (F(1, 10), F(-1, 20))})
W5_CENTRE_PLACEMENT = pts({1: (-1, -1), 2: (F(1, 5), -1), 3: (-1, 1), 4: (F(-7, 10), F(1, 5)), 0: (1, F(1, 2))})
# spokes on the diagonals: not well-positioned
W5_RIGHT_PLACEMENT = pts({1: (-1, -1), 2: (1, -1), 3: (-1, 1), 4: (1, 1), 0: (0, 0)})


def decomposition(t1: list[tuple[int, int]], t2: list[tuple[int, int]]) -> TreeDecomposition:
    pairs = list(t1) + list(t2)
    g = MultiGraph.from_edges(pairs)
    return TreeDecomposition(g, 2, {k: 1 if k < len(t1) else 2 for k in range(len(pairs))})


def one_extension(dec: TreeDecomposition, x: int, y: int, z: int) -> ExtensionStep:
    """v joins x in tree 1 and y, z in tree 2, replacing a tree-2 yz edge."""
    g = dec.graph
    (e,) = [f for f in g.edges_between(y, z) if dec.assignment[f] == 2][:1]
    v = g.next_vertex_id()
    nxt = g.next_edge_id()
    return ExtensionStep(
        v,
        (
            TreeMove(1, (), ((nxt, x),)),
            TreeMove(2, ((e, y, z),), ((nxt + 1, y), (nxt + 2, z))),
        ),
    )


def zero_extension(dec: TreeDecomposition, x: int, y: int) -> ExtensionStep:
    """v joins x in tree 1 and y in tree 2."""
    g = dec.graph
    nxt = g.next_edge_id()
    return ExtensionStep(
        g.next_vertex_id(), (TreeMove(1, (), ((nxt, x),)), TreeMove(2, (), ((nxt + 1, y),)))
    )


# labels: z = 0, y = 1, x = 2 unless stated
CASE_FIXTURES = {
    # yz only in tree 2 (x=(4,1), y=(3/2,4), z=(0,0), extra vertex w=3)
    "2": (
        pts({0: (0, 0), 1: (F(3, 2), 4), 2: (4, 1), 3: (5, 4)}),
        decomposition([(0, 2), (0, 3), (1, 3)], [(1, 0), (2, 1), (3, 2)]),
        (2, 1, 0),
    ),
    # doubled yz with o <= p(z)
    "3A": (
        pts({0: (0, 0), 1: (3, 3), 2: (4, -1)}),
        decomposition([(0, 1), (2, 0)], [(0, 1), (2, 1)]),
        (2, 1, 0),
    ),
    # p(z) < o < p(x)
    "3B": (
        pts({0: (0, 0), 1: (3, 3), 2: (4, 1)}),
        decomposition([(0, 1), (2, 0)], [(0, 1), (2, 1)]),
        (2, 1, 0),
    ),
    # p(x) < o <= p(y)
    "3C": (
        pts({0: (0, 0), 1: (3, 3), 2: (F(1, 2), 1)}),
        decomposition([(0, 1), (2, 1)], [(0, 1), (2, 0)]),
        (2, 1, 0),
    ),
    # p(y) < o, p(x) < o
    "3D": (
        pts({0: (0, 0), 1: (3, 3), 2: (1, 4)}),
        decomposition([(0, 1), (2, 1)], [(0, 1), (2, 0)]),
        (2, 1, 0),
    ),
    # collinear with z < y < x
    "3D1": (
        pts({0: (0, 0), 1: (1, 1), 2: (2, 2)}),
        decomposition([(0, 1), (1, 2)], [(0, 1), (1, 2)]),
        (2, 1, 0),
    ),
    # collinear with z < x < y
    "3D2": (
        pts({0: (0, 0), 1: (1, 1), 2: (F(1, 2), F(1, 2))}),
        decomposition([(0, 1), (0, 2)], [(0, 1), (0, 2)]),
        (2, 1, 0),
    ),
    # x = z = 0, xy only in tree 2, extra vertex 2
    "4": (
        pts({0: (0, 0), 1: (1, 3), 2: (4, 0)}),
        decomposition([(0, 2), (2, 1)], [(0, 1), (1, 2)]),
        (0, 1, 0),
    ),
    # x = z = 0 with xy doubled
    "5": (
        pts({0: (0, 0), 1: (3, 3)}),
        decomposition([(0, 1)], [(0, 1)]),
        (0, 1, 0),
    ),
}

# (n, seed) of random decompositions whose default realisation takes each
# branch at the top level
SEEDED_BRANCHES = {
    "0-distinct": (3, 0),
    "0-double": (3, 0),
    "2": (4, 19),
    "3A": (4, 10),
    "3B": (4, 200),
    "3C": (4, 18),
    "3D": (5, 33),
    "3D1": (4, 0),
    "3D2": (7, 130),
    "4": (4, 6),
    "5": (3, 2),
}
