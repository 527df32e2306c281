from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from figures import W5
from isostatic.multigraph import (
    GraphError,
    MultiGraph,
    contract_vertex_pair,
    parallel_components,
)


@st.composite
def multigraphs(draw, max_vertices: int = 7, max_edges: int = 14):
    n = draw(st.integers(1, max_vertices))
    if n == 1:
        return MultiGraph(frozenset({0}), {})
    pairs = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1]),
            max_size=max_edges,
        )
    )
    return MultiGraph(frozenset(range(n)), dict(enumerate(pairs)))


def test_rejects_loops_and_unknown_endpoints():
    with pytest.raises(GraphError):
        MultiGraph(frozenset({0}), {0: (0, 0)})
    with pytest.raises(GraphError):
        MultiGraph(frozenset({0}), {0: (0, 1)})


def test_degree_examples():
    double = MultiGraph.from_edges([(0, 1), (0, 1)])
    assert double.degree(0) == 2
    assert MultiGraph(frozenset({0}), {}).degree(0) == 0
    assert W5.degree(0) == 4
    with pytest.raises(GraphError):
        W5.degree(9)


def test_min_degree_examples():
    assert W5.min_degree() == 3
    assert MultiGraph.from_edges([(0, 1), (0, 1)]).min_degree() == 2
    k4 = MultiGraph.from_edges([(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert k4.min_degree() == 3
    with pytest.raises(GraphError):
        MultiGraph(frozenset(), {}).min_degree()


def test_induced_edge_count_examples():
    assert W5.induced_edge_count({2}) == 0
    assert W5.induced_edge_count(W5.vertices) == 8
    triple = MultiGraph.from_edges([(0, 1)] * 3)
    assert triple.induced_edge_count({0, 1}) == 3
    with pytest.raises(GraphError):
        W5.induced_edge_count(set())
    with pytest.raises(GraphError):
        W5.induced_edge_count({0, 7})


def test_parallel_components_examples():
    g = MultiGraph.from_edges([(0, 1), (0, 1), (1, 2)])
    assert sorted(map(sorted, parallel_components(g))) == [[0, 1], [2]]
    h = MultiGraph.from_edges([(0, 1), (0, 1)])
    assert sorted(map(sorted, parallel_components(h, {0}))) == [[0], [1]]
    chain = MultiGraph.from_edges([(0, 1), (0, 1), (1, 2), (1, 2)])
    assert [sorted(c) for c in parallel_components(chain)] == [[0, 1, 2]]


def test_contract_examples():
    k1, vmap = contract_vertex_pair(MultiGraph.from_edges([(0, 1), (0, 1)]), 0, 1)
    assert k1.num_vertices == 1 and k1.num_edges == 0
    assert vmap[0] == vmap[1]

    tri = MultiGraph.from_edges([(0, 1), (0, 1), (0, 2), (1, 2)])
    g, vmap = contract_vertex_pair(tri, 0, 1)
    w0 = vmap[0]
    assert g.vertices == {w0, 2}
    assert g.multiplicity(w0, 2) == 2

    # one spoke of the wheel
    g, _ = contract_vertex_pair(W5, 0, 1)
    assert g.num_vertices == 4 and g.num_edges == 8 - W5.multiplicity(0, 1)


def test_contract_rejects_bad_pairs():
    with pytest.raises(GraphError):
        contract_vertex_pair(W5, 1, 1)
    with pytest.raises(GraphError):
        contract_vertex_pair(W5, 1, 4)


@given(multigraphs())
def test_handshake(g):
    assert sum(g.degree(v) for v in g.vertices) == 2 * g.num_edges


@given(multigraphs(), st.data())
def test_parallel_classes_refine_components(g, data):
    excluded = data.draw(st.sets(st.sampled_from(sorted(g.edges)))) if g.edges else set()
    rest = g.without_edges(excluded)
    comp = {v: k for k, c in enumerate(rest.connected_components()) for v in c}
    classes = parallel_components(g, excluded)
    assert sorted(v for c in classes for v in c) == sorted(g.vertices)
    for c in classes:
        assert len({comp[v] for v in c}) == 1


@given(multigraphs())
def test_parallel_classes_match_networkx(g):
    # oracle: components of the simple graph of pairs with two or more copies
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(p for p, es in g.pair_classes().items() if len(es) >= 2)
    expected = sorted(sorted(c) for c in nx.connected_components(h))
    assert sorted(sorted(c) for c in parallel_components(g)) == expected


@given(multigraphs(), st.data())
def test_contraction_counts(g, data):
    if not g.edges:
        return
    e = data.draw(st.sampled_from(sorted(g.edges)))
    y, z = g.edges[e]
    h, vmap = contract_vertex_pair(g, y, z)
    assert h.num_edges == g.num_edges - g.multiplicity(y, z)
    assert h.num_vertices == g.num_vertices - 1
    assert all(a != b for a, b in h.edges.values())
    assert set(vmap) == set(g.vertices)


@settings(max_examples=50)
@given(multigraphs(), st.data())
def test_induced_count_monotone(g, data):
    verts = sorted(g.vertices)
    small = data.draw(st.sets(st.sampled_from(verts), min_size=1))
    big = small | data.draw(st.sets(st.sampled_from(verts)))
    assert g.induced_edge_count(small) <= g.induced_edge_count(big)
