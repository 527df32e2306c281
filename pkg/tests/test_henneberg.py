from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from figures import W5_CENTRE, W5_LEFT, decomposition, one_extension, zero_extension
from isostatic.henneberg import (
    ExtensionStep,
    StepError,
    TreeMove,
    build_sequence,
    extend,
    find_reducible_vertex,
    random_decomposition,
    random_extension,
    reduce,
    single_vertex,
)
from isostatic.sparsity import TreeDecomposition, verify_decomposition

DOUBLE = decomposition([(0, 1)], [(0, 1)])


def test_k1_zero_extension_gives_double_edge():
    dec = extend(single_vertex(0), zero_extension(single_vertex(0), 0, 0))
    assert dec.graph.multiplicity(0, 1) == 2
    assert sorted(dec.assignment.values()) == [1, 2]


def test_zero_extension_on_double_edge():
    dec = extend(DOUBLE, zero_extension(DOUBLE, 0, 1))
    assert verify_decomposition(dec)
    assert dec.graph.num_vertices == 3


def test_one_extension_example():
    dec = extend(DOUBLE, zero_extension(DOUBLE, 0, 1))
    step = one_extension(dec, 2, 1, 0)
    new = extend(dec, step)
    assert verify_decomposition(new)
    assert new.graph.degree(step.new_vertex) == 3
    assert step.j == 1


def test_extend_rejects_malformed_steps():
    with pytest.raises(StepError):
        # stale vertex
        extend(DOUBLE, ExtensionStep(1, (TreeMove(1, (), ((5, 0),)), TreeMove(2, (), ((6, 0),)))))
    with pytest.raises(StepError):
        # tree 2 has too few new edges for a deletion
        extend(DOUBLE, ExtensionStep(2, (TreeMove(1, (), ((5, 0),)), TreeMove(2, ((1, 0, 1),), ((6, 0),)))))
    with pytest.raises(StepError):
        # deleted edge is in the other tree
        extend(DOUBLE, ExtensionStep(2, (TreeMove(1, (), ((5, 0),)), TreeMove(2, ((0, 0, 1),), ((6, 0), (7, 1))))))
    with pytest.raises(StepError):
        # reuses an edge id
        extend(DOUBLE, ExtensionStep(2, (TreeMove(1, (), ((0, 0),)), TreeMove(2, (), ((6, 0),)))))
    with pytest.raises(StepError):
        # j = d is not allowed
        g = extend(DOUBLE, zero_extension(DOUBLE, 0, 1))
        extend(g, ExtensionStep(3, (
            TreeMove(1, ((0, 0, 1),), ((9, 0), (10, 1))),
            TreeMove(2, ((1, 0, 1),), ((11, 0), (12, 1))),
        )))


def test_find_reducible_vertex_examples():
    assert find_reducible_vertex(DOUBLE) in (0, 1)
    v = find_reducible_vertex(W5_LEFT)
    assert v != 0 and W5_LEFT.graph.degree(v) == 3
    with pytest.raises(StepError):
        find_reducible_vertex(single_vertex())


def test_reduce_double_edge_to_k1():
    smaller, step = reduce(DOUBLE, 1)
    assert smaller.graph.num_vertices == 1 and step.j == 0


def test_reduce_adds_forced_edge():
    dec = extend(DOUBLE, zero_extension(DOUBLE, 0, 1))
    dec = extend(dec, one_extension(dec, 2, 1, 0))
    v = max(dec.graph.vertices)
    smaller, step = reduce(dec, v)
    (m,) = [m for m in step.per_tree if m.k == 1]
    assert m.tree == 2
    ((eid, a, b),) = m.deleted
    assert {a, b} == {0, 1}
    assert smaller.assignment[eid] == 2


def test_reduce_rejects_degree_out_of_range():
    with pytest.raises(StepError):
        reduce(W5_LEFT, 0)


def test_build_sequence_examples():
    assert build_sequence(single_vertex()).steps == ()
    assert len(build_sequence(DOUBLE).steps) == 1
    seq = build_sequence(W5_CENTRE)
    assert len(seq.steps) == 4
    assert seq.replay()[-1] == W5_CENTRE


def test_build_sequence_rejects_invalid_input():
    bad = TreeDecomposition(W5_LEFT.graph, 2, {e: 1 for e in W5_LEFT.graph.edges})
    with pytest.raises(StepError):
        build_sequence(bad)


def test_random_decomposition_examples():
    assert random_decomposition(1).graph.num_vertices == 1
    two = random_decomposition(2, 2, seed=4)
    assert two.graph.multiplicity(0, 1) == 2
    big = random_decomposition(30, 2, seed=7)
    assert verify_decomposition(big)
    assert random_decomposition(30, 2, seed=7) == big
    assert sorted(big.graph.edges) == list(range(big.graph.num_edges))


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 25), st.integers(1, 4), st.integers(0, 10**6))
def test_reduce_then_extend_round_trip(n, d, seed):
    dec = random_decomposition(n, d, seed)
    rng = random.Random(seed)
    for v in sorted(dec.graph.vertices):
        if d <= dec.graph.degree(v) <= 2 * d - 1 and rng.random() < 0.5:
            break
    else:
        v = find_reducible_vertex(dec)
    smaller, step = reduce(dec, v)
    assert verify_decomposition(smaller)
    assert extend(smaller, step) == dec
    # degree accounting
    assert step.j == dec.graph.degree(v) - d
    assert sum(dec.tree_degree(v, i) for i in range(1, d + 1)) == dec.graph.degree(v)
    for m in step.per_tree:
        assert m.k == dec.tree_degree(v, m.tree) - 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.integers(1, 4), st.integers(0, 10**6))
def test_sequence_replays_exactly(n, d, seed):
    dec = random_decomposition(n, d, seed)
    seq = build_sequence(dec)
    assert len(seq.steps) == n - 1
    history = seq.replay()
    assert history[-1] == dec
    for part in history:
        assert verify_decomposition(part)
    for step in seq.steps:
        assert 0 <= step.j <= d - 1
        if d == 2 and step.j == 1:
            assert sorted(m.k for m in step.per_tree) == [0, 1]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 20), st.integers(0, 10**6))
def test_alternative_sequences_replay(n, seed):
    dec = random_decomposition(n, 2, seed)
    assert build_sequence(dec, seed=seed + 1).replay()[-1] == dec


def test_min_degree_bounds_on_random_decompositions():
    for seed in range(50):
        for d in (1, 2, 3):
            dec = random_decomposition(2 + seed % 12, d, seed)
            assert d <= dec.graph.min_degree() <= 2 * d - 1


def test_random_extension_stays_valid():
    rng = random.Random(3)
    dec = random_decomposition(6, 3, 1)
    for _ in range(20):
        dec = extend(dec, random_extension(dec, rng))
    assert verify_decomposition(dec)
