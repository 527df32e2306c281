from __future__ import annotations

import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from figures import W5_LEFT, W5_LEFT_PLACEMENT
from isostatic import io as jio
from isostatic.henneberg import build_sequence, random_decomposition
from isostatic.symmetry import random_symmetric_decomposition


def test_rational_strings():
    assert jio.rational_to_str(F(3, 4)) == "3/4"
    assert jio.rational_to_str(F(-2)) == "-2/1"
    assert jio.rational_from("6/8") == F(3, 4)
    assert jio.rational_from(5) == 5
    for bad in ("x", "1/0", 0.5, True, None):
        with pytest.raises(jio.FormatError):
            jio.rational_from(bad)


def test_shared_graph_format_example():
    doc = {"vertices": [0, 1, 2], "edges": [{"id": 0, "u": 0, "v": 1, "tree": 1},
                                             {"id": 1, "u": 0, "v": 2, "tree": 1},
                                             {"id": 2, "u": 0, "v": 1, "tree": 2},
                                             {"id": 3, "u": 0, "v": 2, "tree": 2}],
           "symmetry": {"0": 0, "1": 2, "2": 1}}
    g, assignment, theta = jio.graph_from_json(doc)
    assert g.multiplicity(0, 1) == 2 and assignment == {0: 1, 1: 1, 2: 2, 3: 2}
    assert theta == {0: 0, 1: 2, 2: 1}
    assert jio.decomposition_to_json(jio.decomposition_from_json(doc), theta) == {**doc, "d": 2}


def test_graph_without_labels():
    g, assignment, theta = jio.graph_from_json({"edges": [{"u": 0, "v": 1}]})
    assert g.vertices == {0, 1} and assignment is None and theta is None
    with pytest.raises(jio.FormatError):
        jio.decomposition_from_json({"edges": [{"u": 0, "v": 1}]})


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"vertices": [0]},
        {"edges": [5]},
        {"edges": [{"u": 0, "v": 0}]},
        {"edges": [{"u": 0, "v": "1"}]},
        {"edges": [{"id": 0, "u": 0, "v": 1}, {"id": 0, "u": 1, "v": 2}]},
        {"edges": [{"u": 0, "v": 1, "tree": 1}, {"u": 1, "v": 2}]},
        {"edges": [{"u": 0, "v": 1}], "symmetry": [0, 1]},
        {"edges": [{"u": 0, "v": 1}], "symmetry": {"a": 0}},
    ],
)
def test_malformed_graphs(doc):
    with pytest.raises(jio.FormatError):
        jio.graph_from_json(doc)


def test_placement_round_trip():
    out = jio.placement_to_json(W5_LEFT_PLACEMENT)
    assert out["0"] == ["1/10", "-1/20"]
    assert jio.placement_from_json(json.loads(json.dumps(out))) == W5_LEFT_PLACEMENT
    for bad in ([], {"0": ["1/1"]}, {"a": ["0/1", "0/1"]}, {"0": "0/1"}):
        with pytest.raises(jio.FormatError):
            jio.placement_from_json(bad)


def test_step_format():
    seq = build_sequence(W5_LEFT)
    step = next(s for s in seq.steps if s.j == 1)
    out = jio.step_to_json(step)
    v = step.new_vertex
    assert out["vertex"] == v
    assert [t["tree"] for t in out["trees"]] == [1, 2]
    assert all(pair[0] == v for t in out["trees"] for pair in t["added"])
    assert sum(len(t["deleted"]) for t in out["trees"]) == 1
    assert jio.step_from_json(out) == step


def test_malformed_steps():
    for bad in ({}, {"vertex": 1}, {"vertex": 1, "trees": [{"tree": 1, "deleted": [], "added": [[1, 0]]}]},
                {"vertex": "1", "trees": []}):
        with pytest.raises(jio.FormatError):
            jio.step_from_json(bad)
    with pytest.raises(jio.FormatError):
        jio.sequence_from_json({"steps": []}, W5_LEFT)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 30), st.integers(1, 3), st.integers(0, 10**6))
def test_decomposition_and_sequence_round_trip(n, d, seed):
    dec = random_decomposition(n, d, seed)
    doc = json.loads(json.dumps(jio.decomposition_to_json(dec)))
    back = jio.decomposition_from_json(doc)
    assert back == dec
    seq = build_sequence(dec)
    again = jio.sequence_from_json(json.loads(json.dumps(jio.sequence_to_json(seq))), back)
    assert again.steps == seq.steps and again.root == seq.root
    assert again.replay()[-1] == dec


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10), st.integers(0, 10**6))
def test_symmetry_round_trip(n_orbits, seed):
    sd = random_symmetric_decomposition(n_orbits, seed)
    doc = json.loads(json.dumps(jio.decomposition_to_json(sd.dec, sd.theta)))
    _, _, theta = jio.graph_from_json(doc)
    assert theta == dict(sd.theta)
