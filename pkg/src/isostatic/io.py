"""JSON formats for graphs, decompositions, sequences and placements."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping

from .geometry import Placement, Point
from .henneberg import ConstructionSequence, ExtensionStep, TreeMove
from .multigraph import EdgeId, MultiGraph, VertexId
from .sparsity import TreeDecomposition


class FormatError(ValueError):
    """Malformed JSON input."""


def rational_to_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def rational_from(value: Any) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FormatError(f"expected a rational string or integer, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {value!r}") from exc


def graph_to_json(
    g: MultiGraph,
    assignment: Mapping[EdgeId, int] | None = None,
    theta: Mapping[VertexId, VertexId] | None = None,
) -> dict:
    edges = []
    for eid, (u, v) in sorted(g.edges.items()):
        item: dict[str, int] = {"id": eid, "u": u, "v": v}
        if assignment is not None:
            item["tree"] = assignment[eid]
        edges.append(item)
    out: dict[str, Any] = {"vertices": sorted(g.vertices), "edges": edges}
    if theta is not None:
        out["symmetry"] = {str(v): w for v, w in sorted(theta.items())}
    return out


def decomposition_to_json(dec: TreeDecomposition, theta: Mapping[VertexId, VertexId] | None = None) -> dict:
    out = graph_to_json(dec.graph, dec.assignment, theta)
    out["d"] = dec.d
    return out


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{what} must be an integer, got {value!r}")
    return value


def graph_from_json(obj: Any) -> tuple[MultiGraph, dict[EdgeId, int] | None, dict[VertexId, VertexId] | None]:
    """Parse the shared graph format; tree labels and symmetry are optional."""
    if not isinstance(obj, dict) or "edges" not in obj:
        raise FormatError("graph JSON needs an 'edges' list")
    verts = {_int(v, "vertex id") for v in obj.get("vertices", [])}
    edges: dict[EdgeId, tuple[VertexId, VertexId]] = {}
    trees: dict[EdgeId, int] = {}
    for k, item in enumerate(obj["edges"]):
        if not isinstance(item, dict):
            raise FormatError("each edge must be an object")
        eid = _int(item.get("id", k), "edge id")
        if eid in edges:
            raise FormatError(f"duplicate edge id {eid}")
        u, v = _int(item.get("u"), "endpoint"), _int(item.get("v"), "endpoint")
        edges[eid] = (u, v)
        verts |= {u, v}
        if "tree" in item:
            trees[eid] = _int(item["tree"], "tree index")
    try:
        g = MultiGraph(frozenset(verts), edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    assignment = trees if trees and len(trees) == len(edges) else None
    if trees and assignment is None:
        raise FormatError("either every edge or no edge carries a tree label")
    theta = None
    if "symmetry" in obj and obj["symmetry"] is not None:
        sym = obj["symmetry"]
        if not isinstance(sym, dict):
            raise FormatError("symmetry must map vertex ids to vertex ids")
        try:
            theta = {int(k): _int(w, "symmetry image") for k, w in sym.items()}
        except ValueError as exc:
            raise FormatError("symmetry keys must be vertex ids") from exc
    return g, assignment, theta


def decomposition_from_json(obj: Any, d: int | None = None) -> TreeDecomposition:
    g, assignment, _ = graph_from_json(obj)
    if assignment is None:
        if g.num_edges:
            raise FormatError("edges need tree labels")
        assignment = {}
    depth = d if d is not None else obj.get("d", max(assignment.values(), default=2))
    try:
        return TreeDecomposition(g, int(depth), assignment)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def placement_to_json(pl: Mapping[VertexId, Point]) -> dict:
    return {str(v): [rational_to_str(p.x), rational_to_str(p.y)] for v, p in sorted(pl.items())}


def placement_from_json(obj: Any) -> Placement:
    if not isinstance(obj, dict):
        raise FormatError("placement must map vertex ids to coordinate pairs")
    out: Placement = {}
    for k, xy in obj.items():
        if not isinstance(xy, list) or len(xy) != 2:
            raise FormatError(f"vertex {k} needs exactly two coordinates")
        try:
            v = int(k)
        except ValueError as exc:
            raise FormatError(f"bad vertex id {k!r}") from exc
        out[v] = Point(rational_from(xy[0]), rational_from(xy[1]))
    return out


def step_to_json(step: ExtensionStep) -> dict:
    return {
        "vertex": step.new_vertex,
        "trees": [
            {
                "tree": m.tree,
                "deleted": [[a, b] for _, a, b in m.deleted],
                "deleted_ids": [e for e, _, _ in m.deleted],
                "added": [[step.new_vertex, w] for _, w in m.added],
                "added_ids": [e for e, _ in m.added],
            }
            for m in step.per_tree
        ],
    }


def step_from_json(obj: Any) -> ExtensionStep:
    try:
        v = _int(obj["vertex"], "vertex")
        moves = []
        for t in obj["trees"]:
            deleted = tuple(
                (e, a, b) for e, (a, b) in zip(t.get("deleted_ids", []), t["deleted"], strict=True)
            )
            added = tuple(
                (e, w if u == v else u)
                for e, (u, w) in zip(t.get("added_ids", []), t["added"], strict=True)
            )
            moves.append(TreeMove(_int(t["tree"], "tree"), deleted, added))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed step: {exc}") from exc
    return ExtensionStep(v, tuple(moves))


def sequence_to_json(seq: ConstructionSequence) -> dict:
    return {"d": seq.d, "root": seq.root, "steps": [step_to_json(s) for s in seq.steps]}


def sequence_from_json(obj: Any, target: TreeDecomposition) -> ConstructionSequence:
    try:
        steps = tuple(step_from_json(s) for s in obj["steps"])
        return ConstructionSequence(int(obj.get("d", target.d)), _int(obj["root"], "root"), steps, target)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed sequence: {exc}") from exc
