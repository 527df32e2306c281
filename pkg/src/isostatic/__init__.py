"""Spanning-tree decompositions and isostatic l-infinity frameworks in the plane."""

from .geometry import Placement, Point
from .multigraph import MultiGraph, contract_vertex_pair, parallel_components
from .sparsity import TreeDecomposition, check_tight, decompose, verify_decomposition

__all__ = [
    "MultiGraph",
    "Placement",
    "Point",
    "TreeDecomposition",
    "check_tight",
    "contract_vertex_pair",
    "decompose",
    "parallel_components",
    "verify_decomposition",
]
