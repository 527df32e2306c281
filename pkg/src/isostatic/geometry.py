"""Exact rational points and placements."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, NamedTuple, Union

from .multigraph import VertexId

Number = Union[int, Fraction, str]


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: Number, y: Number) -> Point:
        return cls(Fraction(x), Fraction(y))

    def __add__(self, other: object) -> Point:  # type: ignore[override]
        if not isinstance(other, tuple):
            return NotImplemented
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other: tuple) -> Point:
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, c: Number) -> Point:
        c = Fraction(c)
        return Point(self.x * c, self.y * c)

    def transpose(self) -> Point:
        return Point(self.y, self.x)

    def norm(self) -> Fraction:
        return max(abs(self.x), abs(self.y))


Placement = dict[VertexId, Point]


def as_placement(coords: Mapping[VertexId, tuple]) -> Placement:
    return {v: Point(Fraction(c[0]), Fraction(c[1])) for v, c in coords.items()}


def maximisers(delta: tuple) -> frozenset[int]:
    """1-based coordinates attaining the sup norm of a nonzero vector."""
    m = max(abs(c) for c in delta)
    return frozenset(k + 1 for k, c in enumerate(delta) if abs(c) == m)
