"""SVG drawings of realised frameworks.

Tree 1 edges are solid, tree 2 edges dashed, and parallel copies bend away
from each other so both stay visible.  Coordinates are printed with 12
significant digits, which makes the output bytes a function of the input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .geometry import Point
from .multigraph import VertexId
from .sparsity import TreeDecomposition

SIZE = 400
MARGIN = 30
RADIUS = 4
BEND = 0.18
DASH = {1: None, 2: "6,4"}


def _num(v: float) -> str:
    out = format(v, ".12g")
    return "0" if out == "-0" else out


def render_svg(
    dec: TreeDecomposition,
    pl: Mapping[VertexId, Point],
    axis: bool = False,
) -> str:
    g = dec.graph
    xs = [Fraction(pl[v].x) for v in g.vertices]
    ys = [Fraction(pl[v].y) for v in g.vertices]
    if axis:
        xs.append(Fraction(0))
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y) or Fraction(1)
    scale = Fraction(SIZE - 2 * MARGIN) / span

    def at(p: Point) -> tuple[float, float]:
        # flip y so the drawing has the usual orientation
        return (float(MARGIN + (p.x - lo_x) * scale), float(MARGIN + (hi_y - p.y) * scale))

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if axis:
        ax, _ = at(Point(Fraction(0), hi_y))
        lines.append(
            f'<line class="axis" x1="{_num(ax)}" y1="0" x2="{_num(ax)}" y2="{SIZE}" '
            'stroke="gray" stroke-width="1" stroke-dasharray="1,3"/>'
        )
    for (u, w), eids in g.pair_classes().items():
        x1, y1 = at(pl[u])
        x2, y2 = at(pl[w])
        nx, ny = y1 - y2, x2 - x1
        for k, e in enumerate(eids):
            tree = dec.assignment[e]
            style = 'stroke="black" stroke-width="1.5" fill="none"'
            if DASH.get(tree):
                style += f' stroke-dasharray="{DASH[tree]}"'
            attrs = f'class="edge tree{tree}" data-edge="{e}"'
            if len(eids) == 1:
                lines.append(
                    f'<line {attrs} x1="{_num(x1)}" y1="{_num(y1)}" '
                    f'x2="{_num(x2)}" y2="{_num(y2)}" {style}/>'
                )
                continue
            off = BEND * (k - (len(eids) - 1) / 2) * 2
            cx, cy = (x1 + x2) / 2 + off * nx, (y1 + y2) / 2 + off * ny
            lines.append(
                f'<path {attrs} d="M {_num(x1)} {_num(y1)} Q {_num(cx)} {_num(cy)} '
                f'{_num(x2)} {_num(y2)}" {style}/>'
            )
    for v in sorted(g.vertices):
        x, y = at(pl[v])
        lines.append(f'<circle class="vertex" cx="{_num(x)}" cy="{_num(y)}" r="{RADIUS}" fill="black"/>')
        lines.append(
            f'<text class="label" x="{_num(x + 6)}" y="{_num(y - 6)}" font-family="sans-serif" '
            f'font-size="12">{v}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
