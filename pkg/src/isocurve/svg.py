"""Standalone SVG pictures of polygons and curves."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from isocurve.codes import SignedCrossingCode
from isocurve.polyscan import Polygon, self_intersections, walk_code

SIZE = 400
MARGIN = 20


def _fmt(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".")


def fringe_loops(P: Polygon) -> list[tuple[int, int]]:
    """Crossings closing a loop with no other crossing on it, as (first edge, second edge)."""
    code, edge = walk_code(P)
    N = len(code.twin)
    loops = []
    for i in range(1, N + 1):
        j = i % N + 1
        if code.twin[i - 1] == j and N > 2:
            loops.append((edge.entries[i - 1], edge.entries[j - 1]))
    return loops


def render_polygon(P: Polygon, title: str = "") -> str:
    crossings = self_intersections(P)
    xs = [p.x for p in P.vertices]
    ys = [p.y for p in P.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or Fraction(1)
    scale = Fraction(SIZE - 2 * MARGIN) / span

    def xy(p) -> str:
        return f"{_fmt(float((p.x - x0) * scale) + MARGIN)},{_fmt(float((y1 - p.y) * scale) + MARGIN)}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        "<style>.curve{fill:none;stroke:#222;stroke-width:1.2}"
        ".fringe{fill:none;stroke:#c33;stroke-width:2}"
        ".crossing{fill:#36c;stroke:none}</style>",
    ]
    if title:
        lines.append(f"<title>{title}</title>")
    lines.append(f'<polygon class="curve" points="{" ".join(xy(p) for p in P.vertices)}"/>')
    by_edges = {(c.i, c.j): c for c in crossings}
    m = P.m
    for e, f in fringe_loops(P) if crossings else []:
        c = by_edges[(min(e, f), max(e, f))]
        # the loop runs from the crossing along edge e, through vertices e+1..f, back to the crossing
        pts = [c.point]
        k = e
        while k != f:
            k = k % m + 1
            pts.append(P.vertices[k - 1])
        pts.append(c.point)
        lines.append(f'<polyline class="fringe" points="{" ".join(xy(p) for p in pts)}"/>')
    for c in crossings:
        cx, cy = xy(c.point).split(",")
        lines.append(f'<circle class="crossing" cx="{cx}" cy="{cy}" r="3"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(obj: Union[Polygon, SignedCrossingCode], seed: int = 0) -> str:
    """SVG of a generic polygon, or of a curve drawn through its straightened polygon."""
    if isinstance(obj, SignedCrossingCode):
        from isocurve.straighten import straighten_upperbound

        P = straighten_upperbound(obj, seed=seed).polygon
        return render_polygon(P, title=f"curve with {obj.n} crossings")
    return render_polygon(obj, title=f"{obj.m}-gon")
