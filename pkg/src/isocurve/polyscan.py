"""Polygons as closed curves: genericity, self-crossings and code extraction.

Edge ``i`` (1-based) joins vertex ``i`` to vertex ``i + 1``, with the last
edge closing back to vertex 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from isocurve import kernel
from isocurve.codes import NotRealizable, SignedCrossingCode, equivalent_codes, validate
from isocurve.exact_geom import Point, Segment, line_intersection, orient, rational


class NotGeneric(ValueError):
    pass


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[Point, ...]

    def __init__(self, vertices: Sequence):
        pts = tuple(v if isinstance(v, Point) else Point.of(*v) for v in vertices)
        if len(pts) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", pts)

    @property
    def m(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> Segment:
        """Directed edge ``i`` (1-based)."""
        v = self.vertices
        return Segment(v[i - 1], v[i % len(v)])

    def reindexed(self, start: int, reverse: bool = False) -> "Polygon":
        """Same closed curve starting at vertex ``start`` (1-based)."""
        v = list(self.vertices)
        s = start - 1
        if reverse:
            order = [v[(s - k) % len(v)] for k in range(len(v))]
        else:
            order = v[s:] + v[:s]
        return Polygon(order)

    def to_dict(self) -> dict:
        return {"vertices": [[str(p.x), str(p.y)] for p in self.vertices]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "Polygon":
        try:
            return cls([(rational(x), rational(y)) for x, y in data["vertices"]])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed polygon record: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "Polygon":
        return cls.from_dict(json.loads(text))


@dataclass
class GenericityReport:
    same_x: list[tuple[int, int]] = field(default_factory=list)
    collinear: list[tuple[int, int, int]] = field(default_factory=list)
    parallel: list[tuple[int, int]] = field(default_factory=list)
    concurrent: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def distinct_x(self) -> bool:
        return not self.same_x

    @property
    def no_collinear(self) -> bool:
        return not self.collinear

    @property
    def no_parallel(self) -> bool:
        return not self.parallel

    @property
    def no_concurrent(self) -> bool:
        return not self.concurrent

    @property
    def generic(self) -> bool:
        return not (self.same_x or self.collinear or self.parallel or self.concurrent)

    def to_dict(self) -> dict:
        return {
            "generic": self.generic,
            "distinct_x": [list(t) for t in self.same_x],
            "collinear_vertices": [list(t) for t in self.collinear],
            "parallel_edges": [list(t) for t in self.parallel],
            "concurrent_edges": [list(t) for t in self.concurrent],
        }


def check_generic(P: Polygon, stop_at_first: bool = False) -> GenericityReport:
    """Witnesses (1-based vertex or edge indices) for every violated condition."""
    xs, ys = kernel.integer_coordinates(P.vertices)
    raw = kernel.generic_violations(xs, ys, stop_at_first)
    one = [[tuple(i + 1 for i in t) for t in group] for group in raw]
    return GenericityReport(*one)


def is_generic(P: Polygon) -> bool:
    return check_generic(P, stop_at_first=True).generic


def _require_generic(P: Polygon) -> None:
    rep = check_generic(P, stop_at_first=True)
    if not rep.generic:
        raise NotGeneric(f"polygon is not generic: {rep.to_dict()}")


@dataclass(frozen=True)
class Crossing:
    i: int
    j: int
    point: Point
    sign: int


def _crossings_unchecked(P: Polygon) -> list[Crossing]:
    xs, ys = kernel.integer_coordinates(P.vertices)
    out = []
    for i, j, s in kernel.crossing_pairs(xs, ys):
        pt = line_intersection(P.edge(i + 1), P.edge(j + 1))
        out.append(Crossing(i + 1, j + 1, pt, s))
    return out


def _along(P: Polygon, edge: int, pt: Point) -> Fraction:
    # edges are never vertical in a generic polygon, so x measures progress
    e = P.edge(edge)
    return (pt.x - e.a.x) / (e.b.x - e.a.x)


def self_intersections(P: Polygon) -> list[Crossing]:
    """Crossing edge pairs ``i < j``, sorted by edge ``i`` then position along it."""
    _require_generic(P)
    out = _crossings_unchecked(P)
    out.sort(key=lambda c: (c.i, _along(P, c.i, c.point)))
    return out


@dataclass(frozen=True)
class EdgeCode:
    entries: tuple[int, ...]

    def __post_init__(self):
        if any(a > b for a, b in zip(self.entries, self.entries[1:])):
            raise ValueError("edge code must be weakly sorted")


@dataclass(frozen=True)
class Extraction:
    code: SignedCrossingCode
    edge: EdgeCode
    basepoint: int
    reversed: bool
    polygon: Polygon  # reindexed: basepoint first, (p_m, p_1, p_2) counterclockwise


def hull_vertices(P: Polygon) -> list[int]:
    """1-based indices of the convex hull vertices (gift wrapping)."""
    pts = P.vertices
    start = min(range(len(pts)), key=lambda k: (pts[k].x, pts[k].y))
    hull = []
    cur = start
    while True:
        hull.append(cur + 1)
        cand = (cur + 1) % len(pts)
        for k in range(len(pts)):
            if k == cur:
                continue
            o = orient(pts[cur], pts[cand], pts[k])
            if o < 0 or (o == 0 and _dist2(pts[cur], pts[k]) > _dist2(pts[cur], pts[cand])):
                cand = k
        cur = cand
        if cur == start:
            break
    return hull


def _dist2(a: Point, b: Point) -> Fraction:
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2


def walk_code(P: Polygon) -> tuple[SignedCrossingCode, EdgeCode]:
    """Code and edge code read from vertex 1 in index order (no convention applied)."""
    crossings = _crossings_unchecked(P)
    visits = []  # (edge, along, crossing id, sign of this strand)
    for cid, c in enumerate(crossings):
        visits.append((c.i, _along(P, c.i, c.point), cid, c.sign))
        visits.append((c.j, _along(P, c.j, c.point), cid, -c.sign))
    visits.sort(key=lambda v: (v[0], v[1]))
    first_pos: dict[int, int] = {}
    N = len(visits)
    twin = [0] * N
    for pos, v in enumerate(visits, 1):
        cid = v[2]
        if cid in first_pos:
            twin[pos - 1] = first_pos[cid]
            twin[first_pos[cid] - 1] = pos
        else:
            first_pos[cid] = pos
    code = SignedCrossingCode(twin, [v[3] for v in visits])
    return code, EdgeCode(tuple(v[0] for v in visits))


def extract_codes(P: Polygon) -> list[Extraction]:
    """One extraction per convex hull vertex, directed to keep the outside on the right."""
    _require_generic(P)
    out = []
    m = P.m
    for h in hull_vertices(P):
        prev, here, nxt = P.vertices[(h - 2) % m], P.vertices[h - 1], P.vertices[h % m]
        rev = orient(prev, here, nxt) < 0
        Q = P.reindexed(h, reverse=rev)
        code, edge = walk_code(Q)
        out.append(Extraction(code, edge, h, rev, Q))
    return out


def leftmost_extraction(P: Polygon) -> Extraction:
    """The extraction whose basepoint is the leftmost vertex."""
    left = min(range(P.m), key=lambda k: P.vertices[k].x) + 1
    for ex in extract_codes(P):
        if ex.basepoint == left:
            return ex
    raise AssertionError("leftmost vertex is always a hull vertex")


def is_isotopic(P: Polygon, target: SignedCrossingCode) -> bool:
    _require_generic(P)
    if not validate(target).valid:
        raise NotRealizable(f"target code is not realizable: {validate(target).problems}")
    xs, ys = kernel.integer_coordinates(P.vertices)
    if len(kernel.crossing_pairs(xs, ys)) != target.n:
        return False
    targets = equivalent_codes(target)
    return any(ex.code in targets for ex in extract_codes(P))
