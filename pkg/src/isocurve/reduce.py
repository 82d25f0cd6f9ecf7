"""Curves built from pseudoline arrangements, and polygons built from lines.

A wiring diagram on ``n`` wires lists adjacent swaps from left to right.
Wires are numbered 1..n from top to bottom at the far left.  Its curve
truncates the wires, then joins left endpoints 2-3, 4-5, ... and right
endpoints 1-2, 3-4, ... with looped connectors, and joins the top-left
endpoint of wire 1 to the top-right endpoint of wire n over the top.  Each
connector carries two small loops facing away from the arrangement.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

from isocurve.codes import SignedCrossingCode, codes_isotopic
from isocurve.exact_geom import Point, rational
from isocurve.polyscan import Polygon, extract_codes, is_generic

_DATA = Path(__file__).with_name("data")


class InvalidWiring(ValueError):
    pass


class EvenN(ValueError):
    pass


class BadArrangement(ValueError):
    pass


class TiedAbscissae(BadArrangement):
    pass


class StapleFailed(RuntimeError):
    pass


# -- wiring diagrams ---------------------------------------------------------


@dataclass(frozen=True)
class WiringDiagram:
    n: int
    swaps: tuple[int, ...]

    def __init__(self, n: int, swaps: Sequence[int]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "swaps", tuple(int(s) for s in swaps))

    def crossings(self) -> list[tuple[int, int]]:
        """(upper wire, lower wire) for each swap, in order.  Assumes legal swaps."""
        perm = list(range(1, self.n + 1))
        out = []
        for k in self.swaps:
            a, b = perm[k - 1], perm[k]
            out.append((a, b))
            perm[k - 1], perm[k] = b, a
        return out

    def to_dict(self) -> dict:
        return {"n": self.n, "swaps": list(self.swaps)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "WiringDiagram":
        try:
            return cls(data["n"], data["swaps"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidWiring(f"malformed wiring record: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "WiringDiagram":
        return cls.from_dict(json.loads(text))


@dataclass
class WiringReport:
    legal_swaps: bool = True
    each_pair_once: bool = True
    problems: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.legal_swaps and self.each_pair_once

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "legal_swaps": self.legal_swaps,
            "each_pair_once": self.each_pair_once,
            "problems": list(self.problems),
        }


def validate_wiring(w: WiringDiagram) -> WiringReport:
    rep = WiringReport()
    if w.n < 1:
        rep.legal_swaps = False
        rep.problems.append("a diagram needs at least one wire")
        return rep
    perm = list(range(1, w.n + 1))
    seen: dict[frozenset, int] = {}
    for t, k in enumerate(w.swaps, 1):
        if not 1 <= k < w.n:
            rep.legal_swaps = False
            rep.problems.append(f"swap {t} at position {k} is outside 1..{w.n - 1}")
            continue
        a, b = perm[k - 1], perm[k]
        pair = frozenset((a, b))
        if pair in seen:
            rep.each_pair_once = False
            rep.problems.append(f"wires {min(a, b)} and {max(a, b)} cross again at swap {t}")
        seen[pair] = t
        perm[k - 1], perm[k] = b, a
    missing = [(a, b) for a, b in combinations(range(1, w.n + 1), 2) if frozenset((a, b)) not in seen]
    if missing:
        rep.each_pair_once = False
        a, b = missing[0]
        rep.problems.append(f"{len(missing)} wire pairs never cross, e.g. {a} and {b}")
    return rep


def _require_valid(w: WiringDiagram) -> None:
    rep = validate_wiring(w)
    if not rep.valid:
        raise InvalidWiring("; ".join(rep.problems))


def pad_to_odd(w: WiringDiagram) -> WiringDiagram:
    """Add a new top wire that crosses every other wire after all old crossings."""
    _require_valid(w)
    if w.n % 2:
        return w
    swaps = [k + 1 for k in w.swaps] + list(range(1, w.n + 1))
    return WiringDiagram(w.n + 1, swaps)


def curve_from_arrangement(w: WiringDiagram) -> SignedCrossingCode:
    """Signed crossing code of the looped curve of ``w``.

    The basepoint sits in the middle of the top connector, walking west.
    Wire k is then walked eastward when k is odd and westward when even.
    """
    _require_valid(w)
    if w.n % 2 == 0:
        raise EvenN(f"the curve needs an odd number of wires, got {w.n}; use pad_to_odd")
    n = w.n
    # per wire: (crossing id, the other wire, this wire is the upper one)
    on_wire: dict[int, list[tuple[int, int, bool]]] = {k: [] for k in range(1, n + 1)}
    for cid, (a, b) in enumerate(w.crossings()):
        on_wire[a].append((cid, b, True))
        on_wire[b].append((cid, a, False))

    def direction(k: int) -> int:
        return 1 if k % 2 else -1

    next_id = len(w.swaps)
    visits: list[tuple[int, int]] = []  # (crossing id, sign)

    def loop() -> None:
        nonlocal next_id
        visits.append((next_id, -1))
        visits.append((next_id, 1))
        next_id += 1

    loop()  # top connector, near the top-left end
    for k in range(1, n + 1):
        events = on_wire[k] if direction(k) > 0 else on_wire[k][::-1]
        for cid, other, upper in events:
            s = -direction(k) * direction(other)
            visits.append((cid, s if upper else -s))
        if k < n:
            loop()
            loop()
    loop()  # top connector, near the top-right end

    first: dict[int, int] = {}
    twin = [0] * len(visits)
    for pos, (cid, _) in enumerate(visits, 1):
        if cid in first:
            twin[pos - 1] = first[cid]
            twin[first[cid] - 1] = pos
        else:
            first[cid] = pos
    return SignedCrossingCode(twin, [s for _, s in visits])


def fringe_positions(code: SignedCrossingCode) -> list[int]:
    """Positions i whose crossing closes a one-arc loop (twin[i] == i + 1)."""
    N = len(code.twin)
    return [i for i in range(1, N + 1) if code.twin[i - 1] == i % N + 1]


def ringel() -> WiringDiagram:
    """Built-in simple non-stretchable arrangement of 9 pseudolines."""
    return WiringDiagram.from_json((_DATA / "ringel9.json").read_text())


# -- line arrangements -------------------------------------------------------


@dataclass(frozen=True)
class LineArrangement:
    lines: tuple[tuple[Fraction, Fraction], ...]  # (slope, intercept)

    def __init__(self, lines: Sequence):
        object.__setattr__(self, "lines", tuple((rational(a), rational(b)) for a, b in lines))

    @property
    def n(self) -> int:
        return len(self.lines)

    def y(self, i: int, x: Fraction) -> Fraction:
        a, b = self.lines[i - 1]
        return a * x + b

    def point(self, i: int, x: Fraction) -> Point:
        return Point(Fraction(x), self.y(i, x))

    def intersection_x(self, i: int, j: int) -> Fraction:
        (a1, b1), (a2, b2) = self.lines[i - 1], self.lines[j - 1]
        return (b2 - b1) / (a1 - a2)

    def to_dict(self) -> dict:
        return {"lines": [[str(a), str(b)] for a, b in self.lines]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "LineArrangement":
        try:
            return cls(data["lines"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise BadArrangement(f"malformed arrangement record: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "LineArrangement":
        return cls.from_dict(json.loads(text))


def check_arrangement(L: LineArrangement) -> None:
    if L.n < 2:
        raise BadArrangement("need at least two lines")
    slopes = [a for a, _ in L.lines]
    for a in slopes:
        if not -1 < a < 1:
            raise BadArrangement(f"slope {a} is not strictly between -1 and 1")
    for s, t in zip(slopes, slopes[1:]):
        if not s < t:
            raise BadArrangement("slopes must be strictly increasing")
    for i, j in combinations(range(1, L.n + 1), 2):
        x = L.intersection_x(i, j)
        if not -1 < x < 1:
            raise BadArrangement(f"lines {i} and {j} meet at x={x}, outside (-1, 1)")


def wiring_of_lines(L: LineArrangement) -> WiringDiagram:
    check_arrangement(L)
    events = []
    for i, j in combinations(range(1, L.n + 1), 2):
        x = L.intersection_x(i, j)
        events.append((x, L.y(i, x), i, j))
    events.sort()
    for (x0, y0, i0, j0), (x1, y1, i1, j1) in zip(events, events[1:]):
        if x0 == x1:
            if y0 == y1:
                raise BadArrangement(f"lines {sorted({i0, j0, i1, j1})} are concurrent at ({x0}, {y0})")
            raise TiedAbscissae(f"crossings {i0}x{j0} and {i1}x{j1} share x={x0}")
    perm = list(range(1, L.n + 1))
    swaps = []
    for _, _, i, j in events:
        k = perm.index(i)
        if perm[k + 1] != j:
            raise AssertionError("crossing lines must be adjacent in the sweep")
        swaps.append(k + 1)
        perm[k], perm[k + 1] = j, i
    return WiringDiagram(L.n, swaps)


def random_arrangement(n: int, rng: random.Random, denominator: int = 64) -> LineArrangement:
    """Random line arrangement meeting the staple preconditions with distinct abscissae."""
    while True:
        slopes = sorted({Fraction(rng.randint(-denominator + 1, denominator - 1), denominator) for _ in range(n)})
        if len(slopes) < n:
            continue
        icpts = [Fraction(rng.randint(-denominator, denominator), 4 * denominator) for _ in range(n)]
        L = LineArrangement(list(zip(slopes, icpts)))
        try:
            wiring_of_lines(L)
        except BadArrangement:
            continue
        return L


# -- staples ---------------------------------------------------------------

X_END = Fraction(5, 4)


def staple_polygon(L: LineArrangement, epsilon, seed: int = 0) -> Polygon:
    """The 4n-gon joining truncated lines with staples, jittered for genericity.

    Endpoints slide along their lines and staple bends move by at most
    ``epsilon**2 / 8``; whether the result is generic and has the intended
    code depends on ``epsilon`` being small enough, see :func:`stapled`.
    """
    check_arrangement(L)
    n = L.n
    if n % 2 == 0:
        raise EvenN(f"staples need an odd number of lines, got {n}")
    eps = rational(epsilon)
    if not 0 < eps < Fraction(1, 4):
        raise ValueError("epsilon must lie in (0, 1/4)")
    rng = random.Random(seed)
    tiny = eps * eps / 8

    def jitter() -> Fraction:
        return tiny * Fraction(rng.randint(-(2**30) + 1, 2**30 - 1), 2**30)

    def end(i: int, side: int) -> Point:
        return L.point(i, side * X_END + jitter())

    def bend(p: Point, dx, dy) -> Point:
        return Point(p.x + dx + jitter(), p.y + dy + jitter())

    p = {i: end(i, -1) for i in range(1, n + 1)}
    q = {i: end(i, 1) for i in range(1, n + 1)}
    verts: list[Point] = []
    for k in range(1, n + 1):
        if k % 2:
            verts += [p[k], q[k]]
            if k < n:  # right staple to wire k + 1
                verts += [bend(q[k], -eps, -eps), bend(q[k + 1], -eps, eps)]
        else:
            verts += [q[k], p[k]]
            verts += [bend(p[k], eps, eps), bend(p[k + 1], eps, -eps)]
    verts += [bend(q[n], -eps, -eps), bend(p[1], eps, -eps)]
    return Polygon(verts)


@dataclass(frozen=True)
class StapleResult:
    polygon: Polygon
    epsilon: Fraction
    code: SignedCrossingCode


def stapled(L: LineArrangement, epsilon=Fraction(1, 8), seed: int = 0, max_halvings: int = 40) -> StapleResult:
    """Halve ``epsilon`` until the staple polygon is generic and has the expected code."""
    target = curve_from_arrangement(wiring_of_lines(L))
    eps = rational(epsilon)
    for attempt in range(max_halvings + 1):
        P = staple_polygon(L, eps, seed + attempt)
        if is_generic(P):
            for ex in extract_codes(P):
                if ex.code.n == target.n and codes_isotopic(target, ex.code):
                    return StapleResult(P, eps, target)
        eps /= 2
    raise StapleFailed(f"no suitable epsilon down to {eps}")
