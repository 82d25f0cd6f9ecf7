"""Polygons for curves: a constructive upper bound and a solver-backed search.

The upper bound draws the image graph with straight edges.  Each arc is
subdivided twice, every face is triangulated by a ring of corner vertices
(plus a center for bounded faces), and the result is drawn with Tutte's
barycentric method using exact rational arithmetic.  Walking the curve through
the drawn vertices gives a polygon with 3 vertices per arc, 6n in all, which
is nudged into general position and checked by re-extracting its code.
"""

from __future__ import annotations

import math
import os
import random
import re
import shlex
import subprocess
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import flint

from isocurve.codes import NotRealizable, SignedCrossingCode, image_graph, validate
from isocurve.etrc import isotopic_to_polygon, to_smt2
from isocurve.exact_geom import Point
from isocurve.polyscan import Polygon, is_generic, is_isotopic


class PerturbationFailed(RuntimeError):
    pass


class SolverUnavailable(RuntimeError):
    pass


class ModelParseFailure(ValueError):
    pass


# -- straight-line drawing ---------------------------------------------------


def _arc_vertices(n: int, k: int) -> tuple[int, int]:
    """Graph ids of the two subdivision vertices of arc k (near its tail first)."""
    return n + 2 * (k - 1), n + 2 * (k - 1) + 1


def _sub_walk(pm, dart: int) -> list[int]:
    """Start vertices of the three pieces of a subdivided dart."""
    n = pm.n
    k = dart // 2 + 1
    s1, s2 = _arc_vertices(n, k)
    start = pm.vertex_of[dart]
    return [start, s1, s2] if dart % 2 == 0 else [start, s2, s1]


def _convex_ring(count: int) -> list[tuple[Fraction, Fraction]]:
    """Rational points on the unit circle in counterclockwise order."""
    pts = []
    for i in range(count):
        theta = -math.pi + 2 * math.pi * (i + 0.5) / count
        t = Fraction(math.tan(theta / 2)).limit_denominator(1 << 16)
        d = 1 + t * t
        pts.append(((1 - t * t) / d, 2 * t / d))
    return pts


def draw_image_graph(code: SignedCrossingCode) -> tuple[list[Point], int]:
    """Exact straight-line drawing of the twice-subdivided image graph.

    Returns the coordinates of the crossing vertices (ids 0..n-1) followed by
    the subdivision vertices, and n.
    """
    pm = image_graph(code)
    n = pm.n
    base = 5 * n  # crossings + two per arc
    adj: dict[int, set[int]] = {v: set() for v in range(base)}

    def link(a: int, b: int) -> None:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)

    for k in range(1, 2 * n + 1):
        s1, s2 = _arc_vertices(n, k)
        link(pm.vertex_of[2 * (k - 1)], s1)
        link(s1, s2)
        link(s2, pm.vertex_of[2 * (k - 1) + 1])

    next_id = base
    fixed: dict[int, tuple[Fraction, Fraction]] = {}
    for f, darts in enumerate(pm.faces):
        walk = [v for d in darts for v in _sub_walk(pm, d)]
        L = len(walk)
        ring = list(range(next_id, next_id + L))
        next_id += L
        for i in range(L):
            link(ring[i], walk[i])
            link(ring[i], walk[(i + 1) % L])
            link(ring[i], ring[(i + 1) % L])
        if f == pm.outer_face:
            for v, xy in zip(ring, _convex_ring(L)):
                fixed[v] = xy
        else:
            center = next_id
            next_id += 1
            for w in ring:
                link(center, w)

    free = [v for v in sorted(adj) if v not in fixed]
    index = {v: i for i, v in enumerate(free)}
    size = len(free)
    A = [0] * (size * size)
    B = [Fraction(0)] * (size * 2)
    for v in free:
        r = index[v]
        A[r * size + r] = len(adj[v])
        for u in adj[v]:
            if u in fixed:
                B[2 * r] += fixed[u][0]
                B[2 * r + 1] += fixed[u][1]
            else:
                A[r * size + index[u]] -= 1
    X = flint.fmpq_mat(size, size, A).solve(flint.fmpq_mat(size, 2, [flint.fmpq(b.numerator, b.denominator) for b in B]))

    def frac(q) -> Fraction:
        return Fraction(int(q.p), int(q.q))

    pts = [Point(frac(X[index[v], 0]), frac(X[index[v], 1])) for v in range(base)]
    return pts, n


def curve_tour(code: SignedCrossingCode, pts: list[Point]) -> list[Point]:
    """Crossing vertex then both subdivision vertices, arc by arc."""
    pm = image_graph(code)
    n = pm.n
    out = []
    for k in range(1, 2 * n + 1):
        s1, s2 = _arc_vertices(n, k)
        out += [pts[pm.vertex_of[2 * (k - 1)]], pts[s1], pts[s2]]
    return out


def _round(v: Fraction, bits: int) -> Fraction:
    return Fraction(round(v * (1 << bits)), 1 << bits)


def _second_pass_offsets(tour: list[Point]) -> dict[int, tuple[Fraction, Fraction]]:
    """Direction to move the second visit of each crossing so the strands cross once.

    The first strand through a crossing c is a wedge with arms towards its
    neighbours.  The second visit moves into the convex side of that wedge,
    the side holding one of its own arms; its other arm then leaves the
    wedge exactly once.
    """
    N = len(tour)
    seen: dict[Point, int] = {}
    offsets = {}
    for k in range(0, N, 3):
        c = tour[k]
        if c not in seen:
            seen[c] = k
            continue
        i = seen[c]
        u1 = _sub(tour[(i - 1) % N], c)
        u3 = _sub(tour[(i + 1) % N], c)
        pj = _sub(tour[(k - 1) % N], c)
        cr = u1[0] * u3[1] - u1[1] * u3[0]
        if cr == 0:
            # straight wedge: move perpendicular, towards the side of pj
            perp = (-u1[1], u1[0])
            side = perp[0] * pj[0] + perp[1] * pj[1]
            w = perp if side > 0 else (-perp[0], -perp[1])
        else:
            n1 = max(abs(u1[0]), abs(u1[1]))
            n3 = max(abs(u3[0]), abs(u3[1]))
            w = (u1[0] / n1 + u3[0] / n3, u1[1] / n1 + u3[1] / n3)
        m = max(abs(w[0]), abs(w[1]))
        offsets[k] = (w[0] / m, w[1] / m)
    return offsets


def _sub(p: Point, q: Point) -> tuple[Fraction, Fraction]:
    return (p.x - q.x, p.y - q.y)


@dataclass(frozen=True)
class StraightenResult:
    polygon: Polygon
    vertex_count: int
    verified: bool
    delta: Fraction = Fraction(0)

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "verified": self.verified,
            "polygon": self.polygon.to_dict(),
        }


def straighten_upperbound(code: SignedCrossingCode, seed: int = 0, max_halvings: int = 64) -> StraightenResult:
    """A generic polygon with at most 6n vertices isotopic to ``code``'s curve."""
    rep = validate(code)
    if not rep.valid:
        raise NotRealizable("; ".join(rep.problems))
    if code.n == 0:
        tri = Polygon([(0, 0), (1, 0), (Fraction(1, 3), 1)])
        return StraightenResult(tri, 3, is_isotopic(tri, code))
    pts, _ = draw_image_graph(code)
    tour = curve_tour(code, pts)
    offsets = _second_pass_offsets(tour)
    scale = min(
        (abs(a - b) for p in tour for q in tour if p != q for a, b in ((p.x, q.x), (p.y, q.y)) if a != b),
        default=Fraction(1),
    )
    delta = scale / 4
    for attempt in range(max_halvings + 1):
        rng = random.Random(seed * 1000003 + attempt)
        bits = max(40, 3 * (delta.denominator.bit_length() - delta.numerator.bit_length()) + 24)
        verts = []
        for k, p in enumerate(tour):
            ox, oy = offsets.get(k, (0, 0))
            jx = Fraction(rng.randint(-(1 << 20), 1 << 20), 1 << 20)
            jy = Fraction(rng.randint(-(1 << 20), 1 << 20), 1 << 20)
            x = p.x + delta * ox + delta * delta * jx
            y = p.y + delta * oy + delta * delta * jy
            verts.append((_round(x, bits), _round(y, bits)))
        P = Polygon(verts)
        if is_generic(P) and is_isotopic(P, code):
            return StraightenResult(P, P.m, True, delta)
        delta /= 2
    raise PerturbationFailed(f"no generic isotopic perturbation after {max_halvings} halvings")


# -- solver search -----------------------------------------------------------

DEFAULT_TIMEOUT = 60


def solver_command(cmd: Optional[str] = None) -> list[str]:
    return shlex.split(cmd or os.environ.get("SOLVER_CMD") or "z3")


@dataclass
class SolverAnswer:
    status: str  # "sat", "unsat" or "unknown"
    model: dict[str, str] = field(default_factory=dict)
    raw: str = ""


def run_solver(smt2: str, timeout: float = DEFAULT_TIMEOUT, cmd: Optional[str] = None) -> SolverAnswer:
    argv = solver_command(cmd)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "query.smt2")
        with open(path, "w") as fh:
            fh.write(smt2)
        try:
            res = subprocess.run(argv + [path], capture_output=True, text=True, timeout=timeout)
        except FileNotFoundError as exc:
            raise SolverUnavailable(f"solver command {argv[0]!r} not found") from exc
        except subprocess.TimeoutExpired:
            return SolverAnswer("unknown", raw="timeout")
    out = res.stdout
    first = out.strip().split("\n", 1)[0].strip() if out.strip() else ""
    if first not in ("sat", "unsat", "unknown"):
        return SolverAnswer("unknown", raw=out + res.stderr)
    return SolverAnswer(first, raw=out)


_SEXP_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def _sexps(text: str):
    stack: list[list] = [[]]
    for m in _SEXP_TOKEN.finditer(text):
        t = m.group(1)
        if t == "(":
            stack.append([])
        elif t == ")":
            if len(stack) == 1:
                raise ModelParseFailure("unbalanced parenthesis")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(t)
    if len(stack) != 1:
        raise ModelParseFailure("unbalanced parenthesis")
    return stack[0]


def _number(tok: str, dps: int) -> Fraction:
    tok = tok.rstrip("?")
    try:
        return Fraction(tok)
    except ValueError:
        raise ModelParseFailure(f"not a number: {tok!r}") from None


def _poly_coeffs(expr, dps: int) -> dict[int, Fraction]:
    """Coefficients of a univariate polynomial in x given as an s-expression."""
    if isinstance(expr, str):
        if expr == "x":
            return {1: Fraction(1)}
        return {0: _number(expr, dps)}
    op, *args = expr
    parts = [_poly_coeffs(a, dps) for a in args]
    if op == "+":
        out: dict[int, Fraction] = {}
        for p in parts:
            for k, v in p.items():
                out[k] = out.get(k, 0) + v
        return out
    if op == "-":
        if len(parts) == 1:
            return {k: -v for k, v in parts[0].items()}
        out = dict(parts[0])
        for p in parts[1:]:
            for k, v in p.items():
                out[k] = out.get(k, 0) - v
        return out
    if op == "*":
        out = {0: Fraction(1)}
        for p in parts:
            nxt: dict[int, Fraction] = {}
            for a, u in out.items():
                for b, v in p.items():
                    nxt[a + b] = nxt.get(a + b, 0) + u * v
            out = nxt
        return out
    if op == "^":
        base = parts[0]
        e = int(args[1])
        out = {0: Fraction(1)}
        for _ in range(e):
            nxt = {}
            for a, u in out.items():
                for b, v in base.items():
                    nxt[a + b] = nxt.get(a + b, 0) + u * v
            out = nxt
        return out
    raise ModelParseFailure(f"unsupported polynomial operator {op!r}")


def _value(expr, dps: int, max_den: int) -> Fraction:
    if isinstance(expr, str):
        return _number(expr, dps)
    op, *args = expr
    if op == "root-obj":
        import mpmath

        coeffs = _poly_coeffs(args[0], dps)
        idx = int(args[1])
        deg = max(coeffs)
        with mpmath.workdps(dps):
            cs = [mpmath.mpf(coeffs.get(k, 0).numerator) / coeffs.get(k, 0).denominator for k in range(deg, -1, -1)]
            roots = mpmath.polyroots(cs, maxsteps=200, extraprec=4 * dps)
            real = sorted(mpmath.re(r) for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** (-dps // 2))
            if not 1 <= idx <= len(real):
                raise ModelParseFailure(f"root index {idx} out of range")
            return Fraction(mpmath.nstr(real[idx - 1], dps, min_fixed=-dps, max_fixed=dps)).limit_denominator(max_den)
    vals = [_value(a, dps, max_den) for a in args]
    if op == "-":
        return -vals[0] if len(vals) == 1 else vals[0] - sum(vals[1:])
    if op == "+":
        return sum(vals, Fraction(0))
    if op == "*":
        out = Fraction(1)
        for v in vals:
            out *= v
        return out
    if op == "/":
        return vals[0] / vals[1]
    raise ModelParseFailure(f"unsupported model expression {op!r}")


def parse_model(text: str, max_den: int = 1 << 64, dps: int = 40) -> dict[str, Fraction]:
    """Variable values from a SMT-LIB ``(get-model)`` answer."""
    body = text.strip()
    if body.startswith("sat"):
        body = body[3:]
    out = {}
    for top in _sexps(body):
        if not isinstance(top, list):
            continue
        items = top[1:] if top and top[0] == "model" else top
        for item in items:
            if isinstance(item, list) and len(item) == 5 and item[0] == "define-fun":
                _, name, params, sort, expr = item
                if params == [] and sort == "Real":
                    v = _value(expr, dps, max_den)
                    out[name] = v.limit_denominator(max_den) if v.denominator > max_den else v
    if not out:
        raise ModelParseFailure("no real constants in model")
    return out


@dataclass
class MOutcome:
    m: int
    status: str  # "sat", "unsat", "unknown"
    witness: Optional[Polygon] = None
    detail: str = ""

    def to_dict(self) -> dict:
        d = {"m": self.m, "status": self.status, "detail": self.detail}
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        return d


@dataclass
class MinSearchReport:
    outcomes: list[MOutcome] = field(default_factory=list)
    solver_available: bool = True
    upper_bound: Optional[int] = None

    @property
    def best_m(self) -> Optional[int]:
        sat = [o.m for o in self.outcomes if o.status == "sat" and o.witness is not None]
        if sat:
            return min(sat)
        return self.upper_bound

    def outcome(self, m: int) -> Optional[MOutcome]:
        for o in self.outcomes:
            if o.m == m:
                return o
        return None

    def to_dict(self) -> dict:
        return {
            "solver_available": self.solver_available,
            "best_m": self.best_m,
            "upper_bound": self.upper_bound,
            "outcomes": [o.to_dict() for o in self.outcomes],
        }


def _witness(model_text: str, code: SignedCrossingCode, m: int) -> tuple[Optional[Polygon], str]:
    for max_den, dps in ((1 << 64, 40), (1 << 128, 80)):
        try:
            vals = parse_model(model_text, max_den, dps)
        except ModelParseFailure as exc:
            return None, f"model parse failure: {exc}"
        try:
            P = Polygon([(vals.get(f"x{i}", Fraction(0)), vals.get(f"y{i}", Fraction(0))) for i in range(1, m + 1)])
        except ValueError as exc:
            return None, f"bad witness: {exc}"
        Q = _nudge_to_generic(P, code)
        if Q is not None:
            return Q, ""
    return None, "witness failed exact re-verification"


def _nudge_to_generic(P: Polygon, code: SignedCrossingCode, tries: int = 24) -> Optional[Polygon]:
    """P itself, or a tiny perturbation of it, that is generic and isotopic to ``code``.

    The sentence only keeps consecutive vertices apart in x, so a solver may
    return shared abscissae that the stricter genericity test rejects.
    """
    if is_generic(P) and is_isotopic(P, code):
        return P
    coords = [c for p in P.vertices for c in (p.x, p.y)]
    gaps = [abs(a - b) for a in coords for b in coords if a != b]
    step = min(gaps, default=Fraction(1)) / 16
    rng = random.Random(0)
    for _ in range(tries):
        Q = Polygon(
            [
                (p.x + step * Fraction(rng.randint(-1024, 1024), 1024), p.y + step * Fraction(rng.randint(-1024, 1024), 1024))
                for p in P.vertices
            ]
        )
        if is_generic(Q) and is_isotopic(Q, code):
            return Q
        step /= 2
    return None


def check_m(code: SignedCrossingCode, m: int, timeout: float = DEFAULT_TIMEOUT, cmd: Optional[str] = None, prune: bool = True) -> MOutcome:
    """Ask the solver whether some generic m-gon realizes ``code``; SAT answers are re-verified."""
    ans = run_solver(to_smt2(isotopic_to_polygon(code, m, prune)), timeout, cmd)
    if ans.status != "sat":
        return MOutcome(m, ans.status, detail=ans.raw if ans.status == "unknown" else "")
    P, why = _witness(ans.raw, code, m)
    if P is None:
        return MOutcome(m, "unknown", detail=why)
    return MOutcome(m, "sat", P)


def min_polygon_search(
    code: SignedCrossingCode,
    m_max: int,
    m_min: int = 3,
    timeout: float = DEFAULT_TIMEOUT,
    cmd: Optional[str] = None,
    stop_at_first_sat: bool = True,
) -> MinSearchReport:
    rep = validate(code)
    if not rep.valid:
        raise NotRealizable("; ".join(rep.problems))
    if m_max < 3:
        raise ValueError("m_max must be at least 3")
    report = MinSearchReport()
    try:
        report.upper_bound = straighten_upperbound(code).vertex_count
    except PerturbationFailed:
        report.upper_bound = None
    for m in range(max(3, m_min), m_max + 1):
        try:
            out = check_m(code, m, timeout, cmd)
        except SolverUnavailable as exc:
            report.solver_available = False
            report.outcomes.append(MOutcome(m, "unknown", detail=str(exc)))
            break
        report.outcomes.append(out)
        if stop_at_first_sat and out.status == "sat":
            break
    return report
