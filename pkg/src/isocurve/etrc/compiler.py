"""Compile "is this curve isotopic to an m-gon?" into an existential sentence.

Variables: vertex coordinates ``x{i}``, ``y{i}``; edge code entries
``edge{i}``; crossing indicators ``X{i}_{j}``; and coordinates
``px{e}_{f}``, ``py{e}_{f}`` of the point where the lines through edges
``e`` and ``f`` meet.  Indices are 1-based and taken mod ``m``.

With ``prune=True`` (the default) the compiler skips edge pairs that can
never cross in a generic polygon (equal or cyclically adjacent edges) and
requires every consecutive crossing pair to be ordered.  With
``prune=False`` it emits the literal construction, including index ranges
that touch adjacent edges and the disjunction over ordered pairs.
"""

from __future__ import annotations

from fractions import Fraction

from isocurve.codes import (
    InvalidCode,
    NotRealizable,
    SignedCrossingCode,
    equivalent_codes,
    validate,
)
from isocurve.etrc.formula import (
    FALSE,
    TRUE,
    Atom,
    Const,
    Exists,
    Not,
    Sub,
    Var,
    add,
    conj,
    disj,
    mul,
    variable_sort_key,
    variables_of,
)


class Compiler:
    """Builds subformulas for fixed ``m`` and shares repeated polynomials."""

    def __init__(self, m: int, prune: bool = True):
        if m < 3:
            raise ValueError("m must be at least 3")
        self.m = m
        self.prune = prune
        self._vars: dict[str, Var] = {}
        self._consts: dict[int, Const] = {}
        self._delta: dict = {}
        self._cross: dict = {}
        self._cross_signed: dict = {}
        self._eq: dict = {}
        self._rows: dict = {}
        self._ordered: dict = {}
        self._good = None

    # -- leaves ------------------------------------------------------------

    def var(self, name: str) -> Var:
        v = self._vars.get(name)
        if v is None:
            v = self._vars[name] = Var(name)
        return v

    def const(self, k: int) -> Const:
        c = self._consts.get(k)
        if c is None:
            c = self._consts[k] = Const(k)
        return c

    def idx(self, i: int) -> int:
        return (i - 1) % self.m + 1

    def p(self, i: int):
        i = self.idx(i)
        return self.var(f"x{i}"), self.var(f"y{i}")

    def pint(self, e: int, f: int):
        return self.var(f"px{e}_{f}"), self.var(f"py{e}_{f}")

    def edge(self, i: int) -> Var:
        return self.var(f"edge{i}")

    def adjacent_or_equal(self, e: int, f: int) -> bool:
        return (f - e) % self.m in (0, 1, self.m - 1)

    # -- polynomial primitives ---------------------------------------------

    def det(self, P, Q, R):
        """(x_P - x_R)(y_Q - y_R) - (y_P - y_R)(x_Q - x_R)."""
        (xp, yp), (xq, yq), (xr, yr) = P, Q, R
        return Sub(mul(Sub(xp, xr), Sub(yq, yr)), mul(Sub(yp, yr), Sub(xq, xr)))

    def delta(self, i: int, j: int, k: int):
        key = (self.idx(i), self.idx(j), self.idx(k))
        d = self._delta.get(key)
        if d is None:
            d = self._delta[key] = self.det(self.p(i), self.p(j), self.p(k))
        return d

    def parallel_poly(self, i: int, j: int):
        (xi, yi), (xi1, yi1) = self.p(i), self.p(i + 1)
        (xj, yj), (xj1, yj1) = self.p(j), self.p(j + 1)
        return Sub(mul(Sub(xi1, xi), Sub(yj1, yj)), mul(Sub(yi1, yi), Sub(xj1, xj)))

    def _line_row(self, i: int):
        row = self._rows.get(i)
        if row is None:
            (x0, y0), (x1, y1) = self.p(i), self.p(i + 1)
            row = self._rows[i] = (Sub(y1, y0), Sub(x0, x1), Sub(mul(x1, y0), mul(x0, y1)))
        return row

    def concurrent_poly(self, i: int, j: int, k: int):
        (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = (self._line_row(t) for t in (i, j, k))
        return add(
            Sub(
                mul(a1, Sub(mul(b2, c3), mul(c2, b3))),
                mul(b1, Sub(mul(a2, c3), mul(c2, a3))),
            ),
            mul(c1, Sub(mul(a2, b3), mul(b2, a3))),
        )

    def eq_const(self, v, k: int) -> Atom:
        if not isinstance(v, Var):
            return Atom("=", Sub(v, self.const(k)))
        key = (v.name, k)
        a = self._eq.get(key)
        if a is None:
            a = self._eq[key] = Atom("=", Sub(v, self.const(k)))
        return a

    # -- predicates ----------------------------------------------------------

    def cross(self, i: int, j: int):
        key = (i, j)
        f = self._cross.get(key)
        if f is None:
            f = self._cross[key] = conj(
                [
                    Atom("<", mul(self.delta(i, j, j + 1), self.delta(i + 1, j, j + 1))),
                    Atom("<", mul(self.delta(i, i + 1, j), self.delta(i, i + 1, j + 1))),
                ]
            )
        return f

    def cross_signed(self, i: int, j: int, sign: int):
        key = (i, j, sign)
        f = self._cross_signed.get(key)
        if f is None:
            lt, gt = ("<", ">") if sign > 0 else (">", "<")
            f = self._cross_signed[key] = conj(
                [
                    Atom(lt, self.delta(i, j, j + 1)),
                    Atom(gt, self.delta(i + 1, j, j + 1)),
                    Atom(gt, self.delta(i, i + 1, j)),
                    Atom(lt, self.delta(i, i + 1, j + 1)),
                ]
            )
        return f

    def ordered_p(self, i: int, j: int, k: int):
        if i == j or i == k:
            return FALSE
        key = (i, j, k)
        a = self._ordered.get(key)
        if a is None:
            xi = self.p(i)[0]
            xij = self.pint(i, j)[0]
            xik = self.pint(i, k)[0]
            a = self._ordered[key] = Atom(">", mul(Sub(xi, xij), Sub(xij, xik)))
        return a

    # -- subformulas -------------------------------------------------------

    def good_polygon(self):
        if self._good is not None:
            return self._good
        m = self.m
        parts = []
        for i in range(1, m + 1):
            x_i, x_next = self.p(i)[0], self.p(i + 1)[0]
            parts.append(Atom("!=", Sub(x_i, x_next)))
        x1 = self.p(1)[0]
        for i in range(2, m + 1):
            parts.append(Atom("<=", Sub(x1, self.p(i)[0])))
        parts.append(Atom(">", self.delta(m, 1, 2)))
        for i in range(1, m):
            for j in range(i + 1, m + 1):
                parts.append(Not(Atom("=", self.parallel_poly(i, j))))
        for i in range(1, m - 1):
            for j in range(i + 1, m):
                for k in range(j + 1, m + 1):
                    parts.append(
                        conj(
                            [
                                Atom("!=", self.delta(i, j, k)),
                                Not(Atom("=", self.concurrent_poly(i, j, k))),
                            ]
                        )
                    )
        self._good = conj(parts)
        return self._good

    def crossing_pairs(self) -> list[tuple[int, int]]:
        m = self.m
        pairs = [(i, j) for i in range(1, m - 1) for j in range(i + 2, m + 1)]
        if self.prune:
            pairs = [(i, j) for i, j in pairs if not (i == 1 and j == m)]
        return pairs

    def num_crossings(self, n: int):
        pairs = self.crossing_pairs()
        if not pairs:
            return TRUE if n == 0 else FALSE
        clauses = []
        indicators = []
        for i, j in pairs:
            X = self.var(f"X{i}_{j}")
            indicators.append(X)
            c = self.cross(i, j)
            clauses.append(
                disj(
                    [
                        conj([self.eq_const(X, 1), c]),
                        conj([Atom("=", X), Not(c)]),
                    ]
                )
            )
        clauses.append(self.eq_const(add(*indicators), n) if n else Atom("=", add(*indicators)))
        return conj(clauses)

    def well_formed(self, n: int):
        parts = []
        for i in range(1, 2 * n):
            parts.append(Atom("<=", Sub(self.edge(i), self.edge(i + 1))))
        for i in range(1, 2 * n + 1):
            parts.append(disj([self.eq_const(self.edge(i), e) for e in range(1, self.m + 1)]))
        return conj(parts)

    def _pairs_for(self, e: int):
        for f in range(1, self.m + 1):
            if self.prune and self.adjacent_or_equal(e, f):
                continue
            yield f

    def crossing_signs(self, code: SignedCrossingCode):
        clauses = []
        for i in range(1, 2 * code.n + 1):
            t = code.twin[i - 1]
            s = code.sign[i - 1]
            terms = []
            for e in range(1, self.m + 1):
                for et in self._pairs_for(e):
                    terms.append(
                        conj(
                            [
                                self.eq_const(self.edge(i), e),
                                self.eq_const(self.edge(t), et),
                                self.cross_signed(e, et, s),
                            ]
                        )
                    )
            clauses.append(disj(terms))
        return conj(clauses)

    def intersection_definitions(self):
        parts = []
        for e in range(1, self.m + 1):
            for f in self._pairs_for(e):
                if f == e:
                    continue
                q = self.pint(e, f)
                parts.append(Atom("=", self.det(q, self.p(e), self.p(e + 1))))
                parts.append(Atom("=", self.det(q, self.p(f), self.p(f + 1))))
        return parts

    def ordered_x(self, code: SignedCrossingCode, i: int):
        t, t1 = code.twin[i - 1], code.twin[i]
        terms = []
        for e in range(1, self.m + 1):
            for et in self._pairs_for(e):
                for et2 in self._pairs_for(e):
                    terms.append(
                        conj(
                            [
                                self.eq_const(self.edge(i), e),
                                self.eq_const(self.edge(t), et),
                                self.eq_const(self.edge(t1), et2),
                                self.ordered_p(e, et, et2),
                            ]
                        )
                    )
        return disj([Atom("!=", Sub(self.edge(i), self.edge(i + 1))), disj(terms)])

    def crossing_order(self, code: SignedCrossingCode):
        if code.n == 0:
            return TRUE
        clauses = [self.ordered_x(code, i) for i in range(1, 2 * code.n)]
        order = conj(clauses) if self.prune else disj(clauses)
        return conj(self.intersection_definitions() + [order])

    def coded_polygon(self, code: SignedCrossingCode):
        n = code.n
        return conj(
            [
                self.good_polygon(),
                self.num_crossings(n),
                self.well_formed(n),
                self.crossing_signs(code),
                self.crossing_order(code),
            ]
        )


def _structural(code: SignedCrossingCode) -> None:
    rep = validate(code)
    if not (rep.in_range and rep.involution and rep.fixed_point_free and rep.parity and rep.sign_antisymmetry):
        raise InvalidCode("; ".join(rep.problems))


def _code(twin, sign=None) -> SignedCrossingCode:
    if sign is None:
        sign = [1 if i < t else -1 for i, t in enumerate(twin, 1)]
    code = SignedCrossingCode(twin, sign)
    _structural(code)
    return code


def good_polygon(m: int, prune: bool = True):
    return Compiler(m, prune).good_polygon()


def num_crossings(m: int, n: int, prune: bool = True):
    return Compiler(m, prune).num_crossings(n)


def well_formed(n: int, m: int, prune: bool = True):
    return Compiler(m, prune).well_formed(n)


def crossing_signs(twin, sign, m: int, prune: bool = True):
    return Compiler(m, prune).crossing_signs(_code(twin, sign))


def crossing_order(twin, m: int, prune: bool = True):
    """Ordering clauses; signs are irrelevant here, only ``twin`` is used."""
    return Compiler(m, prune).crossing_order(_code(twin))


def coded_polygon(twin, sign, m: int, prune: bool = True):
    return Compiler(m, prune).coded_polygon(_code(twin, sign))


def sentence(body) -> Exists:
    names = sorted(variables_of(body), key=variable_sort_key)
    return Exists(tuple(names), body)


def isotopic_to_polygon(code: SignedCrossingCode, m: int, prune: bool = True) -> Exists:
    """Sentence that holds iff some generic m-gon is isotopic to ``code``'s curve."""
    rep = validate(code)
    if not rep.valid:
        raise NotRealizable("; ".join(rep.problems))
    comp = Compiler(m, prune)
    body = disj([comp.coded_polygon(c) for c in sorted(equivalent_codes(code))])
    return sentence(body)


def witness_assignment(polygon, edge_entries, prune: bool = True) -> dict[str, Fraction]:
    """Values for every variable of ``coded_polygon`` forced by a concrete polygon.

    ``polygon`` must already be indexed by the code convention (basepoint
    first, counterclockwise at the basepoint) and ``edge_entries`` is its
    edge code.
    """
    from isocurve.exact_geom import ParallelLines, line_intersection, segments_cross

    m = polygon.m
    env: dict[str, Fraction] = {}
    for i, p in enumerate(polygon.vertices, 1):
        env[f"x{i}"] = p.x
        env[f"y{i}"] = p.y
    for i, e in enumerate(edge_entries, 1):
        env[f"edge{i}"] = Fraction(e)
    for i, j in Compiler(m, prune).crossing_pairs():
        env[f"X{i}_{j}"] = Fraction(int(segments_cross(polygon.edge(i), polygon.edge(j))))
    for e in range(1, m + 1):
        for f in range(1, m + 1):
            if e == f:
                continue
            try:
                q = line_intersection(polygon.edge(e), polygon.edge(f))
            except ParallelLines:
                continue
            env[f"px{e}_{f}"] = q.x
            env[f"py{e}_{f}"] = q.y
    return env
