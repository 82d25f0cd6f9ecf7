"""Formula AST for existential sentences over the reals.

Polynomials are trees of :class:`Const`, :class:`Var`, :class:`Add`,
:class:`Sub` and :class:`Mul`; builders share identical subtrees, so the
structure is really a DAG.  Atoms compare a polynomial against zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

OPS = ("=", "<", "<=", "!=", ">", ">=")


class MissingVariable(KeyError):
    pass


@dataclass(frozen=True, slots=True)
class Const:
    value: int


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Add:
    args: tuple


@dataclass(frozen=True, slots=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True, slots=True)
class Mul:
    args: tuple


Poly = Union[Const, Var, Add, Sub, Mul]


@dataclass(frozen=True, slots=True)
class Atom:
    op: str
    poly: Poly

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown comparison {self.op!r}")


@dataclass(frozen=True, slots=True)
class BoolConst:
    value: bool


@dataclass(frozen=True, slots=True)
class Not:
    arg: object


@dataclass(frozen=True, slots=True)
class And:
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("And needs at least two children; use conj()")


@dataclass(frozen=True, slots=True)
class Or:
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("Or needs at least two children; use disj()")


@dataclass(frozen=True, slots=True)
class Exists:
    variables: tuple
    body: object


TRUE = BoolConst(True)
FALSE = BoolConst(False)


def conj(args) -> object:
    args = tuple(a for a in args if a != TRUE)
    if not args:
        return TRUE
    return args[0] if len(args) == 1 else And(args)


def disj(args) -> object:
    args = tuple(args)
    if not args:
        return FALSE
    return args[0] if len(args) == 1 else Or(args)


def add(*args) -> Poly:
    return args[0] if len(args) == 1 else Add(tuple(args))


def mul(*args) -> Poly:
    return args[0] if len(args) == 1 else Mul(tuple(args))


# -- evaluation --------------------------------------------------------------


def _eval_poly(p, env, memo) -> Fraction:
    key = id(p)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    t = type(p)
    if t is Var:
        try:
            v = env[p.name]
        except KeyError:
            raise MissingVariable(p.name) from None
    elif t is Const:
        v = p.value
    elif t is Sub:
        v = _eval_poly(p.left, env, memo) - _eval_poly(p.right, env, memo)
    elif t is Add:
        v = 0
        for a in p.args:
            v += _eval_poly(a, env, memo)
    elif t is Mul:
        v = 1
        for a in p.args:
            v *= _eval_poly(a, env, memo)
    else:
        raise TypeError(f"not a polynomial node: {p!r}")
    memo[key] = (p, v)  # keep p alive so its id is not recycled
    return v


def _compare(op: str, v) -> bool:
    if op == "=":
        return v == 0
    if op == "<":
        return v < 0
    if op == "<=":
        return v <= 0
    if op == "!=":
        return v != 0
    if op == ">":
        return v > 0
    return v >= 0


def evaluate(f, assignment: Mapping[str, Fraction]) -> bool:
    """Exact truth value of ``f`` under ``assignment`` (Fractions or ints)."""
    memo: dict = {}
    if isinstance(f, Exists):
        missing = [v for v in f.variables if v not in assignment]
        if missing:
            raise MissingVariable(missing[0])
        f = f.body

    def ev(g) -> bool:
        t = type(g)
        if t is Atom:
            return _compare(g.op, _eval_poly(g.poly, assignment, memo))
        if t is And:
            return all(ev(a) for a in g.args)
        if t is Or:
            return any(ev(a) for a in g.args)
        if t is Not:
            return not ev(g.arg)
        if t is BoolConst:
            return g.value
        raise TypeError(f"not a formula node: {g!r}")

    return ev(f)


# -- statistics --------------------------------------------------------------


@dataclass(frozen=True)
class FormulaStats:
    variables: int
    atoms: int
    nodes: int
    max_degree: int

    def to_dict(self) -> dict:
        return {
            "variables": self.variables,
            "atoms": self.atoms,
            "nodes": self.nodes,
            "max_degree": self.max_degree,
        }


def _poly_info(p, memo) -> tuple[int, int]:
    """(tree node count, syntactic degree)."""
    key = id(p)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    t = type(p)
    if t is Var:
        info = (1, 1)
    elif t is Const:
        info = (1, 0)
    elif t is Sub:
        a, b = _poly_info(p.left, memo), _poly_info(p.right, memo)
        info = (1 + a[0] + b[0], max(a[1], b[1]))
    else:
        parts = [_poly_info(a, memo) for a in p.args]
        size = 1 + sum(s for s, _ in parts)
        deg = sum(d for _, d in parts) if t is Mul else max(d for _, d in parts)
        info = (size, deg)
    memo[key] = (p, info)
    return info


def variables_of(f) -> set[str]:
    seen: set[int] = set()
    names: set[str] = set()
    keep = []

    def walk(g):
        if id(g) in seen:
            return
        seen.add(id(g))
        keep.append(g)
        t = type(g)
        if t is Var:
            names.add(g.name)
        elif t is Atom:
            walk(g.poly)
        elif t in (And, Or, Add, Mul):
            for a in g.args:
                walk(a)
        elif t is Sub:
            walk(g.left)
            walk(g.right)
        elif t is Not:
            walk(g.arg)
        elif t is Exists:
            names.update(g.variables)
            walk(g.body)

    walk(f)
    return names


def stats(f) -> FormulaStats:
    """Counts over the formula written out as a tree (shared parts repeated)."""
    pmemo: dict = {}
    fmemo: dict = {}

    def info(g) -> tuple[int, int, int]:
        hit = fmemo.get(id(g))
        if hit is not None:
            return hit[1]
        t = type(g)
        if t is Atom:
            size, deg = _poly_info(g.poly, pmemo)
            res = (1, 1 + size, deg)
        elif t in (And, Or):
            parts = [info(a) for a in g.args]
            res = (
                sum(p[0] for p in parts),
                1 + sum(p[1] for p in parts),
                max(p[2] for p in parts),
            )
        elif t is Not:
            a, n, d = info(g.arg)
            res = (a, n + 1, d)
        elif t is BoolConst:
            res = (0, 1, 0)
        elif t is Exists:
            a, n, d = info(g.body)
            res = (a, n + 1, d)
        else:
            raise TypeError(f"not a formula node: {g!r}")
        fmemo[id(g)] = (g, res)
        return res

    atoms, nodes, deg = info(f)
    nvars = len(f.variables) if isinstance(f, Exists) else len(variables_of(f))
    return FormulaStats(nvars, atoms, nodes, deg)


# -- variable naming ---------------------------------------------------------

_VAR_ORDER = re.compile(r"^(x|y|edge|X|px|py)(\d+)(?:_(\d+))?$")
_CATEGORY = {"x": 0, "y": 0, "edge": 1, "X": 2, "px": 3, "py": 3}


def variable_sort_key(name: str):
    m = _VAR_ORDER.match(name)
    if not m:
        return (9, 0, 0, name)
    kind, a, b = m.group(1), int(m.group(2)), int(m.group(3) or 0)
    return (_CATEGORY[kind], a, b, kind)
