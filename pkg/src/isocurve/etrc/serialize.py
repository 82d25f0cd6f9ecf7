"""Text output for formulas: SMT-LIB 2 (QF_NRA) and a readable infix dump.

The infix dialect parses back into an equivalent AST with :func:`parse_infix`.
"""

from __future__ import annotations

import io
import re

from isocurve.etrc.formula import (
    OPS,
    Add,
    And,
    Atom,
    BoolConst,
    Const,
    Exists,
    Mul,
    Not,
    Or,
    Sub,
    Var,
    variable_sort_key,
    variables_of,
    FALSE,
    TRUE,
)

DIALECTS = ("smt2", "infix")


def serialize(f, dialect: str = "smt2") -> str:
    if dialect == "smt2":
        return to_smt2(f)
    if dialect == "infix":
        return to_infix(f)
    raise ValueError(f"unknown dialect {dialect!r}; expected one of {DIALECTS}")


def _declared(f) -> tuple[tuple[str, ...], object]:
    if isinstance(f, Exists):
        return tuple(f.variables), f.body
    return tuple(sorted(variables_of(f), key=variable_sort_key)), f


# -- SMT-LIB -----------------------------------------------------------------


def _smt_const(k: int) -> str:
    return str(k) if k >= 0 else f"(- {-k})"


def to_smt2(f) -> str:
    names, body = _declared(f)
    out = io.StringIO()
    w = out.write
    w("(set-logic QF_NRA)\n")
    for v in names:
        w(f"(declare-fun {v} () Real)\n")
    w("(assert ")
    poly_cache: dict[int, tuple[object, str]] = {}

    def poly(p) -> str:
        hit = poly_cache.get(id(p))
        if hit is not None:
            return hit[1]
        t = type(p)
        if t is Var:
            s = p.name
        elif t is Const:
            s = _smt_const(p.value)
        elif t is Sub:
            s = f"(- {poly(p.left)} {poly(p.right)})"
        elif t is Add:
            s = "(+ " + " ".join(poly(a) for a in p.args) + ")"
        else:
            s = "(* " + " ".join(poly(a) for a in p.args) + ")"
        poly_cache[id(p)] = (p, s)
        return s

    def form(g) -> None:
        t = type(g)
        if t is Atom:
            s = poly(g.poly)
            if g.op == "!=":
                w(f"(not (= {s} 0))")
            else:
                w(f"({g.op} {s} 0)")
        elif t is And or t is Or:
            w("(and" if t is And else "(or")
            for a in g.args:
                w(" ")
                form(a)
            w(")")
        elif t is Not:
            w("(not ")
            form(g.arg)
            w(")")
        elif t is BoolConst:
            w("true" if g.value else "false")
        else:
            raise TypeError(f"not a formula node: {g!r}")

    form(body)
    w(")\n(check-sat)\n(get-model)\n")
    return out.getvalue()


# -- infix -------------------------------------------------------------------


def to_infix(f) -> str:
    names, body = _declared(f)
    out = io.StringIO()
    w = out.write
    w("exists " + ", ".join(names) + ":\n")
    poly_cache: dict[int, tuple[object, str]] = {}

    def poly(p) -> str:
        hit = poly_cache.get(id(p))
        if hit is not None:
            return hit[1]
        t = type(p)
        if t is Var:
            s = p.name
        elif t is Const:
            s = str(p.value) if p.value >= 0 else f"({p.value})"
        elif t is Sub:
            s = f"({poly(p.left)} - {poly(p.right)})"
        else:
            op = " + " if t is Add else " * "
            s = "(" + op.join(poly(a) for a in p.args) + ")"
        poly_cache[id(p)] = (p, s)
        return s

    def form(g) -> None:
        t = type(g)
        if t is Atom:
            w(f"[{poly(g.poly)} {g.op} 0]")
        elif t is And or t is Or:
            sep = " & " if t is And else " | "
            w("(")
            for k, a in enumerate(g.args):
                if k:
                    w(sep)
                form(a)
            w(")")
        elif t is Not:
            w("!")
            form(g.arg)
        elif t is BoolConst:
            w("TRUE" if g.value else "FALSE")
        else:
            raise TypeError(f"not a formula node: {g!r}")

    form(body)
    w("\n")
    return out.getvalue()


_TOKEN = re.compile(r"\s*(<=|>=|!=|-?\d+|[A-Za-z_][A-Za-z_0-9]*|[()\[\]&|!+*=<>:,-])")


class InfixSyntaxError(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InfixSyntaxError(f"unexpected character at offset {pos}: {text[pos:pos + 20]!r}")
        toks.append(m.group(1))
        pos = m.end()
    return toks


def parse_infix(text: str) -> Exists:
    """Inverse of :func:`to_infix`."""
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expect=None):
        nonlocal pos
        if pos >= len(toks):
            raise InfixSyntaxError("unexpected end of input")
        t = toks[pos]
        if expect is not None and t != expect:
            raise InfixSyntaxError(f"expected {expect!r}, got {t!r}")
        pos += 1
        return t

    take("exists")
    names = []
    if peek() != ":":
        names.append(take())
        while peek() == ",":
            take()
            names.append(take())
    take(":")
    vars_: dict[str, Var] = {}

    def poly():
        t = take()
        if t == "(":
            first = poly()
            if peek() == ")":  # parenthesized negative constant
                take()
                return first
            op = take()
            args = [first, poly()]
            while peek() == op:
                take()
                args.append(poly())
            take(")")
            if op == "-":
                if len(args) != 2:
                    raise InfixSyntaxError("subtraction is binary")
                return Sub(args[0], args[1])
            if op == "+":
                return Add(tuple(args))
            if op == "*":
                return Mul(tuple(args))
            raise InfixSyntaxError(f"unknown operator {op!r}")
        if re.fullmatch(r"-?\d+", t):
            return Const(int(t))
        v = vars_.get(t)
        if v is None:
            v = vars_[t] = Var(t)
        return v

    def form():
        t = take()
        if t == "[":
            p = poly()
            op = take()
            if op not in OPS:
                raise InfixSyntaxError(f"unknown comparison {op!r}")
            take("0")
            take("]")
            return Atom(op, p)
        if t == "!":
            return Not(form())
        if t == "TRUE":
            return TRUE
        if t == "FALSE":
            return FALSE
        if t == "(":
            args = [form()]
            sep = peek()
            while peek() == sep and sep in ("&", "|"):
                take()
                args.append(form())
            take(")")
            if len(args) == 1:
                return args[0]
            return And(tuple(args)) if sep == "&" else Or(tuple(args))
        raise InfixSyntaxError(f"unexpected token {t!r}")

    body = form()
    if pos != len(toks):
        raise InfixSyntaxError(f"trailing input at token {toks[pos]!r}")
    return Exists(tuple(names), body)
