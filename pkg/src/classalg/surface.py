"""Infix surface syntax: ``+ * ( ) 0 1`` and identifiers.

``*`` binds tighter than ``+``; both associate to the left.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import SurfaceSyntaxError
from .quote import HAtom, HMult, HOne
from .terms import App, Term, Var

_LEXEME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*|[01]|[+*()=]")


@dataclass(frozen=True)
class Num:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Ident:
    name: str


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out, line, col, i = [], 1, 1, 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if c.isspace():
            col, i = col + 1, i + 1
            continue
        m = _LEXEME.match(text, i)
        if not m:
            raise SurfaceSyntaxError(f"unexpected character {c!r}", line, col,
                                     ("(", "0", "1", "identifier"))
        out.append(Token(m.group(), line, col))
        col += m.end() - i
        i = m.end()
    out.append(Token("", line, col))
    return out


_ATOM_START = ("(", "0", "1", "identifier")


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.toks[self.pos]

    def fail(self, expected):
        t = self.peek()
        shown = repr(t.text) if t.text else "end of input"
        raise SurfaceSyntaxError(f"unexpected {shown}", t.line, t.column, expected)

    def expr(self):
        left = self.term()
        while self.peek().text == "+":
            self.pos += 1
            left = Add(left, self.term())
        return left

    def term(self):
        left = self.factor()
        while self.peek().text == "*":
            self.pos += 1
            left = Mul(left, self.factor())
        return left

    def factor(self):
        t = self.peek()
        if t.text == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek().text != ")":
                self.fail((")", "*", "+"))
            self.pos += 1
            return inner
        if t.text in ("0", "1"):
            self.pos += 1
            return Num(int(t.text))
        if t.text and (t.text[0].isalpha() or t.text[0] == "_"):
            self.pos += 1
            return Ident(t.text)
        self.fail(_ATOM_START)

    def end(self, allowed=("*", "+")):
        if self.peek().text:
            self.fail(allowed + ("end of input",))


def parse_surface(text: str):
    p = _Parser(text)
    e = p.expr()
    p.end()
    return e


def parse_equation(text: str):
    """``E1 = E2`` into a pair of surface expressions."""
    p = _Parser(text)
    lhs = p.expr()
    if p.peek().text != "=":
        p.fail(("*", "+", "="))
    p.pos += 1
    rhs = p.expr()
    p.end()
    return lhs, rhs


def print_surface(e) -> str:
    """Canonical print with the fewest parentheses that re-parse to ``e``."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Ident):
        return e.name
    if isinstance(e, Add):
        r = print_surface(e.right)
        return f"{print_surface(e.left)} + {f'({r})' if isinstance(e.right, Add) else r}"
    def side(x, right):
        body = print_surface(x)
        return f"({body})" if isinstance(x, Add) or (right and isinstance(x, Mul)) else body
    return f"{side(e.left, False)} * {side(e.right, True)}"


def identifiers(*exprs) -> list[str]:
    """Identifiers in first-occurrence order."""
    seen: dict[str, None] = {}

    def walk(e):
        if isinstance(e, Ident):
            seen.setdefault(e.name)
        elif isinstance(e, (Add, Mul)):
            walk(e.left)
            walk(e.right)

    for e in exprs:
        walk(e)
    return list(seen)


def to_term(e, names: list[str], monoid: bool = False) -> Term:
    """Surface tree to a term; identifiers become variables by position in ``names``.

    With ``monoid=True`` the target signature is ``op``/``unit``, so ``+`` and
    ``0`` are rejected.
    """
    if isinstance(e, Ident):
        return Var(names.index(e.name))
    if monoid:
        if isinstance(e, Mul):
            return App("op", (to_term(e.left, names, True), to_term(e.right, names, True)))
        if isinstance(e, Num) and e.value == 1:
            return App("unit")
        raise ValueError("monoid expressions use only * and 1")
    if isinstance(e, Num):
        return App("one" if e.value else "zero")
    op = "plus" if isinstance(e, Add) else "mult"
    return App(op, (to_term(e.left, names), to_term(e.right, names)))


def to_host(e, values: dict | None = None):
    """Surface tree to a host expression over ``(·, 1)``; identifiers become atoms."""
    values = values or {}
    if isinstance(e, Ident):
        return HAtom(e.name, values.get(e.name))
    if isinstance(e, Num) and e.value == 1:
        return HOne()
    if isinstance(e, Mul):
        return HMult(to_host(e.left, values), to_host(e.right, values))
    raise ValueError("quote accepts only *, 1 and identifiers")
