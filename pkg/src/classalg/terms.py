"""Signatures, sorted terms and their evaluation.

Terms are immutable.  A raw term carries ``sort=None`` on every node;
:func:`validate_term` returns a copy with every node annotated by its
result sort.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Union

from .errors import (
    ArityMismatch,
    MissingAssignment,
    SignatureError,
    SortMismatch,
    UnknownOp,
    UnknownVar,
)


@dataclass(frozen=True)
class OpType:
    args: tuple[str, ...]
    result: str

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True)
class Signature:
    sorts: tuple[str, ...]
    ops: Mapping[str, OpType] = field(hash=False)

    def __post_init__(self):
        if len(set(self.sorts)) != len(self.sorts):
            raise SignatureError(f"duplicate sort in {self.sorts}")
        for sym, ty in self.ops.items():
            for s in (*ty.args, ty.result):
                if s not in self.sorts:
                    raise SignatureError(f"operation {sym!r} mentions unknown sort {s!r}")

    @classmethod
    def build(cls, sorts: Iterable[str], ops: Mapping[str, tuple]) -> "Signature":
        """``ops`` maps a symbol to ``(arg_sorts, result_sort)``."""
        return cls(tuple(sorts), {k: OpType(tuple(a), r) for k, (a, r) in ops.items()})

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self.sorts == other.sorts and dict(self.ops) == dict(other.ops)

    def __hash__(self):
        return hash((self.sorts, tuple(sorted(self.ops.items()))))

    def constants(self, sort: str | None = None) -> list[str]:
        return [o for o, t in self.ops.items() if t.arity == 0 and (sort is None or t.result == sort)]

    def to_json(self) -> dict:
        return {
            "sorts": list(self.sorts),
            "ops": {k: {"args": list(t.args), "result": t.result} for k, t in self.ops.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Signature":
        ops = {}
        for k, v in data["ops"].items():
            if isinstance(v, dict):
                ops[k] = OpType(tuple(v.get("args", ())), v["result"])
            else:
                # compact form: [arg_sorts..., result]
                ops[k] = OpType(tuple(v[:-1]), v[-1])
        return cls(tuple(data["sorts"]), ops)


def single_sorted(ops: Mapping[str, int], sort: str = "num") -> Signature:
    """Signature with one sort and ``ops`` given as symbol -> arity."""
    return Signature((sort,), {k: OpType((sort,) * n, sort) for k, n in ops.items()})


@dataclass(frozen=True)
class VarContext:
    """Variable index -> sort; indices are dense from 0."""

    sorts: tuple[str, ...] = ()

    @classmethod
    def uniform(cls, n: int, sort: str = "num") -> "VarContext":
        return cls((sort,) * n)

    def __len__(self):
        return len(self.sorts)

    def __contains__(self, index):
        return isinstance(index, int) and 0 <= index < len(self.sorts)

    def sort_of(self, index: int) -> str:
        return self.sorts[index]

    def extend(self, sort: str) -> "VarContext":
        return VarContext(self.sorts + (sort,))


@dataclass(frozen=True)
class Var:
    index: int
    sort: str | None = None

    def __repr__(self):
        return f"Var({self.index})"


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["Term", ...] = ()
    sort: str | None = None

    def __repr__(self):
        if not self.args:
            return self.op
        return f"{self.op}({', '.join(map(repr, self.args))})"


Term = Union[Var, App]


def app(op: str, *args: Term) -> App:
    return App(op, tuple(args))


@dataclass(frozen=True)
class Entailment:
    """``premises ⊢ conclusion`` where each side is a pair of terms."""

    context: VarContext
    premises: tuple[tuple[Term, Term], ...]
    conclusion: tuple[Term, Term]
    name: str = ""


def validate_term(sig: Signature, ctx: VarContext, t: Term, _path=()) -> Term:
    """Check well-sortedness and return the sort-annotated term.

    Arguments are validated before their parent, so an unknown symbol deep in
    the tree is reported even when the outer symbol is also unknown.
    """
    if isinstance(t, Var):
        if t.index not in ctx:
            raise UnknownVar(t.index, _path)
        s = ctx.sort_of(t.index)
        if t.sort is not None and t.sort != s:
            raise SortMismatch(s, t.sort, _path)
        return t if t.sort == s else Var(t.index, s)
    args = tuple(validate_term(sig, ctx, a, _path + (i,)) for i, a in enumerate(t.args))
    ty = sig.ops.get(t.op)
    if ty is None:
        raise UnknownOp(t.op, _path)
    if ty.arity != len(args):
        raise ArityMismatch(t.op, ty.arity, len(args), _path)
    for i, (a, want) in enumerate(zip(args, ty.args)):
        if a.sort != want:
            raise SortMismatch(want, a.sort, _path + (i,))
    if t.sort is not None and t.sort != ty.result:
        raise SortMismatch(ty.result, t.sort, _path)
    return App(t.op, args, ty.result)


def sort_of(sig: Signature, ctx: VarContext, t: Term) -> str:
    return validate_term(sig, ctx, t).sort


def eval_term(model, assignment: Mapping[int, object], t: Term):
    """Fold ``t`` through ``model.apply``; variables are read from ``assignment``."""
    if isinstance(t, Var):
        try:
            return assignment[t.index]
        except (KeyError, IndexError):
            raise MissingAssignment(t.index) from None
    return model.apply(t.op, *(eval_term(model, assignment, a) for a in t.args))


def map_vars(t: Term, rename: Callable[[int], int] | Mapping[int, int]) -> Term:
    f = rename.__getitem__ if isinstance(rename, Mapping) else rename
    if isinstance(t, Var):
        return Var(f(t.index), t.sort)
    return App(t.op, tuple(map_vars(a, f) for a in t.args), t.sort)


def free_vars(t: Term) -> frozenset[int]:
    out: set[int] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            out.add(u.index)
        else:
            stack.extend(u.args)
    return frozenset(out)


def depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)


def strip(t: Term) -> Term:
    """Drop sort annotations."""
    if isinstance(t, Var):
        return Var(t.index)
    return App(t.op, tuple(strip(a) for a in t.args))


# -- S-expressions ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")


def to_sexpr(t: Term) -> str:
    if isinstance(t, Var):
        return f"(var {t.index})"
    if not t.args:
        return t.op
    return "(" + " ".join([t.op, *map(to_sexpr, t.args)]) + ")"


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad s-expression at offset {pos}: {text!r}")
        pos = m.end()
        yield m.group(1) or m.group(2) or m.group(3)


def parse_sexpr_tree(text: str):
    """Parse into nested lists of atoms (strings)."""
    stack: list[list] = [[]]
    for tok in _tokens(text):
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise ValueError(f"unbalanced ')' in {text!r}")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1 or len(stack[0]) != 1:
        raise ValueError(f"expected exactly one s-expression in {text!r}")
    return stack[0][0]


def _tree_to_term(tree) -> Term:
    if isinstance(tree, str):
        return App(tree)
    if not tree:
        raise ValueError("empty list is not a term")
    head, *rest = tree
    if head == "var":
        if len(rest) != 1 or not isinstance(rest[0], str) or not rest[0].isdigit():
            raise ValueError(f"malformed variable {tree!r}")
        return Var(int(rest[0]))
    if not isinstance(head, str):
        raise ValueError(f"operator position must be a symbol: {tree!r}")
    return App(head, tuple(_tree_to_term(x) for x in rest))


def parse_sexpr(text: str) -> Term:
    return _tree_to_term(parse_sexpr_tree(text))
