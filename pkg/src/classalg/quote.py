"""Reification of ``(·, 1)`` expressions into symbolic terms over a variable heap.

Quoting is driven entirely by :mod:`classalg.resolution`: the rules below are
tried by priority, so a subexpression already present in the heap is reused
(``quote_old_var``, priority 8) before a fresh heap slot is allocated
(``quote_new_var``, priority 9).  Atoms are recognised by their token, never
by their value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import InvalidKey, NoSolution, NotFound
from .resolution import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_MAX_STEPS,
    MVar,
    Rule,
    RuleBase,
    Struct,
    resolve,
    s,
)

# -- host expressions --------------------------------------------------------


@dataclass(frozen=True)
class HAtom:
    """An opaque subexpression; identity is the token alone."""

    token: Any
    value: Any = field(default=None, compare=False)

    def sexpr(self):
        return str(self.token)


@dataclass(frozen=True)
class HOne:
    pass


@dataclass(frozen=True)
class HMult:
    left: Any
    right: Any


def host_value(h) -> Any:
    if isinstance(h, HOne):
        return 1
    if isinstance(h, HMult):
        return host_value(h.left) * host_value(h.right)
    return h.value


# -- heaps and keys ----------------------------------------------------------


@dataclass(frozen=True)
class NoVars:
    def sexpr(self):
        return "novars"


@dataclass(frozen=True)
class SingleVar:
    atom: HAtom

    def sexpr(self):
        return f"(singlevar {self.atom.sexpr()})"


@dataclass(frozen=True)
class Merge:
    left: Any
    right: Any

    def sexpr(self):
        return f"(merge {self.left.sexpr()} {self.right.sexpr()})"


@dataclass(frozen=True)
class KUnit:
    def sexpr(self):
        return "tt"


@dataclass(frozen=True)
class KLeft:
    key: Any

    def sexpr(self):
        return f"(inl {self.key.sexpr()})"


@dataclass(frozen=True)
class KRight:
    key: Any

    def sexpr(self):
        return f"(inr {self.key.sexpr()})"


@dataclass(frozen=True)
class One:
    def sexpr(self):
        return "one"


@dataclass(frozen=True)
class Mult:
    left: Any
    right: Any

    def sexpr(self):
        return f"(mult {self.left.sexpr()} {self.right.sexpr()})"


@dataclass(frozen=True)
class QVar:
    key: Any

    def sexpr(self):
        return f"(var {self.key.sexpr()})"


def heap_leaves(env) -> list[tuple[Any, HAtom]]:
    """``(key, atom)`` for every SingleVar, left to right."""
    if isinstance(env, NoVars):
        return []
    if isinstance(env, SingleVar):
        return [(KUnit(), env.atom)]
    return ([(KLeft(k), a) for k, a in heap_leaves(env.left)]
            + [(KRight(k), a) for k, a in heap_leaves(env.right)])


def heap_at(env, key) -> HAtom:
    if isinstance(key, KUnit) and isinstance(env, SingleVar):
        return env.atom
    if isinstance(key, KLeft) and isinstance(env, Merge):
        return heap_at(env.left, key.key)
    if isinstance(key, KRight) and isinstance(env, Merge):
        return heap_at(env.right, key.key)
    raise InvalidKey(f"{key.sexpr()} does not address a variable in {env.sexpr()}")


def eval_env(env, e, mult: Callable = None, one=1):
    """Evaluate a symbolic expression against a heap."""
    if isinstance(e, One):
        return one
    if isinstance(e, Mult):
        a, b = eval_env(env, e.left, mult, one), eval_env(env, e.right, mult, one)
        return mult(a, b) if mult else a * b
    return heap_at(env, e.key).value


# -- key rewrites ------------------------------------------------------------


def shift(k):
    """``V + V' -> V + (V' + V'')``."""
    if isinstance(k, KLeft):
        return k
    return KRight(KLeft(k.key))


def sum_assoc(k):
    """``(V + V') + V'' -> V + (V' + V'')``."""
    if isinstance(k, KRight):
        return KRight(KRight(k.key))
    inner = k.key
    if isinstance(inner, KLeft):
        return KLeft(inner.key)
    return KRight(KLeft(inner.key))


def drop_empty(k):
    """``False + V -> V + V'``: the left summand is empty."""
    if not isinstance(k, KRight):
        raise InvalidKey("key into an empty heap")
    return KLeft(k.key)


def map_keys(e, f):
    if isinstance(e, One):
        return e
    if isinstance(e, Mult):
        return Mult(map_keys(e.left, f), map_keys(e.right, f))
    return QVar(f(e.key))


# -- resolution encoding -----------------------------------------------------


def _heap_term(env):
    if isinstance(env, NoVars):
        return s("novars")
    if isinstance(env, SingleVar):
        return s("singlevar", env.atom)
    return s("merge", _heap_term(env.left), _heap_term(env.right))


def _heap_value(t: Struct):
    if t.functor == "novars":
        return NoVars()
    if t.functor == "singlevar":
        return SingleVar(t.args[0])
    return Merge(_heap_value(t.args[0]), _heap_value(t.args[1]))


def _host_term(h):
    if isinstance(h, HOne):
        return s("hone")
    if isinstance(h, HMult):
        return s("hmul", _host_term(h.left), _host_term(h.right))
    if isinstance(h, HAtom):
        return h
    raise TypeError(f"not a host expression: {h!r}")


V, X, N, M = MVar("V"), MVar("X"), MVar("N"), MVar("M")
V1, V2, A, B = MVar("V1"), MVar("V2"), MVar("A"), MVar("B")

QUOTE_MODES = {"quote": "++-", "lookup": "++"}


def quote_rules() -> RuleBase:
    rules = RuleBase(modes=QUOTE_MODES)
    return rules.extend([
        Rule("singlevar_lookup", s("lookup", X, s("singlevar", X)), synth=lambda env, out: KUnit()),
        Rule("lookup_left", s("lookup", X, s("merge", A, B)), (s("lookup", X, A),),
             synth=lambda env, out: KLeft(out[0])),
        Rule("lookup_right", s("lookup", X, s("merge", A, B)), (s("lookup", X, B),),
             synth=lambda env, out: KRight(out[0])),
        Rule("quote_one", s("quote", V, s("hone"), s("novars")), synth=lambda env, out: One()),
        Rule("quote_mult", s("quote", V, s("hmul", N, M), s("merge", V1, V2)),
             (s("quote", V, N, V1), s("quote", s("merge", V, V1), M, V2)),
             synth=lambda env, out: Mult(map_keys(out[0], shift), map_keys(out[1], sum_assoc))),
        Rule("quote_old_var", s("quote", V, X, s("novars")), (s("lookup", X, V),), priority=8,
             synth=lambda env, out: QVar(KLeft(out[0]))),
        Rule("quote_new_var", s("quote", V, X, s("singlevar", X)), priority=9,
             synth=lambda env, out: QVar(KRight(KUnit()))),
    ])


_RULES = None


def _rules():
    global _RULES
    if _RULES is None:
        _RULES = quote_rules()
    return _RULES


def _limits(h):
    # the heap is browsed once per atom occurrence, so bound steps by expression size
    n = _size(h)
    return max(DEFAULT_MAX_DEPTH, 4 * n + 16), max(DEFAULT_MAX_STEPS, 64 * n * n)


def _size(h):
    if isinstance(h, HMult):
        return 1 + _size(h.left) + _size(h.right)
    return 1


def lookup(env, token, trace=None):
    """Key of the SingleVar holding ``token`` (left branch preferred)."""
    atom = token if isinstance(token, HAtom) else HAtom(token)
    try:
        d = resolve(s("lookup", atom, _heap_term(env)), _rules(), trace=trace)
    except NoSolution:
        raise NotFound(f"{atom.sexpr()} not in heap") from None
    return d.output


def quote_expr(prior, h, trace=None, derivation: bool = False):
    """Quote ``h`` against the heap ``prior``.

    Returns ``(expr, fresh)`` where ``expr`` addresses ``Merge(prior, fresh)``
    (plus the derivation when ``derivation=True``).
    """
    depth, steps = _limits(h)
    goal = s("quote", _heap_term(prior), _host_term(h), MVar("Fresh"))
    d = resolve(goal, _rules(), max_depth=depth, max_steps=steps, trace=trace)
    fresh = _heap_value(d.bindings["Fresh"])
    _assert_unique(Merge(prior, fresh))
    if derivation:
        return d.output, fresh, d
    return d.output, fresh


def quote_equality(lhs, rhs, trace=None):
    """Quote both sides with one shared heap.

    Returns ``(heap, expr_l, expr_r)``; both expressions address ``heap``.
    """
    ql, v = quote_expr(NoVars(), lhs, trace=trace)
    qr, v2 = quote_expr(v, rhs, trace=trace)
    return Merge(v, v2), map_keys(ql, drop_empty), qr


def _assert_unique(env):
    tokens = [a.token for _, a in heap_leaves(env)]
    if len(tokens) != len(set(tokens)):
        raise AssertionError(f"duplicate atom in heap {env.sexpr()}")


def to_monoid_term(env, e):
    """Translate a quoted expression into a monoid-signature term.

    Heap leaves become variables numbered left to right.
    """
    from .terms import App, Var

    index = {k: i for i, (k, _) in enumerate(heap_leaves(env))}

    def go(x):
        if isinstance(x, One):
            return App("unit")
        if isinstance(x, Mult):
            return App("op", (go(x.left), go(x.right)))
        return Var(index[x.key])

    return go(e)


def product_of(values) -> Any:
    return math.prod(values)
