"""Decision procedures synthesized by resolution.

A proposition is a small tree:

* ``Eq(impl, lhs, rhs)``: semiring terms (or Python ints) compared in a
  registered numeric implementation; variables are bound by ``Forall``
* ``And``, ``Or``, ``Not``
* ``Forall(var, domain, body)`` over an explicit finite domain of ints

:func:`decider` resolves the goal ``decision(P)`` and returns the composed,
executable decider.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .numbers import REGISTRY, NumericRegistry, SemiringOps
from .resolution import MVar, Rule, RuleBase, resolve, s
from .terms import Term, Var


@dataclass(frozen=True)
class Eq:
    impl: str
    lhs: Any
    rhs: Any


@dataclass(frozen=True)
class And:
    left: Any
    right: Any


@dataclass(frozen=True)
class Or:
    left: Any
    right: Any


@dataclass(frozen=True)
class Not:
    body: Any


@dataclass(frozen=True)
class Forall:
    var: int
    domain: tuple[int, ...]
    body: Any


def _goal(p):
    if isinstance(p, Eq):
        return s("eq", p.impl, p.lhs, p.rhs)
    if isinstance(p, And):
        return s("and", _goal(p.left), _goal(p.right))
    if isinstance(p, Or):
        return s("or", _goal(p.left), _goal(p.right))
    if isinstance(p, Not):
        return s("not", _goal(p.body))
    if isinstance(p, Forall):
        return s("forall", p.var, tuple(p.domain), _goal(p.body))
    raise TypeError(f"not a proposition: {p!r}")


def _evaluator(impl, t) -> Callable[[dict], Any]:
    """Compile a term (or int) into ``env -> value`` inside ``impl``."""
    if isinstance(t, int):
        v = impl.from_int(t)
        return lambda env: v
    if isinstance(t, Var):
        return lambda env, i=t.index: impl.from_int(env[i])
    ops: SemiringOps = impl.ops()
    if t.op in ("zero", "one"):
        v = ops.zero if t.op == "zero" else ops.one
        return lambda env: v
    args = [_evaluator(impl, a) for a in t.args]
    if t.op == "neg":
        return lambda env: ops.neg(args[0](env))
    f = ops.plus if t.op == "plus" else ops.mult
    return lambda env: f(args[0](env), args[1](env))


P, Q, I, L, R, X, D = (MVar(n) for n in "PQILRXD")


def decision_rules(registry: NumericRegistry = REGISTRY) -> RuleBase:
    """Rules for ``decision(P)``; equality atoms dispatch to the registry's deciders."""

    def eq_synth(env, out):
        impl = registry.impl(env["I"])
        dec, lhs, rhs = out[0], _evaluator(impl, env["L"]), _evaluator(impl, env["R"])
        return lambda e: bool(dec(lhs(e), rhs(e)))

    def forall_synth(env, out):
        body, var, dom = out[0], env["X"], env["D"]
        return lambda e: all(body({**e, var: v}) for v in dom)

    base = registry.rules.with_modes({"decision": "+"})
    return base.extend([
        Rule("decide_eq", s("decision", s("eq", I, L, R)), (s("eq_decider", I),),
             synth=eq_synth, reads=("I", "L", "R")),
        Rule("decide_conj", s("decision", s("and", P, Q)), (s("decision", P), s("decision", Q)),
             synth=lambda env, out: (lambda e, a=out[0], b=out[1]: a(e) and b(e))),
        Rule("decide_disj", s("decision", s("or", P, Q)), (s("decision", P), s("decision", Q)),
             synth=lambda env, out: (lambda e, a=out[0], b=out[1]: a(e) or b(e))),
        Rule("decide_not", s("decision", s("not", P)), (s("decision", P),),
             synth=lambda env, out: (lambda e, a=out[0]: not a(e))),
        Rule("decide_forall", s("decision", s("forall", X, D, P)), (s("decision", P),),
             synth=forall_synth, reads=("X", "D")),
    ])


@dataclass
class Decider:
    run_env: Callable[[dict], bool]
    derivation: Any

    def run(self) -> bool:
        return bool(self.run_env({}))

    def __call__(self) -> bool:
        return self.run()


_RULES: dict[int, RuleBase] = {}


def decider(prop, registry: NumericRegistry = REGISTRY) -> Decider:
    rules = _RULES.get(id(registry))
    if rules is None:
        rules = _RULES[id(registry)] = decision_rules(registry)
    d = resolve(s("decision", _goal(prop)), rules, max_depth=256)
    return Decider(d.output, d)


def decide(prop, registry: NumericRegistry = REGISTRY) -> bool:
    return decider(prop, registry).run()


def brute_force(prop, env: dict | None = None) -> bool:
    """Reference semantics over Python ints (naturals), independent of resolution."""
    env = env or {}
    if isinstance(prop, Eq):
        return _int_eval(prop.lhs, env) == _int_eval(prop.rhs, env)
    if isinstance(prop, And):
        return brute_force(prop.left, env) and brute_force(prop.right, env)
    if isinstance(prop, Or):
        return brute_force(prop.left, env) or brute_force(prop.right, env)
    if isinstance(prop, Not):
        return not brute_force(prop.body, env)
    return all(brute_force(prop.body, {**env, prop.var: v}) for v in prop.domain)


def _int_eval(t: Term | int, env) -> int:
    if isinstance(t, int):
        return t
    if isinstance(t, Var):
        return env[t.index]
    vals = [_int_eval(a, env) for a in t.args]
    return {"zero": lambda: 0, "one": lambda: 1, "neg": lambda: -vals[0],
            "plus": lambda: vals[0] + vals[1], "mult": lambda: vals[0] * vals[1]}[t.op]()
