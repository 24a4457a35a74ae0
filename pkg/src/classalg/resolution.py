"""A small instance-resolution engine.

Goals and rule heads are first-order terms built from :class:`Struct`,
metavariables (:class:`MVar`) and arbitrary hashable constants, which unify
only with equal constants.  Resolution is depth-first, tries rules in
``(priority, registration order)`` and returns the first complete solution,
backtracking across sibling rule choices.

Each rule may carry a synthesizer ``synth(env, outputs)`` computing the
rule's output value from its metavariable bindings and the outputs of its
subgoal derivations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Mapping

from .errors import IllScopedRule, LimitExceeded, NoSolution

DEFAULT_MAX_DEPTH = 64
DEFAULT_MAX_STEPS = 100_000


@dataclass(frozen=True)
class MVar:
    name: str

    def __repr__(self):
        return f"?{self.name}"


@dataclass(frozen=True)
class Struct:
    functor: str
    args: tuple = ()

    def __repr__(self):
        return format_term(self)


def s(functor: str, *args) -> Struct:
    return Struct(functor, tuple(args))


def format_term(t) -> str:
    if isinstance(t, MVar):
        return repr(t)
    if isinstance(t, Struct):
        if not t.args:
            return t.functor
        return f"{t.functor}({', '.join(format_term(a) for a in t.args)})"
    fmt = getattr(t, "sexpr", None)
    return fmt() if callable(fmt) else repr(t)


def term_vars(t) -> set[str]:
    if isinstance(t, MVar):
        return {t.name}
    if isinstance(t, Struct):
        out: set[str] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


@dataclass(frozen=True)
class Rule:
    name: str
    head: Struct
    body: tuple[Struct, ...] = ()
    priority: int = 0
    synth: Callable[[Mapping[str, Any], list], Any] | None = None
    reads: tuple[str, ...] = ()  # metavariables the synthesizer looks up

    def __repr__(self):
        return f"<Rule {self.name} | {self.priority}>"


class RuleBase:
    """Immutable, ordered collection of rules plus per-predicate modes.

    A mode string has one character per argument: ``+`` for inputs (must be
    bound when the goal is posed) and ``-`` for outputs.
    """

    def __init__(self, rules: Iterable[Rule] = (), modes: Mapping[str, str] | None = None):
        self.rules = tuple(rules)
        self.modes = dict(modes or {})
        self._index: dict[str, list[Rule]] = {}
        order = sorted(enumerate(self.rules), key=lambda ir: (ir[1].priority, ir[0]))
        for _, r in order:
            self._index.setdefault(r.head.functor, []).append(r)

    def candidates(self, predicate: str) -> list[Rule]:
        return self._index.get(predicate, [])

    def register(self, rule: Rule) -> "RuleBase":
        check_scope(rule, self.modes)
        return RuleBase(self.rules + (rule,), self.modes)

    def extend(self, rules: Iterable[Rule]) -> "RuleBase":
        out = self
        for r in rules:
            out = out.register(r)
        return out

    def with_modes(self, modes: Mapping[str, str]) -> "RuleBase":
        return RuleBase(self.rules, {**self.modes, **modes})

    def __len__(self):
        return len(self.rules)

    def __add__(self, other: "RuleBase") -> "RuleBase":
        return RuleBase(self.rules + other.rules, {**self.modes, **other.modes})


def register(rules: RuleBase, rule: Rule) -> RuleBase:
    return rules.register(rule)


def _split(goal: Struct, modes):
    mode = modes.get(goal.functor)
    ins, outs = set(), set()
    for i, a in enumerate(goal.args):
        m = mode[i] if mode and i < len(mode) else "+"
        (outs if m == "-" else ins).update(term_vars(a))
    return ins, outs, mode is not None


def check_scope(rule: Rule, modes: Mapping[str, str]):
    """Every input of a subgoal, every head output and every synthesizer read
    must be bound by the head inputs or an earlier subgoal's outputs."""
    bound, head_outs, _ = _split(rule.head, modes)
    for g in rule.body:
        ins, outs, moded = _split(g, modes)
        if moded:
            missing = ins - bound
            if missing:
                raise IllScopedRule(f"{rule.name}: subgoal {format_term(g)} uses unbound {sorted(missing)}")
            bound |= outs
        else:
            bound |= ins | outs
    missing = (head_outs | set(rule.reads)) - bound
    if missing:
        raise IllScopedRule(f"{rule.name}: output metavariables {sorted(missing)} are never bound")


# -- substitutions with an undo trail --------------------------------------

class _Subst:
    def __init__(self):
        self.bindings: dict[str, Any] = {}
        self.trail: list[str] = []

    def walk(self, t):
        while isinstance(t, MVar) and t.name in self.bindings:
            t = self.bindings[t.name]
        return t

    def bind(self, name, value):
        self.bindings[name] = value
        self.trail.append(name)

    def undo(self, mark: int):
        while len(self.trail) > mark:
            del self.bindings[self.trail.pop()]

    def resolve(self, t):
        t = self.walk(t)
        if isinstance(t, Struct):
            return Struct(t.functor, tuple(self.resolve(a) for a in t.args))
        return t


def _rename(t, suffix):
    if isinstance(t, MVar):
        return MVar(t.name + suffix)
    if isinstance(t, Struct):
        return Struct(t.functor, tuple(_rename(a, suffix) for a in t.args))
    return t


@dataclass
class Derivation:
    rule: str
    priority: int
    goal: Any
    output: Any = None
    children: tuple["Derivation", ...] = ()
    bindings: dict = field(default_factory=dict)

    def lines(self, indent: int = 0) -> list[str]:
        out = ["  " * indent + f"{self.rule} | {self.priority} : {format_term(self.goal)}"
               + (f" => {_fmt_output(self.output)}" if self.output is not None else "")]
        for c in self.children:
            out.extend(c.lines(indent + 1))
        return out

    def serialize(self) -> str:
        return "\n".join(self.lines())

    def rules_used(self) -> list[str]:
        out = [self.rule]
        for c in self.children:
            out.extend(c.rules_used())
        return out


def _fmt_output(x) -> str:
    fmt = getattr(x, "sexpr", None)
    if callable(fmt):
        return fmt()
    if isinstance(x, (int, str, bool, tuple)) or x is None:
        return repr(x)
    return f"<{type(x).__name__}>"


class Resolver:
    def __init__(self, rules: RuleBase, max_depth: int = DEFAULT_MAX_DEPTH,
                 max_steps: int = DEFAULT_MAX_STEPS, trace: Callable[[str], None] | None = None):
        self.rules = rules
        self.max_depth = max_depth
        self.max_steps = max_steps
        self.trace = trace
        self.steps = 0
        self._fresh = itertools.count()
        self._subst = _Subst()

    def _emit(self, tag, depth, pred, rule):
        if self.trace is not None:
            self.trace(f"[{tag}] {depth} {pred} {rule.name} {rule.priority}")

    def _unify(self, a, b) -> bool:
        sub = self._subst
        stack = [(a, b)]
        while stack:
            self.steps += 1
            if self.steps > self.max_steps:
                raise LimitExceeded(f"more than {self.max_steps} unification steps")
            x, y = stack.pop()
            x, y = sub.walk(x), sub.walk(y)
            if isinstance(x, MVar):
                if not (isinstance(y, MVar) and y.name == x.name):
                    sub.bind(x.name, y)
            elif isinstance(y, MVar):
                sub.bind(y.name, x)
            elif isinstance(x, Struct):
                if not isinstance(y, Struct) or x.functor != y.functor or len(x.args) != len(y.args):
                    return False
                stack.extend(zip(x.args, y.args))
            elif isinstance(y, Struct) or not (x is y or x == y):
                return False
        return True

    def _solve(self, goal: Struct, depth: int) -> Iterator[Derivation]:
        if depth > self.max_depth:
            raise LimitExceeded(f"depth limit {self.max_depth} exceeded at {format_term(goal)}")
        sub = self._subst
        goal = sub.walk(goal)
        for rule in self.rules.candidates(goal.functor):
            self._emit("try", depth, goal.functor, rule)
            mark = len(sub.trail)
            suffix = f"#{next(self._fresh)}"
            head = _rename(rule.head, suffix)
            found = False
            if self._unify(head, goal):
                body = tuple(_rename(g, suffix) for g in rule.body)
                for children in self._solve_all(body, depth + 1):
                    found = True
                    self._emit("ok", depth, goal.functor, rule)
                    env = _Env(sub, suffix)
                    out = rule.synth(env, [c.output for c in children]) if rule.synth else None
                    yield Derivation(rule.name, rule.priority, sub.resolve(goal), out, children)
            sub.undo(mark)
            if not found:
                self._emit("fail", depth, goal.functor, rule)

    def _solve_all(self, goals, depth) -> Iterator[tuple[Derivation, ...]]:
        if not goals:
            yield ()
            return
        for first in self._solve(goals[0], depth):
            for rest in self._solve_all(goals[1:], depth):
                yield (first,) + rest

    def solve(self, goal: Struct) -> Derivation:
        self.steps = 0
        query_vars = sorted(term_vars(goal))
        gen = self._solve(goal, 0)
        try:
            d = next(gen, None)
            if d is None:
                raise NoSolution(f"no derivation for {format_term(goal)}")
            d.bindings = {v: self._subst.resolve(MVar(v)) for v in query_vars}
            return d
        finally:
            gen.close()
            self._subst.undo(0)


class _Env(Mapping):
    """Read access to a rule's metavariables, fully resolved."""

    def __init__(self, sub: _Subst, suffix: str):
        self._sub, self._suffix = sub, suffix

    def __getitem__(self, name):
        return self._sub.resolve(MVar(name + self._suffix))

    def __iter__(self):
        return iter(())

    def __len__(self):
        return 0


def resolve(goal: Struct, rules: RuleBase, max_depth: int = DEFAULT_MAX_DEPTH,
            max_steps: int = DEFAULT_MAX_STEPS, trace: Callable[[str], None] | None = None) -> Derivation:
    """First derivation of ``goal``; raises :class:`NoSolution` or :class:`LimitExceeded`."""
    return Resolver(rules, max_depth, max_steps, trace).solve(goal)
