"""Built-in equational theories and variety membership checks."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_SEED,
    EXHAUSTIVE,
    Grid,
    Model,
    Sampling,
    Verdict,
    is_algebra,
)
from .errors import SignatureMismatch, UnknownTheory
from .terms import (
    Entailment,
    Signature,
    Term,
    Var,
    VarContext,
    eval_term,
    parse_sexpr,
    single_sorted,
    to_sexpr,
    validate_term,
)

MONOID_SIG = single_sorted({"op": 2, "unit": 0})
SEMIRING_SIG = single_sorted({"plus": 2, "mult": 2, "zero": 0, "one": 0})
RING_SIG = single_sorted({"plus": 2, "mult": 2, "zero": 0, "one": 0, "neg": 1})


@dataclass(frozen=True)
class EquationalTheory:
    sig: Signature
    laws: tuple[Entailment, ...]
    name: str = ""

    def law(self, name: str) -> Entailment:
        for e in self.laws:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "sig": self.sig.to_json(),
            "laws": [
                {
                    "name": e.name,
                    "ctx": list(e.context.sorts),
                    "premises": [[to_sexpr(l), to_sexpr(r)] for l, r in e.premises],
                    "conclusion": [to_sexpr(e.conclusion[0]), to_sexpr(e.conclusion[1])],
                }
                for e in self.laws
            ],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "EquationalTheory":
        sig = Signature.from_json(data["sig"])
        laws = []
        for i, law in enumerate(data["laws"]):
            ctx = law["ctx"]
            ctx = VarContext(tuple(ctx)) if isinstance(ctx, list) else \
                VarContext(tuple(ctx[str(k)] for k in range(len(ctx))))
            laws.append(make_entailment(
                sig, ctx, [tuple(p) for p in law.get("premises", ())], tuple(law["conclusion"]),
                law.get("name") or f"law{i}"))
        return cls(sig, tuple(laws), name)


def make_entailment(sig: Signature, ctx: VarContext, premises, conclusion, name="") -> Entailment:
    """Build a validated entailment; terms may be given as s-expression strings."""

    def term(t):
        return validate_term(sig, ctx, parse_sexpr(t) if isinstance(t, str) else t)

    def pair(p):
        lhs, rhs = term(p[0]), term(p[1])
        if lhs.sort != rhs.sort:
            raise SignatureMismatch(f"{name}: sides have sorts {lhs.sort!r} and {rhs.sort!r}")
        return lhs, rhs

    return Entailment(ctx, tuple(pair(p) for p in premises), pair(conclusion), name)


def _laws(sig, spec):
    out = []
    for name, nvars, lhs, rhs in spec:
        out.append(make_entailment(sig, VarContext.uniform(nvars), (), (lhs, rhs), name))
    return tuple(out)


_X, _Y, _Z = "(var 0)", "(var 1)", "(var 2)"


def _monoid_laws(op, unit):
    return [
        ("assoc", 3, f"({op} ({op} {_X} {_Y}) {_Z})", f"({op} {_X} ({op} {_Y} {_Z}))"),
        ("unit_l", 1, f"({op} {unit} {_X})", _X),
        ("unit_r", 1, f"({op} {_X} {unit})", _X),
    ]


def _comm(op, suffix=""):
    return (f"comm{suffix}", 2, f"({op} {_X} {_Y})", f"({op} {_Y} {_X})")


def _semiring_spec():
    spec = []
    for op, unit, suffix in (("plus", "zero", "_plus"), ("mult", "one", "_mult")):
        for name, n, lhs, rhs in _monoid_laws(op, unit):
            spec.append((name + suffix, n, lhs, rhs))
        spec.append(_comm(op, suffix))
    spec += [
        ("distr_l", 3, f"(mult {_X} (plus {_Y} {_Z}))", f"(plus (mult {_X} {_Y}) (mult {_X} {_Z}))"),
        ("distr_r", 3, f"(mult (plus {_X} {_Y}) {_Z})", f"(plus (mult {_X} {_Z}) (mult {_Y} {_Z}))"),
        ("absorb_l", 1, f"(mult zero {_X})", "zero"),
        ("absorb_r", 1, f"(mult {_X} zero)", "zero"),
    ]
    return spec


def builtin_theory(name: str) -> EquationalTheory:
    """One of ``monoid``, ``comm_monoid``, ``semiring``, ``ring``."""
    if name == "monoid":
        return EquationalTheory(MONOID_SIG, _laws(MONOID_SIG, _monoid_laws("op", "unit")), name)
    if name == "comm_monoid":
        spec = _monoid_laws("op", "unit") + [_comm("op")]
        return EquationalTheory(MONOID_SIG, _laws(MONOID_SIG, spec), name)
    if name == "semiring":
        return EquationalTheory(SEMIRING_SIG, _laws(SEMIRING_SIG, _semiring_spec()), name)
    if name == "ring":
        spec = _semiring_spec() + [("inverse", 1, f"(plus {_X} (neg {_X}))", "zero")]
        return EquationalTheory(RING_SIG, _laws(RING_SIG, spec), name)
    raise UnknownTheory(f"no built-in theory {name!r}")


BUILTIN_THEORIES = ("monoid", "comm_monoid", "semiring", "ring")


# -- checking ----------------------------------------------------------------

def _holds(model, assignment, lhs, rhs):
    return model.equiv(lhs.sort, eval_term(model, assignment, lhs), eval_term(model, assignment, rhs))


def holds_under(model: Model, assignment, e: Entailment) -> bool:
    """All premises hold ⇒ the conclusion holds, under ``assignment`` (index -> value)."""
    if e.conclusion[0].sort is None:
        e = make_entailment(model.sig, e.context, e.premises, e.conclusion, e.name)
    for lhs, rhs in e.premises:
        if not _holds(model, assignment, lhs, rhs):
            return True
    return _holds(model, assignment, *e.conclusion)


@dataclass
class LawResult:
    name: str
    ok: bool
    counterexample: dict | None = None
    checked: int = 0


@dataclass
class VarietyReport:
    theory: str
    strategy: str
    algebra: Verdict
    laws: list[LawResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.algebra) and all(r.ok for r in self.laws)

    def __bool__(self):
        return self.ok

    def failures(self) -> list[LawResult]:
        return [r for r in self.laws if not r.ok]

    def lines(self) -> list[str]:
        out = [f"theory {self.theory} strategy {self.strategy}",
               f"{'pass' if self.algebra else 'FAIL'} propriety"
               + ("" if self.algebra else f" {self.algebra.where} {self.algebra.witness!r}")]
        for r in self.laws:
            tail = "" if r.ok else " counterexample " + " ".join(
                f"x{k}={v!r}" for k, v in sorted(r.counterexample.items()))
            out.append(f"{'pass' if r.ok else 'FAIL'} {r.name}{tail}")
        return out

    def to_json(self) -> dict:
        return {
            "theory": self.theory,
            "strategy": self.strategy,
            "ok": self.ok,
            "propriety": {"ok": self.algebra.ok, "where": self.algebra.where,
                          "witness": repr(self.algebra.witness) if not self.algebra else None},
            "laws": [{"name": r.name, "ok": r.ok, "checked": r.checked,
                      "counterexample": None if r.ok else {str(k): repr(v) for k, v in r.counterexample.items()}}
                     for r in self.laws],
        }


def _grid_eval(model, term: Term, axes: dict[int, np.ndarray]) -> np.ndarray:
    if isinstance(term, Var):
        return axes[term.index]
    args = [_grid_eval(model, a, axes) for a in term.args]
    table = model.tables[term.op]
    return table[tuple(args)] if args else table[()]


def _exhaustive_law(model, e: Entailment) -> LawResult:
    """Vectorised check over every assignment of a finite model."""
    k = len(e.context)
    sizes = [model.size(s) for s in e.context.sorts]
    axes = {}
    for i in range(k):
        shape = [1] * k
        shape[i] = sizes[i]
        axes[i] = np.arange(sizes[i]).reshape(shape)
    full = tuple(sizes)

    def same(lhs, rhs):
        cls = model.classes[lhs.sort]
        return np.broadcast_to(cls[_grid_eval(model, lhs, axes)] == cls[_grid_eval(model, rhs, axes)], full)

    ok_prem = np.ones(full, dtype=bool)
    for lhs, rhs in e.premises:
        ok_prem &= same(lhs, rhs)
    bad = ok_prem & ~same(*e.conclusion)
    total = int(np.prod(full)) if k else 1
    if not bad.any():
        return LawResult(e.name, True, None, total)
    pos = np.argwhere(bad)[0] if k else ()
    cex = {i: model.elements[e.context.sort_of(i)][int(p)] for i, p in enumerate(pos)}
    return LawResult(e.name, False, cex, total)


def check_in_variety(model: Model, th: EquationalTheory, strategy=None) -> VarietyReport:
    """Propriety first, then every law: exhaustive on finite models, otherwise by
    ``Sampling`` (seeded) or over an explicit ``Grid``."""
    if model.sig != th.sig:
        raise SignatureMismatch(f"model signature does not match theory {th.name!r}")
    if strategy is None or (strategy == EXHAUSTIVE and not model.finite):
        strategy = EXHAUSTIVE if model.finite else Sampling()
    label = strategy if isinstance(strategy, str) else strategy.label
    algebra = is_algebra(model, strategy)
    report = VarietyReport(th.name, label, algebra)
    rng = random.Random(getattr(strategy, "seed", DEFAULT_SEED))
    for e in th.laws:
        if strategy == EXHAUSTIVE:
            report.laws.append(_exhaustive_law(model, e))
            continue
        if isinstance(strategy, Grid):
            assignments = (dict(enumerate(vals)) for vals in itertools.product(
                *(strategy.values[s] for s in e.context.sorts)))
        else:
            assignments = ({i: model.draw(s, rng) for i, s in enumerate(e.context.sorts)}
                           for _ in range(strategy.n))
        result = LawResult(e.name, True)
        for asg in assignments:
            result.checked += 1
            if not holds_under(model, asg, e):
                result.ok, result.counterexample = False, asg
                break
        report.laws.append(result)
    return report
