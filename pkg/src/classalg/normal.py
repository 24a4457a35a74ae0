"""Normal forms in the free models of the built-in theories.

Terms are evaluated structurally into the canonical free model:

=============  =======================================
monoid         words (tuples of variable indices)
comm_monoid    bags (sorted tuples of variable indices)
semiring       polynomials with positive integer coefficients
ring           polynomials with nonzero integer coefficients
=============  =======================================

Two terms are equal modulo the theory iff their normal forms coincide.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import AlgebraError, SourceTargetMismatch, UnsupportedTheory
from .terms import App, Term, Var, VarContext, eval_term, free_vars, validate_term
from .theories import BUILTIN_THEORIES, builtin_theory

DEFAULT_NAMES = ("x", "y", "z", "u", "v", "w")
_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


@dataclass(frozen=True)
class NormalForm:
    kind: str  # "word" | "bag" | "poly"
    data: tuple

    def format(self, names: Sequence[str] | None = None) -> str:
        return format_normal_form(self, names)

    def __str__(self):
        return self.format()


# -- polynomial arithmetic over monomials (sorted index tuples) -------------

def _padd(p: dict, q: dict) -> dict:
    out = defaultdict(int, p)
    for m, c in q.items():
        out[m] += c
    return {m: c for m, c in out.items() if c}


def _pmul(p: dict, q: dict) -> dict:
    out: dict = defaultdict(int)
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            out[tuple(sorted(m1 + m2))] += c1 * c2
    return {m: c for m, c in out.items() if c}


def _to_poly(t: Term, signed: bool) -> dict:
    if isinstance(t, Var):
        return {(t.index,): 1}
    op = t.op
    if op == "zero":
        return {}
    if op == "one":
        return {(): 1}
    if op == "plus":
        return _padd(_to_poly(t.args[0], signed), _to_poly(t.args[1], signed))
    if op == "mult":
        return _pmul(_to_poly(t.args[0], signed), _to_poly(t.args[1], signed))
    if op == "neg" and signed:
        return {m: -c for m, c in _to_poly(t.args[0], signed).items()}
    raise AlgebraError(f"unexpected operation {op!r}")


def _to_word(t: Term) -> tuple:
    if isinstance(t, Var):
        return (t.index,)
    if t.op == "unit":
        return ()
    return _to_word(t.args[0]) + _to_word(t.args[1])


def _check_theory(theory: str):
    if theory not in BUILTIN_THEORIES:
        raise UnsupportedTheory(f"no normalizer for theory {theory!r}")
    return builtin_theory(theory)


def normalize(theory: str, ctx: VarContext, t: Term) -> NormalForm:
    th = _check_theory(theory)
    t = validate_term(th.sig, ctx, t)
    if theory == "monoid":
        return NormalForm("word", _to_word(t))
    if theory == "comm_monoid":
        return NormalForm("bag", tuple(sorted(_to_word(t))))
    poly = _to_poly(t, signed=theory == "ring")
    return NormalForm("poly", tuple(sorted(poly.items())))


def decide_free_eq(theory: str, ctx: VarContext, t1: Term, t2: Term) -> bool:
    return normalize(theory, ctx, t1) == normalize(theory, ctx, t2)


# -- back to terms -----------------------------------------------------------

def _chain(op, parts, empty):
    if not parts:
        return App(empty)
    out = parts[0]
    for p in parts[1:]:
        out = App(op, (out, p))
    return out


def numeral(n: int) -> Term:
    """``one + one + ... + one`` (``zero`` for 0), left-nested."""
    if n < 0:
        raise ValueError("numeral of a negative number")
    return _chain("plus", [App("one")] * n, "zero")


def to_term(nf: NormalForm) -> Term:
    """A term whose normal form is ``nf``."""
    if nf.kind in ("word", "bag"):
        return _chain("op", [Var(i) for i in nf.data], "unit")
    summands = []
    for mono, c in nf.data:
        m = _chain("mult", [Var(i) for i in mono], "one") if mono else None
        k = numeral(abs(c))
        if m is None:
            term = k
        elif abs(c) == 1:
            term = m
        else:
            term = App("mult", (k, m))
        summands.append(App("neg", (term,)) if c < 0 else term)
    return _chain("plus", summands, "zero")


# -- printing ----------------------------------------------------------------

def _name(i: int, names):
    if names is not None and i < len(names):
        return names[i]
    return DEFAULT_NAMES[i] if i < len(DEFAULT_NAMES) else f"x{i}"


def _mono_str(mono, names):
    parts = []
    i = 0
    while i < len(mono):
        j = i
        while j < len(mono) and mono[j] == mono[i]:
            j += 1
        e = j - i
        parts.append(_name(mono[i], names) + (str(e).translate(_SUPERSCRIPT) if e > 1 else ""))
        i = j
    return "".join(parts)


def format_normal_form(nf: NormalForm, names: Sequence[str] | None = None) -> str:
    """``3·x²y + 2`` for polynomials, ``x·y·x`` for words and bags."""
    if nf.kind in ("word", "bag"):
        return "·".join(_name(i, names) for i in nf.data) or "1"
    if not nf.data:
        return "0"
    ordered = sorted(nf.data, key=lambda mc: (-len(mc[0]), mc[0]))
    out = ""
    for k, (mono, c) in enumerate(ordered):
        body = _mono_str(mono, names)
        mag = abs(c)
        if not body:
            piece = str(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{mag}·{body}"
        if k == 0:
            out = ("-" if c < 0 else "") + piece
        else:
            out += (" - " if c < 0 else " + ") + piece
    return out


# -- initial models ----------------------------------------------------------

def initial_arrow_eval(t: Term, target) -> object:
    """Evaluate a closed term in ``target``: the unique arrow out of the term algebra."""
    if free_vars(t):
        raise AlgebraError("initial_arrow_eval needs a closed term")
    validate_term(target.sig, VarContext(), t)
    return eval_term(target, {}, t)


def closed_eq(a: Term, b: Term, validate: bool = True) -> bool:
    """Equality of closed semiring terms modulo the semiring laws.

    ``validate=False`` skips signature checking for terms known to be well formed.
    """
    if validate:
        return decide_free_eq("semiring", VarContext(), a, b)
    return _to_poly(a, False) == _to_poly(b, False)


def closed_term_naturals():
    """The Naturals implementation built from closed semiring terms."""
    from .numbers import closed_term_impl

    return closed_term_impl()


def initial_agreement(h1, h2, probes, sort: str = "num") -> bool:
    """Do two homomorphisms with the same endpoints agree on every probe?"""
    if h1.source is not h2.source or h1.target is not h2.target:
        raise SourceTargetMismatch("homomorphisms have different endpoints")
    tgt = h1.target
    return all(tgt.equiv(sort, h1(sort, p), h2(sort, p)) for p in probes)


def transfer_decider(forth, back, dec_a: Callable, probes_a=(), probes_b=(), sort: str = "num") -> Callable:
    """Turn an equality decider on ``forth.source`` into one on ``forth.target``.

    ``forth: A -> B`` and ``back: B -> A`` must be mutually inverse on the
    supplied probes; the returned decider is ``dec_a(back x, back y)``.
    """
    a, b = forth.source, forth.target
    if back.source is not b or back.target is not a:
        raise SourceTargetMismatch("back must run from forth's target to its source")
    for x in probes_a:
        if not a.equiv(sort, back(sort, forth(sort, x)), x):
            raise AlgebraError(f"round trip A->B->A fails at {x!r}")
    for y in probes_b:
        if not b.equiv(sort, forth(sort, back(sort, y)), y):
            raise AlgebraError(f"round trip B->A->B fails at {y!r}")

    def dec_b(x, y) -> bool:
        return dec_a(back(sort, x), back(sort, y))

    return dec_b
