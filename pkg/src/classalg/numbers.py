"""Concrete numeric implementations and generic-versus-specialized selection.

Naturals: :class:`PeanoNat` (unary), :class:`BinNat` (binary) and closed
semiring terms.  Integers: :class:`IntPair` over any Naturals implementation.
Rationals: :class:`Frac` over integers.  Each implementation is bundled as a
:class:`NumberImpl`; equality deciders and specialized operations are chosen
by instance resolution over a rule base where specialized rules (priority 10)
outrank generic ones (priority 100).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .algebra import Model, SampledModel
from .errors import NoSolution, UnknownImplementation
from .normal import closed_eq
from .resolution import MVar, Rule, RuleBase, resolve, s
from .terms import App, Term, VarContext, parse_sexpr, to_sexpr, validate_term
from .theories import RING_SIG, SEMIRING_SIG

GENERIC, SPECIALIZED = 100, 10
FOLD_UNARY_LIMIT = 64


@dataclass(frozen=True)
class SemiringOps:
    """A target for initial arrows: constants, operations, setoid equality."""

    zero: Any
    one: Any
    plus: Callable
    mult: Callable
    neg: Callable | None = None
    eq: Callable = lambda a, b: a == b

    @classmethod
    def of_model(cls, m: Model, sort: str = "num") -> "SemiringOps":
        neg = (lambda a: m.apply("neg", a)) if "neg" in m.sig.ops else None
        return cls(m.apply("zero"), m.apply("one"), lambda a, b: m.apply("plus", a, b),
                   lambda a, b: m.apply("mult", a, b), neg, lambda a, b: m.equiv(sort, a, b))


# -- Peano -------------------------------------------------------------------


@dataclass(frozen=True)
class PeanoNat:
    """Unary numeral; ``unary`` holds one ``S`` per successor."""

    unary: bytes = b""

    @classmethod
    def of(cls, n: int) -> "PeanoNat":
        if n < 0:
            raise ValueError("negative natural")
        return cls(b"S" * n)

    def succ(self) -> "PeanoNat":
        return PeanoNat(self.unary + b"S")

    def __int__(self):
        return len(self.unary)

    def __repr__(self):
        return f"PeanoNat({len(self.unary)})"


def peano_plus(a: PeanoNat, b: PeanoNat) -> PeanoNat:
    return PeanoNat(a.unary + b.unary)


def peano_mult(a: PeanoNat, b: PeanoNat) -> PeanoNat:
    return PeanoNat(a.unary * len(b.unary))


def _peano_fold(n: int, ops: SemiringOps):
    if n <= FOLD_UNARY_LIMIT:
        acc = ops.zero
        for _ in range(n):
            acc = ops.plus(acc, ops.one)
        return acc
    # f(2m) = f(m) + f(m) keeps deep numerals tractable
    half = _peano_fold(n // 2, ops)
    acc = ops.plus(half, half)
    return ops.plus(acc, ops.one) if n % 2 else acc


# -- binary ------------------------------------------------------------------


@dataclass(frozen=True)
class BinNat:
    """Little-endian bits without trailing zeros; zero is the empty tuple."""

    bits: tuple[int, ...] = ()

    def __post_init__(self):
        if self.bits and self.bits[-1] == 0:
            raise ValueError("BinNat bits must not end in 0")

    @classmethod
    def of(cls, n: int) -> "BinNat":
        if n < 0:
            raise ValueError("negative natural")
        return cls(tuple(int(c) for c in reversed(bin(n)[2:])) if n else ())

    def __int__(self):
        return sum(1 << i for i, b in enumerate(self.bits) if b)

    def __repr__(self):
        return f"BinNat({self.format()})"

    def format(self) -> str:
        return "".join(map(str, reversed(self.bits))) or "0"


def _trim(bits) -> tuple:
    bits = list(bits)
    while bits and bits[-1] == 0:
        bits.pop()
    return tuple(bits)


def bin_plus(a: BinNat, b: BinNat) -> BinNat:
    x, y = a.bits, b.bits
    out, carry = [], 0
    for i in range(max(len(x), len(y))):
        t = (x[i] if i < len(x) else 0) + (y[i] if i < len(y) else 0) + carry
        out.append(t & 1)
        carry = t >> 1
    if carry:
        out.append(1)
    return BinNat(tuple(out))


def bin_mult(a: BinNat, b: BinNat) -> BinNat:
    acc = BinNat()
    for i, bit in enumerate(b.bits):
        if bit:
            acc = bin_plus(acc, BinNat((0,) * i + a.bits) if a.bits else BinNat())
    return acc


def bin_cmp(a: BinNat, b: BinNat) -> int:
    if len(a.bits) != len(b.bits):
        return -1 if len(a.bits) < len(b.bits) else 1
    for x, y in zip(reversed(a.bits), reversed(b.bits)):
        if x != y:
            return -1 if x < y else 1
    return 0


def bin_cut_sub(a: BinNat, b: BinNat) -> BinNat:
    if bin_cmp(a, b) <= 0:
        return BinNat()
    out, borrow = [], 0
    for i, x in enumerate(a.bits):
        t = x - (b.bits[i] if i < len(b.bits) else 0) - borrow
        borrow = 1 if t < 0 else 0
        out.append(t & 1)
    return BinNat(_trim(out))


def bin_distance(a: BinNat, b: BinNat) -> BinNat:
    return bin_cut_sub(a, b) if bin_cmp(a, b) >= 0 else bin_cut_sub(b, a)


def bin_double(a: BinNat) -> BinNat:
    return BinNat((0,) + a.bits) if a.bits else a


def bin_half(a: BinNat) -> BinNat:
    if a.bits and a.bits[0]:
        raise ValueError("half of an odd number")
    return BinNat(a.bits[1:])


def _bin_fold(x: BinNat, ops: SemiringOps):
    acc = ops.zero
    for bit in reversed(x.bits):
        acc = ops.plus(acc, acc)
        if bit:
            acc = ops.plus(acc, ops.one)
    return acc


def parse_bits(text: str) -> BinNat:
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a binary numeral: {text!r}")
    return BinNat(_trim(int(c) for c in reversed(text)))


# -- closed terms ------------------------------------------------------------

_ZERO, _ONE = App("zero", (), "num"), App("one", (), "num")


def _tplus(a, b):
    return App("plus", (a, b), "num")


def _tmult(a, b):
    return App("mult", (a, b), "num")


def closed_of_int(n: int) -> Term:
    """A compact closed term for ``n`` built by doubling."""
    if n < 0:
        raise ValueError("negative natural")
    if n == 0:
        return _ZERO
    acc = _ONE
    two = _tplus(_ONE, _ONE)
    for c in bin(n)[3:]:
        acc = _tmult(two, acc)
        if c == "1":
            acc = _tplus(acc, _ONE)
    return acc


def _closed_fold(t: Term, ops: SemiringOps):
    """The initial arrow out of the closed-term algebra."""
    if t.op == "zero":
        return ops.zero
    if t.op == "one":
        return ops.one
    a, b = (_closed_fold(u, ops) for u in t.args)
    return ops.plus(a, b) if t.op == "plus" else ops.mult(a, b)


def _closed_int(t: Term) -> int:
    return _closed_fold(t, SemiringOps(0, 1, int.__add__, int.__mul__))


def random_closed_term(rng: random.Random, depth: int = 6) -> Term:
    if depth <= 1 or rng.random() < 0.25:
        return rng.choice((_ZERO, _ONE))
    op = _tplus if rng.random() < 0.6 else _tmult
    return op(random_closed_term(rng, depth - 1), random_closed_term(rng, depth - 1))


def parse_closed(text: str) -> Term:
    return validate_term(SEMIRING_SIG, VarContext(), parse_sexpr(text))


def _closed_variant(t, rng):
    return rng.choice((_tplus(t, _ZERO), _tmult(_ONE, t), _tplus(_ZERO, _tmult(t, _ONE))))


# -- implementation bundles --------------------------------------------------


@dataclass(frozen=True)
class NumberImpl:
    name: str
    kind: str  # "naturals" | "integers" | "rationals"
    zero: Any
    one: Any
    plus: Callable
    mult: Callable
    eq: Callable
    from_int: Callable[[int], Any]
    parse: Callable[[str], Any]
    format: Callable[[Any], str]
    generate: Callable[[random.Random], Any]
    fold: Callable | None = None  # naturals: initial arrow into SemiringOps
    neg: Callable | None = None
    inv: Callable | None = None
    variant: Callable | None = None
    base: "NumberImpl | None" = field(default=None, repr=False)

    def ops(self) -> SemiringOps:
        return SemiringOps(self.zero, self.one, self.plus, self.mult, self.neg, self.eq)

    def model(self) -> SampledModel:
        ops = {"zero": lambda: self.zero, "one": lambda: self.one, "plus": self.plus, "mult": self.mult}
        sig = SEMIRING_SIG
        if self.neg is not None:
            ops["neg"] = self.neg
            sig = RING_SIG
        variants = {"num": self.variant} if self.variant else None
        return SampledModel(sig, {"num": self.generate}, ops, {"num": self.eq}, variants, name=self.name)


def _parse_decimal(text: str) -> int:
    text = text.strip()
    if not text.isdigit():
        raise ValueError(f"not a decimal numeral: {text!r}")
    return int(text)


def peano_impl() -> NumberImpl:
    return NumberImpl(
        "peano", "naturals", PeanoNat(), PeanoNat(b"S"), peano_plus, peano_mult,
        lambda a, b: a.unary == b.unary, PeanoNat.of,
        lambda t: PeanoNat.of(_parse_decimal(t)), lambda x: str(len(x.unary)),
        lambda rng: PeanoNat.of(rng.randint(0, 60)),
        fold=lambda x, ops: _peano_fold(len(x.unary), ops))


def binary_impl() -> NumberImpl:
    return NumberImpl(
        "binary", "naturals", BinNat(), BinNat((1,)), bin_plus, bin_mult,
        lambda a, b: a.bits == b.bits, BinNat.of, parse_bits, BinNat.format,
        # products of draws must stay small enough to retract into unary
        lambda rng: BinNat.of(rng.randint(0, 1000)), fold=_bin_fold)


def closed_term_impl() -> NumberImpl:
    return NumberImpl(
        "closed", "naturals", _ZERO, _ONE, _tplus, _tmult,
        lambda a, b: closed_eq(a, b, validate=False), closed_of_int, parse_closed, to_sexpr,
        lambda rng: random_closed_term(rng, 5), fold=_closed_fold, variant=_closed_variant)


@dataclass(frozen=True)
class IntPair:
    """The formal difference ``pos - neg``."""

    pos: Any
    neg: Any

    def __repr__(self):
        return f"IntPair({self.pos!r}, {self.neg!r})"


def integers_impl(nat: NumberImpl | None = None) -> NumberImpl:
    n = nat or peano_impl()
    p, m = n.plus, n.mult

    def plus(a, b):
        return IntPair(p(a.pos, b.pos), p(a.neg, b.neg))

    def mult(a, b):
        return IntPair(p(m(a.pos, b.pos), m(a.neg, b.neg)), p(m(a.pos, b.neg), m(a.neg, b.pos)))

    def eq(a, b):
        return n.eq(p(a.pos, b.neg), p(b.pos, a.neg))

    def from_int(k):
        return IntPair(n.from_int(k), n.zero) if k >= 0 else IntPair(n.zero, n.from_int(-k))

    def parse(text):
        t = text.strip()
        if t.startswith("(") and t.endswith(")") and "," in t:
            a, b = t[1:-1].split(",", 1)
            return IntPair(n.parse(a), n.parse(b))
        if t.startswith("-") and t[1:].strip().isdigit():
            return from_int(-int(t[1:]))
        return IntPair(n.parse(t), n.zero)

    def generate(rng):
        return IntPair(n.from_int(rng.randint(0, 30)), n.from_int(rng.randint(0, 30)))

    def variant(x, rng):
        k = n.from_int(rng.randint(0, 30))
        return IntPair(p(x.pos, k), p(x.neg, k))

    name = "intpair" if n.name == "peano" else f"intpair_{n.name}"
    return NumberImpl(
        name, "integers", IntPair(n.zero, n.zero), IntPair(n.one, n.zero), plus, mult, eq, from_int,
        parse, lambda x: f"({n.format(x.pos)},{n.format(x.neg)})", generate,
        neg=lambda a: IntPair(a.neg, a.pos), variant=variant, base=n)


@dataclass(frozen=True)
class Frac:
    """An unreduced fraction of integers; ``den`` is never zero."""

    num: Any
    den: Any

    def __repr__(self):
        return f"Frac({self.num!r}, {self.den!r})"


def rationals_impl(ints: NumberImpl | None = None) -> NumberImpl:
    z = ints or integers_impl()
    zp, zm = z.plus, z.mult

    def is_zero(a):
        return z.eq(a, z.zero)

    def make(num, den):
        if is_zero(den):
            raise ZeroDivisionError("fraction with zero denominator")
        return Frac(num, den)

    def plus(a, b):
        return make(zp(zm(a.num, b.den), zm(b.num, a.den)), zm(a.den, b.den))

    def mult(a, b):
        return make(zm(a.num, b.num), zm(a.den, b.den))

    def eq(a, b):
        return z.eq(zm(a.num, b.den), zm(b.num, a.den))

    def inv(a):
        return make(a.den, a.num)

    # small components: three-fold products of unary numerals grow fast
    def generate(rng):
        d = rng.choice([i for i in range(-8, 9) if i])
        return Frac(z.from_int(rng.randint(-8, 8)), z.from_int(d))

    def variant(x, rng):
        k = z.from_int(rng.choice((-3, -2, -1, 1, 2, 3)))
        return Frac(zm(x.num, k), zm(x.den, k))

    def parse(text):
        num, _, den = text.partition("/")
        return make(z.parse(num), z.parse(den) if den else z.one)

    return NumberImpl(
        "frac", "rationals", Frac(z.zero, z.one), Frac(z.one, z.one), plus, mult, eq,
        lambda k: Frac(z.from_int(k), z.one), parse,
        lambda x: f"{z.format(x.num)}/{z.format(x.den)}", generate,
        neg=lambda a: Frac(z.neg(a.num), a.den), inv=inv, variant=variant, base=z)


PEANO = peano_impl()
PEANO_OPS = PEANO.ops()


def _impl_of_value(n) -> NumberImpl:
    if isinstance(n, PeanoNat):
        return PEANO
    if isinstance(n, BinNat):
        return REGISTRY.impl("binary")
    if isinstance(n, App):
        return REGISTRY.impl("closed")
    raise UnknownImplementation(f"no Naturals implementation for {type(n).__name__}")


def _as_ops(target) -> SemiringOps:
    if isinstance(target, SemiringOps):
        return target
    if isinstance(target, NumberImpl):
        return target.ops()
    if isinstance(target, Model):
        return SemiringOps.of_model(target)
    raise TypeError(f"cannot use {target!r} as a semiring")


def naturals_to_semiring(n, target, impl: NumberImpl | None = None):
    """The initial arrow: the image of the natural ``n`` in ``target``."""
    impl = impl or _impl_of_value(n)
    return impl.fold(n, _as_ops(target))


def to_peano(n, impl: NumberImpl | None = None) -> PeanoNat:
    return naturals_to_semiring(n, PEANO_OPS, impl)


def generic_naturals_to_semiring(n, target, impl: NumberImpl | None = None):
    """Retract to PeanoNat through the native numeral, then fold in unary."""
    impl = impl or _impl_of_value(n)
    if impl.name == "closed":
        k = _closed_int(n)
    else:
        k = int(n)
    return _peano_fold(k, _as_ops(target))


def iso_naturals_check(a_impl: NumberImpl, b_impl: NumberImpl, a) -> bool:
    """``a`` survives the round trip A -> B -> A up to A's equality."""
    there = naturals_to_semiring(a, b_impl, a_impl)
    back = naturals_to_semiring(there, a_impl, b_impl)
    return bool(a_impl.eq(back, a))


def integers_to_ring(z: IntPair, target, nat: NumberImpl | None = None):
    """``f(pos) - f(neg)`` in a ring ``target``."""
    ops = _as_ops(target)
    if ops.neg is None:
        raise TypeError("integers_to_ring needs a target with negation")
    nat = nat or _impl_of_value(z.pos)
    return ops.plus(naturals_to_semiring(z.pos, ops, nat), ops.neg(naturals_to_semiring(z.neg, ops, nat)))


def embed(z: IntPair, q: NumberImpl | None = None) -> Frac:
    q = q or REGISTRY.impl("frac")
    return integers_to_ring(z, q, q.base.base)


# -- specialized versus generic operations -----------------------------------


def _generic_nat_ops(impl: NumberImpl) -> dict:
    def to_p(x):
        return naturals_to_semiring(x, PEANO_OPS, impl)

    def back(p: PeanoNat):
        return naturals_to_semiring(p, impl, PEANO)

    def cut_sub(a, b):
        return back(PeanoNat(to_p(a).unary[len(to_p(b).unary):]))

    def distance(a, b):
        return impl.plus(cut_sub(a, b), cut_sub(b, a))

    def half(a):
        u = to_p(a).unary
        if len(u) % 2:
            raise ValueError("half of an odd number")
        return back(PeanoNat(u[: len(u) // 2]))

    return {"cut_sub": cut_sub, "distance": distance, "double": lambda a: impl.plus(a, a), "half": half}


def _generic_decider(impl: NumberImpl) -> Callable:
    if impl.kind == "naturals":
        return lambda x, y: to_peano(x, impl).unary == to_peano(y, impl).unary
    nat = impl.base

    def dec(x, y):
        # a - b = c - d  iff  a + d = c + b, compared as unary numerals
        lhs = to_peano(nat.plus(x.pos, y.neg), nat)
        rhs = to_peano(nat.plus(y.pos, x.neg), nat)
        return lhs.unary == rhs.unary

    return dec


_I = MVar("I")


class NumericRegistry:
    """Named implementations plus a resolution rule base for their deciders and ops."""

    MODES = {"naturals": "+", "integers": "+", "eq_decider": "+", "nat_ops": "+"}

    def __init__(self, impls=()):
        self._impls: dict[str, NumberImpl] = {}
        self.rules = RuleBase(modes=self.MODES).extend([
            Rule("eq_decider_naturals", s("eq_decider", _I), (s("naturals", _I),), GENERIC,
                 synth=lambda env, out: _generic_decider(self.impl(env["I"])), reads=("I",)),
            Rule("eq_decider_integers", s("eq_decider", _I), (s("integers", _I),), GENERIC,
                 synth=lambda env, out: _generic_decider(self.impl(env["I"])), reads=("I",)),
            Rule("nat_ops_generic", s("nat_ops", _I), (s("naturals", _I),), GENERIC,
                 synth=lambda env, out: _generic_nat_ops(self.impl(env["I"])), reads=("I",)),
        ])
        self._cache: dict = {}
        for impl in impls:
            self.add(impl)

    def add(self, impl: NumberImpl, decider: Callable | None = None, ops: dict | None = None):
        self._impls[impl.name] = impl
        new = []
        if impl.kind in ("naturals", "integers"):
            new.append(Rule(f"{impl.kind}_{impl.name}", s(impl.kind, impl.name)))
        if decider is not None:
            new.append(Rule(f"eq_decider_{impl.name}", s("eq_decider", impl.name), (), SPECIALIZED,
                            synth=lambda env, out, d=decider: d))
        if ops is not None:
            new.append(Rule(f"nat_ops_{impl.name}", s("nat_ops", impl.name), (), SPECIALIZED,
                            synth=lambda env, out, o=ops: dict(o)))
        self.rules = self.rules.extend(new)
        self._cache.clear()
        return self

    def impl(self, name: str) -> NumberImpl:
        try:
            return self._impls[name]
        except KeyError:
            raise UnknownImplementation(f"no implementation named {name!r}") from None

    def names(self, kind: str | None = None) -> list[str]:
        return [n for n, i in self._impls.items() if kind is None or i.kind == kind]

    def _select(self, predicate: str, name: str, specialized: bool):
        key = (predicate, name, specialized)
        if key not in self._cache:
            self.impl(name)
            rules = self.rules
            if not specialized:
                rules = RuleBase([r for r in rules.rules if r.priority != SPECIALIZED], rules.modes)
            try:
                self._cache[key] = resolve(s(predicate, name), rules)
            except NoSolution:
                raise UnknownImplementation(f"no {predicate} for {name!r}") from None
        return self._cache[key]

    def select_decider(self, name: str, specialized: bool = True):
        """The derivation choosing the equality decider for ``name``."""
        return self._select("eq_decider", name, specialized)

    def decider(self, name: str, specialized: bool = True) -> Callable:
        return self.select_decider(name, specialized).output

    def decide_eq(self, name: str, x, y) -> bool:
        return bool(self.decider(name)(x, y))

    def select_ops(self, name: str, specialized: bool = True):
        return self._select("nat_ops", name, specialized)

    def specialized_ops(self, name: str, specialized: bool = True) -> dict:
        return self.select_ops(name, specialized).output


def _int_decider(nat_name: str) -> Callable:
    def dec(x, y):
        n = REGISTRY.impl(nat_name)
        return REGISTRY.decide_eq(nat_name, n.plus(x.pos, y.neg), n.plus(y.pos, x.neg))

    return dec


def default_registry() -> NumericRegistry:
    peano, binary, closed = PEANO, binary_impl(), closed_term_impl()
    ints, ints_bin = integers_impl(peano), integers_impl(binary)
    frac = rationals_impl(ints)
    reg = NumericRegistry()
    reg.add(peano)
    reg.add(binary, decider=lambda a, b: bin_cmp(a, b) == 0,
            ops={"cut_sub": bin_cut_sub, "distance": bin_distance, "double": bin_double, "half": bin_half})
    reg.add(closed, decider=lambda a, b: closed_eq(a, b, validate=False))
    reg.add(ints, decider=_int_decider("peano"))
    reg.add(ints_bin, decider=_int_decider("binary"))
    reg.add(frac, decider=frac.eq)
    return reg


REGISTRY = default_registry()


def decide_eq(name: str, x, y) -> bool:
    return REGISTRY.decide_eq(name, x, y)


def specialized_ops(name: str) -> dict:
    return REGISTRY.specialized_ops(name)


def naturals_impls() -> list[NumberImpl]:
    return [REGISTRY.impl(n) for n in REGISTRY.names("naturals")]


# -- rationals ---------------------------------------------------------------


@dataclass
class RationalsReport:
    injectivity: int = 0
    surjectivity: int = 0
    field_laws: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def rationals_checks(n: int = 200, seed: int = 0xA15EB, q: NumberImpl | None = None) -> RationalsReport:
    """Embedding injectivity, fraction surjectivity and field laws on samples."""
    q = q or REGISTRY.impl("frac")
    z = q.base
    rng = random.Random(seed)
    rep = RationalsReport()
    for _ in range(n):
        a = z.generate(rng)
        b = z.variant(a, rng) if rng.random() < 0.5 else z.generate(rng)
        if bool(z.eq(a, b)) != bool(q.eq(embed(a, q), embed(b, q))):
            rep.failures.append(("injectivity", a, b))
        rep.injectivity += 1

        x = q.generate(rng)
        witness = q.mult(embed(x.num, q), q.inv(embed(x.den, q)))
        if not q.eq(x, witness):
            rep.failures.append(("surjectivity", x))
        rep.surjectivity += 1

        if q.eq(x, q.zero):
            continue
        y = q.generate(rng)
        checks = {
            "inverse": q.eq(q.mult(x, q.inv(x)), q.one),
            "swap_inverse": q.eq(q.mult(x, Frac(x.den, x.num)), q.one),
            "distr": q.eq(q.mult(x, q.plus(y, q.one)), q.plus(q.mult(x, y), x)),
            "neg": q.eq(q.plus(x, q.neg(x)), q.zero),
            "comm_mult": q.eq(q.mult(x, y), q.mult(y, x)),
        }
        for name, ok in checks.items():
            if not ok:
                rep.failures.append((name, x, y))
        rep.field_laws += 1
    return rep


def zmod(k: int, theory: str = "semiring"):
    """ℤ/k as a finite model of ``theory`` (the monoid reading is additive)."""
    from .algebra import FiniteModel
    from .theories import MONOID_SIG

    elems = list(range(k))
    if theory in ("monoid", "comm_monoid"):
        return FiniteModel(MONOID_SIG, {"num": elems}, {"op": lambda a, b: (a + b) % k, "unit": lambda: 0},
                           name=f"Z/{k}")
    ops = {"plus": lambda a, b: (a + b) % k, "mult": lambda a, b: (a * b) % k,
           "zero": lambda: 0, "one": lambda: 1 % k}
    sig = SEMIRING_SIG
    if theory == "ring":
        ops["neg"] = lambda a: (-a) % k
        sig = RING_SIG
    return FiniteModel(sig, {"num": elems}, ops, name=f"Z/{k}")

