"""Models of signatures and the constructions between them.

Two flavours of model share one interface (``apply``, ``equiv``):

* :class:`FiniteModel` stores every carrier as an explicit element list, every
  operation as an integer table of carrier positions and every setoid equality
  as a partition.  Checks over finite models are exhaustive.
* :class:`SampledModel` is backed by Python callables plus a random generator
  per sort.  Checks over sampled models only ever report ``sampled`` verdicts.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from . import kernels
from .errors import (
    AlgebraError,
    NotACongruence,
    NotAHomomorphism,
    NotClosed,
    NotProper,
    SignatureMismatch,
)
from .terms import Signature

DEFAULT_SAMPLES = 1000
DEFAULT_SEED = 0xA15EB


@dataclass(frozen=True)
class Sampling:
    """Check ``n`` random instances drawn with a seeded generator."""

    n: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED

    @property
    def label(self) -> str:
        return f"sampled {self.n}"


@dataclass(frozen=True)
class Grid:
    """Check every assignment drawn from an explicit finite domain per sort."""

    values: Mapping[str, tuple] = field(hash=False)

    @classmethod
    def uniform(cls, sorts, values) -> "Grid":
        vals = tuple(values)
        return cls({s: vals for s in sorts})

    @property
    def label(self) -> str:
        sizes = ",".join(str(len(v)) for v in self.values.values())
        return f"grid {sizes}"


EXHAUSTIVE = "exhaustive"


@dataclass
class Verdict:
    """Outcome of a check; falsy on failure, with a replayable witness."""

    ok: bool
    strategy: str
    witness: Any = None
    where: str = ""

    def __bool__(self):
        return self.ok


def _classes_from_groups(elements, groups) -> np.ndarray:
    """Class id per element position; ids numbered by first appearance."""
    ds = DisjointSet(range(len(elements)))
    index = {e: i for i, e in enumerate(elements)}
    for group in groups:
        members = [index[g] for g in group]
        for other in members[1:]:
            ds.merge(members[0], other)
    ids: dict[int, int] = {}
    out = np.empty(len(elements), dtype=np.int64)
    for i in range(len(elements)):
        out[i] = ids.setdefault(ds[i], len(ids))
    return out


def _classes_from_labels(labels) -> np.ndarray:
    ids: dict = {}
    return np.array([ids.setdefault(lab, len(ids)) for lab in labels], dtype=np.int64)


class Model:
    sig: Signature
    name: str = ""
    finite = False

    def apply(self, op: str, *args):
        raise NotImplementedError

    def equiv(self, sort: str, a, b) -> bool:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or id(self)}>"


class FiniteModel(Model):
    """Tabulated model.

    ``ops`` maps a symbol to either a nested table of element values (indexed
    by argument carrier positions) or a callable that is tabulated once.
    ``eq`` gives, per sort, a list of groups to be identified; omitted sorts
    use element identity.
    """

    finite = True

    def __init__(self, sig: Signature, carriers: Mapping[str, Any], ops: Mapping[str, Any],
                 eq: Mapping[str, Any] | None = None, name: str = ""):
        self.sig = sig
        self.name = name
        missing = set(sig.sorts) - set(carriers)
        if missing:
            raise AlgebraError(f"no carrier for sorts {sorted(missing)}")
        self.elements = {s: tuple(carriers[s]) for s in sig.sorts}
        self.index = {}
        for s, els in self.elements.items():
            self.index[s] = {e: i for i, e in enumerate(els)}
            if len(self.index[s]) != len(els):
                raise AlgebraError(f"duplicate elements in carrier {s!r}")
        self.tables: dict[str, np.ndarray] = {}
        for sym, ty in sig.ops.items():
            if sym not in ops:
                raise AlgebraError(f"no interpretation for operation {sym!r}")
            self.tables[sym] = self._tabulate(sym, ty, ops[sym])
        eq = eq or {}
        self.classes = {
            s: _classes_from_groups(self.elements[s], eq.get(s, ())) for s in sig.sorts
        }

    @classmethod
    def _raw(cls, sig, elements, tables, classes, name=""):
        self = cls.__new__(cls)
        self.sig, self.name = sig, name
        self.elements = {s: tuple(v) for s, v in elements.items()}
        self.index = {s: {e: i for i, e in enumerate(v)} for s, v in self.elements.items()}
        self.tables = tables
        self.classes = classes
        return self

    def _tabulate(self, sym, ty, spec) -> np.ndarray:
        dims = tuple(len(self.elements[a]) for a in ty.args)
        out = np.empty(dims, dtype=np.int64)
        res_index = self.index[ty.result]
        for pos in itertools.product(*(range(d) for d in dims)):
            if callable(spec):
                args = [self.elements[a][p] for a, p in zip(ty.args, pos)]
                val = spec(*args)
            else:
                val = spec
                for p in pos:
                    val = val[p]
            try:
                out[pos] = res_index[val]
            except (KeyError, TypeError):
                raise AlgebraError(f"{sym} yields {val!r} outside carrier {ty.result!r}") from None
        return out

    def size(self, sort: str) -> int:
        return len(self.elements[sort])

    def apply(self, op, *args):
        ty = self.sig.ops[op]
        pos = tuple(self.index[s][a] for s, a in zip(ty.args, args))
        return self.elements[ty.result][self.tables[op][pos]]

    def equiv(self, sort, a, b) -> bool:
        cls = self.classes[sort]
        idx = self.index[sort]
        return bool(cls[idx[a]] == cls[idx[b]])

    def draw(self, sort, rng):
        return rng.choice(self.elements[sort])

    def variant(self, sort, x, rng):
        cls = self.classes[sort]
        same = np.flatnonzero(cls == cls[self.index[sort][x]])
        return self.elements[sort][int(rng.choice(same.tolist()))]

    def partition(self, sort: str) -> list[list]:
        groups: dict[int, list] = {}
        for e, c in zip(self.elements[sort], self.classes[sort]):
            groups.setdefault(int(c), []).append(e)
        return list(groups.values())

    def table_values(self, op: str):
        """The operation table as nested lists of element values."""
        res = self.elements[self.sig.ops[op].result]
        return np.vectorize(lambda i: res[i], otypes=[object])(self.tables[op]).tolist()

    def to_json(self) -> dict:
        return {
            "sig": self.sig.to_json(),
            "carriers": {s: list(v) for s, v in self.elements.items()},
            "eq": {s: self.partition(s) for s in self.sig.sorts},
            "ops": {o: self.table_values(o) for o in self.sig.ops},
        }

    @classmethod
    def from_json(cls, data: Mapping, name: str = "") -> "FiniteModel":
        sig = Signature.from_json(data["sig"])
        return cls(sig, data["carriers"], data["ops"], data.get("eq"), name=name)


class SampledModel(Model):
    """Model over possibly infinite carriers.

    ``generators[sort](rng)`` draws an element; ``eq[sort]`` is the setoid
    equality (default ``==``); ``variants[sort](x, rng)`` optionally returns an
    element setoid-equal to ``x`` and is used by propriety checks.
    """

    def __init__(self, sig: Signature, generators: Mapping[str, Callable], ops: Mapping[str, Callable],
                 eq: Mapping[str, Callable] | None = None, variants: Mapping[str, Callable] | None = None,
                 name: str = ""):
        self.sig = sig
        self.name = name
        self.generators = dict(generators)
        self.ops = dict(ops)
        missing = set(sig.ops) - set(self.ops)
        if missing:
            raise AlgebraError(f"no interpretation for operations {sorted(missing)}")
        self.eq = dict(eq or {})
        self.variants = dict(variants or {})

    def apply(self, op, *args):
        return self.ops[op](*args)

    def equiv(self, sort, a, b) -> bool:
        f = self.eq.get(sort)
        return bool(f(a, b)) if f is not None else a == b

    def draw(self, sort, rng):
        return self.generators[sort](rng)

    def variant(self, sort, x, rng):
        f = self.variants.get(sort)
        return f(x, rng) if f is not None else x


# -- enumeration helpers -----------------------------------------------------

def _default_strategy(*models):
    return EXHAUSTIVE if all(m.finite for m in models) else Sampling()


def _label(strategy) -> str:
    return strategy if isinstance(strategy, str) else strategy.label


def _domain(m: Model, strategy, sort):
    if isinstance(strategy, Grid):
        return strategy.values[sort]
    return m.elements[sort]


def _arg_tuples(m: Model, strategy, arg_sorts, rng=None):
    """Argument tuples for one operation under ``strategy``."""
    if isinstance(strategy, Sampling):
        if not arg_sorts:
            yield ()
            return
        for _ in range(strategy.n):
            yield tuple(m.draw(s, rng) for s in arg_sorts)
    else:
        yield from itertools.product(*(_domain(m, strategy, s) for s in arg_sorts))


def _require_same_sig(a: Model, b: Model):
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a!r} and {b!r} interpret different signatures")


def _kernel_args(m: FiniteModel, arg_sorts, classes):
    cat = [classes[s] for s in arg_sorts]
    offsets = np.cumsum([0] + [len(c) for c in cat[:-1]], dtype=np.int64)[: len(cat)]
    ncls = np.array([int(c.max()) + 1 if len(c) else 1 for c in cat], dtype=np.int64)
    flat = np.concatenate(cat) if cat else np.zeros(0, dtype=np.int64)
    return flat.astype(np.int64), offsets.astype(np.int64), ncls


def _unflatten(m: FiniteModel, arg_sorts, idx):
    dims = [m.size(s) for s in arg_sorts]
    pos = np.unravel_index(idx, dims) if dims else ()
    return tuple(m.elements[s][int(p)] for s, p in zip(arg_sorts, pos))


def _table_respects(m: FiniteModel, op: str, classes) -> tuple | None:
    """Witness ``(args1, args2)`` if ``op`` does not respect ``classes``."""
    ty = m.sig.ops[op]
    if not ty.args:
        return None
    flat, offsets, ncls = _kernel_args(m, ty.args, classes)
    dims = np.array([m.size(s) for s in ty.args], dtype=np.int64)
    i, j = kernels.respects(m.tables[op].reshape(-1), dims, flat, offsets, ncls,
                            classes[ty.result])
    if i < 0:
        return None
    return _unflatten(m, ty.args, i), _unflatten(m, ty.args, j)


# -- propriety ---------------------------------------------------------------

def is_algebra(m: Model, strategy=None) -> Verdict:
    """Do all operations map setoid-equal arguments to setoid-equal results?"""
    strategy = strategy or _default_strategy(m)
    if m.finite and strategy == EXHAUSTIVE:
        for op in m.sig.ops:
            w = _table_respects(m, op, m.classes)
            if w is not None:
                return Verdict(False, EXHAUSTIVE, w, op)
        return Verdict(True, EXHAUSTIVE)
    rng = random.Random(getattr(strategy, "seed", DEFAULT_SEED))
    for op, ty in m.sig.ops.items():
        for xs in _arg_tuples(m, strategy, ty.args, rng):
            ys = tuple(m.variant(s, x, rng) for s, x in zip(ty.args, xs))
            if not m.equiv(ty.result, m.apply(op, *xs), m.apply(op, *ys)):
                return Verdict(False, _label(strategy), (xs, ys), op)
    return Verdict(True, _label(strategy))


# -- homomorphisms -----------------------------------------------------------

_SEAL = object()


class Homomorphism:
    """A verified sort-indexed map between two models.

    Only :func:`check_homomorphism` can build one.
    """

    def __init__(self, source: Model, target: Model, maps: Mapping[str, Callable], strategy: str,
                 _seal=None):
        if _seal is not _SEAL:
            raise TypeError("use check_homomorphism() to construct a Homomorphism")
        self.source, self.target = source, target
        self.maps = dict(maps)
        self.strategy = strategy

    def __call__(self, sort: str, x):
        return self.maps[sort](x)

    def __repr__(self):
        return f"<Homomorphism {self.source!r} -> {self.target!r} ({self.strategy})>"


def _as_maps(sig: Signature, f) -> dict:
    if callable(f):
        return {s: f for s in sig.sorts}
    maps = dict(f)
    for s, g in maps.items():
        if not callable(g):
            table = dict(g)
            maps[s] = table.__getitem__
    missing = set(sig.sorts) - set(maps)
    if missing:
        raise AlgebraError(f"map family lacks sorts {sorted(missing)}")
    return maps


def _finite_hom_check(a: FiniteModel, b: FiniteModel, maps):
    fpos = {}
    for s in a.sig.sorts:
        pos = []
        for x in a.elements[s]:
            y = maps[s](x)
            if y not in b.index[s]:
                raise NotAHomomorphism("carrier", (s, x), f"image {y!r} not in target")
            pos.append(b.index[s][y])
        fpos[s] = np.array(pos, dtype=np.int64)
        # propriety: each source class lands in a single target class
        seen: dict[int, int] = {}
        for i, c in enumerate(a.classes[s]):
            tc = int(b.classes[s][fpos[s][i]])
            first = seen.setdefault(int(c), i)
            if int(b.classes[s][fpos[s][first]]) != tc:
                raise NotAHomomorphism("propriety", (s, a.elements[s][first], a.elements[s][i]))
    for op, ty in a.sig.ops.items():
        cat = [fpos[s] for s in ty.args]
        offsets = np.cumsum([0] + [len(c) for c in cat[:-1]], dtype=np.int64)[: len(cat)]
        fcat = np.concatenate(cat).astype(np.int64) if cat else np.zeros(0, dtype=np.int64)
        dims_a = np.array([a.size(s) for s in ty.args], dtype=np.int64)
        dims_b = np.array([b.size(s) for s in ty.args], dtype=np.int64)
        idx = kernels.hom_violation(a.tables[op].reshape(-1), dims_a, b.tables[op].reshape(-1),
                                    dims_b, fcat, offsets.astype(np.int64), fpos[ty.result],
                                    b.classes[ty.result])
        if idx >= 0:
            raise NotAHomomorphism(op, _unflatten(a, ty.args, idx))


def check_homomorphism(a: Model, b: Model, f, strategy=None) -> Homomorphism:
    """Verify that ``f`` (a callable, or per-sort callables/dicts) is a homomorphism.

    Raises :class:`NotAHomomorphism` naming the first failing operation and
    argument tuple.
    """
    _require_same_sig(a, b)
    maps = _as_maps(a.sig, f)
    strategy = strategy or _default_strategy(a, b)
    if strategy == EXHAUSTIVE and a.finite and b.finite:
        _finite_hom_check(a, b, maps)
        return Homomorphism(a, b, maps, EXHAUSTIVE, _seal=_SEAL)
    if strategy == EXHAUSTIVE and not a.finite:
        strategy = Sampling()
    rng = random.Random(getattr(strategy, "seed", DEFAULT_SEED))
    for op, ty in a.sig.ops.items():
        for xs in _arg_tuples(a, strategy, ty.args, rng):
            lhs = maps[ty.result](a.apply(op, *xs))
            rhs = b.apply(op, *(maps[s](x) for s, x in zip(ty.args, xs)))
            if not b.equiv(ty.result, lhs, rhs):
                raise NotAHomomorphism(op, xs)
    if a.finite:
        for s in a.sig.sorts:
            for group in a.partition(s):
                for y in group[1:]:
                    if not b.equiv(s, maps[s](group[0]), maps[s](y)):
                        raise NotAHomomorphism("propriety", (s, group[0], y))
    elif a.variants and isinstance(strategy, Sampling):
        for s in a.sig.sorts:
            for _ in range(strategy.n):
                x = a.draw(s, rng)
                y = a.variant(s, x, rng)
                if not b.equiv(s, maps[s](x), maps[s](y)):
                    raise NotAHomomorphism("propriety", (s, x, y))
    return Homomorphism(a, b, maps, _label(strategy), _seal=_SEAL)


def identity(m: Model) -> Homomorphism:
    return check_homomorphism(m, m, lambda x: x)


def compose(g: Homomorphism, f: Homomorphism) -> Homomorphism:
    """``g ∘ f``, re-verified."""
    maps = {s: (lambda x, s=s: g.maps[s](f.maps[s](x))) for s in f.source.sig.sorts}
    return check_homomorphism(f.source, g.target, maps)


# -- congruences -------------------------------------------------------------

class CongruenceRel:
    """A sort-indexed binary relation on ``base``.

    For finite bases each sort holds a boolean matrix over carrier positions;
    otherwise a predicate ``(a, b) -> bool``.
    """

    def __init__(self, base: Model, relations: Mapping[str, Any]):
        self.base = base
        self.relations = {}
        for s in base.sig.sorts:
            rel = relations.get(s)
            if base.finite:
                n = base.size(s)
                if rel is None:
                    mat = base.classes[s][:, None] == base.classes[s][None, :]
                elif callable(rel):
                    els = base.elements[s]
                    mat = np.array([[bool(rel(x, y)) for y in els] for x in els], dtype=bool).reshape(n, n)
                else:
                    mat = np.asarray(rel, dtype=bool)
                    if mat.shape != (n, n):
                        raise AlgebraError(f"relation on {s!r} must be {n}x{n}")
                self.relations[s] = mat
            else:
                self.relations[s] = rel if rel is not None else (lambda x, y, s=s: base.equiv(s, x, y))

    @classmethod
    def from_partition(cls, base: FiniteModel, groups: Mapping[str, list]) -> "CongruenceRel":
        rels = {}
        for s in base.sig.sorts:
            if s in groups:
                cls_ids = _classes_from_groups(base.elements[s], groups[s])
                rels[s] = cls_ids[:, None] == cls_ids[None, :]
        return cls(base, rels)

    @classmethod
    def total(cls, base: FiniteModel) -> "CongruenceRel":
        return cls(base, {s: np.ones((base.size(s),) * 2, dtype=bool) for s in base.sig.sorts})

    @classmethod
    def diagonal(cls, base: FiniteModel) -> "CongruenceRel":
        return cls(base, {s: np.eye(base.size(s), dtype=bool) for s in base.sig.sorts})

    def related(self, sort, a, b) -> bool:
        rel = self.relations[sort]
        if callable(rel):
            return bool(rel(a, b))
        idx = self.base.index[sort]
        return bool(rel[idx[a], idx[b]])

    def classes(self, sort) -> np.ndarray:
        """Class ids; only meaningful when the relation is an equivalence."""
        mat = self.relations[sort]
        return _classes_from_labels(tuple(row.tobytes()) for row in mat)

    def partition(self, sort) -> list[list]:
        groups: dict[int, list] = {}
        for e, c in zip(self.base.elements[sort], self.classes(sort)):
            groups.setdefault(int(c), []).append(e)
        return list(groups.values())


def _is_equivalence_matrix(mat: np.ndarray):
    n = len(mat)
    for i in range(n):
        if not mat[i, i]:
            return "reflexivity", (i,)
    bad = np.argwhere(mat != mat.T)
    if len(bad):
        return "symmetry", tuple(int(v) for v in bad[0])
    m = mat.astype(np.int64)
    comp = (m @ m) > 0
    bad = np.argwhere(comp & ~mat)
    if len(bad):
        i, k = (int(v) for v in bad[0])
        j = int(np.argmax(mat[i] & mat[:, k]))
        return "transitivity", (i, j, k)
    return None


def is_congruence(m: Model, r: CongruenceRel, strategy=None) -> Verdict:
    """Equivalence laws, propriety over the base equality, and compatibility
    of every operation with ``r`` (so the quotient is again an algebra)."""
    if r.base.sig != m.sig:
        raise SignatureMismatch("relation belongs to a different signature")
    strategy = strategy or _default_strategy(m)
    if m.finite and strategy == EXHAUSTIVE:
        rcls = {}
        for s in m.sig.sorts:
            mat = r.relations[s]
            bad = _is_equivalence_matrix(mat)
            if bad is not None:
                law, pos = bad
                return Verdict(False, EXHAUSTIVE, tuple(m.elements[s][p] for p in pos), f"{law}:{s}")
            # propriety: rows of base-equal elements coincide
            base = m.classes[s]
            for c in np.unique(base):
                members = np.flatnonzero(base == c)
                rows = mat[members]
                if not (rows == rows[0]).all():
                    i = int(members[int(np.argmax((rows != rows[0]).any(axis=1)))])
                    return Verdict(False, EXHAUSTIVE, (m.elements[s][int(members[0])], m.elements[s][i]),
                                   f"propriety:{s}")
            rcls[s] = r.classes(s)
        for op in m.sig.ops:
            w = _table_respects(m, op, rcls)
            if w is not None:
                return Verdict(False, EXHAUSTIVE, w, op)
        return Verdict(True, EXHAUSTIVE)
    rng = random.Random(getattr(strategy, "seed", DEFAULT_SEED))
    n = strategy.n if isinstance(strategy, Sampling) else DEFAULT_SAMPLES
    for s in m.sig.sorts:
        for _ in range(n):
            x, y, z = (m.draw(s, rng) for _ in range(3))
            if not r.related(s, x, x):
                return Verdict(False, _label(strategy), (x,), f"reflexivity:{s}")
            if r.related(s, x, y) != r.related(s, y, x):
                return Verdict(False, _label(strategy), (x, y), f"symmetry:{s}")
            if r.related(s, x, y) and r.related(s, y, z) and not r.related(s, x, z):
                return Verdict(False, _label(strategy), (x, y, z), f"transitivity:{s}")
            x2 = m.variant(s, x, rng)
            if r.related(s, x, y) != r.related(s, x2, y):
                return Verdict(False, _label(strategy), (x, x2, y), f"propriety:{s}")
    for op, ty in m.sig.ops.items():
        for _ in range(n if ty.args else 1):
            xs = tuple(m.draw(s, rng) for s in ty.args)
            ys = tuple(m.variant(s, x, rng) for s, x in zip(ty.args, xs))
            if not r.related(ty.result, m.apply(op, *xs), m.apply(op, *ys)):
                return Verdict(False, _label(strategy), (xs, ys), op)
    return Verdict(True, _label(strategy))


def congruence_via_product(m: FiniteModel, r: CongruenceRel) -> bool:
    """Traditional test: ``r`` is an equivalence whose pair-set is a
    subalgebra of ``m × m``."""
    if not m.finite:
        raise AlgebraError("congruence_via_product needs a finite model")
    pairs = {}
    for s in m.sig.sorts:
        els = m.elements[s]
        ps = {(x, y) for x in els for y in els if r.related(s, x, y)}
        if any((x, x) not in ps for x in els):
            return False
        if any((y, x) not in ps for (x, y) in ps):
            return False
        succ: dict = {}
        for x, y in ps:
            succ.setdefault(x, set()).add(y)
        if any((x, z) not in ps for (x, y) in ps for z in succ.get(y, ())):
            return False
        pairs[s] = ps
    try:
        subalgebra(product(m, m), {s: (lambda p, s=s: p in pairs[s]) for s in m.sig.sorts})
    except (NotClosed, NotProper):
        return False
    return True


def kernel_congruence(h: Homomorphism) -> CongruenceRel:
    """``a ~ b`` iff the target equates ``h(a)`` and ``h(b)``."""
    src, tgt = h.source, h.target
    rels = {}
    for s in src.sig.sorts:
        f = h.maps[s]
        if src.finite:
            imgs = [f(x) for x in src.elements[s]]
            n = len(imgs)
            mat = np.zeros((n, n), dtype=bool)
            for i in range(n):
                for j in range(n):
                    mat[i, j] = tgt.equiv(s, imgs[i], imgs[j])
            rels[s] = mat
        else:
            rels[s] = lambda x, y, s=s, f=f: tgt.equiv(s, f(x), f(y))
    return CongruenceRel(src, rels)


def quotient(m: Model, r: CongruenceRel, strategy=None) -> Model:
    """Same carriers and operations, equality coarsened to ``r``."""
    v = is_congruence(m, r, strategy)
    if not v:
        raise NotACongruence(v.where, v.witness)
    name = f"{m.name}/~" if m.name else ""
    if m.finite:
        classes = {s: r.classes(s) for s in m.sig.sorts}
        return FiniteModel._raw(m.sig, m.elements, m.tables, classes, name=name)
    eq = {s: (lambda x, y, s=s: r.related(s, x, y)) for s in m.sig.sorts}
    return SampledModel(m.sig, m.generators, m.ops, eq, m.variants, name=name)


# -- subalgebras -------------------------------------------------------------

def _op_closed(op, arg_sorts, result_sort, members, apply, member_of):
    """Recurse over the argument sorts, choosing members, then test the result."""

    def rec(prefix, remaining):
        if not remaining:
            val = apply(op, *prefix)
            if not member_of(result_sort, val):
                raise NotClosed(op, tuple(prefix))
            return
        for x in members(remaining[0]):
            rec(prefix + (x,), remaining[1:])

    rec((), tuple(arg_sorts))


def subalgebra(m: Model, p: Mapping[str, Callable], generators: Mapping[str, Callable] | None = None,
               strategy=None) -> Model:
    """Restrict ``m`` to the elements satisfying ``p`` (per sort; missing sorts keep
    everything).  Raises :class:`NotProper` or :class:`NotClosed`."""
    preds = {s: p.get(s, lambda x: True) for s in m.sig.sorts}
    if m.finite:
        keep = {}
        for s in m.sig.sorts:
            flags = [bool(preds[s](x)) for x in m.elements[s]]
            cls = m.classes[s]
            first: dict[int, int] = {}
            for i, c in enumerate(cls):
                j = first.setdefault(int(c), i)
                if flags[i] != flags[j]:
                    raise NotProper((s, m.elements[s][j], m.elements[s][i]))
            keep[s] = [i for i, f in enumerate(flags) if f]
        member_sets = {s: {m.elements[s][i] for i in keep[s]} for s in m.sig.sorts}
        for op, ty in m.sig.ops.items():
            _op_closed(op, ty.args, ty.result, lambda s: [m.elements[s][i] for i in keep[s]],
                       m.apply, lambda s, v: v in member_sets[s])
        elements = {s: [m.elements[s][i] for i in keep[s]] for s in m.sig.sorts}
        remap = {s: {old: new for new, old in enumerate(keep[s])} for s in m.sig.sorts}
        tables = {}
        for op, ty in m.sig.ops.items():
            sub = m.tables[op][np.ix_(*(keep[s] for s in ty.args))] if ty.args else m.tables[op]
            tables[op] = np.vectorize(remap[ty.result].__getitem__, otypes=[np.int64])(sub) \
                if sub.size else sub.astype(np.int64)
        classes = {s: _classes_from_labels(int(m.classes[s][i]) for i in keep[s]) for s in m.sig.sorts}
        return FiniteModel._raw(m.sig, elements, tables, classes, name=f"sub({m.name})" if m.name else "")
    strategy = strategy or Sampling()
    rng = random.Random(getattr(strategy, "seed", DEFAULT_SEED))
    gens = dict(generators or {})
    for s in m.sig.sorts:
        if s not in gens:
            gens[s] = _rejection(m.generators[s], preds[s])
    n = strategy.n if isinstance(strategy, Sampling) else DEFAULT_SAMPLES
    for s in m.sig.sorts:
        for _ in range(min(n, 200)):
            x = gens[s](rng)
            y = m.variant(s, x, rng)
            if bool(preds[s](x)) != bool(preds[s](y)):
                raise NotProper((s, x, y))
    for op, ty in m.sig.ops.items():
        for _ in range(n if ty.args else 1):
            xs = tuple(gens[s](rng) for s in ty.args)
            if not preds[ty.result](m.apply(op, *xs)):
                raise NotClosed(op, xs)
    return SampledModel(m.sig, gens, m.ops, m.eq, m.variants, name=f"sub({m.name})" if m.name else "")


def _rejection(gen, pred, tries=10_000):
    def draw(rng):
        for _ in range(tries):
            x = gen(rng)
            if pred(x):
                return x
        raise AlgebraError("rejection sampling found no member; pass explicit generators")

    return draw


def image_subalgebra(h: Homomorphism, preimage: Mapping[str, Callable] | None = None) -> FiniteModel:
    """The image of ``h`` as a subalgebra of the target.

    The returned model has a ``witnesses`` attribute mapping each sort to
    ``{image element: preimage}``, keeping the first preimage met while
    enumerating the source.
    """
    src, tgt = h.source, h.target
    if not src.finite and not (preimage and tgt.finite):
        raise AlgebraError("image_subalgebra needs a finite source or a preimage function")
    witnesses: dict[str, dict] = {}
    if tgt.finite:
        for s in tgt.sig.sorts:
            w = {}
            if src.finite:
                cls = tgt.classes[s]
                by_class: dict[int, Any] = {}
                for a in src.elements[s]:
                    by_class.setdefault(int(cls[tgt.index[s][h.maps[s](a)]]), a)
                for b in tgt.elements[s]:
                    c = int(cls[tgt.index[s][b]])
                    if c in by_class:
                        w[b] = by_class[c]
            else:
                for b in tgt.elements[s]:
                    a = preimage[s](b)
                    if a is not None and tgt.equiv(s, h.maps[s](a), b):
                        w[b] = a
            witnesses[s] = w
        img = subalgebra(tgt, {s: (lambda b, s=s: b in witnesses[s]) for s in tgt.sig.sorts})
        img.witnesses = witnesses
        return img
    # sampled target: the image of a finite source is finite
    reps: dict[str, list] = {}
    for s in src.sig.sorts:
        reps[s], witnesses[s] = [], {}
        for a in src.elements[s]:
            b = h.maps[s](a)
            if not any(tgt.equiv(s, b, r) for r in reps[s]):
                reps[s].append(b)
                witnesses[s][b] = a

    def rep_of(s, v):
        for r in reps[s]:
            if tgt.equiv(s, v, r):
                return r
        return None

    ops = {}
    for op, ty in tgt.sig.ops.items():
        def f(*xs, op=op, ty=ty):
            v = rep_of(ty.result, tgt.apply(op, *xs))
            if v is None:
                raise NotClosed(op, xs)
            return v
        ops[op] = f
    img = FiniteModel(tgt.sig, reps, ops, name=f"im({tgt.name})" if tgt.name else "")
    img.witnesses = witnesses
    return img


# -- first homomorphism theorem ---------------------------------------------

@dataclass
class IsoReport:
    forth: Homomorphism | None
    back: Homomorphism | None
    verified: bool
    failures: list = field(default_factory=list)
    quotient: Model | None = None
    image: Model | None = None

    def to_json(self) -> dict:
        out: dict = {"verified": self.verified, "failures": [list(map(_jsonable, f)) for f in self.failures]}
        if self.quotient is not None and self.quotient.finite:
            out["quotient_classes"] = {s: [list(map(_jsonable, g)) for g in self.quotient.partition(s)]
                                       for s in self.quotient.sig.sorts}
        if self.image is not None:
            out["image"] = {s: list(map(_jsonable, self.image.elements[s])) for s in self.image.sig.sorts}
            out["witnesses"] = {s: [[_jsonable(b), _jsonable(a)] for b, a in w.items()]
                                for s, w in self.image.witnesses.items()}
        if self.forth is not None and self.quotient is not None and self.quotient.finite:
            out["forth"] = {s: [[_jsonable(a), _jsonable(self.forth(s, a))] for a in self.quotient.elements[s]]
                            for s in self.quotient.sig.sorts}
        if self.back is not None and self.image is not None:
            out["back"] = {s: [[_jsonable(b), _jsonable(self.back(s, b))] for b in self.image.elements[s]]
                           for s in self.image.sig.sorts}
        return out


def _jsonable(x):
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    return str(x)


def first_homomorphism(h: Homomorphism) -> IsoReport:
    """Build ``source/ker h`` and ``im h`` and verify the two arrows between them
    are mutually inverse homomorphisms."""
    src = h.source
    if not src.finite:
        raise AlgebraError("first_homomorphism needs a finite source")
    q = quotient(src, kernel_congruence(h))
    img = image_subalgebra(h)
    sorts = src.sig.sorts
    tgt = h.target

    def to_image(s, a):
        b = h.maps[s](a)
        if b in img.index[s]:
            return b
        for cand in img.elements[s]:
            if tgt.equiv(s, cand, b):
                return cand
        raise AlgebraError(f"{b!r} missing from image")

    forth_maps = {s: (lambda a, s=s: to_image(s, a)) for s in sorts}
    back_maps = {s: img.witnesses[s].__getitem__ for s in sorts}
    failures = []
    forth = back = None
    try:
        forth = check_homomorphism(q, img, forth_maps)
    except NotAHomomorphism as e:
        failures.append(("forth", e.op, e.witness))
    try:
        back = check_homomorphism(img, q, back_maps)
    except NotAHomomorphism as e:
        failures.append(("back", e.op, e.witness))
    for s in sorts:
        for a in q.elements[s]:
            if not q.equiv(s, back_maps[s](forth_maps[s](a)), a):
                failures.append(("back∘forth", s, a))
        for b in img.elements[s]:
            if not img.equiv(s, forth_maps[s](back_maps[s](b)), b):
                failures.append(("forth∘back", s, b))
    return IsoReport(forth, back, not failures, failures, q, img)


# -- products ----------------------------------------------------------------

def product(a: Model, b: Model) -> Model:
    """Componentwise product ``a × b``."""
    _require_same_sig(a, b)
    name = f"{a.name}×{b.name}" if a.name and b.name else ""
    if a.finite and b.finite:
        elements = {s: list(itertools.product(a.elements[s], b.elements[s])) for s in a.sig.sorts}
        tables = {}
        for op, ty in a.sig.ops.items():
            ta, tb = a.tables[op], b.tables[op]
            nb_res = b.size(ty.result)
            # index of (i, j) in the product carrier is i * |B| + j
            dims = [a.size(s) * b.size(s) for s in ty.args]
            out = np.empty(dims, dtype=np.int64)
            for pos in itertools.product(*(range(d) for d in dims)):
                pa = tuple(p // b.size(s) for p, s in zip(pos, ty.args))
                pb = tuple(p % b.size(s) for p, s in zip(pos, ty.args))
                out[pos] = ta[pa] * nb_res + tb[pb]
            tables[op] = out
        classes = {}
        for s in a.sig.sorts:
            ca, cb = a.classes[s], b.classes[s]
            classes[s] = _classes_from_labels((int(ca[i]), int(cb[j]))
                                              for i in range(len(ca)) for j in range(len(cb)))
        return FiniteModel._raw(a.sig, elements, tables, classes, name=name)

    gens = {s: (lambda rng, s=s: (a.draw(s, rng), b.draw(s, rng))) for s in a.sig.sorts}
    ops = {op: (lambda *ps, op=op: (a.apply(op, *(p[0] for p in ps)), b.apply(op, *(p[1] for p in ps))))
           for op in a.sig.ops}
    eq = {s: (lambda p, q, s=s: a.equiv(s, p[0], q[0]) and b.equiv(s, p[1], q[1])) for s in a.sig.sorts}
    variants = {s: (lambda p, rng, s=s: (a.variant(s, p[0], rng), b.variant(s, p[1], rng))) for s in a.sig.sorts}
    return SampledModel(a.sig, gens, ops, eq, variants, name=name)


def projections(p: Model, a: Model, b: Model) -> tuple[Homomorphism, Homomorphism]:
    return (check_homomorphism(p, a, lambda x: x[0]), check_homomorphism(p, b, lambda x: x[1]))


def trivial_model(sig: Signature, element="*") -> FiniteModel:
    return FiniteModel(sig, {s: [element] for s in sig.sorts}, {o: (lambda *xs: element) for o in sig.ops})
