"""Independent reference computations used as test oracles.

Nothing here imports the package's algebra machinery: arithmetic is done on
plain Python ints so that agreement with the library is meaningful.
"""
import itertools
import random

from classalg.terms import App, Var


def int_eval(t, env):
    """Evaluate a semiring/ring term over Python ints."""
    if isinstance(t, Var):
        return env[t.index]
    vals = [int_eval(a, env) for a in t.args]
    if t.op in ("zero", "unit"):
        return 0
    if t.op == "one":
        return 1
    if t.op == "neg":
        return -vals[0]
    if t.op in ("plus", "op"):
        return vals[0] + vals[1]
    return vals[0] * vals[1]


def grid_equal(t1, t2, k, values=range(5)):
    """Do ``t1`` and ``t2`` agree on every assignment from ``values``^k?"""
    for asg in itertools.product(values, repeat=k):
        env = dict(enumerate(asg))
        if int_eval(t1, env) != int_eval(t2, env):
            return False
    return True


def random_term(rng: random.Random, nvars: int, depth: int, ops=("plus", "mult"), consts=("zero", "one")):
    if depth <= 1 or rng.random() < 0.3:
        if nvars and rng.random() < 0.7:
            return Var(rng.randrange(nvars))
        return App(rng.choice(consts))
    return App(rng.choice(ops), (random_term(rng, nvars, depth - 1, ops, consts),
                                 random_term(rng, nvars, depth - 1, ops, consts)))


def poly_degree(t):
    if isinstance(t, Var):
        return 1
    if t.op in ("zero", "one"):
        return 0
    ds = [poly_degree(a) for a in t.args]
    return max(ds) if t.op == "plus" else sum(ds)


def mod_tables(n):
    """Addition and multiplication tables of Z/n by direct arithmetic."""
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return add, mul


def monoid_homs_cyclic(m, n):
    """All unit-preserving additive maps Z/m -> Z/n, by brute force over n^m functions."""
    out = []
    for f in itertools.product(range(n), repeat=m):
        if f[0] != 0:
            continue
        if all(f[(a + b) % m] == (f[a] + f[b]) % n for a in range(m) for b in range(m)):
            out.append(f)
    return out


def random_host(rng: random.Random, depth: int, atoms):
    """Random product expression over ``atoms`` and the unit."""
    from classalg.quote import HMult, HOne

    if depth <= 1 or rng.random() < 0.3:
        return HOne() if rng.random() < 0.2 else rng.choice(atoms)
    return HMult(random_host(rng, depth - 1, atoms), random_host(rng, depth - 1, atoms))


def random_prop(rng: random.Random, depth: int, impls, bound=(), max_domain=5):
    """Random proposition with equality atoms, connectives and bounded foralls."""
    from classalg.decision import And, Eq, Forall, Not, Or

    k = rng.random()
    if depth <= 1 or k < 0.25:
        def term(d):
            if d <= 1 or rng.random() < 0.4:
                if bound and rng.random() < 0.7:
                    return Var(rng.choice(bound))
                return App(rng.choice(("zero", "one")))
            return App(rng.choice(("plus", "mult")), (term(d - 1), term(d - 1)))
        return Eq(rng.choice(impls), term(3), term(3))
    sub = lambda: random_prop(rng, depth - 1, impls, bound, max_domain)  # noqa: E731
    if k < 0.45:
        return And(sub(), sub())
    if k < 0.6:
        return Or(sub(), sub())
    if k < 0.7:
        return Not(sub())
    v = len(bound)
    dom = tuple(range(rng.randint(1, max_domain)))
    return Forall(v, dom, random_prop(rng, depth - 1, impls, tuple(bound) + (v,), max_domain))
