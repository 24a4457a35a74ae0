import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classalg.algebra import Grid, Sampling, check_homomorphism
from classalg.errors import UnknownImplementation
from classalg.numbers import (
    PEANO,
    REGISTRY,
    SPECIALIZED,
    BinNat,
    Frac,
    IntPair,
    PeanoNat,
    SemiringOps,
    bin_mult,
    bin_plus,
    closed_of_int,
    decide_eq,
    embed,
    generic_naturals_to_semiring,
    integers_impl,
    integers_to_ring,
    iso_naturals_check,
    naturals_impls,
    naturals_to_semiring,
    parse_bits,
    random_closed_term,
    rationals_checks,
    specialized_ops,
    zmod,
)
from classalg.terms import App
from classalg.theories import builtin_theory, check_in_variety

from conftest import nat_model

P = PeanoNat.of
B = BinNat.of
ONE = App("one")


def ip(a, b):
    return IntPair(P(a), P(b))


def test_peano_into_z2():
    assert naturals_to_semiring(P(3), zmod(2)) == 1
    for target in (zmod(2), zmod(5), nat_model(), REGISTRY.impl("binary")):
        zero = naturals_to_semiring(P(0), target)
        assert zero == (target.zero if hasattr(target, "zero") else target.apply("zero"))


def test_binary_into_peano_agrees_with_generic():
    assert naturals_to_semiring(B(6), PEANO) == P(6)
    rng = random.Random(4)
    for _ in range(200):
        b = B(rng.randint(0, 5000))
        assert naturals_to_semiring(b, PEANO) == generic_naturals_to_semiring(b, PEANO)


def test_unary_and_doubling_folds_agree():
    from classalg.numbers import _peano_fold

    counting = SemiringOps(0, 1, lambda a, b: a + b, lambda a, b: a * b)
    steps = []
    tracing = SemiringOps(0, 1, lambda a, b: steps.append(1) or a + b, lambda a, b: a * b)
    for n in (0, 1, 63, 64, 65, 1000, 4097, 123457):
        assert _peano_fold(n, counting) == n
    _peano_fold(50, tracing)
    assert len(steps) == 50  # literal successor steps below the threshold


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2000), st.integers(0, 2000))
def test_binary_arithmetic_matches_ints(a, b):
    assert int(bin_plus(B(a), B(b))) == a + b
    assert int(bin_mult(B(a), B(b))) == a * b
    assert parse_bits(B(a).format()) == B(a)
    ops = specialized_ops("binary")
    assert int(ops["cut_sub"](B(a), B(b))) == max(a - b, 0)
    assert int(ops["distance"](B(a), B(b))) == abs(a - b)
    assert int(ops["double"](B(a))) == 2 * a


def test_binary_canonical():
    with pytest.raises(ValueError):
        BinNat((1, 0))
    assert B(0).bits == () and B(6).format() == "110"


def test_specialized_op_examples():
    ops = specialized_ops("binary")
    assert ops["cut_sub"](B(2), B(5)) == B(0)
    assert ops["distance"](B(2), B(5)) == B(3)
    assert ops["double"](B(13)) == B(26) == bin_plus(B(13), B(13))
    assert ops["half"](B(26)) == B(13)
    with pytest.raises(ValueError):
        ops["half"](B(13))


def test_generic_ops_for_every_natural():
    rng = random.Random(6)
    for impl in naturals_impls():
        ops = REGISTRY.specialized_ops(impl.name)
        generic = REGISTRY.specialized_ops(impl.name, specialized=False)
        for _ in range(100):
            a, b = rng.randint(0, 200), rng.randint(0, 200)
            x, y = impl.from_int(a), impl.from_int(b)
            for name in ("cut_sub", "distance"):
                assert impl.eq(ops[name](x, y), generic[name](x, y))
                assert impl.eq(ops[name](x, y), impl.from_int(max(a - b, 0) if name == "cut_sub" else abs(a - b)))
            assert impl.eq(ops["double"](x), impl.from_int(2 * a))
            if a % 2 == 0:
                assert impl.eq(ops["half"](x), impl.from_int(a // 2))


def test_integers_to_ring_examples():
    assert integers_to_ring(ip(3, 1), zmod(5, "ring")) == 2
    assert integers_to_ring(ip(0, 1), zmod(3, "ring")) == 2
    for k in range(5):
        assert integers_to_ring(ip(k, k), zmod(7, "ring")) == 0


def test_integers_to_ring_is_a_ring_morphism():
    ints = REGISTRY.impl("intpair")
    z7 = zmod(7, "ring")
    check_homomorphism(ints.model(), z7, lambda z: integers_to_ring(z, z7), Sampling(300, 1))


def test_decide_eq_examples():
    assert decide_eq("intpair", ip(3, 1), ip(5, 3))
    frac = REGISTRY.impl("frac")
    assert decide_eq("frac", frac.parse("1/2"), frac.parse("2/4"))
    assert not decide_eq("frac", frac.parse("1/2"), frac.parse("2/3"))
    with pytest.raises(UnknownImplementation):
        decide_eq("bignum", 1, 1)


def test_specialized_decider_is_selected():
    for name in ("binary", "closed", "intpair", "intpair_binary", "frac"):
        d = REGISTRY.select_decider(name)
        assert d.priority == SPECIALIZED and d.rule == f"eq_decider_{name}"
    d = REGISTRY.select_decider("peano")
    assert d.priority == 100 and d.rules_used() == ["eq_decider_naturals", "naturals_peano"]
    with pytest.raises(UnknownImplementation):
        specialized_ops("frac")


def test_specialized_and_generic_deciders_agree():
    rng = random.Random(10)
    for name in ("binary", "closed", "intpair", "intpair_binary"):
        impl = REGISTRY.impl(name)
        spec, gen = REGISTRY.decider(name), REGISTRY.decider(name, specialized=False)
        for _ in range(300):
            x = impl.generate(rng)
            y = impl.variant(x, rng) if impl.variant and rng.random() < 0.5 else impl.generate(rng)
            assert spec(x, y) == gen(x, y)


def test_decider_is_equivalence_and_proper():
    rng = random.Random(12)
    for name in REGISTRY.names():
        impl = REGISTRY.impl(name)
        dec = REGISTRY.decider(name)
        for _ in range(100):
            x, y, z = (impl.generate(rng) for _ in range(3))
            assert dec(x, x)
            assert dec(x, y) == dec(y, x)
            if dec(x, y) and dec(y, z):
                assert dec(x, z)
            if impl.variant:
                assert dec(impl.variant(x, rng), x)


def test_iso_naturals_examples():
    binary, closed = REGISTRY.impl("binary"), REGISTRY.impl("closed")
    assert iso_naturals_check(PEANO, binary, P(0))
    assert iso_naturals_check(PEANO, closed, P(5))
    rng = random.Random(13)
    for _ in range(20):
        assert iso_naturals_check(PEANO, binary, P(rng.randint(0, 10**6)))


def test_closed_terms_round_trip_with_peano():
    closed = REGISTRY.impl("closed")
    rng = random.Random(14)
    assert naturals_to_semiring(App("plus", (ONE, App("plus", (ONE, ONE)))), PEANO) == P(3)
    for _ in range(100):
        t = random_closed_term(rng, 6)
        assert iso_naturals_check(closed, PEANO, t)


def test_closed_terms_are_compact():
    from classalg.terms import depth

    assert depth(closed_of_int(10**6)) < 45


def test_every_natural_passes_semiring_laws():
    sr = builtin_theory("semiring")
    for impl in naturals_impls():
        assert check_in_variety(impl.model(), sr).ok, impl.name
        grid = Grid.uniform(["num"], [impl.from_int(i) for i in range(21)])
        assert check_in_variety(impl.model(), sr, grid).ok, impl.name


def test_integers_pass_ring_laws_over_both_bases():
    ring = builtin_theory("ring")
    assert check_in_variety(REGISTRY.impl("intpair").model(), ring).ok
    assert check_in_variety(integers_impl(REGISTRY.impl("binary")).model(), ring, Sampling(300)).ok


def test_naturals_to_semiring_is_a_morphism_into_every_semiring():
    rng = random.Random(15)
    targets = [SemiringOps.of_model(zmod(k)) for k in (2, 3, 6)]
    targets += [impl.ops() for impl in naturals_impls()] + [REGISTRY.impl("intpair").ops()]
    for impl in naturals_impls():
        for ops in targets:
            def f(x):
                return naturals_to_semiring(x, ops, impl)

            assert ops.eq(f(impl.zero), ops.zero) and ops.eq(f(impl.one), ops.one)
            for _ in range(20):
                x, y = impl.from_int(rng.randint(0, 30)), impl.from_int(rng.randint(0, 30))
                assert ops.eq(f(impl.plus(x, y)), ops.plus(f(x), f(y)))
                assert ops.eq(f(impl.mult(x, y)), ops.mult(f(x), f(y)))


def test_frac_invariants():
    frac = REGISTRY.impl("frac")
    with pytest.raises(ZeroDivisionError):
        frac.parse("1/0")
    half = frac.mult(embed(ip(2, 0)), frac.inv(embed(ip(4, 0))))
    assert frac.eq(half, frac.parse("1/2"))
    assert frac.eq(embed(ip(3, 1)), embed(ip(5, 3)))


def test_rationals_checks():
    rep = rationals_checks(200)
    assert rep.ok, rep.failures[:3]
    assert rep.injectivity == 200 and rep.surjectivity == 200 and rep.field_laws > 150


def test_field_inverse_law_on_random_fracs():
    frac = REGISTRY.impl("frac")
    rng = random.Random(16)
    done = 0
    while done < 200:
        x = frac.generate(rng)
        if frac.eq(x, frac.zero):
            continue
        assert frac.eq(frac.mult(x, Frac(x.den, x.num)), frac.one)
        done += 1


def test_native_notations():
    binary, closed, ints = REGISTRY.impl("binary"), REGISTRY.impl("closed"), REGISTRY.impl("intpair")
    assert binary.format(binary.parse("110")) == "110"
    assert PEANO.format(PEANO.parse("6")) == "6"
    assert closed.eq(closed.parse("(plus one (plus one one))"), closed.from_int(3))
    assert ints.format(ints.parse("-3")) == "(0,3)"
    with pytest.raises(ValueError):
        binary.parse("12")
