import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classalg.errors import ArityMismatch, MissingAssignment, SortMismatch, UnknownOp, UnknownVar
from classalg.terms import (
    App,
    Signature,
    Var,
    VarContext,
    app,
    eval_term,
    free_vars,
    map_vars,
    parse_sexpr,
    single_sorted,
    to_sexpr,
    validate_term,
)
from classalg.theories import MONOID_SIG, SEMIRING_SIG

from conftest import additive, nat_model
from oracles import int_eval, random_term

X, Y = Var(0), Var(1)


def test_validate_annotates_sorts():
    t = validate_term(SEMIRING_SIG, VarContext.uniform(1), app("mult", X, App("one")))
    assert t.sort == "num"
    assert t.args[0].sort == "num" and t.args[1].sort == "num"


def test_validate_arity_mismatch():
    with pytest.raises(ArityMismatch):
        validate_term(SEMIRING_SIG, VarContext(), app("plus", App("one")))


def test_validate_unknown_op_inner_node_first():
    with pytest.raises(UnknownOp) as err:
        validate_term(MONOID_SIG, VarContext.uniform(1), app("mult", X, app("plus", X, X)))
    assert err.value.op == "plus"
    assert err.value.path == (1,)


def test_validate_unknown_var_and_sorts():
    with pytest.raises(UnknownVar):
        validate_term(SEMIRING_SIG, VarContext.uniform(1), app("plus", X, Var(3)))
    two = Signature.build(["a", "b"], {"f": (["a"], "b"), "c": ([], "a")})
    assert validate_term(two, VarContext(("a",)), app("f", Var(0))).sort == "b"
    with pytest.raises(SortMismatch) as err:
        validate_term(two, VarContext(("b",)), app("f", Var(0)))
    assert err.value.path == (0,)


def test_signature_rejects_unknown_sort():
    from classalg.errors import SignatureError

    with pytest.raises(SignatureError):
        Signature.build(["a"], {"f": (["a"], "zzz")})


def test_signature_json_round_trip():
    assert Signature.from_json(SEMIRING_SIG.to_json()) == SEMIRING_SIG


def test_eval_examples():
    n = nat_model()
    assert eval_term(n, {0: 2, 1: 3}, app("plus", app("mult", X, Y), App("one"))) == 7
    assert eval_term(n, {}, App("one")) == 1
    assert eval_term(additive(4), {0: 3}, app("op", X, app("op", X, X))) == 1


def test_eval_missing_assignment():
    with pytest.raises(MissingAssignment):
        eval_term(nat_model(), {0: 1}, app("plus", X, Y))


def test_map_vars_examples():
    assert map_vars(app("mult", Var(0), Var(1)), lambda i: i + 1) == app("mult", Var(1), Var(2))
    assert map_vars(App("one"), lambda i: i + 7) == App("one")
    assert map_vars(app("plus", Var(0), Var(0)), {0: 3}) == app("plus", Var(3), Var(3))


def test_free_vars_examples():
    assert free_vars(App("one")) == set()
    assert free_vars(app("mult", Var(2), Var(2))) == {2}
    assert free_vars(app("plus", Var(0), app("mult", Var(1), App("one")))) == {0, 1}


def test_sexpr_format():
    assert to_sexpr(app("mult", Var(0), App("one"))) == "(mult (var 0) one)"
    assert parse_sexpr("(mult (var 0) one)") == app("mult", Var(0), App("one"))


terms = st.builds(lambda seed, d: random_term(random.Random(seed), 3, d),
                  st.integers(0, 10**9), st.integers(1, 6))


@settings(max_examples=200, deadline=None)
@given(terms)
def test_sexpr_round_trip(t):
    text = to_sexpr(t)
    assert to_sexpr(parse_sexpr(text)) == text
    assert parse_sexpr(text) == t


@settings(max_examples=200, deadline=None)
@given(terms)
def test_validate_idempotent(t):
    ctx = VarContext.uniform(3)
    v = validate_term(SEMIRING_SIG, ctx, t)
    assert validate_term(SEMIRING_SIG, ctx, v) == v


@settings(max_examples=200, deadline=None)
@given(terms, st.lists(st.integers(0, 9), min_size=3, max_size=3), st.lists(st.integers(0, 5), min_size=3, max_size=3))
def test_eval_after_rename_is_precomposition(t, values, perm):
    r = dict(enumerate(perm))
    asg = dict(enumerate(values + [0, 0, 0]))
    n = nat_model()
    assert eval_term(n, asg, map_vars(t, r)) == eval_term(n, {i: asg[r[i]] for i in range(3)}, t)
    assert eval_term(n, asg, t) == int_eval(t, asg)


def test_eval_respects_setoid_equality_exhaustively():
    # integers mod 3 presented on {0..5}, equality mod 3
    from classalg.algebra import FiniteModel

    m = FiniteModel(single_sorted({"op": 2, "unit": 0}), {"num": list(range(6))},
                    {"op": lambda a, b: (a + b) % 6, "unit": lambda: 0},
                    eq={"num": [[0, 3], [1, 4], [2, 5]]})
    t = app("op", X, app("op", Y, X))
    for a in range(6):
        for b in range(6):
            for a2 in (a, (a + 3) % 6):
                for b2 in (b, (b + 3) % 6):
                    assert m.equiv("num", eval_term(m, {0: a, 1: b}, t), eval_term(m, {0: a2, 1: b2}, t))
