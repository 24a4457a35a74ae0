import itertools
import json

import pytest

from classalg.algebra import FiniteModel, Grid, SampledModel, Sampling
from classalg.errors import SignatureMismatch, UnknownTheory
from classalg.numbers import zmod
from classalg.terms import VarContext
from classalg.theories import (
    MONOID_SIG,
    EquationalTheory,
    builtin_theory,
    check_in_variety,
    holds_under,
    make_entailment,
)

from conftest import nat_model


def test_monoid_shape():
    th = builtin_theory("monoid")
    assert set(th.sig.ops) == {"op", "unit"}
    assert th.sig.ops["op"].arity == 2 and th.sig.ops["unit"].arity == 0
    assert [e.name for e in th.laws] == ["assoc", "unit_l", "unit_r"]


def test_semiring_and_ring_law_counts():
    sr, ring = builtin_theory("semiring"), builtin_theory("ring")
    assert len(sr.laws) == 12
    assert {e.name for e in sr.laws} >= {"distr_l", "distr_r", "absorb_l", "absorb_r", "comm_plus", "comm_mult"}
    assert len(ring.laws) == 13 and ring.laws[-1].name == "inverse"
    assert "neg" in ring.sig.ops


def test_unknown_theory():
    with pytest.raises(UnknownTheory):
        builtin_theory("lattice")


def test_ring_laws_hold_in_integers_on_small_box():
    ring = builtin_theory("ring")
    z = SampledModel(ring.sig, {"num": lambda rng: rng.randint(-5, 5)},
                     {"plus": lambda a, b: a + b, "mult": lambda a, b: a * b, "zero": lambda: 0,
                      "one": lambda: 1, "neg": lambda a: -a})
    report = check_in_variety(z, ring, Grid.uniform(["num"], range(-5, 6)))
    assert report.ok
    assert all(r.checked == 11 ** len(e.context) for r, e in zip(report.laws, ring.laws))


def test_holds_under_examples():
    sr = builtin_theory("semiring")
    assert holds_under(nat_model(), {0: 2, 1: 5, 2: 7}, sr.law("distr_l"))
    vacuous = make_entailment(sr.sig, VarContext.uniform(1), [("zero", "one")], ("(var 0)", "one"))
    assert holds_under(nat_model(), {0: 9}, vacuous)


def test_holds_under_corrupted_table():
    add = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    add[1][2] = add[2][1] = 0  # corrupt 1+2
    m = FiniteModel(MONOID_SIG, {"num": list(range(4))}, {"op": add, "unit": 0})
    assoc = builtin_theory("monoid").law("assoc")
    # (1+2)+3 = 0+3 = 3 ; 1+(2+3) = 1+1 = 2
    assert not holds_under(m, {0: 1, 1: 2, 2: 3}, assoc)
    report = check_in_variety(m, builtin_theory("monoid"))
    bad = report.failures()[0]
    assert bad.name == "assoc" and not holds_under(m, bad.counterexample, assoc)


def test_z6_is_a_ring_exhaustively():
    report = check_in_variety(zmod(6, "ring"), builtin_theory("ring"))
    assert report.ok and report.strategy == "exhaustive"
    assert {r.checked for r in report.laws} <= {6, 36, 216}


def test_monus_is_not_associative():
    th = builtin_theory("comm_monoid")
    monus = SampledModel(MONOID_SIG, {"num": lambda rng: rng.randint(0, 6)},
                         {"op": lambda a, b: max(a - b, 0), "unit": lambda: 0})
    report = check_in_variety(monus, th, Sampling(1000, 7))
    failing = {r.name for r in report.failures()}
    assert "assoc" in failing
    cex = next(r for r in report.laws if r.name == "assoc")
    x, y, z = (cex.counterexample[i] for i in range(3))
    assert max(max(x - y, 0) - z, 0) != max(x - max(y - z, 0), 0)


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        check_in_variety(zmod(3, "monoid"), builtin_theory("semiring"))


def test_exhaustive_matches_brute_force_on_all_tiny_magmas():
    # every binary operation on {0,1} with unit 0: compare the vectorised check with a loop
    th = builtin_theory("monoid")
    for flat in itertools.product(range(2), repeat=4):
        table = [list(flat[:2]), list(flat[2:])]
        m = FiniteModel(MONOID_SIG, {"num": [0, 1]}, {"op": table, "unit": 0})
        report = check_in_variety(m, th)
        for e, r in zip(th.laws, report.laws):
            k = len(e.context)
            brute = all(holds_under(m, dict(enumerate(a)), e) for a in itertools.product(range(2), repeat=k))
            assert r.ok == brute


def test_sampling_is_deterministic():
    th = builtin_theory("comm_monoid")
    monus = SampledModel(MONOID_SIG, {"num": lambda rng: rng.randint(0, 6)},
                         {"op": lambda a, b: max(a - b, 0), "unit": lambda: 0})
    a = check_in_variety(monus, th, Sampling(300, 11)).to_json()
    b = check_in_variety(monus, th, Sampling(300, 11)).to_json()
    assert a == b


def test_theory_json_round_trip(tmp_path):
    th = builtin_theory("ring")
    path = tmp_path / "ring.json"
    path.write_text(json.dumps(th.to_json()))
    back = EquationalTheory.from_json(json.loads(path.read_text()), "ring")
    assert back.sig == th.sig
    assert [e.conclusion for e in back.laws] == [e.conclusion for e in th.laws]
    assert check_in_variety(zmod(5, "ring"), back).ok
