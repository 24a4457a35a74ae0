"""CLI behaviour, exit codes and golden outputs.

Goldens live in ``tests/golden``; set ``CLASSALG_REGEN_GOLDEN=1`` to rewrite them.
"""
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from classalg.cli import run

GOLDEN = Path(__file__).parent / "golden"
HOMO_INPUT = {
    "source": "builtin:z4",
    "target": "builtin:z2",
    "theory": "monoid",
    "map": {"num": {"0": 0, "1": 1, "2": 0, "3": 1}},
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def homo_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "z4_z2.json"
    path.write_text(json.dumps(HOMO_INPUT), encoding="utf-8")
    return str(path)


CASES = {
    "decide_semiring": ["decide", "--theory", "semiring", "x*(y+1) = x*y + x"],
    "decide_monoid_unequal": ["decide", "--theory", "monoid", "x*y = y*x"],
    "quote_example": ["quote", "(x*y)*(x*1)"],
    "quote_trace": ["quote", "--trace", "x*y*x"],
    "quote_equality": ["quote", "x*y", "--equality", "y*(x*1)"],
    "convert_peano_binary": ["convert", "--from", "peano", "--to", "binary", "6"],
    "convert_binary_closed": ["convert", "--from", "binary", "--to", "closed", "101"],
    "convert_int": ["convert", "--from", "intpair", "--to", "intpair_binary", "(2,7)"],
    "check_z6_ring": ["check", "--theory", "ring", "--model", "builtin:z6"],
    "check_binary_sampled": ["check", "--theory", "semiring", "--model", "builtin:binary",
                             "--samples", "200", "--seed", "0xA15EB"],
    "homo_z4_z2": ["homo", "--input", "@HOMO"],
}


def _argv(name, homo_file):
    return [homo_file if a == "@HOMO" else a for a in CASES[name]]


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, homo_file):
    code, out, _ = invoke(_argv(name, homo_file))
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("CLASSALG_REGEN_GOLDEN") or not path.exists():
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")
    assert code == (1 if name == "decide_monoid_unequal" else 0)


@pytest.mark.parametrize("name", sorted(CASES))
def test_byte_stable_across_runs(name, homo_file):
    first = invoke(_argv(name, homo_file))
    second = invoke(_argv(name, homo_file))
    assert first == second


def test_pinned_quote_output():
    _, out, _ = invoke(["quote", "(x*y)*(x*1)"])
    assert out.splitlines() == [
        "heap: (merge novars (merge (merge (singlevar x) (singlevar y)) (merge novars novars)))",
        "expr: (mult (mult (var (inr (inl (inl tt)))) (var (inr (inl (inr tt))))) "
        "(mult (var (inr (inl (inl tt)))) one))",
    ]


def test_decide_output_shape():
    code, out, _ = invoke(["decide", "--theory", "semiring", "x*(y+1) = x*y + x"])
    assert code == 0 and out.splitlines() == ["equal", "lhs: xy + x", "rhs: xy + x"]


def test_homo_report_has_two_classes(homo_file):
    code, out, _ = invoke(["homo", "--input", homo_file])
    doc = json.loads(out)
    assert code == 0 and doc["homomorphism"] is True


def test_exit_codes(tmp_path):
    assert invoke(["decide", "--theory", "semiring", "x + * y = x"])[0] == 3
    code, _, err = invoke(["decide", "--theory", "semiring", "x + * y = x"])
    assert "1:5" in err
    assert invoke(["check", "--theory", "nope", "--model", "builtin:z2"])[0] == 2
    assert invoke(["convert", "--from", "frac", "--to", "peano", "1/2"])[0] == 2
    assert invoke(["convert", "--from", "nope", "--to", "peano", "1"])[0] == 2
    assert invoke(["convert", "--from", "binary", "--to", "peano", "12"])[0] == 3
    assert invoke(["check", "--theory", "ring", "--model", str(tmp_path / "missing.json")])[0] == 3
    assert invoke([])[0] == 2
    bad = dict(HOMO_INPUT, map={"num": {"0": 0, "1": 1, "2": 1, "3": 1}})
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = invoke(["homo", "--input", str(path)])
    assert code == 1 and json.loads(out)["homomorphism"] is False


def test_check_fails_on_non_ring(tmp_path):
    # saturating addition on {0, 1}: a semiring-like table without inverses
    model = {
        "sig": {"sorts": ["num"], "ops": {"zero": ["num"], "one": ["num"], "plus": ["num", "num", "num"],
                                          "mult": ["num", "num", "num"], "neg": ["num", "num"]}},
        "carriers": {"num": [0, 1]},
        "ops": {
            "zero": 0, "one": 1,
            "plus": [[0, 1], [1, 1]],
            "mult": [[0, 0], [0, 1]],
            "neg": [0, 1],
        },
    }
    path = tmp_path / "bool.json"
    path.write_text(json.dumps(model))
    code, out, _ = invoke(["check", "--theory", "ring", "--model", str(path)])
    assert code == 1 and "FAIL inverse counterexample x0=1" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "classalg", "convert", "--from", "peano",
                           "--to", "binary", "6"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "110\n"
