import os
import subprocess
import sys

import numpy as np
import pytest

from classalg import kernels

BACKENDS = kernels.backends()
needs_cython = pytest.mark.skipif("cython" not in BACKENDS, reason="extension not built")


def i64(x):
    return np.ascontiguousarray(x, dtype=np.int64)


def random_respects_case(rng):
    arity = int(rng.integers(0, 4))
    dims = rng.integers(1, 6, size=arity)
    nres = int(rng.integers(1, 6))
    table = rng.integers(0, nres, size=int(np.prod(dims)) if arity else 1)
    ncls = [int(rng.integers(1, d + 1)) for d in dims]
    arg_cls = [rng.integers(0, c, size=d) for c, d in zip(ncls, dims)]
    offsets = np.cumsum([0] + [len(a) for a in arg_cls])[:-1] if arity else []
    flat = np.concatenate(arg_cls) if arity else np.empty(0)
    res_cls = rng.integers(0, max(1, nres // 2 + 1), size=nres)
    return tuple(map(i64, (table, dims, flat, offsets, ncls, res_cls)))


def random_hom_case(rng):
    arity = int(rng.integers(0, 4))
    dims_a = rng.integers(1, 5, size=arity)
    dims_b = rng.integers(1, 5, size=arity)
    na, nb = int(rng.integers(1, 5)), int(rng.integers(1, 5))
    size_a = int(np.prod(dims_a)) if arity else 1
    size_b = int(np.prod(dims_b)) if arity else 1
    table_a = rng.integers(0, na, size=size_a)
    table_b = rng.integers(0, nb, size=size_b)
    maps = [rng.integers(0, db, size=da) for da, db in zip(dims_a, dims_b)]
    fcat = np.concatenate(maps) if arity else np.empty(0)
    foffsets = np.cumsum([0] + [len(m) for m in maps])[:-1] if arity else []
    fres = rng.integers(0, nb, size=na)
    cls_b = rng.integers(0, nb, size=nb)
    return tuple(map(i64, (table_a, dims_a, table_b, dims_b, fcat, foffsets, fres, cls_b)))


@needs_cython
def test_respects_parity():
    rng = np.random.default_rng(11)
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for _ in range(500):
        case = random_respects_case(rng)
        assert tuple(py.respects(*case)) == tuple(cy.respects(*case))


@needs_cython
def test_hom_violation_parity():
    rng = np.random.default_rng(12)
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for _ in range(500):
        case = random_hom_case(rng)
        assert py.hom_violation(*case) == cy.hom_violation(*case)


def test_respects_witness_is_genuine():
    rng = np.random.default_rng(13)
    for _ in range(300):
        table, dims, flat, offsets, ncls, res_cls = case = random_respects_case(rng)
        i, j = kernels.respects(*case)
        if i < 0:
            continue
        pi, pj = np.unravel_index(i, dims), np.unravel_index(j, dims)
        for k in range(len(dims)):
            assert flat[offsets[k] + pi[k]] == flat[offsets[k] + pj[k]]
        assert res_cls[table[i]] != res_cls[table[j]]


def test_pure_fallback_selected_by_environment():
    code = "from classalg import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, CLASSALG_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    env.pop("CLASSALG_PURE")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == ("cython" if "cython" in BACKENDS else "python")


def test_algebra_agrees_under_pure_backend():
    code = (
        "from classalg.numbers import zmod\n"
        "from classalg.algebra import is_congruence, check_homomorphism\n"
        "import itertools\n"
        "ok = []\n"
        "for m, n in itertools.product(range(1, 6), repeat=2):\n"
        "    a, b = zmod(m, 'monoid'), zmod(n, 'monoid')\n"
        "    for k in range(n):\n"
        "        try:\n"
        "            check_homomorphism(a, b, {'num': lambda x, k=k: (k * x) % n})\n"
        "            ok.append((m, n, k))\n"
        "        except Exception:\n"
        "            pass\n"
        "print(ok)\n"
    )
    outs = []
    for pure in ("1", "0"):
        env = dict(os.environ, CLASSALG_PURE=pure)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                   text=True, check=True).stdout)
    assert outs[0] == outs[1] and outs[0].strip() != "[]"
