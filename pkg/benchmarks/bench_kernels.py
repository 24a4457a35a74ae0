"""Compare the Cython and pure-Python finite-table kernels.

    python benchmarks/bench_kernels.py --sizes 8 16 32 --repeat 3
"""
import argparse
import time

import numpy as np

from classalg.kernels import backends


def _cyclic_inputs(n: int, k: int):
    """Addition table of Z/n with the mod-k partition (a congruence when k | n)."""
    a = np.arange(n, dtype=np.int64)
    table = ((a[:, None] + a[None, :]) % n).reshape(-1)
    cls = (a % k).astype(np.int64)
    dims = np.array([n, n], dtype=np.int64)
    arg_cls = np.concatenate([cls, cls])
    offsets = np.array([0, n], dtype=np.int64)
    ncls = np.array([k, k], dtype=np.int64)
    return table, dims, arg_cls, offsets, ncls, cls


def _hom_inputs(n: int, k: int):
    a = np.arange(n, dtype=np.int64)
    b = np.arange(k, dtype=np.int64)
    ta = ((a[:, None] + a[None, :]) % n).reshape(-1)
    tb = ((b[:, None] + b[None, :]) % k).reshape(-1)
    f = (a % k).astype(np.int64)
    return (ta, np.array([n, n], dtype=np.int64), tb, np.array([k, k], dtype=np.int64),
            np.concatenate([f, f]), np.array([0, n], dtype=np.int64), f, b.copy())


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 64, 256])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    impls = backends()
    if "cython" not in impls:
        print("cython backend not built; timing the python fallback only")
    print(f"{'kernel':<14}{'n':>6}" + "".join(f"{name:>12}" for name in impls) + f"{'speedup':>10}")
    for n in args.sizes:
        k = 4 if n % 4 == 0 else 1
        r_in, h_in = _cyclic_inputs(n, k), _hom_inputs(n, k)
        for label, fn_name, inputs in (("respects", "respects", r_in), ("hom_violation", "hom_violation", h_in)):
            results, times = {}, {}
            for name, mod in impls.items():
                fn = getattr(mod, fn_name)
                results[name] = fn(*inputs)
                times[name] = best_of(lambda: fn(*inputs), args.repeat)
            if len(set(map(str, results.values()))) != 1:
                raise SystemExit(f"backends disagree on {label} n={n}: {results}")
            speed = times["python"] / times["cython"] if "cython" in times else 1.0
            print(f"{label:<14}{n:>6}" + "".join(f"{times[m] * 1e3:>10.2f}ms" for m in impls)
                  + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
