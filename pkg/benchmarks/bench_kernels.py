"""Compare the numba kernels against the pure-numpy fallback.

Kernel microbenchmarks run both implementations in this process; the
end-to-end decomposition benchmark re-executes itself in a subprocess
with CHAINCELL_BACKEND set, since the binding is chosen at import time.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import subprocess
import sys
from timeit import timeit

import numpy as np

from chaincell import _kernels


def bench_kernels(repeat):
    rng = np.random.default_rng(0)
    p = 3
    workloads = {
        "mat_mul 16x16 zpsq": lambda impl: impl["mat_mul"](A16, B16, p, 1),
        "mat_mul 16x16 dual": lambda impl: impl["mat_mul"](A16, B16, p, 0),
        "rank_mod 32x32": lambda impl: impl["rank_mod"](M32, p),
        "mat_mul_many_right 256x(8x8)": lambda impl: impl["mat_mul_many_right"](
            A8, stack, p, 1
        ),
    }
    A16 = rng.integers(0, p * p, size=(16, 16), dtype=np.int64)
    B16 = rng.integers(0, p * p, size=(16, 16), dtype=np.int64)
    M32 = rng.integers(0, p, size=(32, 32), dtype=np.int64)
    A8 = rng.integers(0, p * p, size=(8, 8), dtype=np.int64)
    stack = rng.integers(0, p * p, size=(256, 8, 8), dtype=np.int64)

    backends = ["numpy"]
    if _kernels.HAVE_NUMBA:
        backends.append("numba")
    else:
        print("numba not installed; benchmarking the numpy fallback only")

    impls = {name: _kernels.get_impls(name) for name in backends}
    if "numba" in impls:
        for fn in workloads.values():  # trigger jit compilation up front
            fn(impls["numba"])

    header = f"{'kernel':36}" + "".join(f"{b:>12}" for b in backends)
    print(header)
    print("-" * len(header))
    for label, fn in workloads.items():
        row = f"{label:36}"
        for name in backends:
            t = timeit(lambda: fn(impls[name]), number=repeat) / repeat
            row += f"{t * 1e6:10.1f}us"
        print(row)
    sys.stdout.flush()


def bench_decompose_inner(count):
    from chaincell import decompose
    from chaincell.randgen import random_complex_with_disks
    from chaincell.ring import RingSpec

    ring = RingSpec("zpsq", 3)
    rng = np.random.default_rng(11)
    complexes = [
        random_complex_with_disks(ring, rng, max_degree=4, max_rank=4)
        for _ in range(count)
    ]
    decompose(complexes[0])  # warm the jit before timing
    t = timeit(lambda: [decompose(X) for X in complexes], number=1)
    print(
        f"decompose x{count} [{_kernels.ACTIVE_BACKEND:5}]: "
        f"{t:.3f}s total, {t / count * 1e3:.2f}ms each"
    )


def bench_decompose(count):
    for backend in ["numpy", "numba"]:
        if backend == "numba" and not _kernels.HAVE_NUMBA:
            continue
        env = dict(os.environ, CHAINCELL_BACKEND=backend)
        subprocess.run(
            [sys.executable, __file__, "--inner", str(count)], env=env, check=True
        )


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=2000)
    parser.add_argument("--decompose-count", type=int, default=300)
    parser.add_argument("--inner", type=int, help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.inner:
        bench_decompose_inner(args.inner)
        return
    bench_kernels(args.repeat)
    print()
    bench_decompose(args.decompose_count)


if __name__ == "__main__":
    main()
