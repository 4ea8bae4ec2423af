"""Timing comparison between the compiled kernels and the numpy fallback.

Run as a script:

    python3 benchmarks/bench_kernels.py [--repeats 5] [--sizes 8,32,128]

Both backends are imported directly so one process can time the pair; the
CHS_BACKEND switch is for library users, not needed here.
"""

import argparse
import time

import numpy as np

from chs import _kernels_py

try:
    from chs import _kernels
except ImportError:
    _kernels = None


def bench(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--sizes", default="8,32,128")
    ap.add_argument("--batch", type=int, default=4096)
    ap.add_argument("--kmax", type=int, default=20)
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(0)

    if _kernels is None:
        print("compiled backend not built; timing the numpy fallback only")

    header = f"{'kernel':<14}{'n':>6}{'python (ms)':>14}"
    if _kernels is not None:
        header += f"{'cython (ms)':>14}{'speedup':>10}"
    print(header)

    for n in sizes:
        a = rng.standard_normal(n)
        X = rng.standard_normal((args.batch, n))
        cases = [
            ("h_all", (a, args.kmax)),
            ("elem_all", (a, n)),
            ("h_batch", (X, args.kmax)),
            ("h_grad_batch", (X, args.kmax)),
        ]
        for name, fn_args in cases:
            t_py = bench(getattr(_kernels_py, name), fn_args, args.repeats)
            line = f"{name:<14}{n:>6}{t_py * 1e3:>14.3f}"
            if _kernels is not None:
                t_cy = bench(getattr(_kernels, name), fn_args, args.repeats)
                line += f"{t_cy * 1e3:>14.3f}{t_py / t_cy:>10.2f}"
                ref = getattr(_kernels_py, name)(*fn_args)
                got = getattr(_kernels, name)(*fn_args)
                if not isinstance(ref, tuple):
                    ref, got = (ref,), (got,)
                for r, g in zip(ref, got):
                    if not np.allclose(r, g, rtol=1e-12, atol=1e-300):
                        raise AssertionError(f"backend mismatch in {name} at n={n}")
            print(line)


if __name__ == "__main__":
    main()
