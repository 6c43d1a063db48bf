"""Compare the pure NumPy kernels against the compiled extension.

Times every kernel on both backends over a few batch sizes and prints the
speedup. Run from the repository root:

    python3 benchmarks/bench_kernels.py [--sizes 4096,65536,1048576] [--repeat 7]
"""

import argparse
import sys
import time

import numpy as np

from llmroi import kernels


def make_batch(rng, name, n):
    d = 5 if name.startswith("single") else 8
    x = rng.uniform(0.1, 10.0, (n, d))
    if d == 8:
        # keep the probability triple inside the simplex
        x[:, 4:7] = rng.dirichlet((1.0, 1.0, 1.0, 1.0), n)[:, :3]
    return np.ascontiguousarray(x)


def best_of(fn, repeat):
    timings = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        timings.append(time.perf_counter() - t0)
    return min(timings)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="4096,65536,1048576")
    parser.add_argument("--repeat", type=int, default=7)
    args = parser.parse_args(argv)

    if "compiled" not in kernels.available_backends():
        sys.stderr.write("compiled backend is not built; nothing to compare\n")
        return 1
    pure = kernels.get_kernels("pure")
    fast = kernels.get_kernels("compiled")
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(1)

    header = f"{'kernel':<28}{'rows':>10}{'pure':>12}{'compiled':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name in kernels.KERNEL_NAMES:
        for n in sizes:
            x = make_batch(rng, name, n)
            out = np.empty(n)
            p = best_of(lambda: getattr(pure, name)(x, out, 1e-6), args.repeat)
            c = best_of(lambda: getattr(fast, name)(x, out, 1e-6), args.repeat)
            mismatch = ""
            check_pure = np.empty(n)
            check_fast = np.empty(n)
            getattr(pure, name)(x, check_pure, 1e-6)
            getattr(fast, name)(x, check_fast, 1e-6)
            if not np.array_equal(check_pure, check_fast):
                mismatch = "  MISMATCH"
            print(f"{name:<28}{n:>10}{p * 1e3:>10.3f}ms{c * 1e3:>10.3f}ms"
                  f"{p / c:>8.1f}x{mismatch}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
