"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--max-n 10] [--repeat 3]
"""

import argparse
import math
import time

from derangesum import _kernels_py

try:
    from derangesum import _kernels as _compiled
except ImportError:
    _compiled = None


def best_of(repeat, fn, *args):
    best = math.inf
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=10, help="largest n for the Heap count")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [("python", _kernels_py)]
    if _compiled is not None:
        backends.append(("cython", _compiled))
    else:
        print("compiled kernels not built; timing the fallback only")

    print("count_derangements (Heap enumeration)")
    print(f"{'n':>4} " + " ".join(f"{name:>12}" for name, _ in backends) + f" {'speedup':>9}")
    for n in range(6, args.max_n + 1):
        times = []
        values = set()
        for _, mod in backends:
            t, val = best_of(args.repeat, mod.count_derangements, n)
            times.append(t)
            values.add(val)
        assert len(values) == 1, f"backends disagree at n = {n}"
        speed = f"{times[0] / times[-1]:9.1f}" if len(times) > 1 else ""
        print(f"{n:>4} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times) + f" {speed}")

    print("\nadaptive_simpson over [0, T] with tol = 1e-10 * n!")
    print(f"{'n':>4} " + " ".join(f"{name:>12}" for name, _ in backends) + f" {'speedup':>9}")
    for n in (0, 5, 10, 15):
        T = float(max(50, 4 * n) + 20)
        tol = 1e-10 * math.factorial(n)
        times = []
        for _, mod in backends:
            t, _ = best_of(args.repeat, mod.adaptive_simpson, n, 0.0, T, tol, 10**6)
            times.append(t)
        speed = f"{times[0] / times[-1]:9.1f}" if len(times) > 1 else ""
        print(f"{n:>4} " + " ".join(f"{t * 1e3:10.3f}ms" for t in times) + f" {speed}")


if __name__ == "__main__":
    main()
