"""Compare the compiled and numpy kernel backends on the hot loops.

    python3 benchmarks/bench_kernels.py [--log2 20] [--repeat 5]

Prints the best-of-N wall time per kernel and the speedup of the compiled
backend, and checks that both backends agree.
"""
import argparse
import time

import numpy as np

from lacunary_ldp.kernels import BACKENDS


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(M):
    w = np.exp(np.cos(2 * np.pi * np.arange(M) / M))
    g = 1.0 + 0.1 * np.sin(2 * np.pi * np.arange(M) / M)
    S = np.random.default_rng(0).uniform(-5, 5, M)
    a_mod = (3 ** 40) % M
    return {
        "transfer_apply(q=2)": lambda k: k.transfer_apply(w, g, 2, np.empty(M)),
        "transfer_apply(q=3)": lambda k: k.transfer_apply(w, g, 3, np.empty(M)),
        "add_folded_cos": lambda k: k.add_folded_cos(np.zeros(M), a_mod, M, 0),
        "exp_sum": lambda k: k.exp_sum(S, 0.7, 0.0),
        "count_at_least": lambda k: k.count_at_least(S, 1.5),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--log2", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    M = 1 << args.log2
    names = sorted(BACKENDS)
    print(f"grid M = 2^{args.log2}; backends: {', '.join(names)}")
    header = f"{'kernel':22s}" + "".join(f"{n:>12s}" for n in names)
    if "cython" in BACKENDS:
        header += f"{'speedup':>10s}"
    print(header)
    for label, fn in cases(M).items():
        times, results = {}, {}
        for name in names:
            k = BACKENDS[name]
            results[name] = fn(k)
            times[name] = best_of(lambda: fn(k), args.repeat)
        line = f"{label:22s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if "cython" in BACKENDS:
            line += f"{times['numpy'] / times['cython']:9.1f}x"
            a, b = np.asarray(results["numpy"]), np.asarray(results["cython"])
            if not np.allclose(a, b, rtol=1e-12, atol=1e-9):
                line += "  MISMATCH"
        print(line)


if __name__ == "__main__":
    main()
