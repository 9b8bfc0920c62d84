"""Per-trial kernel throughput: numba loop kernel vs vectorised numpy.

    python3 benchmarks/bench_kernels.py --grids 4 8 16 32 --rate 5 --trials 2000
"""
import argparse
import time

import numpy as np

from faultembed import _kernels
from faultembed.bench import trial_rng
from faultembed.fabric import apply_faults, build_fabric


def masks(m, c, rate, trials, seed):
    base = build_fabric(m, c)
    return [apply_faults(base, rate=rate / 100.0, seed=trial_rng(seed, m, c, rate, t)).grid
            for t in range(trials)]


def time_backend(backend, grids, c):
    _kernels.trial_outcomes(grids[0], c, False, backend)  # warm-up / jit compile
    t = time.perf_counter()
    out = [_kernels.trial_outcomes(g, c, False, backend) for g in grids]
    return time.perf_counter() - t, np.array(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grids", type=int, nargs="+", default=[4, 8, 16, 32])
    ap.add_argument("--c", type=int, default=4)
    ap.add_argument("--rate", type=float, default=5.0, help="fault rate in percent")
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = ["numba", "numpy"] if _kernels.HAVE_NUMBA else ["numpy"]
    print(f"{'m':>4} {'backend':>8} {'us/trial':>10} {'speedup':>8}")
    for m in args.grids:
        grids = masks(m, args.c, args.rate, args.trials, args.seed)
        times = {}
        results = {}
        for b in backends:
            times[b], results[b] = time_backend(b, grids, args.c)
        if len(backends) == 2:
            assert np.array_equal(results["numba"], results["numpy"]), "backends disagree"
        for b in backends:
            print(f"{m:>4} {b:>8} {1e6 * times[b] / args.trials:>10.1f} {times['numpy'] / times[b]:>7.1f}x")


if __name__ == "__main__":
    main()
