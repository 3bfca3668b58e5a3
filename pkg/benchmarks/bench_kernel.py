"""Compare the jitted and pure-numpy per-trial kernels.

Runs the same batch of random instances through both backends and prints
per-call timings plus the speedup. The jit compile happens on a warmup call
and is excluded from the measurement.

    python3 benchmarks/bench_kernel.py --trials 2000 --n 10 --k 5
"""

import argparse
import time

import numpy as np

from projeval import kernels
from projeval.instances import SeedSpec, random_chain, random_features, random_weights


def make_batch(trials, n, k, gamma, seed):
    batch = []
    for i in range(trials):
        spec = SeedSpec(seed, (i,))
        mdp = random_chain(n, gamma, spec)
        phi = random_features(n, k, spec.derive(1))
        xi = random_weights(n, spec.derive(2))
        batch.append((mdp.transitions, mdp.rewards, gamma, phi.matrix, xi.weights))
    return batch


def run(fn, batch):
    start = time.perf_counter()
    for args in batch:
        fn(*args)
    return time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--gamma", type=float, default=0.95)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    batch = make_batch(args.trials, args.n, args.k, args.gamma, args.seed)
    kernels.trial_stats(*batch[0])  # warmup / jit compile
    kernels.trial_stats_numpy(*batch[0])

    t_fast = run(kernels.trial_stats, batch)
    t_plain = run(kernels.trial_stats_numpy, batch)

    a = kernels.trial_stats(*batch[0])
    b = kernels.trial_stats_numpy(*batch[0])
    agree = np.allclose(a, b, rtol=1e-6, atol=1e-12, equal_nan=True)

    print(f"backend in use: {kernels.BACKEND}")
    print(f"instances: {args.trials} (n={args.n}, k={args.k}, gamma={args.gamma})")
    print(f"trial_stats       : {t_fast:8.3f} s  ({1e6 * t_fast / args.trials:8.1f} us/call)")
    print(f"trial_stats_numpy : {t_plain:8.3f} s  ({1e6 * t_plain / args.trials:8.1f} us/call)")
    print(f"speedup: {t_plain / t_fast:.2f}x  (outputs agree: {agree})")


if __name__ == "__main__":
    main()
