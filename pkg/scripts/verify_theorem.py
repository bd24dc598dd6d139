"""Run both directions of the characterization on seeded coefficient vectors.

For each N, draws rational coefficients over all multigraphs with at most N
edges, checks the (N+1)-th derivatives of sum c_H t(H, .) vanish, then
decomposes the resulting polynomial back and compares.
"""
from __future__ import annotations

import argparse
import time
from fractions import Fraction

import numpy as np

from graphon_calculus.classpoly import build
from graphon_calculus.harness import verify_if, verify_only_if
from graphon_calculus.homdensity import T, DensityCoefficients
from graphon_calculus.multigraph import enumerate_up_to


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-N", type=int, default=2)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--blowup", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'N':>2} {'n':>3} {'trial':>5} {'|basis|':>7} {'if':>9} {'only-if':>9} {'sec':>6}")
    for N in range(1, args.max_N + 1):
        n = 2 * N
        basis = enumerate_up_to(N)
        for trial in range(args.trials):
            t0 = time.perf_counter()
            c = DensityCoefficients(T, n, {h: Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 8)))
                                           for h in basis})
            fwd = verify_if(c, N, seed=trial)
            blown = build(DensityCoefficients(T, args.blowup * n, c.coeffs))
            back = verify_only_if(build(c), N, k=args.blowup, f_blown=blown, seed=trial)
            print(f"{N:>2} {n:>3} {trial:>5} {len(basis):>7} {fwd.verdict:>9} {back.verdict:>9} "
                  f"{time.perf_counter() - t0:>6.2f}")


if __name__ == "__main__":
    main()
