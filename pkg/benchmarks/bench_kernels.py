"""Time batch polynomial evaluation: numba kernel vs numpy fallback.

    python benchmarks/bench_kernels.py [--points N] [--repeat R]

Run with BCMK_DISABLE_NUMBA=1 to confirm the fallback is picked up on its own.
"""

import argparse
import random
import time

import numpy as np

from bcmk import MixedPolynomial, parse
from bcmk.kernels import HAVE_NUMBA, eval_batch, pack, points_to_idempotent

FIXTURES = {
    "quadric": "Z1^2 + Z2^2",
    "mixed": "Z1^3*tilde(Z1)*hat(Z1)*bar(Z1) + Z2^2*hat(Z2)",
    "cyclic": "Z1^3*Z2 + Z2^4*hat(Z2)*Z3 + Z3^5*Z1",
}


def dense(n=3, terms=40, seed=0):
    rng = random.Random(seed)
    F = MixedPolynomial(n, [])
    for _ in range(terms):
        quads = [[rng.randint(0, 3) for _ in range(4)] for _ in range(n)]
        F = F + MixedPolynomial.monomial(quads, rng.randint(1, 9))
    return F


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    polys = {k: parse(v) for k, v in FIXTURES.items()}
    polys["dense-40"] = dense()
    rng = np.random.default_rng(1)

    print(f"numba available: {HAVE_NUMBA}; {args.points} points, best of {args.repeat}")
    print(f"{'fixture':<10} {'terms':>5} {'numpy s':>9} {'numba s':>9} {'speedup':>8} {'max diff':>9}")
    for name, F in polys.items():
        exps, c1, c2 = pack(F)
        z1, z2 = points_to_idempotent(rng.normal(size=(args.points, F.n, 4)))
        t_np = best_of(lambda: eval_batch(exps, c1, c2, z1, z2, use_numba=False), args.repeat)
        ref = eval_batch(exps, c1, c2, z1, z2, use_numba=False)
        if HAVE_NUMBA:
            eval_batch(exps, c1, c2, z1[:2], z2[:2], use_numba=True)  # compile outside the timing
            t_nb = best_of(lambda: eval_batch(exps, c1, c2, z1, z2, use_numba=True), args.repeat)
            got = eval_batch(exps, c1, c2, z1, z2, use_numba=True)
            scale = max(np.abs(ref[0]).max(), np.abs(ref[1]).max(), 1.0)
            diff = max(np.abs(got[0] - ref[0]).max(), np.abs(got[1] - ref[1]).max()) / scale
            print(f"{name:<10} {len(F):>5} {t_np:>9.4f} {t_nb:>9.4f} {t_np / t_nb:>7.1f}x {diff:>9.1e}")
        else:
            print(f"{name:<10} {len(F):>5} {t_np:>9.4f} {'-':>9} {'-':>8} {'-':>9}")


if __name__ == "__main__":
    main()
