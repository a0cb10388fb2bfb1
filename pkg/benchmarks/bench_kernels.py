"""Compare the compiled and pure-Python word-trace kernels.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import random
import time

import numpy as np

from syminv import kernels
from syminv.words import encode_words, enumerate_words

CASES = [
    # (m, operators, cap, entry bound)
    (2, 3, 5, 6),
    (3, 3, 5, 6),
    (4, 2, 7, 4),
    (4, 3, 6, 4),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled_backend is None:
        raise SystemExit("compiled extension not built; reinstall with a C compiler available")
    py, cy = kernels.python_backend, kernels.compiled_backend
    rng = random.Random(0)
    print(f"{'m':>2} {'ops':>3} {'cap':>3} {'words':>7} | {'exact py':>9} {'exact cy':>9} {'x':>6} | "
          f"{'float py':>9} {'float cy':>9} {'x':>6}")
    for m, ops, cap, bound in CASES:
        mats = [[[rng.randint(-bound, bound) for _ in range(m)] for _ in range(m)] for _ in range(2 * ops)]
        fmats = np.array(mats, dtype=float)
        L, O = encode_words(enumerate_words(ops, cap))
        assert py.trace_words_exact(mats, L, O) == cy.trace_words_exact(mats, L, O)
        te_py = best_of(lambda: py.trace_words_exact(mats, L, O), args.repeat)
        te_cy = best_of(lambda: cy.trace_words_exact(mats, L, O), args.repeat)
        tf_py = best_of(lambda: py.trace_words_float(fmats, L, O), args.repeat)
        tf_cy = best_of(lambda: cy.trace_words_float(fmats, L, O), args.repeat)
        print(f"{m:>2} {ops:>3} {cap:>3} {len(O) - 1:>7} | {te_py:>8.4f}s {te_cy:>8.4f}s {te_py / te_cy:>5.1f}x | "
              f"{tf_py:>8.4f}s {tf_cy:>8.4f}s {tf_py / tf_cy:>5.1f}x")


if __name__ == "__main__":
    main()
