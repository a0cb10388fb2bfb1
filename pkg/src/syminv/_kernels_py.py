"""Pure-Python trace kernels (fallback when the compiled module is missing).

Words arrive CSR-encoded: word ``w`` uses ``letters[offsets[w]:offsets[w+1]]``,
each entry indexing ``mats``. Exact kernels take integer matrices and return
Python ints; the caller divides out the common denominators.
"""

from __future__ import annotations

import numpy as np


def _trace_product(mats, word) -> int:
    P = mats[word[0]]
    for c in word[1:-1]:
        X = mats[c]
        cols = list(zip(*X))
        P = [[sum(a * b for a, b in zip(r, col)) for col in cols] for r in P]
    if len(word) == 1:
        return sum(P[i][i] for i in range(len(P)))
    # only the trace of the last product is needed
    X = mats[word[-1]]
    m = len(P)
    return sum(P[i][j] * X[j][i] for i in range(m) for j in range(m))


def trace_words_exact(mats, letters, offsets, start=0, stop=None) -> list:
    mats = [[[int(x) for x in row] for row in M] for M in mats]
    letters = [int(c) for c in letters]
    stop = len(offsets) - 1 if stop is None else stop
    return [
        _trace_product(mats, letters[offsets[w] : offsets[w + 1]]) for w in range(start, stop)
    ]


def trace_words_float(mats, letters, offsets, start=0, stop=None) -> np.ndarray:
    mats = np.asarray(mats, dtype=float)
    letters = np.asarray(letters, dtype=np.int64)
    offsets = np.asarray(offsets, dtype=np.int64)
    stop = len(offsets) - 1 if stop is None else stop
    idx = np.arange(start, stop)
    lengths = offsets[idx + 1] - offsets[idx]
    out = np.empty(len(idx))
    # batch words of equal length through stacked matmuls
    for s in np.unique(lengths):
        sel = idx[lengths == s]
        pos = offsets[sel][:, None] + np.arange(s)[None, :]
        seq = mats[letters[pos]]
        P = seq[:, 0]
        for t in range(1, s):
            P = P @ seq[:, t]
        out[lengths == s] = np.trace(P, axis1=1, axis2=2)
    return out
