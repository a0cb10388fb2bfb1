# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled trace kernels.

Same contract as ``_kernels_py``. The exact kernel runs in int64 with
overflow detection and without the GIL; any word whose product overflows is
recomputed with Python integers, so results are always exact.
"""

import numpy as np

from libc.stdlib cimport malloc, free

from ._kernels_py import _trace_product


cdef extern from *:
    """
    static inline int syminv_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int syminv_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int syminv_mul_ovf(long long a, long long b, long long *r) nogil
    int syminv_add_ovf(long long a, long long b, long long *r) nogil


cdef long long _LIMIT = 1 << 62


cdef int _trace_i64(const long long[:, :, ::1] mats, const long long[::1] letters,
                    Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t m,
                    long long *P, long long *Q, long long *out) noexcept nogil:
    cdef Py_ssize_t i, j, t, c, s
    cdef long long acc, prod
    cdef long long *tmp
    c = letters[lo]
    for i in range(m):
        for j in range(m):
            P[i * m + j] = mats[c, i, j]
    for s in range(lo + 1, hi):
        c = letters[s]
        if s == hi - 1:
            acc = 0
            for i in range(m):
                for j in range(m):
                    if syminv_mul_ovf(P[i * m + j], mats[c, j, i], &prod):
                        return 1
                    if syminv_add_ovf(acc, prod, &acc):
                        return 1
            out[0] = acc
            return 0
        for i in range(m):
            for j in range(m):
                acc = 0
                for t in range(m):
                    if syminv_mul_ovf(P[i * m + t], mats[c, t, j], &prod):
                        return 1
                    if syminv_add_ovf(acc, prod, &acc):
                        return 1
                Q[i * m + j] = acc
        tmp = P
        P = Q
        Q = tmp
    acc = 0
    for i in range(m):
        if syminv_add_ovf(acc, P[i * m + i], &acc):
            return 1
    out[0] = acc
    return 0


def trace_words_exact(mats, letters, offsets, start=0, stop=None):
    py_mats = [[[int(x) for x in row] for row in M] for M in mats]
    n_words = len(offsets) - 1
    stop = n_words if stop is None else stop
    if any(abs(x) >= _LIMIT for M in py_mats for row in M for x in row):
        py_letters = [int(c) for c in letters]
        return [_trace_product(py_mats, py_letters[offsets[w]:offsets[w + 1]])
                for w in range(start, stop)]

    cdef const long long[:, :, ::1] A = np.ascontiguousarray(py_mats, dtype=np.int64)
    cdef const long long[::1] L = np.ascontiguousarray(letters, dtype=np.int64)
    cdef const long long[::1] O = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef Py_ssize_t m = A.shape[1]
    cdef Py_ssize_t w, lo = start, hi = stop
    res_arr = np.zeros(max(hi - lo, 0), dtype=np.int64)
    flag_arr = np.zeros(max(hi - lo, 0), dtype=np.uint8)
    cdef long long[::1] res = res_arr
    cdef unsigned char[::1] flags = flag_arr
    cdef long long *P = <long long *> malloc(m * m * sizeof(long long))
    cdef long long *Q = <long long *> malloc(m * m * sizeof(long long))
    if P == NULL or Q == NULL:
        free(P)
        free(Q)
        raise MemoryError()
    try:
        with nogil:
            for w in range(lo, hi):
                flags[w - lo] = _trace_i64(A, L, O[w], O[w + 1], m, P, Q, &res[w - lo])
    finally:
        free(P)
        free(Q)

    out = res_arr.tolist()
    if flag_arr.any():
        py_letters = [int(c) for c in letters]
        for w in np.flatnonzero(flag_arr).tolist():
            out[w] = _trace_product(py_mats, py_letters[offsets[lo + w]:offsets[lo + w + 1]])
    return out


def trace_words_float(mats, letters, offsets, start=0, stop=None):
    cdef const double[:, :, ::1] A = np.ascontiguousarray(mats, dtype=np.float64)
    cdef const long long[::1] L = np.ascontiguousarray(letters, dtype=np.int64)
    cdef const long long[::1] O = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef Py_ssize_t m = A.shape[1]
    cdef Py_ssize_t n_words = O.shape[0] - 1
    cdef Py_ssize_t lo = start
    cdef Py_ssize_t hi = n_words if stop is None else stop
    out_arr = np.zeros(max(hi - lo, 0), dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double *P = <double *> malloc(m * m * sizeof(double))
    cdef double *Q = <double *> malloc(m * m * sizeof(double))
    cdef double *tmp
    cdef Py_ssize_t w, s, i, j, t, c
    cdef double acc
    if P == NULL or Q == NULL:
        free(P)
        free(Q)
        raise MemoryError()
    try:
        with nogil:
            for w in range(lo, hi):
                c = L[O[w]]
                for i in range(m):
                    for j in range(m):
                        P[i * m + j] = A[c, i, j]
                for s in range(O[w] + 1, O[w + 1]):
                    c = L[s]
                    for i in range(m):
                        for j in range(m):
                            acc = 0.0
                            for t in range(m):
                                acc = acc + P[i * m + t] * A[c, t, j]
                            Q[i * m + j] = acc
                    tmp = P
                    P = Q
                    Q = tmp
                acc = 0.0
                for i in range(m):
                    acc = acc + P[i * m + i]
                out[w - lo] = acc
    finally:
        free(P)
        free(Q)
    return out_arr
