# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops; same contracts as ``_kernels_py``."""
import numpy as np
from libc.math cimport cos, exp, M_PI
from libc.stdint cimport int64_t, uint64_t

NAME = "cython"


def transfer_apply(const double[::1] weight, const double[::1] g, int q, double[::1] out):
    cdef Py_ssize_t M = g.shape[0]
    cdef Py_ssize_t i, j, base, hi
    cdef int rem
    cdef double f, inv_q = 1.0 / q
    with nogil:
        for i in range(M):
            out[i] = 0.0
        for j in range(q):
            # (i + j M)/q = base + rem/q, stepped without division; base < M always
            base = (j * M) // q
            rem = <int>((j * M) % q)
            for i in range(M):
                f = rem * inv_q
                hi = base + 1
                if hi == M:
                    hi = 0
                out[i] += g[base] * (1.0 - f) + g[hi] * f
                rem += 1
                if rem == q:
                    rem = 0
                    base += 1
        for i in range(M):
            out[i] *= weight[i] * inv_q
    return np.asarray(out)


def add_folded_cos(double[::1] S, uint64_t a_mod, uint64_t M, uint64_t start):
    cdef Py_ssize_t t, n = S.shape[0]
    cdef uint64_t mask = M - 1
    cdef double scale = 2.0 * M_PI / M
    with nogil:
        for t in range(n):
            S[t] += cos(<double>((a_mod * (start + t)) & mask) * scale)
    return np.asarray(S)


def exp_sum(const double[::1] S, double theta, double shift):
    cdef Py_ssize_t i, n = S.shape[0]
    cdef double total = 0.0, c = 0.0, y, t
    with nogil:
        # Kahan summation keeps the reduction order-stable and accurate
        for i in range(n):
            y = exp(theta * S[i] - shift) - c
            t = total + y
            c = (t - total) - y
            total = t
    return total


def count_at_least(const double[::1] S, double level):
    cdef Py_ssize_t i, n = S.shape[0]
    cdef Py_ssize_t hits = 0
    with nogil:
        for i in range(n):
            if S[i] >= level:
                hits += 1
    return hits
