# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the h_k recurrence and its batched variants.

Mirrors chs._kernels_py exactly; see that module for the algebra.
"""

import numpy as np


def h_all(a, Py_ssize_t kmax):
    out = np.zeros(kmax + 1)
    cdef double[::1] h = out
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef Py_ssize_t i, m, n = av.shape[0]
    cdef double ai
    h[0] = 1.0
    for i in range(n):
        ai = av[i]
        for m in range(1, kmax + 1):
            h[m] += ai * h[m - 1]
    return out


def elem_all(a, Py_ssize_t kmax):
    out = np.zeros(kmax + 1)
    cdef double[::1] e = out
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef Py_ssize_t i, m, n = av.shape[0]
    cdef double ai
    e[0] = 1.0
    for i in range(n):
        ai = av[i]
        for m in range(kmax, 0, -1):
            e[m] += ai * e[m - 1]
    return out


def h_batch(X, Py_ssize_t k):
    cdef double[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t B = Xv.shape[0], n = Xv.shape[1], b, i, m
    out = np.empty(B)
    cdef double[::1] res = out
    buf = np.zeros(k + 1)
    cdef double[::1] h = buf
    cdef double ai
    for b in range(B):
        h[0] = 1.0
        for m in range(1, k + 1):
            h[m] = 0.0
        for i in range(n):
            ai = Xv[b, i]
            for m in range(1, k + 1):
                h[m] += ai * h[m - 1]
        res[b] = h[k]
    return out


def h_grad_batch(X, Py_ssize_t k):
    cdef double[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t B = Xv.shape[0], n = Xv.shape[1], b, i, m
    vals = np.empty(B)
    grads = np.empty((B, n))
    cdef double[::1] v = vals
    cdef double[:, ::1] g = grads
    buf = np.zeros(k + 1)
    cdef double[::1] h = buf
    cdef double ai, acc
    for b in range(B):
        h[0] = 1.0
        for m in range(1, k + 1):
            h[m] = 0.0
        for i in range(n):
            ai = Xv[b, i]
            for m in range(1, k + 1):
                h[m] += ai * h[m - 1]
        v[b] = h[k]
        for i in range(n):
            ai = Xv[b, i]
            acc = h[0]
            for m in range(1, k):
                acc = h[m] + ai * acc
            g[b, i] = acc
    return vals, grads
