# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot kernels.

Semantics (including accumulation order, hence rounding) must match
`roughcone._kernels_py` exactly; the test suite asserts bitwise equality
between the two backends.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs, sqrt

cnp.import_array()

EUCLIDEAN = 0
SUP = 1
DISCRETE = 2


def pairwise_distance(double[:, ::1] pts, int kind):
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t q = pts.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out_arr = np.zeros((n, n))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, c
    cdef double acc, d

    if kind == DISCRETE:
        for i in range(n):
            for j in range(n):
                acc = 0.0
                for c in range(q):
                    if pts[i, c] != pts[j, c]:
                        acc = 1.0
                        break
                out[i, j] = acc
    elif kind == EUCLIDEAN:
        for i in range(n):
            for j in range(n):
                acc = 0.0
                for c in range(q):
                    d = pts[i, c] - pts[j, c]
                    acc = acc + d * d
                out[i, j] = sqrt(acc)
    elif kind == SUP:
        for i in range(n):
            for j in range(n):
                acc = 0.0
                for c in range(q):
                    d = fabs(pts[i, c] - pts[j, c])
                    if d > acc:
                        acc = d
                out[i, j] = acc
    else:
        raise ValueError("unknown distance kind %r" % (kind,))
    return out_arr


def facet_crit(double[:, ::1] gaps, double[::1] scale, double delta):
    cdef Py_ssize_t p = gaps.shape[0]
    cdef Py_ssize_t nr = gaps.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.empty(p)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, r
    cdef double best, v
    for i in range(p):
        best = -INFINITY
        for r in range(nr):
            v = (delta - gaps[i, r]) / scale[r]
            if v > best:
                best = v
        out[i] = best
    return out_arr


def soc_crit(double[:, ::1] base, double[::1] witness, double delta):
    cdef Py_ssize_t p = base.shape[0]
    cdef Py_ssize_t m = base.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.empty(p)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, c
    cdef double w0 = witness[0]
    cdef double ww = 0.0
    cdef double a0, bw, bb, c2, c1, c0, disc, root, t_head, t_quad
    for c in range(1, m):
        ww += witness[c] * witness[c]
    c2 = w0 * w0 - ww
    for i in range(p):
        a0 = base[i, 0] - delta
        t_head = -a0 / w0
        bw = 0.0
        bb = 0.0
        for c in range(1, m):
            bw += base[i, c] * witness[c]
            bb += base[i, c] * base[i, c]
        c1 = 2.0 * (a0 * w0 - bw)
        c0 = a0 * a0 - bb
        disc = c1 * c1 - 4.0 * c2 * c0
        if disc >= 0.0:
            root = disc
            if root < 0.0:
                root = 0.0
            t_quad = (-c1 + sqrt(root)) / (2.0 * c2)
        else:
            t_quad = -INFINITY
        out[i] = t_head if t_head >= t_quad else t_quad
    return out_arr


def affine_row_max(double[:, ::1] rho, double[::1] coef0, double[::1] coef1):
    cdef Py_ssize_t n = rho.shape[0]
    cdef Py_ssize_t m = rho.shape[1]
    cdef Py_ssize_t nr = coef0.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out_arr = np.empty((n, m))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, r
    cdef double best, v
    for i in range(n):
        for j in range(m):
            best = -INFINITY
            for r in range(nr):
                v = coef0[r] + rho[i, j] * coef1[r]
                if v > best:
                    best = v
            out[i, j] = best
    return out_arr


def pair_min_index_max(double[:, ::1] T):
    cdef Py_ssize_t n = T.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k, j, i
    cdef double best
    for k in range(n):
        best = -INFINITY
        for j in range(k, n):
            if T[k, j] > best:
                best = T[k, j]
        for i in range(k + 1, n):
            if T[i, k] > best:
                best = T[i, k]
        out[k] = best
    return out_arr
