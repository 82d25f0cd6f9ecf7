# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of :mod:`isocurve._kernel_py`.

Coordinates below 2**20 in absolute value take a machine-integer path
(64-bit orientation, 128-bit concurrency determinants, no overflow possible);
anything larger runs the same loops on Python integers.
"""

from libc.stdlib cimport malloc, free

from isocurve import _kernel_py

cdef extern from *:
    ctypedef long long i128 "__int128"

BACKEND = "cython"

cdef long long SMALL = 1 << 20


def orient_sign(ax, ay, bx, by, cx, cy):
    return _kernel_py.orient_sign(ax, ay, bx, by, cx, cy)


cdef bint _small(xs, ys):
    cdef Py_ssize_t i
    for i in range(len(xs)):
        if not (-SMALL < xs[i] < SMALL and -SMALL < ys[i] < SMALL):
            return False
    return True


cdef inline int _osign(long long ax, long long ay, long long bx, long long by,
                       long long cx, long long cy) nogil:
    cdef long long d = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (d > 0) - (d < 0)


cdef long long* _to_c(seq, Py_ssize_t m) except NULL:
    cdef long long* buf = <long long*> malloc(m * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(m):
        buf[i] = seq[i]
    return buf


def crossing_pairs(xs, ys):
    cdef Py_ssize_t m = len(xs)
    if not _small(xs, ys):
        return _kernel_py.crossing_pairs(xs, ys)
    cdef long long* X = _to_c(xs, m)
    cdef long long* Y = _to_c(ys, m)
    cdef Py_ssize_t i, j, i1, j1
    cdef int s1, s2, s3, s4
    out = []
    try:
        for i in range(m):
            i1 = i + 1 if i + 1 < m else 0
            for j in range(i + 2, m):
                if i == 0 and j == m - 1:
                    continue
                j1 = j + 1 if j + 1 < m else 0
                s1 = _osign(X[i], Y[i], X[j], Y[j], X[j1], Y[j1])
                s2 = _osign(X[i1], Y[i1], X[j], Y[j], X[j1], Y[j1])
                s3 = _osign(X[i], Y[i], X[i1], Y[i1], X[j], Y[j])
                s4 = _osign(X[i], Y[i], X[i1], Y[i1], X[j1], Y[j1])
                if s1 < 0 and s2 > 0 and s3 > 0 and s4 < 0:
                    out.append((i, j, 1))
                elif s1 > 0 and s2 < 0 and s3 < 0 and s4 > 0:
                    out.append((i, j, -1))
    finally:
        free(X)
        free(Y)
    return out


def generic_violations(xs, ys, stop_at_first=False):
    cdef Py_ssize_t m = len(xs)
    if not _small(xs, ys):
        return _kernel_py.generic_violations(xs, ys, stop_at_first)
    cdef long long* X = _to_c(xs, m)
    cdef long long* Y = _to_c(ys, m)
    cdef long long* A = <long long*> malloc(m * sizeof(long long))
    cdef long long* B = <long long*> malloc(m * sizeof(long long))
    cdef long long* C = <long long*> malloc(m * sizeof(long long))
    cdef Py_ssize_t i, j, k, i1
    cdef i128 m12, m13, m23, d
    cdef bint stop = stop_at_first
    same_x, collinear, par, conc = [], [], [], []
    try:
        for i in range(m):
            for j in range(i + 1, m):
                if X[i] == X[j]:
                    same_x.append((i, j))
                    if stop:
                        return same_x, collinear, par, conc
        for i in range(m):
            for j in range(i + 1, m):
                for k in range(j + 1, m):
                    if _osign(X[i], Y[i], X[j], Y[j], X[k], Y[k]) == 0:
                        collinear.append((i, j, k))
                        if stop:
                            return same_x, collinear, par, conc
        for i in range(m):
            i1 = i + 1 if i + 1 < m else 0
            A[i] = Y[i1] - Y[i]
            B[i] = X[i] - X[i1]
            C[i] = X[i1] * Y[i] - X[i] * Y[i1]
        for i in range(m):
            for j in range(i + 1, m):
                if A[i] * B[j] - A[j] * B[i] == 0:
                    par.append((i, j))
                    if stop:
                        return same_x, collinear, par, conc
        for i in range(m):
            for j in range(i + 1, m):
                m12 = <i128> A[i] * B[j] - <i128> A[j] * B[i]
                m13 = <i128> A[i] * C[j] - <i128> A[j] * C[i]
                m23 = <i128> B[i] * C[j] - <i128> B[j] * C[i]
                for k in range(j + 1, m):
                    d = A[k] * m23 - B[k] * m13 + C[k] * m12
                    if d == 0:
                        conc.append((i, j, k))
                        if stop:
                            return same_x, collinear, par, conc
    finally:
        free(X)
        free(Y)
        free(A)
        free(B)
        free(C)
    return same_x, collinear, par, conc
