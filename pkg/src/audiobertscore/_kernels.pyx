"""Compiled scoring kernels.

Mirrors _kernels_py with the same formulas: signed maxima for max_pr and
max-factored power means for pnorm_pr, evaluated as
exp(p * (log v - log vmax)) so nothing underflows at large p and the
maximal element contributes exactly 1. Zero entries contribute exactly 0.
log v is computed once per element and shared by the row and column
accumulations.
"""

from libc.math cimport exp, fabs, log

import numpy as np

NAME = "compiled"


def max_pr(double[:, ::1] m):
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t k = m.shape[1]
    cdef Py_ssize_t i, j
    cdef double v, rmax
    cdef double row_acc = 0.0
    cdef double col_acc = 0.0

    colmax_arr = np.empty(k, dtype=np.float64)
    cdef double[::1] colmax = colmax_arr

    for j in range(k):
        colmax[j] = m[0, j]
    for i in range(n):
        rmax = m[i, 0]
        for j in range(k):
            v = m[i, j]
            if v > rmax:
                rmax = v
            if v > colmax[j]:
                colmax[j] = v
        row_acc += rmax
    for j in range(k):
        col_acc += colmax[j]
    return row_acc / n, col_acc / k


cdef inline double _transform(double v, bint clamp) noexcept nogil:
    if clamp:
        return v if v > 0.0 else 0.0
    return fabs(v)


def pnorm_pr(double[:, ::1] m, double p, bint clamp):
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t k = m.shape[1]
    cdef Py_ssize_t i, j
    cdef double v, lv
    cdef double prec_acc = 0.0
    cdef double rec_acc = 0.0

    logs_arr = np.empty((n, k), dtype=np.float64)
    rowmax_arr = np.zeros(n, dtype=np.float64)
    colmax_arr = np.zeros(k, dtype=np.float64)
    rowsum_arr = np.zeros(n, dtype=np.float64)
    colsum_arr = np.zeros(k, dtype=np.float64)
    logrow_arr = np.zeros(n, dtype=np.float64)
    logcol_arr = np.zeros(k, dtype=np.float64)
    cdef double[:, ::1] logs = logs_arr
    cdef double[::1] rowmax = rowmax_arr
    cdef double[::1] colmax = colmax_arr
    cdef double[::1] rowsum = rowsum_arr
    cdef double[::1] colsum = colsum_arr
    cdef double[::1] logrow = logrow_arr
    cdef double[::1] logcol = logcol_arr

    with nogil:
        for i in range(n):
            for j in range(k):
                v = _transform(m[i, j], clamp)
                logs[i, j] = log(v) if v > 0.0 else 0.0
                if v > rowmax[i]:
                    rowmax[i] = v
                if v > colmax[j]:
                    colmax[j] = v

        for i in range(n):
            if rowmax[i] > 0.0:
                logrow[i] = log(rowmax[i])
        for j in range(k):
            if colmax[j] > 0.0:
                logcol[j] = log(colmax[j])

        for i in range(n):
            for j in range(k):
                v = _transform(m[i, j], clamp)
                if v > 0.0:
                    lv = logs[i, j]
                    rowsum[i] += exp(p * (lv - logrow[i]))
                    colsum[j] += exp(p * (lv - logcol[j]))

        for i in range(n):
            if rowmax[i] > 0.0:
                prec_acc += rowmax[i] * exp(log(rowsum[i] / k) / p)
        for j in range(k):
            if colmax[j] > 0.0:
                rec_acc += colmax[j] * exp(log(colsum[j] / n) / p)

    return prec_acc / n, rec_acc / k
