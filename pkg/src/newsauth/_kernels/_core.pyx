# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: fused LSTM gate math and the boosting split scan.

Mirrors newsauth._kernels.pykernels; the python fallback is the
reference for semantics.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, tanh, INFINITY

cnp.import_array()

BACKEND = "compiled"


cdef inline double _sig(double x) nogil:
    if x >= 0.0:
        return 1.0 / (1.0 + exp(-x))
    cdef double e = exp(x)
    return e / (1.0 + e)


def lstm_gates_forward(cnp.ndarray[cnp.float64_t, ndim=2] z,
                       cnp.ndarray[cnp.float64_t, ndim=2] c_prev):
    """Fused LSTM gate block for one timestep; layout [i | f | g | o]."""
    cdef Py_ssize_t B = z.shape[0]
    cdef Py_ssize_t H = z.shape[1] // 4
    cdef cnp.ndarray[cnp.float64_t, ndim=2] gates = np.empty_like(z)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] c = np.empty((B, H), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] h = np.empty((B, H), dtype=np.float64)
    cdef double[:, ::1] zv = np.ascontiguousarray(z)
    cdef double[:, ::1] cp = np.ascontiguousarray(c_prev)
    cdef double[:, ::1] gv = gates
    cdef double[:, ::1] cv = c
    cdef double[:, ::1] hv = h
    cdef Py_ssize_t b, j
    cdef double i_, f_, g_, o_, cc
    with nogil:
        for b in range(B):
            for j in range(H):
                i_ = _sig(zv[b, j])
                f_ = _sig(zv[b, H + j])
                g_ = tanh(zv[b, 2 * H + j])
                o_ = _sig(zv[b, 3 * H + j])
                cc = f_ * cp[b, j] + i_ * g_
                gv[b, j] = i_
                gv[b, H + j] = f_
                gv[b, 2 * H + j] = g_
                gv[b, 3 * H + j] = o_
                cv[b, j] = cc
                hv[b, j] = o_ * tanh(cc)
    return gates, c, h


def lstm_gates_backward(cnp.ndarray[cnp.float64_t, ndim=2] dh,
                        cnp.ndarray[cnp.float64_t, ndim=2] dc_in,
                        cnp.ndarray[cnp.float64_t, ndim=2] gates,
                        cnp.ndarray[cnp.float64_t, ndim=2] c,
                        cnp.ndarray[cnp.float64_t, ndim=2] c_prev):
    """Backward of the fused gate block; returns (dz, dc_prev)."""
    cdef Py_ssize_t B = dh.shape[0]
    cdef Py_ssize_t H = dh.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] dz = np.empty((B, 4 * H), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] dc_prev = np.empty((B, H), dtype=np.float64)
    cdef double[:, ::1] dhv = np.ascontiguousarray(dh)
    cdef double[:, ::1] dciv = np.ascontiguousarray(dc_in)
    cdef double[:, ::1] gv = np.ascontiguousarray(gates)
    cdef double[:, ::1] cv = np.ascontiguousarray(c)
    cdef double[:, ::1] cpv = np.ascontiguousarray(c_prev)
    cdef double[:, ::1] dzv = dz
    cdef double[:, ::1] dcpv = dc_prev
    cdef Py_ssize_t b, j
    cdef double i_, f_, g_, o_, tc, dc
    with nogil:
        for b in range(B):
            for j in range(H):
                i_ = gv[b, j]
                f_ = gv[b, H + j]
                g_ = gv[b, 2 * H + j]
                o_ = gv[b, 3 * H + j]
                tc = tanh(cv[b, j])
                dc = dhv[b, j] * o_ * (1.0 - tc * tc) + dciv[b, j]
                dzv[b, j] = dc * g_ * i_ * (1.0 - i_)
                dzv[b, H + j] = dc * cpv[b, j] * f_ * (1.0 - f_)
                dzv[b, 2 * H + j] = dc * i_ * (1.0 - g_ * g_)
                dzv[b, 3 * H + j] = dhv[b, j] * tc * o_ * (1.0 - o_)
                dcpv[b, j] = dc * f_
    return dz, dc_prev


def gbt_split_scan(cnp.ndarray[cnp.float64_t, ndim=1] grad,
                   cnp.ndarray[cnp.float64_t, ndim=1] hess,
                   cnp.ndarray[cnp.float64_t, ndim=1] values,
                   double lam,
                   double min_child_weight):
    """Best split of one sorted feature column; ties keep the lowest threshold."""
    cdef Py_ssize_t n = values.shape[0]
    if n < 2:
        return -INFINITY, 0.0, 0
    cdef double[::1] gv = np.ascontiguousarray(grad)
    cdef double[::1] hv = np.ascontiguousarray(hess)
    cdef double[::1] vv = np.ascontiguousarray(values)
    cdef double g_total = 0.0, h_total = 0.0
    cdef Py_ssize_t k
    for k in range(n):
        g_total += gv[k]
        h_total += hv[k]
    cdef double parent = g_total * g_total / (h_total + lam)
    cdef double gl = 0.0, hl = 0.0, gr, hr, gain
    cdef double best_gain = -INFINITY, best_threshold = 0.0
    cdef Py_ssize_t best_left = 0
    with nogil:
        for k in range(n - 1):
            gl += gv[k]
            hl += hv[k]
            if vv[k] == vv[k + 1]:
                continue
            gr = g_total - gl
            hr = h_total - hl
            if hl < min_child_weight or hr < min_child_weight:
                continue
            gain = 0.5 * (gl * gl / (hl + lam) + gr * gr / (hr + lam) - parent)
            if gain > best_gain:
                best_gain = gain
                best_threshold = (vv[k] + vv[k + 1]) / 2.0
                best_left = k + 1
    if best_left == 0:
        return -INFINITY, 0.0, 0
    return best_gain, best_threshold, best_left
