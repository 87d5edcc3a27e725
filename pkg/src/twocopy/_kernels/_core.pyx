# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot per-sample kernels.

Mirrors ``_fallback`` exactly; see that module for the contracts.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def purity(mat):
    cdef const double complex[:, ::1] m = np.ascontiguousarray(mat, dtype=np.complex128)
    cdef Py_ssize_t n = m.shape[0], i, j
    cdef double acc = 0.0
    for i in range(n):
        for j in range(n):
            acc += (m[i, j] * m[j, i]).real
    return acc


cdef cnp.ndarray _position_table(tuple dims, tuple keep):
    """Map (kept index, traced index) -> full index, as a flat int64 table.

    Entry ``k * dt + t`` holds the full row/column index whose kept-factor
    digits encode ``k`` and traced-factor digits encode ``t`` (factor 0 most
    significant throughout).
    """
    cdef Py_ssize_t n = len(dims)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] dims_c = np.asarray(dims, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] keep_mask = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t i
    for i in keep:
        keep_mask[i] = 1
    cdef Py_ssize_t d_full = 1
    for i in range(n):
        d_full *= dims_c[i]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pos = np.empty(d_full, dtype=np.int64)
    cdef Py_ssize_t x, rem, k, t, digit
    cdef cnp.ndarray[cnp.int64_t, ndim=1] kept_pv = np.ones(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] traced_pv = np.ones(n, dtype=np.int64)
    cdef Py_ssize_t pk = 1, pt = 1
    for i in range(n - 1, -1, -1):
        if keep_mask[i]:
            kept_pv[i] = pk
            pk *= dims_c[i]
        else:
            traced_pv[i] = pt
            pt *= dims_c[i]
    for x in range(d_full):
        rem = x
        k = 0
        t = 0
        for i in range(n - 1, -1, -1):
            digit = rem % dims_c[i]
            rem //= dims_c[i]
            if keep_mask[i]:
                k += digit * kept_pv[i]
            else:
                t += digit * traced_pv[i]
        pos[k * pt + t] = x
    return pos


def partial_trace(mat, dims, keep):
    cdef const double complex[:, ::1] m = np.ascontiguousarray(mat, dtype=np.complex128)
    cdef tuple dims_t = tuple(dims)
    cdef tuple keep_t = tuple(keep)
    cdef Py_ssize_t dk = 1, dt = 1, i
    for i in range(len(dims_t)):
        if i in keep_t:
            dk *= dims_t[i]
        else:
            dt *= dims_t[i]
    cdef const cnp.int64_t[::1] pos = _position_table(dims_t, keep_t)
    out_arr = np.zeros((dk, dk), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef Py_ssize_t a, b, t
    cdef double complex acc
    for a in range(dk):
        for b in range(dk):
            acc = 0
            for t in range(dt):
                acc += m[pos[a * dt + t], pos[b * dt + t]]
            out[a, b] = acc
    return out_arr


def reduced_purity(mat, dims, keep):
    cdef const double complex[:, ::1] m = np.ascontiguousarray(mat, dtype=np.complex128)
    cdef tuple dims_t = tuple(dims)
    cdef tuple keep_t = tuple(keep)
    cdef Py_ssize_t dk = 1, dt = 1, i
    for i in range(len(dims_t)):
        if i in keep_t:
            dk *= dims_t[i]
        else:
            dt *= dims_t[i]
    cdef const cnp.int64_t[::1] pos = _position_table(dims_t, keep_t)
    red_arr = np.empty((dk, dk), dtype=np.complex128)
    cdef double complex[:, ::1] red = red_arr
    cdef Py_ssize_t a, b, t
    cdef double complex acc
    for a in range(dk):
        for b in range(dk):
            acc = 0
            for t in range(dt):
                acc += m[pos[a * dt + t], pos[b * dt + t]]
            red[a, b] = acc
    cdef double total = 0.0
    for a in range(dk):
        for b in range(dk):
            total += (red[a, b] * red[b, a]).real
    return total


def two_copy_expect(rho, obs):
    cdef const double complex[:, ::1] r = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef const double complex[:, ::1] o = np.ascontiguousarray(obs, dtype=np.complex128)
    cdef Py_ssize_t d = r.shape[0]
    cdef Py_ssize_t a, b, c, e
    cdef double complex acc = 0
    cdef double complex ra
    for a in range(d):
        for c in range(d):
            ra = r[c, a]
            if ra == 0:
                continue
            for b in range(d):
                for e in range(d):
                    acc += ra * r[e, b] * o[a * d + b, c * d + e]
    return acc.real
