# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: batched term evaluation and Aberth-Ehrlich roots.

Mirrors fockbundle._core_py; see that module for the call contracts.
"""

import numpy as np

cimport cython
from libc.stdlib cimport free, malloc

BACKEND_NAME = "compiled"


def eval_terms(e0, e1, c, z0, z1):
    # Complex multiplies are spelled out on real/imag doubles: the C99
    # complex-times-complex helper (__muldc3 and friends) carries
    # inf/NaN fixups that dominate the runtime of a loop this tight.
    # Each point first fills power tables for its two coordinates, so a
    # term costs one table product instead of a pow call.
    cdef long[::1] e0v = np.ascontiguousarray(e0, dtype=np.int64)
    cdef long[::1] e1v = np.ascontiguousarray(e1, dtype=np.int64)
    cdef double complex[::1] cv = np.ascontiguousarray(c, dtype=np.complex128)
    z0a = np.ascontiguousarray(z0, dtype=np.complex128)
    z1a = np.ascontiguousarray(z1, dtype=np.complex128)
    cdef double complex[::1] z0v = z0a
    cdef double complex[::1] z1v = z1a
    out_a = np.zeros(len(z0a), dtype=np.complex128)
    cdef double complex[::1] out = out_a
    cdef Py_ssize_t n = z0v.shape[0]
    cdef Py_ssize_t kk = cv.shape[0]
    cdef Py_ssize_t i, k
    cdef long max0 = 0, max1 = 0
    for k in range(kk):
        if e0v[k] > max0:
            max0 = e0v[k]
        if e1v[k] > max1:
            max1 = e1v[k]
    cdef double *p0r = <double *> malloc((max0 + 1) * sizeof(double))
    cdef double *p0i = <double *> malloc((max0 + 1) * sizeof(double))
    cdef double *p1r = <double *> malloc((max1 + 1) * sizeof(double))
    cdef double *p1i = <double *> malloc((max1 + 1) * sizeof(double))
    if p0r == NULL or p0i == NULL or p1r == NULL or p1i == NULL:
        free(p0r)
        free(p0i)
        free(p1r)
        free(p1i)
        raise MemoryError()
    cdef double zr, zi, ar, ai, br, bi, tr, ti, cr, ci
    with nogil:
        for i in range(n):
            zr = z0v[i].real
            zi = z0v[i].imag
            p0r[0] = 1.0
            p0i[0] = 0.0
            for k in range(1, max0 + 1):
                p0r[k] = p0r[k - 1] * zr - p0i[k - 1] * zi
                p0i[k] = p0r[k - 1] * zi + p0i[k - 1] * zr
            zr = z1v[i].real
            zi = z1v[i].imag
            p1r[0] = 1.0
            p1i[0] = 0.0
            for k in range(1, max1 + 1):
                p1r[k] = p1r[k - 1] * zr - p1i[k - 1] * zi
                p1i[k] = p1r[k - 1] * zi + p1i[k - 1] * zr
            ar = 0.0
            ai = 0.0
            for k in range(kk):
                br = p0r[e0v[k]]
                bi = p0i[e0v[k]]
                tr = br * p1r[e1v[k]] - bi * p1i[e1v[k]]
                ti = br * p1i[e1v[k]] + bi * p1r[e1v[k]]
                cr = cv[k].real
                ci = cv[k].imag
                ar = ar + cr * tr - ci * ti
                ai = ai + cr * ti + ci * tr
            out[i] = ar + 1j * ai
    free(p0r)
    free(p0i)
    free(p1r)
    free(p1i)
    return out_a


def aberth(coeffs, x, int max_iters, double tol):
    coeffs_a = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef double complex[::1] a = coeffs_a
    cdef double complex[::1] xv = x
    cdef Py_ssize_t d = a.shape[0] - 1
    if d == 0:
        return 0
    abs_a = np.abs(coeffs_a)
    cdef double[::1] am = abs_a
    cdef double resid_eps = 1e-15
    cdef Py_ssize_t it, i, j, k
    cdef double complex p, dp, newton, s, denom, w, xi
    cdef double scale, ax, wmax, steptol
    cdef int all_settled, all_small
    cdef double complex[::1] steps = np.zeros(d, dtype=np.complex128)

    for it in range(1, max_iters + 1):
        all_settled = 1
        for i in range(d):
            xi = xv[i]
            p = a[d]
            dp = 0.0
            for k in range(d - 1, -1, -1):
                dp = dp * xi + p
                p = p * xi + a[k]
            ax = abs(xi)
            scale = am[d]
            for k in range(d - 1, -1, -1):
                scale = scale * ax + am[k]
            if abs(p) <= resid_eps * scale:
                steps[i] = 0.0
                continue
            all_settled = 0
            if dp == 0:
                dp = 1e-300
            newton = p / dp
            s = 0.0
            for j in range(d):
                if j != i:
                    s = s + 1.0 / (xi - xv[j])
            denom = 1.0 - newton * s
            if denom == 0:
                denom = 1.0
            steps[i] = newton / denom
        if all_settled:
            return it
        all_small = 1
        for i in range(d):
            xv[i] = xv[i] - steps[i]
            if abs(steps[i]) > tol * (1.0 + abs(xv[i])):
                all_small = 0
        if all_small:
            return it
    return -1
