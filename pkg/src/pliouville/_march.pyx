# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled march kernel: forward integration of the radial flux identity.

Mirrors ``_march_py.py``; see there for the scheme description.
"""

from libc.math cimport fabs, pow

import numpy as np

BACKEND = "compiled"


cdef double _psi_sum(double x, const double[::1] coeffs, const double[::1] exps) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(coeffs.shape[0]):
        s += coeffs[i] * pow(x, exps[i] - 1.0)
    return s


cdef double _invert(double y, const double[::1] coeffs, const double[::1] exps, double tol) noexcept nogil:
    cdef double lo, hi, mid, v, scale
    cdef int it
    if y <= 0.0:
        return 0.0
    if coeffs.shape[0] == 1:
        return pow(y / coeffs[0], 1.0 / (exps[0] - 1.0))
    hi = y if y > 1.0 else 1.0
    while _psi_sum(hi, coeffs, exps) < y:
        hi *= 2.0
    lo = 0.0
    scale = y if y > 1.0 else 1.0
    for it in range(200):
        mid = 0.5 * (lo + hi)
        v = _psi_sum(mid, coeffs, exps)
        if fabs(v - y) <= tol * scale:
            return mid
        if v < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


cdef double _cellint(double rl, double rr, double fl, double fr, int w) noexcept nogil:
    cdef double m0 = (pow(rr, w + 1) - pow(rl, w + 1)) / (w + 1)
    cdef double m1 = (pow(rr, w + 2) - pow(rl, w + 2)) / (w + 2)
    cdef double slope = (fr - fl) / (rr - rl)
    return fl * m0 + slope * (m1 - rl * m0)


def march(const double[::1] nodes, const double[::1] b_left, const double[::1] b_right,
          double alpha, int n, const double[::1] coeffs, const double[::1] exps,
          double p_pot, double inv_tol):
    cdef Py_ssize_t N = nodes.shape[0]
    u_arr = np.zeros(N)
    du_arr = np.zeros(N)
    i_arr = np.zeros(N)
    cdef double[::1] u = u_arr
    cdef double[::1] du = du_arr
    cdef double[::1] flux_int = i_arr
    cdef int w = n - 1
    cdef double pm1 = p_pot - 1.0
    cdef double rl, rr, h, gl, ustar, istar, rw, dustar
    cdef Py_ssize_t i
    u[0] = alpha
    with nogil:
        for i in range(1, N):
            rl = nodes[i - 1]
            rr = nodes[i]
            h = rr - rl
            gl = b_left[i - 1] * pow(u[i - 1], pm1)
            ustar = u[i - 1] + h * du[i - 1]
            istar = flux_int[i - 1] + _cellint(rl, rr, gl, b_right[i - 1] * pow(ustar, pm1), w)
            rw = pow(rr, w)
            dustar = _invert(istar / rw, coeffs, exps, inv_tol)
            u[i] = u[i - 1] + 0.5 * h * (du[i - 1] + dustar)
            flux_int[i] = flux_int[i - 1] + _cellint(rl, rr, gl, b_right[i - 1] * pow(u[i], pm1), w)
            du[i] = _invert(flux_int[i] / rw, coeffs, exps, inv_tol)
    return u_arr, du_arr, i_arr
