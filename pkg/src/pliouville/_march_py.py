"""Pure-Python twin of the compiled march kernel.

Kept line-for-line parallel with ``_march.pyx`` so both backends produce
the same sequence of floating-point operations. Used when the compiled
extension is unavailable or explicitly disabled.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"


def _psi_sum(x: float, coeffs, exps) -> float:
    s = 0.0
    for a, p in zip(coeffs, exps):
        s += a * x ** (p - 1.0)
    return s


def _invert(y: float, coeffs, exps, tol: float) -> float:
    # monotone inverse of _psi_sum on [0, inf); y >= 0
    if y <= 0.0:
        return 0.0
    if len(coeffs) == 1:
        return (y / coeffs[0]) ** (1.0 / (exps[0] - 1.0))
    hi = y if y > 1.0 else 1.0
    while _psi_sum(hi, coeffs, exps) < y:
        hi *= 2.0
    lo = 0.0
    scale = y if y > 1.0 else 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        v = _psi_sum(mid, coeffs, exps)
        if abs(v - y) <= tol * scale:
            return mid
        if v < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _cellint(rl: float, rr: float, fl: float, fr: float, w: int) -> float:
    # integral over [rl, rr] of the linear interpolant of f times s^w;
    # float exponents so libm pow is used, as in the compiled twin
    m0 = (rr ** float(w + 1) - rl ** float(w + 1)) / (w + 1)
    m1 = (rr ** float(w + 2) - rl ** float(w + 2)) / (w + 2)
    slope = (fr - fl) / (rr - rl)
    return fl * m0 + slope * (m1 - rl * m0)


def march(nodes, b_left, b_right, alpha, n, coeffs, exps, p_pot, inv_tol):
    """Forward integration of the radial flux identity from u(0) = alpha.

    Heun-type step per cell: predict u at the right node with the left
    derivative, accumulate the flux integral with exactly integrated
    r^{n-1} moments, invert the flux map for the right derivative, then
    correct u with the derivative average. du(0) = 0 is exact.
    """
    nodes = np.asarray(nodes, dtype=float)
    N = len(nodes)
    u = np.zeros(N)
    du = np.zeros(N)
    flux_int = np.zeros(N)
    u[0] = alpha
    w = n - 1
    wf = float(w)
    pm1 = p_pot - 1.0
    coeffs = tuple(float(c) for c in coeffs)
    exps = tuple(float(p) for p in exps)
    for i in range(1, N):
        rl = nodes[i - 1]
        rr = nodes[i]
        h = rr - rl
        gl = b_left[i - 1] * u[i - 1] ** pm1
        ustar = u[i - 1] + h * du[i - 1]
        istar = flux_int[i - 1] + _cellint(rl, rr, gl, b_right[i - 1] * ustar ** pm1, w)
        rw = rr ** wf
        dustar = _invert(istar / rw, coeffs, exps, inv_tol)
        u[i] = u[i - 1] + 0.5 * h * (du[i - 1] + dustar)
        flux_int[i] = flux_int[i - 1] + _cellint(rl, rr, gl, b_right[i - 1] * u[i] ** pm1, w)
        du[i] = _invert(flux_int[i] / rw, coeffs, exps, inv_tol)
    return u, du, flux_int
