"""Closed-form reference solution for the linear (p = 2) step-potential case.

For the Laplacian with b = beta on [0, r0] and zero beyond, the radial
problem on the ball of radius k with boundary value 1 is solved in closed
form by matching a modified-Bessel interior profile to a harmonic tail:

* inside:  u(r) = a * f(r) with f(r) = (mu r)^{-nu} I_nu(mu r),
  mu = sqrt(beta), nu = n/2 - 1 (this reduces to sinh(mu r)/r for n = 3
  and to I_0(mu r) for n = 2),
* outside: u(r) = A + B r^{2-n} for n >= 3, or A + B log r for n = 2.

Continuity of u and u' at r0 plus u(k) = 1 determine (a, A, B) linearly.
The module exists as an independent check on the numerical solvers and is
validated against a generic ODE integrator in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma, iv

__all__ = ["MatchedLinearSolution"]


def _bessel_profile(nu: float, mu: float, r):
    """f(r) = (mu r)^{-nu} I_nu(mu r), regular at 0 with f(0) = 1/(2^nu Gamma(nu+1))."""
    r = np.asarray(r, dtype=float)
    z = mu * r
    f0 = 1.0 / (2.0 ** nu * gamma(nu + 1.0))
    small = z < 1e-6
    zsafe = np.where(small, 1.0, z)
    vals = np.where(small, f0 * (1.0 + z * z / (4.0 * (nu + 1.0))),
                    zsafe ** (-nu) * iv(nu, zsafe))
    return vals


def _bessel_profile_deriv(nu: float, mu: float, r):
    """f'(r) = mu (mu r)^{-nu} I_{nu+1}(mu r)."""
    r = np.asarray(r, dtype=float)
    z = mu * r
    # series: (z)^{-nu} I_{nu+1}(z) ~ (z/2) / (2^nu Gamma(nu+2)) for small z
    f0 = 1.0 / (2.0 ** nu * gamma(nu + 2.0))
    small = z < 1e-6
    zsafe = np.where(small, 1.0, z)
    vals = np.where(small, mu * f0 * z / 2.0, mu * zsafe ** (-nu) * iv(nu + 1.0, zsafe))
    return vals


@dataclass(frozen=True)
class MatchedLinearSolution:
    """Matched interior/tail solution for p = 2 and a step potential."""

    n: int
    beta: float
    r0: float
    k: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.n}")
        if not self.beta > 0.0:
            raise ValueError("step amplitude must be positive for the matched solution")
        if not 0.0 < self.r0 < self.k:
            raise ValueError("need 0 < r0 < k")

    # -- matching coefficients ------------------------------------------------

    @property
    def mu(self) -> float:
        return math.sqrt(self.beta)

    @property
    def nu(self) -> float:
        return self.n / 2.0 - 1.0

    def _tail_shape(self, r):
        r = np.asarray(r, dtype=float)
        if self.n == 2:
            return np.log(r)
        return r ** (2.0 - self.n)

    def _coefficients(self):
        """(a, A, B): interior scale and tail coefficients."""
        f_r0 = float(_bessel_profile(self.nu, self.mu, self.r0))
        fp_r0 = float(_bessel_profile_deriv(self.nu, self.mu, self.r0))
        if self.n == 2:
            bc = fp_r0 * self.r0
        else:
            bc = fp_r0 * self.r0 ** (self.n - 1.0) / (2.0 - self.n)
        ac = f_r0 - bc * float(self._tail_shape(self.r0))
        a = 1.0 / (ac + bc * float(self._tail_shape(self.k)))
        return a, a * ac, a * bc

    @property
    def alpha(self) -> float:
        """Center value u(0)."""
        a, _, _ = self._coefficients()
        return a * float(_bessel_profile(self.nu, self.mu, 0.0))

    @property
    def tail_flux_constant(self) -> float:
        """The conserved quantity u'(r) r^{n-1} on the potential-free tail."""
        a, _, _ = self._coefficients()
        return a * float(_bessel_profile_deriv(self.nu, self.mu, self.r0)) * self.r0 ** (self.n - 1.0)

    def limit_alpha(self):
        """Center value of the whole-space limit k -> infinity.

        Finite and positive when the tail shape vanishes at infinity
        (n >= 3); None for n = 2, where the log tail forces the limit to 0.
        """
        if self.n == 2:
            return None
        f_r0 = float(_bessel_profile(self.nu, self.mu, self.r0))
        fp_r0 = float(_bessel_profile_deriv(self.nu, self.mu, self.r0))
        bc = fp_r0 * self.r0 ** (self.n - 1.0) / (2.0 - self.n)
        ac = f_r0 - bc * self.r0 ** (2.0 - self.n)
        return float(_bessel_profile(self.nu, self.mu, 0.0)) / ac

    # -- evaluation -----------------------------------------------------------

    def u(self, r):
        r = np.asarray(r, dtype=float)
        a, A, B = self._coefficients()
        inside = a * _bessel_profile(self.nu, self.mu, np.minimum(r, self.r0))
        rsafe = np.maximum(r, self.r0)
        outside = A + B * self._tail_shape(rsafe)
        return np.where(r <= self.r0, inside, outside)

    def du(self, r):
        r = np.asarray(r, dtype=float)
        a, _, B = self._coefficients()
        inside = a * _bessel_profile_deriv(self.nu, self.mu, np.minimum(r, self.r0))
        rsafe = np.maximum(r, self.r0)
        if self.n == 2:
            outside = B / rsafe
        else:
            outside = (2.0 - self.n) * B * rsafe ** (1.0 - self.n)
        return np.where(r <= self.r0, inside, outside)
