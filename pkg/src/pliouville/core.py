"""Scalar maps and exponent bookkeeping used throughout the package.

The flux map ``psi(x, p) = |x|^{p-2} x`` and its generalization to sums
``psi_multi(x, e) = sum_i a_i |x|^{p_i-2} x`` convert a radial derivative
into a flux density; their inverses convert an accumulated flux back into
a derivative. Both are odd and strictly increasing on the real line, which
is what makes the bracketing inversion below globally convergent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Exponents",
    "psi",
    "psi_inv",
    "psi_multi",
    "psi_multi_inv",
    "surface_area",
]


def _check_exponent(p: float) -> None:
    if not p > 1.0:
        raise ValueError(f"exponent must satisfy p > 1, got {p}")


@dataclass(frozen=True)
class Exponents:
    """A sum of power-law terms ``sum_i a_i |x|^{p_i-2} x``.

    ``terms`` is a tuple of ``(a_i, p_i)`` pairs with ``a_i > 0`` and
    ``p_i > 1``, stored sorted by increasing ``p_i``. The single-term case
    with ``a_1 = 1`` is the plain power map of order ``p``.
    """

    terms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("Exponents requires at least one (a, p) term")
        for a, p in self.terms:
            if not a > 0.0:
                raise ValueError(f"coefficient must be positive, got {a}")
            _check_exponent(p)
        normalized = tuple(
            sorted(((float(a), float(p)) for a, p in self.terms), key=lambda t: t[1])
        )
        object.__setattr__(self, "terms", normalized)

    @classmethod
    def single(cls, p: float, a: float = 1.0) -> "Exponents":
        return cls(((a, p),))

    @property
    def p_min(self) -> float:
        return self.terms[0][1]

    @property
    def p_max(self) -> float:
        return self.terms[-1][1]

    @property
    def lam(self) -> float:
        """Smallest coefficient (the ellipticity floor of the operator)."""
        return min(a for a, _ in self.terms)

    @property
    def is_single(self) -> bool:
        return len(self.terms) == 1

    @property
    def is_plain(self) -> bool:
        """True for a single unit-coefficient term."""
        return self.is_single and self.terms[0][0] == 1.0

    def coefficients(self):
        return tuple(a for a, _ in self.terms)

    def exponent_values(self):
        return tuple(p for _, p in self.terms)

    def to_list(self) -> list[list[float]]:
        return [[a, p] for a, p in self.terms]

    @classmethod
    def from_list(cls, items) -> "Exponents":
        return cls(tuple((float(a), float(p)) for a, p in items))


def psi(x: float, p: float) -> float:
    """Odd power map ``|x|^{p-2} x`` for an exponent ``p > 1``."""
    _check_exponent(p)
    if x == 0.0:
        return 0.0
    return math.copysign(abs(x) ** (p - 1.0), x)


def psi_inv(y: float, p: float) -> float:
    """Inverse of :func:`psi`: ``|y|^{1/(p-1)} sign(y)``."""
    _check_exponent(p)
    if y == 0.0:
        return 0.0
    return math.copysign(abs(y) ** (1.0 / (p - 1.0)), y)


def psi_multi(x: float, e: Exponents) -> float:
    """Sum of odd power maps ``sum_i a_i |x|^{p_i-2} x``."""
    if x == 0.0:
        return 0.0
    ax = abs(x)
    s = 0.0
    for a, p in e.terms:
        s += a * ax ** (p - 1.0)
    return math.copysign(s, x)


def psi_multi_inv(y: float, e: Exponents, tol: float = 1e-14) -> float:
    """Invert :func:`psi_multi` by bisection on the positive half-line.

    Returns ``x`` with ``|psi_multi(x, e) - y| <= tol * max(1, |y|)``.
    Oddness is preserved exactly: the search runs on ``|y|`` and the sign
    is reapplied. A single term is inverted in closed form, bit-identical
    to :func:`psi_inv` when the coefficient is 1.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if y == 0.0:
        return 0.0
    sign = 1.0 if y > 0.0 else -1.0
    ay = abs(y)
    if e.is_single:
        a, p = e.terms[0]
        return sign * (ay / a) ** (1.0 / (p - 1.0))
    # geometric bracket expansion from [0, max(1, |y|)]
    hi = max(1.0, ay)
    expansions = 0
    while psi_multi(hi, e) < ay:
        hi *= 2.0
        expansions += 1
        if expansions > 2000:  # cannot happen for valid Exponents
            raise ValueError("bracket expansion failed; malformed Exponents")
    lo = 0.0
    scale = max(1.0, ay)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        v = psi_multi(mid, e)
        if abs(v - ay) <= tol * scale:
            return sign * mid
        if v < ay:
            lo = mid
        else:
            hi = mid
    return sign * 0.5 * (lo + hi)


def surface_area(n: int) -> float:
    """Measure of the unit sphere in dimension ``n >= 2``: ``2 pi^{n/2} / Gamma(n/2)``."""
    if int(n) != n or n < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {n}")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)
