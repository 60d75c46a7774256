"""Radial grids, sampled profiles, and weighted quadrature.

All ball integrals reduce to weighted line integrals ``int f(r) r^w dr``.
The quadrature interpolates the sampled integrand linearly on each cell
and integrates the monomial weight exactly, so it is exact for piecewise
linear ``f`` and second-order accurate for smooth ``f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RadialGrid",
    "RadialProfile",
    "cell_integrals",
    "integrate_radial",
]


@dataclass(frozen=True)
class RadialGrid:
    """Strictly increasing nodes from 0 to the ball radius k."""

    nodes: np.ndarray
    spacing_hint: float = field(default=0.0, compare=False)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or len(nodes) < 2:
            raise ValueError("grid needs at least two nodes")
        if nodes[0] != 0.0:
            raise ValueError(f"grid must start at 0, got {nodes[0]}")
        if not np.all(np.diff(nodes) > 0.0):
            raise ValueError("grid nodes must be strictly increasing")
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def uniform(cls, k: float, per_unit: int, require_node: float | None = None) -> "RadialGrid":
        """Uniform grid on [0, k] with ``per_unit`` cells per unit radius.

        If ``require_node`` falls strictly inside the interval and does not
        already coincide with a node, it is inserted (potentials with a
        support boundary integrate exactly only when it sits on a node).
        """
        if not k > 0.0:
            raise ValueError(f"ball radius must be positive, got {k}")
        ncells = max(2, int(round(k * per_unit)))
        nodes = np.linspace(0.0, float(k), ncells + 1)
        h = k / ncells
        if require_node is not None and 0.0 < require_node < k:
            j = int(round(require_node / h))
            if abs(nodes[min(j, ncells)] - require_node) > 1e-12 * max(1.0, k):
                nodes = np.sort(np.append(nodes, float(require_node)))
        return cls(nodes, spacing_hint=h)

    @property
    def k(self) -> float:
        return float(self.nodes[-1])

    @property
    def ncells(self) -> int:
        return len(self.nodes) - 1

    def spacing(self) -> np.ndarray:
        return np.diff(self.nodes)

    def index_at(self, r: float, tol: float = 1e-9) -> int:
        """Index of the node equal to r (within tol), or raise."""
        i = int(np.argmin(np.abs(self.nodes - r)))
        if abs(self.nodes[i] - r) > tol * max(1.0, self.k):
            raise ValueError(f"radius {r} is not a grid node")
        return i


@dataclass(frozen=True)
class RadialProfile:
    """Sampled function values and radial derivative on a grid."""

    grid: RadialGrid
    u: np.ndarray
    du: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        du = np.asarray(self.du, dtype=float)
        if u.shape != self.grid.nodes.shape or du.shape != self.grid.nodes.shape:
            raise ValueError("profile arrays must match the grid nodes")
        u.setflags(write=False)
        du.setflags(write=False)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "du", du)

    def value_at(self, r) -> np.ndarray:
        return np.interp(r, self.grid.nodes, self.u)

    def resample(self, target: RadialGrid) -> "RadialProfile":
        """Linear resampling onto a coarser/shared grid (target must lie inside)."""
        if target.k > self.grid.k + 1e-12:
            raise ValueError("target grid extends beyond the profile domain")
        u = np.interp(target.nodes, self.grid.nodes, self.u)
        du = np.interp(target.nodes, self.grid.nodes, self.du)
        return RadialProfile(target, u, du)


def cell_integrals(nodes: np.ndarray, f_left: np.ndarray, f_right: np.ndarray,
                   weight_power: int) -> np.ndarray:
    """Per-cell integrals of the linear interpolant of f times r^weight_power.

    ``f_left``/``f_right`` are the (possibly one-sided) values of f at each
    cell's endpoints; the monomial moments are integrated in closed form.
    """
    w = int(weight_power)
    if w < 0:
        raise ValueError(f"weight power must be a nonnegative integer, got {weight_power}")
    rl, rr = nodes[:-1], nodes[1:]
    m0 = (rr ** (w + 1) - rl ** (w + 1)) / (w + 1)
    m1 = (rr ** (w + 2) - rl ** (w + 2)) / (w + 2)
    slope = (f_right - f_left) / (rr - rl)
    return f_left * m0 + slope * (m1 - rl * m0)


def integrate_radial(f, grid: RadialGrid, weight_power: int) -> float:
    """Approximate ``int_0^k f(r) r^{weight_power} dr`` from node samples."""
    f = np.asarray(f, dtype=float)
    if f.shape != grid.nodes.shape:
        raise ValueError(
            f"sample length {f.shape} does not match grid {grid.nodes.shape}"
        )
    return float(np.sum(cell_integrals(grid.nodes, f[:-1], f[1:], weight_power)))
