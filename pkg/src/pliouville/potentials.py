"""Radially symmetric nonnegative potentials b(r).

Every potential reports one-sided values on grid cells via
:meth:`Potential.cell_values` so that step discontinuities (compactly
supported potentials) are integrated exactly when the support boundary
falls on a grid node: the flux integrand on a cell uses the right-limit
of b at the left endpoint and the left-limit at the right endpoint.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Potential",
    "Zero",
    "CompactBump",
    "PowerDecay",
    "Tabulated",
    "potential_from_dict",
]


class Potential:
    """Base class: an evaluation map r -> b(r) >= 0 plus decay metadata."""

    kind: str = "abstract"

    def __call__(self, r):
        raise NotImplementedError

    def cell_values(self, r_left, r_right):
        """One-sided values (b(r_left+), b(r_right-)) for cells, vectorized.

        Smooth potentials return plain evaluations at both endpoints.
        """
        return self(r_left), self(r_right)

    @property
    def support_radius(self):
        """Radius beyond which b vanishes identically, or None."""
        return None

    @property
    def is_zero(self) -> bool:
        return False

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Zero(Potential):
    """The identically vanishing potential."""

    kind: str = field(default="zero", init=False)

    def __call__(self, r):
        return np.zeros_like(np.asarray(r, dtype=float))

    @property
    def support_radius(self):
        return 0.0

    @property
    def is_zero(self) -> bool:
        return True

    def to_dict(self) -> dict:
        return {"kind": "zero"}


@dataclass(frozen=True)
class CompactBump(Potential):
    """Step potential: b = beta on [0, r0], zero beyond."""

    r0: float
    beta: float
    kind: str = field(default="compact", init=False)

    def __post_init__(self):
        if not self.r0 > 0.0:
            raise ValueError(f"support radius must be positive, got {self.r0}")
        if not self.beta >= 0.0:
            raise ValueError(f"amplitude must be nonnegative, got {self.beta}")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return np.where(r <= self.r0, self.beta, 0.0)

    def cell_values(self, r_left, r_right):
        r_left = np.asarray(r_left, dtype=float)
        r_right = np.asarray(r_right, dtype=float)
        # right-limit at the left endpoint: the cell starting at r0 is outside
        bl = np.where(r_left < self.r0, self.beta, 0.0)
        br = np.where(r_right <= self.r0, self.beta, 0.0)
        return bl, br

    @property
    def support_radius(self):
        return self.r0

    def to_dict(self) -> dict:
        return {"kind": "compact", "r0": self.r0, "beta": self.beta}


@dataclass(frozen=True)
class PowerDecay(Potential):
    """Algebraically decaying potential b(r) = c / (1 + r)^ell.

    The shift by 1 keeps the value finite at the origin; for r >= 1 it
    differs from c / r^ell by a bounded factor only.
    """

    c: float
    ell: float
    kind: str = field(default="power", init=False)

    def __post_init__(self):
        if not self.c >= 0.0:
            raise ValueError(f"amplitude must be nonnegative, got {self.c}")
        if not self.ell >= 0.0:
            raise ValueError(f"decay exponent must be nonnegative, got {self.ell}")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return self.c / (1.0 + r) ** self.ell

    def to_dict(self) -> dict:
        return {"kind": "power", "c": self.c, "ell": self.ell}


@dataclass(frozen=True)
class Tabulated(Potential):
    """Piecewise-linear potential from samples (r_i, b_i).

    Samples must start at r = 0 with strictly increasing radii and
    nonnegative values. Beyond the table the potential is extended by its
    last value, which must be zero (so the extension is by zero); tables
    ending on a nonzero value are rejected.
    """

    radii: tuple[float, ...]
    values: tuple[float, ...]
    kind: str = field(default="tabulated", init=False)

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        b = np.asarray(self.values, dtype=float)
        if r.ndim != 1 or r.shape != b.shape or len(r) < 2:
            raise ValueError("tabulated potential needs matching 1-d samples, >= 2 rows")
        if r[0] != 0.0:
            raise ValueError(f"tabulated radii must start at 0, got {r[0]}")
        if not np.all(np.diff(r) > 0.0):
            raise ValueError("tabulated radii must be strictly increasing")
        if np.any(b < 0.0):
            raise ValueError("tabulated potential values must be nonnegative")
        if b[-1] != 0.0:
            raise ValueError(
                "tabulated potential must end at value 0 (extension beyond the "
                "table holds the last value, which is only admissible when 0)"
            )
        object.__setattr__(self, "radii", tuple(float(x) for x in r))
        object.__setattr__(self, "values", tuple(float(x) for x in b))

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return np.interp(r, self.radii, self.values, right=0.0)

    @property
    def support_radius(self):
        b = np.asarray(self.values)
        nz = np.nonzero(b > 0.0)[0]
        if len(nz) == 0:
            return 0.0
        # support ends at the first zero sample after the last positive one
        return self.radii[min(nz[-1] + 1, len(self.radii) - 1)]

    @classmethod
    def from_csv(cls, path) -> "Tabulated":
        """Load a two-column CSV of (r, b) rows; a header row is optional."""
        radii, values = [], []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith("#"):
                    continue
                try:
                    r, b = float(row[0]), float(row[1])
                except (ValueError, IndexError):
                    if not radii:  # tolerate a single header row
                        continue
                    raise ValueError(f"malformed CSV row in {path}: {row!r}")
                radii.append(r)
                values.append(b)
        return cls(tuple(radii), tuple(values))

    def to_dict(self) -> dict:
        return {"kind": "tabulated", "radii": list(self.radii), "values": list(self.values)}


def potential_from_dict(d: dict) -> Potential:
    kind = d.get("kind")
    if kind == "zero":
        return Zero()
    if kind == "compact":
        return CompactBump(d["r0"], d["beta"])
    if kind == "power":
        return PowerDecay(d["c"], d["ell"])
    if kind == "tabulated":
        return Tabulated(tuple(d["radii"]), tuple(d["values"]))
    raise ValueError(f"unknown potential kind {kind!r}")
