"""Shared constants, uniform grids and sampled complex fields."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


@dataclass(frozen=True)
class PhysicalConstants:
    """Reduced Planck constant, particle mass and constant potential.

    Defaults are natural units (hbar = m = 1, V = 0).
    """

    hbar: float = 1.0
    mass: float = 1.0
    V: float = 0.0

    def __post_init__(self):
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        if not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass}")


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of ``n`` samples from ``x0`` to ``x1`` inclusive."""

    x0: float
    x1: float
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise DomainError(f"grid needs an integer n >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        if not self.x1 > self.x0:
            raise DomainError(f"grid needs x1 > x0, got [{self.x0}, {self.x1}]")

    @property
    def spacing(self) -> float:
        return (self.x1 - self.x0) / (self.n - 1)

    @property
    def samples(self) -> np.ndarray:
        x = self.x0 + self.spacing * np.arange(self.n)
        # pin the last sample so the endpoint is exact
        x[-1] = self.x1
        return x


def build_grid(x0: float, x1: float, n: int) -> Grid1D:
    return Grid1D(float(x0), float(x1), n)


@dataclass(frozen=True)
class ComplexField1D:
    """Complex samples ``values[i]`` attached to ``grid.samples[i]``."""

    grid: Grid1D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.n,):
            raise DomainError(
                f"field has {values.size} values for a grid of {self.grid.n} samples")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid: Grid1D, func) -> ComplexField1D:
        return cls(grid, func(grid.samples))


def max_abs_diff(f: ComplexField1D, g: ComplexField1D) -> float:
    """Sup-norm of ``f - g``; both fields must live on the same grid."""
    if f.grid != g.grid:
        raise DomainError(f"grid mismatch: {f.grid} vs {g.grid}")
    return float(np.max(np.abs(f.values - g.values)))
