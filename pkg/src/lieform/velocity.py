"""Staggered (MAC) velocity fields stored as integrated edge fluxes.

flux_x[j, i] is the flow through the vertical grid edge collocated with
y-edge (i, j); flux_y[j, i] the flow through the horizontal edge at x-edge
(i, j). A constant velocity (vx, vy) therefore carries flux (vx*h, vy*h).

Stream-function construction samples psi only at the nodes of the grid and
takes wrapped differences, so the discrete divergence of the resulting
fluxes telescopes to zero (up to roundoff of the psi values themselves).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import GridComplex2D, shifted


@dataclass
class StaggeredVelocity:
    grid: GridComplex2D
    flux_x: np.ndarray
    flux_y: np.ndarray

    def __post_init__(self) -> None:
        self.flux_x = np.asarray(self.flux_x, dtype=np.float64)
        self.flux_y = np.asarray(self.flux_y, dtype=np.float64)
        for name, plane in (("flux_x", self.flux_x), ("flux_y", self.flux_y)):
            if plane.shape != self.grid.shape:
                raise ValueError(f"{name} shape {plane.shape} != {self.grid.shape}")
            if not np.isfinite(plane).all():
                raise ValueError(f"{name} contains non-finite entries")

    def divergence(self) -> np.ndarray:
        """Net outflow per cell; identically ~0 for admissible fields.

        flux_x[j, i] crosses the west face of cell (i, j) and flux_y[j, i]
        its south face, so the east/north faces are the di=1 / dj=1 shifts.
        """
        fx, fy = self.flux_x, self.flux_y
        return (shifted(fx, di=1) - fx) + (shifted(fy, dj=1) - fy)

    def max_speed(self) -> float:
        """Largest pointwise velocity magnitude estimate, flux / h."""
        return float(max(np.abs(self.flux_x).max(), np.abs(self.flux_y).max()) / self.grid.h)


@dataclass(frozen=True)
class ConstantVelocity:
    vx: float
    vy: float


@dataclass(frozen=True)
class StreamFunctionVelocity:
    """Divergence-free field from psi(x, y); u = -dpsi/dy, v = dpsi/dx."""

    psi: Callable


def rudman_vortex() -> StreamFunctionVelocity:
    """Single steady vortex on the unit square, max speed 1."""

    def psi(x, y):
        return np.sin(np.pi * x) ** 2 * np.sin(np.pi * y) ** 2 / np.pi

    return StreamFunctionVelocity(psi)


def discretize_velocity(
    field: ConstantVelocity | StreamFunctionVelocity | StaggeredVelocity,
    grid: GridComplex2D,
) -> StaggeredVelocity:
    if isinstance(field, StaggeredVelocity):
        if field.grid != grid:
            raise ValueError("velocity grid does not match target grid")
        return field
    if isinstance(field, ConstantVelocity):
        flux_x = np.full(grid.shape, field.vx * grid.h)
        flux_y = np.full(grid.shape, field.vy * grid.h)
        return StaggeredVelocity(grid, flux_x, flux_y)
    X, Y = grid.node_coords()
    p = np.asarray(field.psi(X, Y), dtype=np.float64)
    # Vertical edge from node (i, j) to (i, j+1): flux = psi(tail) - psi(head).
    flux_x = p - shifted(p, dj=1)
    # Horizontal edge from node (i, j) to (i+1, j): flux = psi(head) - psi(tail).
    flux_y = shifted(p, di=1) - p
    return StaggeredVelocity(grid, flux_x, flux_y)


def average_to_node(vel: StaggeredVelocity) -> tuple[np.ndarray, np.ndarray]:
    """Two-point averages of each flux component onto the vertex lattice."""
    nx_ = (vel.flux_x + shifted(vel.flux_x, dj=-1)) / 2.0
    ny_ = (vel.flux_y + shifted(vel.flux_y, di=-1)) / 2.0
    return nx_, ny_


def max_courant(vel: StaggeredVelocity, dt: float) -> float:
    """max |flux| * dt / h^2, the per-axis cell-crossing fraction."""
    peak = max(np.abs(vel.flux_x).max(), np.abs(vel.flux_y).max())
    return float(peak * dt / vel.grid.h ** 2)
