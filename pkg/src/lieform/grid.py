"""Periodic 2-D cell complex: vertices, axis-aligned edges, square cells.

Index conventions shared by every module in this package:

* Entities of each dimension carry an (i, j) label with i in [0, nx) along x
  and j in [0, ny) along y; all index arithmetic wraps periodically.
* Vertex (i, j) sits at (i*h, j*h).
* The x-edge (i, j) runs from vertex (i, j) to vertex (i+1, j) and is
  oriented along +x; the y-edge (i, j) runs from vertex (i, j) to vertex
  (i, j+1), oriented along +y.
* Cell (i, j) is the square [i*h, (i+1)*h] x [j*h, (j+1)*h] with
  counterclockwise orientation, so its boundary reads
  +x(i, j), +y(i+1, j), -x(i, j+1), -y(i, j).
* Canonical flat order is row-major with j outer and i inner. Degree-1
  data stores the x-edge block first, then the y-edge block.

Plane arrays are shaped (ny, nx) and indexed [j, i]; a C-order ravel of a
plane is exactly the canonical order of that block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

EDGE_AXES = ("x", "y")


@dataclass(frozen=True)
class GridComplex2D:
    """Uniform periodic grid of square cells with edge length h."""

    nx: int
    ny: int
    h: float

    def __post_init__(self) -> None:
        # 4 is the smallest extent on which the incidence structure is
        # nondegenerate; reconstruction schemes impose their own minimum.
        if self.nx < 4 or self.ny < 4:
            raise ValueError(f"grid must be at least 4x4, got {self.nx}x{self.ny}")
        if not (np.isfinite(self.h) and self.h > 0):
            raise ValueError(f"edge length must be positive and finite, got {self.h!r}")

    @property
    def shape(self) -> tuple[int, int]:
        """Plane-array shape (ny, nx), indexed [j, i]."""
        return (self.ny, self.nx)

    @property
    def size(self) -> int:
        return self.nx * self.ny

    def cell_count(self, k: int) -> int:
        """Number of k-dimensional entities."""
        if k in (0, 2):
            return self.size
        if k == 1:
            return 2 * self.size
        raise ValueError(f"a 2-D complex has no cells of dimension {k}")

    def node_coords(self) -> tuple[np.ndarray, np.ndarray]:
        """Vertex coordinate planes (X, Y), each shaped (ny, nx)."""
        xs = np.arange(self.nx) * self.h
        ys = np.arange(self.ny) * self.h
        return np.meshgrid(xs, ys)

    def flatten(self, ref: "CellRef") -> int:
        """Canonical flat index of a cell reference (indices wrap)."""
        i = ref.i % self.nx
        j = ref.j % self.ny
        base = j * self.nx + i
        if ref.dim == 1 and ref.axis == "y":
            return self.size + base
        return base

    def unflatten(self, dim: int, index: int) -> "CellRef":
        """Inverse of flatten for the given dimension."""
        count = self.cell_count(dim)
        if not 0 <= index < count:
            raise ValueError(f"flat index {index} out of range for dimension {dim}")
        axis = None
        if dim == 1:
            axis = EDGE_AXES[index // self.size]
            index %= self.size
        return CellRef(dim, index % self.nx, index // self.nx, axis)


@dataclass(frozen=True)
class CellRef:
    """Reference to one entity: dimension, (i, j) label, and edge axis."""

    dim: int
    i: int
    j: int
    axis: str | None = None  # "x" or "y"; meaningful only for dim == 1

    def __post_init__(self) -> None:
        if self.dim not in (0, 1, 2):
            raise ValueError(f"dimension must be 0, 1 or 2, got {self.dim}")
        if self.dim == 1:
            if self.axis not in EDGE_AXES:
                raise ValueError(f"edges need axis 'x' or 'y', got {self.axis!r}")
        elif self.axis is not None:
            raise ValueError("axis is only meaningful for edges")


def build_complex(nx: int, ny: int, h: float) -> GridComplex2D:
    """Validate sizes and build the periodic complex."""
    return GridComplex2D(int(nx), int(ny), float(h))


def shifted(plane: np.ndarray, di: int = 0, dj: int = 0) -> np.ndarray:
    """Periodic shift: result[j, i] = plane[(j + dj) % ny, (i + di) % nx]."""
    return np.roll(plane, shift=(-dj, -di), axis=(0, 1))


def boundary_chain(grid: GridComplex2D, ref: CellRef) -> list[tuple[int, int]]:
    """Ordered signed boundary of one entity as (flat lower index, sign).

    The order is part of the convention (tests sum these terms left to
    right and compare bit-for-bit against the stencil operators):
    edges list head before tail; cells walk counterclockwise starting
    from the bottom edge.
    """
    i, j = ref.i, ref.j
    if ref.dim == 1:
        if ref.axis == "x":
            head = CellRef(0, i + 1, j)
        else:
            head = CellRef(0, i, j + 1)
        return [(grid.flatten(head), 1), (grid.flatten(CellRef(0, i, j)), -1)]
    if ref.dim == 2:
        return [
            (grid.flatten(CellRef(1, i, j, "x")), 1),
            (grid.flatten(CellRef(1, i + 1, j, "y")), 1),
            (grid.flatten(CellRef(1, i, j + 1, "x")), -1),
            (grid.flatten(CellRef(1, i, j, "y")), -1),
        ]
    raise ValueError("vertices have empty boundary")


@dataclass(frozen=True)
class IncidenceOperator:
    """Signed boundary operator for the k-cells of a grid complex.

    ``entries`` is sparse with one row per k-cell and one column per
    (k-1)-cell; row sigma holds the +/-1 coefficients of the chain
    boundary of sigma. Applying ``entries`` to a vector of (k-1)-cochain
    values therefore evaluates the coboundary: row sigma of the product
    is the signed sum of the cochain over the boundary of sigma.
    """

    k: int
    grid: GridComplex2D
    entries: sparse.csr_matrix

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Signed boundary sums of a (k-1)-cochain value vector."""
        return self.entries @ values


def boundary_operator(grid: GridComplex2D, k: int) -> IncidenceOperator:
    """Assemble the boundary operator for dimension k (1 or 2)."""
    if k not in (1, 2):
        raise ValueError(f"boundary operator exists for k in (1, 2), got {k}")
    n = grid.size
    nx, ny = grid.nx, grid.ny
    jj, ii = np.divmod(np.arange(n), nx)
    east = jj * nx + (ii + 1) % nx
    north = ((jj + 1) % ny) * nx + ii

    if k == 1:
        # x-edge rows: +head, -tail; then the y-edge block.
        rows = np.concatenate([np.arange(n), np.arange(n),
                               n + np.arange(n), n + np.arange(n)])
        cols = np.concatenate([east, np.arange(n), north, np.arange(n)])
        data = np.concatenate([np.ones(n), -np.ones(n), np.ones(n), -np.ones(n)])
        shape = (2 * n, n)
    else:
        # cell rows: +x(i,j), +y(i+1,j), -x(i,j+1), -y(i,j)
        cell = np.arange(n)
        rows = np.concatenate([cell, cell, cell, cell])
        cols = np.concatenate([cell, n + east, north, n + cell])
        data = np.concatenate([np.ones(n), np.ones(n), -np.ones(n), -np.ones(n)])
        shape = (n, 2 * n)
    mat = sparse.coo_matrix((data.astype(np.int8), (rows, cols)), shape=shape)
    return IncidenceOperator(k, grid, mat.tocsr())
