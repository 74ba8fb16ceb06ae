"""Discrete exterior derivative (coboundary) on the periodic complex.

The cell sum is evaluated in a pinned term order so downstream exactness
tests can compare bit for bit against an explicit loop:

    (dw)[j, i] = wx[j, i] + wy[j, i+1] - wx[j+1, i] - wy[j, i]
"""

from __future__ import annotations

from .forms import Cochain
from .grid import shifted


def exterior_derivative(omega: Cochain) -> Cochain:
    """d: degree k -> k+1; degree-2 input yields the flagged empty result."""
    grid = omega.grid
    if omega.degree == 0:
        f = omega.plane()
        wx = shifted(f, di=1) - f
        wy = shifted(f, dj=1) - f
        return Cochain.from_components(grid, wx, wy)
    if omega.degree == 1:
        wx = omega.component("x")
        wy = omega.component("y")
        circ = wx + shifted(wy, di=1) - shifted(wx, dj=1) - wy
        return Cochain.from_plane(grid, 2, circ)
    if omega.degree == 2:
        return Cochain.empty(grid, 3)
    if omega.is_empty and omega.degree == -1:
        return Cochain.zeros(grid, 0)
    raise ValueError(f"cannot differentiate degree {omega.degree}")
