"""Uniform Cartesian meshes (1D interval, 2D box)."""

from dataclasses import dataclass

import numpy as np

from .basis import Basis


@dataclass(frozen=True)
class CartesianMesh:
    """Uniform mesh; face i+1/2 sits between elements i and i+1 and
    wraps around when periodic.

    ``bounds`` is ((lo, hi),) in 1D and ((xlo, xhi), (ylo, yhi)) in 2D;
    ``counts`` the element counts per dimension.
    """

    counts: tuple
    bounds: tuple
    periodic: tuple

    def __post_init__(self):
        if len(self.counts) not in (1, 2):
            raise ValueError("mesh supports 1 or 2 dimensions")
        if len(self.bounds) != len(self.counts) or len(self.periodic) != len(self.counts):
            raise ValueError("counts, bounds and periodic must have matching lengths")
        for n, (lo, hi) in zip(self.counts, self.bounds):
            if n < 1:
                raise ValueError("element count must be >= 1")
            if not hi > lo:
                raise ValueError("empty domain extent")

    @property
    def ndim(self) -> int:
        return len(self.counts)

    @property
    def spacings(self) -> tuple:
        return tuple((hi - lo) / n for n, (lo, hi) in zip(self.counts, self.bounds))

    def node_coords(self, basis: Basis):
        """Physical coordinates of all solution points.

        1D: array (ne, N+1).  2D: pair of arrays (nex, ney, N+1, N+1).
        Shared endpoint nodes of neighboring elements evaluate to
        bitwise identical coordinates.
        """
        axes = []
        for dim, (n, (lo, _hi)) in enumerate(zip(self.counts, self.bounds)):
            dx = self.spacings[dim]
            axes.append(lo + (np.arange(n)[:, None] + basis.nodes[None, :]) * dx)
        if self.ndim == 1:
            return axes[0]
        x = axes[0][:, None, :, None]
        y = axes[1][None, :, None, :]
        shape = (self.counts[0], self.counts[1], basis.npoints, basis.npoints)
        return np.broadcast_to(x, shape).copy(), np.broadcast_to(y, shape).copy()


def interval_mesh(nx: int, lo: float, hi: float, periodic: bool = True) -> CartesianMesh:
    return CartesianMesh(counts=(nx,), bounds=((lo, hi),), periodic=(periodic,))


def box_mesh(nx, ny, xbounds, ybounds, periodic=(True, True)) -> CartesianMesh:
    return CartesianMesh(counts=(nx, ny), bounds=(tuple(xbounds), tuple(ybounds)), periodic=tuple(periodic))
