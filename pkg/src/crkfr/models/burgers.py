"""Inviscid Burgers equation, the scalar sanity model."""

import numpy as np

from .base import EquationModel


class Burgers(EquationModel):
    nvars = 1
    ndim = 1
    name = "burgers"
    var_names = ("u",)
    volume_flux_kinds = ("central", "ec")

    def flux(self, u, direction=0):
        return 0.5 * u * u

    def two_point_flux(self, kind, ul, ur, direction=0):
        if kind == "ec":
            # Tadmor's entropy-conservative flux for eta = u^2/2.
            return (ul * ul + ul * ur + ur * ur) / 6.0
        return super().two_point_flux(kind, ul, ur, direction)

    def node_wave_speed(self, u, direction=0):
        return np.abs(u[..., 0])

    def entropy(self, u):
        return 0.5 * u[..., 0] ** 2

    def entropy_vars(self, u):
        return u.copy()

    def entropy_potential(self, u, direction=0):
        # psi = w f - q with q = u^3/3, so psi = u^3/6
        return u[..., 0] ** 3 / 6.0

    def kinetic_energy(self, u):
        return 0.5 * u[..., 0] ** 2

    def admissibility_violation(self, u):
        finite = np.isfinite(u).all(axis=-1)
        return self._first_violation([("non-finite state", ~finite, u[..., 0])])
