"""Shallow water equations with bottom topography (1D).

The augmented state is (h, h*v, b): the bed height b is carried as a
static variable with zero flux and enters the dynamics only through
the non-conservative momentum coupling g_grav * h * b_x, written as
B(u) g(u)_x with g(u) = u and B(u) holding the single entry
g_grav * h in the (momentum, b) slot.

The entropy-conservative conservative part pairs the arithmetic mean
of h*v with the product mean of the depths,

    f_h  = avg(h v)
    f_hv = avg(h v) avg(v) + (g_grav / 2) h_l h_r,

and the non-symmetric pairing is (B g)(u_p, u_q) = (0, g_grav h_p b_q, 0).
Together these preserve the lake-at-rest state exactly, which the
well-balancedness tests rely on.
"""

import numpy as np

from .base import EquationModel


class ShallowWater(EquationModel):
    nvars = 3
    ndim = 1
    name = "shallow_water"
    var_names = ("h", "hv", "b")
    has_noncons = True
    volume_flux_kinds = ("central", "ec")

    def __init__(self, g_grav: float = 9.812):
        self.g_grav = float(g_grav)

    def velocity(self, u):
        return u[..., 1] / u[..., 0]

    def flux(self, u, direction=0):
        h = u[..., 0]
        v = self.velocity(u)
        f = np.zeros_like(u)
        f[..., 0] = u[..., 1]
        f[..., 1] = u[..., 1] * v + 0.5 * self.g_grav * h * h
        return f

    def two_point_flux(self, kind, ul, ur, direction=0):
        if kind == "ec":
            hv_avg = 0.5 * (ul[..., 1] + ur[..., 1])
            v_avg = 0.5 * (self.velocity(ul) + self.velocity(ur))
            f = np.zeros(np.broadcast_shapes(ul.shape, ur.shape))
            f[..., 0] = hv_avg
            f[..., 1] = hv_avg * v_avg + 0.5 * self.g_grav * ul[..., 0] * ur[..., 0]
            return f
        return super().two_point_flux(kind, ul, ur, direction)

    # -- non-conservative product ---------------------------------------

    def b_apply(self, u, gvec):
        out = np.zeros(np.broadcast_shapes(u.shape, gvec.shape))
        out[..., 1] = self.g_grav * u[..., 0] * gvec[..., 2]
        return out

    # noncons_two_point inherits B(u_p) g(u_q) = (0, g_grav h_p b_q, 0)

    # -- wave speed -------------------------------------------------------

    def node_wave_speed(self, u, direction=0):
        return np.abs(self.velocity(u)) + np.sqrt(self.g_grav * u[..., 0])

    # -- entropy / energy ---------------------------------------------------

    def entropy(self, u):
        h, hv, b = u[..., 0], u[..., 1], u[..., 2]
        return 0.5 * hv * hv / h + 0.5 * self.g_grav * h * h + self.g_grav * h * b

    def entropy_vars(self, u):
        h, b = u[..., 0], u[..., 2]
        v = self.velocity(u)
        w = np.empty_like(u)
        w[..., 0] = self.g_grav * (h + b) - 0.5 * v * v
        w[..., 1] = v
        w[..., 2] = self.g_grav * h
        return w

    def entropy_potential(self, u, direction=0):
        h = u[..., 0]
        v = self.velocity(u)
        return 0.5 * h * v ** 3 + self.g_grav * h * h * v

    def kinetic_energy(self, u):
        return 0.5 * u[..., 1] ** 2 / u[..., 0]

    def admissibility_violation(self, u):
        finite = np.isfinite(u).all(axis=-1)
        h = u[..., 0]
        return self._first_violation(
            [
                ("non-finite state", ~finite, u[..., 0]),
                ("water height", h <= 0.0, h),
            ]
        )
