"""Compressible Euler equations in one and two space dimensions.

State layout: (rho, rho*v1, E) in 1D and (rho, rho*v1, rho*v2, E) in
2D with the ideal-gas closure p = (gamma - 1)(E - rho |v|^2 / 2).

Two entropy-aware two-point fluxes are provided for the volume terms:

* ``ec``  -- entropy-conservative and kinetic-energy-preserving flux
  built from logarithmic means of rho and rho/p plus arithmetic means;
  satisfies the jump condition (w_r - w_l) . f = psi_r - psi_l for the
  standard entropy pair, which the test suite checks directly.
* ``kep`` -- kinetic-energy-preserving flux using arithmetic averages
  only (cheaper, no logarithms, not entropy-conservative).
"""

import numpy as np

from .base import EquationModel
from .means import inv_log_mean, log_mean


class Euler(EquationModel):
    has_noncons = False
    volume_flux_kinds = ("central", "ec", "kep")

    def __init__(self, ndim: int = 1, gamma: float = 1.4):
        if ndim not in (1, 2):
            raise ValueError("Euler model supports ndim 1 or 2")
        self.ndim = ndim
        self.gamma = float(gamma)
        self.nvars = 2 + ndim
        self.name = f"euler{ndim}d"
        self.var_names = ("rho", "rho_v1", "E") if ndim == 1 else ("rho", "rho_v1", "rho_v2", "E")

    # -- state algebra -------------------------------------------------

    def primitives(self, u):
        """(rho, v..., p) tuple of arrays from conserved states."""
        rho = u[..., 0]
        vs = [u[..., 1 + d] / rho for d in range(self.ndim)]
        ke = 0.5 * rho * sum(v * v for v in vs)
        p = (self.gamma - 1.0) * (u[..., -1] - ke)
        return (rho, *vs, p)

    def conserved(self, rho, *vp):
        """Inverse of :meth:`primitives`; arguments (rho, v..., p)."""
        *vs, p = vp
        u = np.empty(np.broadcast_shapes(*(np.shape(a) for a in (rho, *vp))) + (self.nvars,))
        u[..., 0] = rho
        for d, v in enumerate(vs):
            u[..., 1 + d] = rho * v
        u[..., -1] = p / (self.gamma - 1.0) + 0.5 * rho * sum(v * v for v in vs)
        return u

    def pressure(self, u):
        return self.primitives(u)[-1]

    # -- fluxes ---------------------------------------------------------

    def flux(self, u, direction=0):
        prim = self.primitives(u)
        p = prim[-1]
        vn = prim[1 + direction]
        f = np.empty_like(u)
        f[..., 0] = u[..., 0] * vn
        for d in range(self.ndim):
            f[..., 1 + d] = u[..., 1 + d] * vn
        f[..., 1 + direction] += p
        f[..., -1] = (u[..., -1] + p) * vn
        return f

    def two_point_flux(self, kind, ul, ur, direction=0):
        if kind == "ec":
            return self._ec_flux(ul, ur, direction)
        if kind == "kep":
            return self._kep_flux(ul, ur, direction)
        return super().two_point_flux(kind, ul, ur, direction)

    def _ec_flux(self, ul, ur, direction):
        gamma = self.gamma
        priml = self.primitives(ul)
        primr = self.primitives(ur)
        rl, pl = priml[0], priml[-1]
        rr, pr = primr[0], primr[-1]
        rho_log = log_mean(rl, rr)
        # log mean of rho/p, taken on the cross products to use a
        # single stabilized kernel: logmean(rl/pl, rr/pr) = logmean(rl*pr, rr*pl)/(pl*pr)
        inv_rho_p_log = pl * pr * inv_log_mean(rl * pr, rr * pl)
        p_avg = 0.5 * (pl + pr)
        v_avg = [0.5 * (priml[1 + d] + primr[1 + d]) for d in range(self.ndim)]
        vel_sq = 0.5 * sum(priml[1 + d] * primr[1 + d] for d in range(self.ndim))
        vn_avg = v_avg[direction]
        f = np.empty(np.broadcast_shapes(ul.shape, ur.shape))
        f[..., 0] = rho_log * vn_avg
        for d in range(self.ndim):
            f[..., 1 + d] = f[..., 0] * v_avg[d]
        f[..., 1 + direction] += p_avg
        f[..., -1] = f[..., 0] * (vel_sq + inv_rho_p_log / (gamma - 1.0)) + 0.5 * (
            pl * primr[1 + direction] + pr * priml[1 + direction]
        )
        return f

    def _kep_flux(self, ul, ur, direction):
        priml = self.primitives(ul)
        primr = self.primitives(ur)
        rl, pl = priml[0], priml[-1]
        rr, pr = primr[0], primr[-1]
        rho_avg = 0.5 * (rl + rr)
        p_avg = 0.5 * (pl + pr)
        e_avg = 0.5 * (ul[..., -1] / rl + ur[..., -1] / rr)
        v_avg = [0.5 * (priml[1 + d] + primr[1 + d]) for d in range(self.ndim)]
        vn_avg = v_avg[direction]
        f = np.empty(np.broadcast_shapes(ul.shape, ur.shape))
        f[..., 0] = rho_avg * vn_avg
        for d in range(self.ndim):
            f[..., 1 + d] = f[..., 0] * v_avg[d]
        f[..., 1 + direction] += p_avg
        f[..., -1] = (rho_avg * e_avg + p_avg) * vn_avg
        return f

    # -- wave speed ------------------------------------------------------

    def sound_speed(self, u):
        rho = u[..., 0]
        return np.sqrt(self.gamma * self.pressure(u) / rho)

    def node_wave_speed(self, u, direction=0):
        vn = u[..., 1 + direction] / u[..., 0]
        return np.abs(vn) + self.sound_speed(u)

    # -- entropy machinery ------------------------------------------------

    def _log_entropy(self, u):
        prim = self.primitives(u)
        return np.log(prim[-1]) - self.gamma * np.log(prim[0])

    def entropy(self, u):
        return -u[..., 0] * self._log_entropy(u) / (self.gamma - 1.0)

    def entropy_vars(self, u):
        prim = self.primitives(u)
        rho, p = prim[0], prim[-1]
        s = self._log_entropy(u)
        vsq = sum(prim[1 + d] ** 2 for d in range(self.ndim))
        w = np.empty_like(u)
        w[..., 0] = (self.gamma - s) / (self.gamma - 1.0) - 0.5 * rho * vsq / p
        for d in range(self.ndim):
            w[..., 1 + d] = rho * prim[1 + d] / p
        w[..., -1] = -rho / p
        return w

    def entropy_potential(self, u, direction=0):
        return u[..., 1 + direction]

    def kinetic_energy(self, u):
        rho = u[..., 0]
        vsq = sum((u[..., 1 + d] / rho) ** 2 for d in range(self.ndim))
        return 0.5 * rho * vsq

    # -- admissibility -----------------------------------------------------

    def admissibility_violation(self, u):
        finite = np.isfinite(u).all(axis=-1)
        rho = u[..., 0]
        with np.errstate(invalid="ignore"):
            p = self.pressure(u)
        return self._first_violation(
            [
                ("non-finite state", ~finite, u[..., 0]),
                ("density", rho <= 0.0, rho),
                ("pressure", p <= 0.0, p),
            ]
        )
