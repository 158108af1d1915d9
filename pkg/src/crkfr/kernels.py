"""Element-local spatial operators.

All operations act on nodal arrays with the node axis second-to-last
and the variable axis last, i.e. shape (..., N+1, M), and broadcast
over any leading batch (elements, or element lines in 2D).  Physical
scaling enters exclusively through the 1/dx factor here; the basis
itself is reference-interval only.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .basis import Basis, extrapolate_to_faces


@dataclass
class FaceData:
    """Both sides of a set of interfaces.

    ``u``/``f_tot`` are the instantaneous traces and total-flux
    extrapolations used by the stage-wise scheme; the time-averaged
    fields (``U``, ``F``, ``F_nc``) are filled only for the single
    exchange of the compact stepper's final update.
    """

    u_minus: np.ndarray
    u_plus: np.ndarray
    f_tot_minus: Optional[np.ndarray] = None
    f_tot_plus: Optional[np.ndarray] = None
    U_minus: Optional[np.ndarray] = None
    U_plus: Optional[np.ndarray] = None
    F_minus: Optional[np.ndarray] = None
    F_plus: Optional[np.ndarray] = None
    F_nc_minus: Optional[np.ndarray] = None
    F_nc_plus: Optional[np.ndarray] = None
    stage_minus: Optional[list] = None
    stage_plus: Optional[list] = None


def local_flux_derivative(basis: Basis, dx: float, u: np.ndarray, model, direction=0):
    """Collocated flux derivative (1/dx) D f(u_q) at the nodes."""
    f = model.flux(u, direction)
    return np.einsum("pq,...qm->...pm", basis.diff, f) / dx


def fluxdiff_volume(basis: Basis, dx: float, u: np.ndarray, model, kind: str, direction=0):
    """Two-point flux-differencing volume term:
    node p receives (1/dx) sum_q 2 D_pq f_S(u_p, u_q)."""
    fs = model.two_point_flux(kind, u[..., :, None, :], u[..., None, :, :], direction)
    return 2.0 * np.einsum("pq,...pqm->...pm", basis.diff, fs) / dx


def fluxdiff_noncons_volume(basis: Basis, dx: float, u: np.ndarray, model, direction=0):
    """Non-conservative volume term:
    node p receives (1/dx) sum_q D_pq (B g)(u_p, u_q)."""
    pair = model.noncons_two_point(u[..., :, None, :], u[..., None, :, :], direction)
    return np.einsum("pq,...pqm->...pm", basis.diff, pair) / dx


def local_noncons_derivative(basis: Basis, dx: float, u: np.ndarray, model, direction=0):
    """Factorized form B(u_p) (D g)_p / dx of the default pairing."""
    dg = np.einsum("pq,...qm->...pm", basis.diff, model.g_of(u)) / dx
    return model.b_apply(u, dg)


def surface_correction(
    basis: Basis,
    dx: float,
    fnum_right: np.ndarray,
    ftot_right: np.ndarray,
    fnum_left: np.ndarray,
    ftot_left: np.ndarray,
):
    """Correction-function lift of the interface flux mismatches.

    ``*_right`` refers to the element's own right face (minus-side
    numerical flux and trace there), ``*_left`` to its left face
    (plus side).  With the boundary-localized correction derivatives
    only the endpoint nodes receive contributions.
    """
    jr = (fnum_right - ftot_right)[..., None, :]
    jl = (fnum_left - ftot_left)[..., None, :]
    return (jr * basis.dg_right[:, None] + jl * basis.dg_left[:, None]) / dx


def assemble_face_totals(basis: Basis, u: np.ndarray, model, direction=0, nodal_flux=None):
    """Per-element traces of the state and of the total flux.

    The conservative part extrapolates the interpolant of the nodal
    flux values (pass ``nodal_flux`` to reuse precomputed ones); this
    differs from the flux of the extrapolated state off endpoint nodes.
    The non-conservative part B(u) g(u) is evaluated at the trace state.

    Returns (u_left, u_right, f_tot_left, f_tot_right) where left/right
    are the element's own faces.
    """
    if nodal_flux is None:
        nodal_flux = model.flux(u, direction)
    u_l, u_r = extrapolate_to_faces(basis, u, axis=-2)
    f_l, f_r = extrapolate_to_faces(basis, nodal_flux, axis=-2)
    if model.has_noncons:
        f_l = f_l + model.b_apply(u_l, model.g_of(u_l))
        f_r = f_r + model.b_apply(u_r, model.g_of(u_r))
    return u_l, u_r, f_l, f_r
