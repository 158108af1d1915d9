"""Time integration: the multi-stage reference scheme and the compact
single-exchange scheme.

Both steppers share the volume machinery.  The reference stepper
applies the full semi-discretization (volume terms plus interface
corrections) at every stage, so it exchanges face data once per stage.
The compact stepper drops the interface terms from the inner stages,
forms time averages of the stage fluxes, traces and non-conservative
extrapolations with the quadrature weights b, and performs a single
face-data exchange to assemble the final update.

State arrays are (ne, N+1, M) in 1D and (nex, ney, N+1, N+1, M) in 2D;
face gathering assumes periodic wrap (a ghost-state hook would replace
the wrap for non-periodic boundaries).
"""

import os
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .basis import Basis, extrapolate_to_faces
from .kernels import (
    FaceData,
    assemble_face_totals,
    fluxdiff_noncons_volume,
    fluxdiff_volume,
    local_flux_derivative,
    local_noncons_derivative,
    surface_correction,
)
from .mesh import CartesianMesh
from .models import FluxKinds, rusanov_surface_flux
from .models.euler import Euler
from .tableaus import ButcherTableau


@dataclass
class StateField:
    """Nodal solution plus clock; mutated in place by the steppers."""

    u: np.ndarray
    t: float = 0.0
    step: int = 0

    def copy(self):
        return StateField(self.u.copy(), self.t, self.step)


@dataclass
class ElementTraces:
    """Per-element face values (the element's own left/right faces)."""

    u_left: np.ndarray
    u_right: np.ndarray
    U_left: Optional[np.ndarray] = None
    U_right: Optional[np.ndarray] = None
    F_left: Optional[np.ndarray] = None
    F_right: Optional[np.ndarray] = None
    Fnc_left: Optional[np.ndarray] = None
    Fnc_right: Optional[np.ndarray] = None
    stage_left: Optional[list] = None
    stage_right: Optional[list] = None


@dataclass
class TimeAverages:
    """b-weighted stage averages entering the compact final update."""

    volume: np.ndarray  # nodal residual average (conservative + non-conservative - source)
    traces: list  # one ElementTraces per direction
    F_nodal: Optional[list] = None  # nodal time-averaged flux per direction
    b_delta: Optional[np.ndarray] = None  # nodal non-conservative residual average


class Workspace:
    """Preallocated scratch, configuration and instrumentation for one
    (mesh, basis, model, tableau, flux kinds) combination."""

    def __init__(
        self,
        mesh: CartesianMesh,
        basis: Basis,
        model,
        tableau: ButcherTableau,
        kinds: FluxKinds = FluxKinds(),
        source: Optional[Callable] = None,
        use_jit: Optional[bool] = None,
    ):
        if mesh.ndim != model.ndim:
            raise ValueError("mesh and model dimensions differ")
        model.check_flux_kinds(kinds)
        self.mesh = mesh
        self.basis = basis
        self.model = model
        self.tableau = tableau
        self.kinds = kinds
        self.source = source
        self.exchange_count = 0
        self.coords = mesh.node_coords(basis) if source is not None else None

        shape = self.field_shape
        s = tableau.stages
        self._stage_u = [np.empty(shape) for _ in range(s)]
        self._stage_r = [np.empty(shape) for _ in range(s)]
        self._acc = np.empty(shape)
        self._scratch = np.empty(shape)
        if use_jit is None:
            use_jit = (
                mesh.ndim == 2
                and isinstance(model, Euler)
                and os.environ.get("CRKFR_DISABLE_JIT", "") == ""
            )
        self.use_jit = bool(use_jit)
        self._prim = np.empty(shape[:-1] + (4,)) if self.use_jit else None
        self._prim_fresh = False

    @property
    def field_shape(self):
        npts = self.basis.npoints
        if self.mesh.ndim == 1:
            return (self.mesh.counts[0], npts, self.model.nvars)
        return (self.mesh.counts[0], self.mesh.counts[1], npts, npts, self.model.nvars)

    @property
    def node_shape(self):
        return self.field_shape[:-1]

    def initial_state(self, initial: Callable) -> StateField:
        coords = self.mesh.node_coords(self.basis)
        u = np.ascontiguousarray(initial(coords), dtype=float)
        if u.shape != self.field_shape:
            raise ValueError(
                f"initial condition produced shape {u.shape}, expected {self.field_shape}"
            )
        return StateField(u)


# ---------------------------------------------------------------------------
# volume terms


def _node_axis_view(u, direction, ndim):
    """View with the requested direction's node axis moved to -2."""
    if ndim == 1 or direction == 1:
        return u
    return u.swapaxes(2, 3)


def _jit_volume_active(ws: Workspace) -> bool:
    return ws.use_jit and ws.kinds.volume in ("ec", "kep")


def _volume_residual(ws: Workspace, u, t, out, b_delta=None, b_weight=0.0):
    """Fill ``out`` with the volume residual R(u, t), where du/dt = -R.

    Optionally accumulates b_weight times the non-conservative part
    into ``b_delta`` for the time-average bookkeeping.
    """
    model, basis, mesh, kinds = ws.model, ws.basis, ws.mesh, ws.kinds
    out[:] = 0.0
    if _jit_volume_active(ws):
        from . import jit_kernels

        if not ws._prim_fresh:
            jit_kernels.euler2d_primitives(u, model.gamma, ws._prim)
        ws._prim_fresh = False
        code = jit_kernels.VOLUME_KIND_CODES[kinds.volume]
        for d in range(2):
            jit_kernels.euler2d_fluxdiff(
                ws._prim, basis.diff, model.gamma, code, d, 1.0 / mesh.spacings[d], out
            )
    else:
        for d in range(mesh.ndim):
            v = _node_axis_view(u, d, mesh.ndim)
            dx = mesh.spacings[d]
            if kinds.volume == "central":
                r = local_flux_derivative(basis, dx, v, model, d)
            else:
                r = fluxdiff_volume(basis, dx, v, model, kinds.volume, d)
            out += _node_axis_view(r, d, mesh.ndim)
    if model.has_noncons:
        nc = np.zeros_like(out)
        for d in range(mesh.ndim):
            v = _node_axis_view(u, d, mesh.ndim)
            dx = mesh.spacings[d]
            if kinds.volume == "central":
                r = local_noncons_derivative(basis, dx, v, model, d)
            else:
                r = fluxdiff_noncons_volume(basis, dx, v, model, d)
            nc += _node_axis_view(r, d, mesh.ndim)
        out += nc
        if b_delta is not None:
            b_delta += b_weight * nc
    if ws.source is not None:
        out -= ws.source(ws.coords, t)
    return out


def _check_stage(ws: Workspace, u, t, stage=None):
    """Admissibility gate before a stage residual is evaluated (also
    used for the post-update check).

    On the compiled path this doubles as the primitive-variable
    precomputation for the volume kernels.
    """
    if _jit_volume_active(ws):
        from . import jit_kernels

        min_rho, min_p, finite = jit_kernels.euler2d_primitives(u, ws.model.gamma, ws._prim)
        if finite and min_rho > 0.0 and min_p > 0.0:
            ws._prim_fresh = True
            return
    ws.model.require_admissible(u, time=t, element_shape=ws.node_shape, stage=stage)


def _form_stage_state(ws: Workspace, u_i, u0, i, dt):
    """u^(i) = u^n - dt sum_j a_ij R_j, fused for the common
    single-predecessor tableaus."""
    a = ws.tableau.a
    nonzero = [j for j in range(i) if a[i, j] != 0.0]
    if len(nonzero) == 1:
        j = nonzero[0]
        np.multiply(ws._stage_r[j], -dt * a[i, j], out=u_i)
        u_i += u0
        return
    u_i[:] = u0
    for j in nonzero:
        u_i -= (dt * a[i, j]) * ws._stage_r[j]


# ---------------------------------------------------------------------------
# face gathering


def _element_traces(ws: Workspace, values, direction):
    """(left, right) traces of a nodal field along one direction."""
    axis = 1 if ws.mesh.ndim == 1 else 2 + direction
    return extrapolate_to_faces(ws.basis, values, axis=axis)


def _to_plus_side(arr, direction):
    """Element left-face values, reindexed to the face where they are
    the plus side (periodic wrap)."""
    return np.roll(arr, -1, axis=direction)


def _apply_corrections(ws: Workspace, out, direction, fnum_minus, fnum_plus, ftot_right, ftot_left):
    """Accumulate the correction-function lift for one direction.

    fnum_minus/plus are face-indexed numerical fluxes; ftot_right/left
    are the element's own total-flux traces.
    """
    dx = ws.mesh.spacings[direction]
    corr = surface_correction(
        ws.basis,
        dx,
        fnum_minus,
        ftot_right,
        np.roll(fnum_plus, 1, axis=direction),
        ftot_left,
    )
    if ws.mesh.ndim == 1 or direction == 1:
        out += corr
    else:
        out += corr.swapaxes(2, 3)


def _stage_interface_flux(ws: Workspace, u_minus, u_plus, direction):
    """(f_num-, f_num+) at every face from instantaneous traces."""
    model, kinds = ws.model, ws.kinds
    if kinds.surface == "ec_test":
        fnum = model.two_point_flux("ec", u_minus, u_plus, direction)
    else:
        fnum = rusanov_surface_flux(model, u_minus, u_plus, direction)
    if not model.has_noncons:
        return fnum, fnum
    g_avg = 0.5 * (model.g_of(u_minus) + model.g_of(u_plus))
    return fnum + model.b_apply(u_minus, g_avg), fnum + model.b_apply(u_plus, g_avg)


# ---------------------------------------------------------------------------
# reference multi-stage stepper


def rkfr_step(state: StateField, ws: Workspace, dt: float) -> StateField:
    """One step of the reference scheme: full residual at every stage,
    one face-data exchange per stage."""
    tab = ws.tableau
    ws._prim_fresh = False
    u0 = state.u
    for i in range(tab.stages):
        u_i = ws._stage_u[i]
        _form_stage_state(ws, u_i, u0, i, dt)
        _check_stage(ws, u_i, state.t, stage=i + 1)
        r_i = _volume_residual(ws, u_i, state.t + tab.c[i] * dt, ws._stage_r[i])

        ws.exchange_count += 1
        for d in range(ws.mesh.ndim):
            v = _node_axis_view(u_i, d, ws.mesh.ndim)
            u_l, u_r, f_l, f_r = assemble_face_totals(ws.basis, v, ws.model, d)
            fnum_m, fnum_p = _stage_interface_flux(ws, u_r, _to_plus_side(u_l, d), d)
            _apply_corrections(ws, r_i, d, fnum_m, fnum_p, f_r, f_l)
    for j in range(tab.stages):
        u0 -= (dt * tab.b[j]) * ws._stage_r[j]
    state.t += dt
    state.step += 1
    _check_stage(ws, u0, state.t)
    return state


# ---------------------------------------------------------------------------
# compact stepper


def crk_inner_stages(state: StateField, ws: Workspace, dt: float):
    """Inner stages without any interface terms.

    Returns (stages, residuals): the stage states u^(i) and the volume
    residuals R(u^(i)) they were built from.
    """
    tab = ws.tableau
    ws._prim_fresh = False
    u0 = state.u
    for i in range(tab.stages):
        u_i = ws._stage_u[i]
        _form_stage_state(ws, u_i, u0, i, dt)
        _check_stage(ws, u_i, state.t, stage=i + 1)
        _volume_residual(ws, u_i, state.t + tab.c[i] * dt, ws._stage_r[i])
    return ws._stage_u, ws._stage_r


def compute_time_averages(
    stages: list,
    ws: Workspace,
    t: float,
    dt: float,
    residuals: Optional[list] = None,
    want_b_delta: bool = False,
    want_nodal_flux: bool = False,
) -> TimeAverages:
    """b-weighted averages of the stage data.

    Stage volume residuals are reused when supplied; otherwise they are
    recomputed from the stage states.  The split non-conservative
    average and the full nodal flux average are filled on request (or
    when the generic extrapolation path needs the latter).
    """
    tab, model, mesh = ws.tableau, ws.model, ws.mesh
    b = tab.b
    vol = ws._acc
    b_delta = None
    if (model.has_noncons and want_b_delta) or residuals is None:
        b_delta = np.zeros(ws.field_shape) if model.has_noncons else None
        ws._prim_fresh = False
        vol[:] = 0.0
        for j in range(tab.stages):
            _volume_residual(
                ws, stages[j], t + tab.c[j] * dt, ws._scratch, b_delta=b_delta, b_weight=b[j]
            )
            vol += b[j] * ws._scratch
    else:
        vol[:] = 0.0
        for j in range(tab.stages):
            vol += b[j] * residuals[j]

    want_nodal = want_nodal_flux or not ws.basis.endpoint_nodes
    F_nodal = [] if want_nodal else None
    traces = [_average_traces(ws, stages, d, F_nodal) for d in range(mesh.ndim)]
    return TimeAverages(volume=vol, traces=traces, F_nodal=F_nodal, b_delta=b_delta)


def _average_traces(ws: Workspace, stages, direction, F_nodal_out):
    """Element-side traces of u^n, the time-averaged solution, the
    time-averaged flux polynomial and the non-conservative totals.

    Stage traces are stacked on a leading axis so the flux evaluations
    and b-contractions run vectorized over all stages at once.
    """
    model, tab = ws.model, ws.tableau
    b = tab.b
    tr = [_element_traces(ws, stages[j], direction) for j in range(tab.stages)]
    stack_l = np.stack([t[0] for t in tr])
    stack_r = np.stack([t[1] for t in tr])
    u_l, u_r = tr[0]  # stage 1 state is u^n
    U_l = np.tensordot(b, stack_l, axes=(0, 0))
    U_r = np.tensordot(b, stack_r, axes=(0, 0))
    if F_nodal_out is not None:
        F = np.zeros(ws.field_shape)
        for j in range(tab.stages):
            F += b[j] * model.flux(stages[j], direction)
        F_nodal_out.append(F)
        F_l, F_r = _element_traces(ws, F, direction)
    else:
        # endpoint collocation: the trace of the interpolant of nodal
        # flux values equals the flux of the boundary nodal state
        F_l = np.tensordot(b, model.flux(stack_l, direction), axes=(0, 0))
        F_r = np.tensordot(b, model.flux(stack_r, direction), axes=(0, 0))
    Fnc_l = Fnc_r = None
    stage_l = stage_r = None
    if model.has_noncons:
        Fnc_l = np.tensordot(b, model.b_apply(stack_l, model.g_of(stack_l)), axes=(0, 0))
        Fnc_r = np.tensordot(b, model.b_apply(stack_r, model.g_of(stack_r)), axes=(0, 0))
        if ws.kinds.noncons_interface == "stage_averaged":
            stage_l = list(stack_l)
            stage_r = list(stack_r)
    return ElementTraces(
        u_left=u_l,
        u_right=u_r,
        U_left=U_l,
        U_right=U_r,
        F_left=F_l,
        F_right=F_r,
        Fnc_left=Fnc_l,
        Fnc_right=Fnc_r,
        stage_left=stage_l,
        stage_right=stage_r,
    )


def _gather_average_faces(ws: Workspace, ta: TimeAverages) -> list:
    """The single exchange of the compact stepper: periodic wrap of the
    time-averaged face quantities (plus u^n traces for the reduced
    non-conservative interface term)."""
    ws.exchange_count += 1
    faces = []
    for d in range(ws.mesh.ndim):
        tr = ta.traces[d]
        fd = FaceData(
            u_minus=tr.u_right,
            u_plus=_to_plus_side(tr.u_left, d),
            U_minus=tr.U_right,
            U_plus=_to_plus_side(tr.U_left, d),
            F_minus=tr.F_right,
            F_plus=_to_plus_side(tr.F_left, d),
            F_nc_minus=tr.Fnc_right,
            F_nc_plus=None if tr.Fnc_left is None else _to_plus_side(tr.Fnc_left, d),
        )
        if ws.kinds.noncons_interface == "stage_averaged" and tr.stage_left:
            # stage traces are communication the reduced variant avoids
            ws.exchange_count += 1
            fd.stage_minus = tr.stage_right
            fd.stage_plus = [_to_plus_side(sl, d) for sl in tr.stage_left]
        faces.append(fd)
    return faces


def crkfr_interface_flux(face: FaceData, ws: Workspace, direction: int = 0):
    """Time-averaged interface flux pair (F_num-, F_num+).

    The conservative part averages the extrapolated time-averaged
    fluxes with dissipation evaluated on the time-averaged traces; the
    non-conservative part uses the reduced single-exchange form
    B(u^n_pm) g_avg(U) by default, or the fully stage-averaged variant
    when configured.
    """
    model, kinds = ws.model, ws.kinds
    shape = face.U_minus.shape[:-1]
    model.require_admissible(face.U_minus, element_shape=shape)
    model.require_admissible(face.U_plus, element_shape=shape)
    if kinds.surface == "ec_test":
        fnum = model.two_point_flux("ec", face.U_minus, face.U_plus, direction)
    else:
        lam = model.max_wave_speed(face.U_minus, face.U_plus, direction)
        fnum = 0.5 * (face.F_minus + face.F_plus) - 0.5 * lam[..., None] * (
            face.U_plus - face.U_minus
        )
    if not model.has_noncons:
        return fnum, fnum
    if kinds.noncons_interface == "reduced":
        g_avg = 0.5 * (model.g_of(face.U_minus) + model.g_of(face.U_plus))
        nc_m = model.b_apply(face.u_minus, g_avg)
        nc_p = model.b_apply(face.u_plus, g_avg)
    else:
        b = ws.tableau.b
        nc_m = np.zeros(fnum.shape)
        nc_p = np.zeros(fnum.shape)
        for j in range(ws.tableau.stages):
            sm, sp = face.stage_minus[j], face.stage_plus[j]
            g_avg = 0.5 * (model.g_of(sm) + model.g_of(sp))
            nc_m += b[j] * model.b_apply(sm, g_avg)
            nc_p += b[j] * model.b_apply(sp, g_avg)
    return fnum + nc_m, fnum + nc_p


def crkfr_step(state: StateField, ws: Workspace, dt: float) -> StateField:
    """One step of the compact scheme: local inner stages, time
    averages, a single exchange, final corrected update."""
    stages, residuals = crk_inner_stages(state, ws, dt)
    ta = compute_time_averages(stages, ws, state.t, dt, residuals=residuals)
    faces = _gather_average_faces(ws, ta)
    rhs = ta.volume
    for d in range(ws.mesh.ndim):
        fnum_m, fnum_p = crkfr_interface_flux(faces[d], ws, d)
        tr = ta.traces[d]
        ftot_right = tr.F_right
        ftot_left = tr.F_left
        if ws.model.has_noncons:
            ftot_right = ftot_right + tr.Fnc_right
            ftot_left = ftot_left + tr.Fnc_left
        _apply_corrections(ws, rhs, d, fnum_m, fnum_p, ftot_right, ftot_left)
    state.u -= dt * rhs
    state.t += dt
    state.step += 1
    _check_stage(ws, state.u, state.t)
    return state


# ---------------------------------------------------------------------------
# step control & monitoring


def compute_dt(state: StateField, ws: Workspace, cfl: float, dt_max: float = np.inf) -> float:
    """CFL time step dt = cfl * min_e dx_e / (lambda_e (2N+1)), with the
    per-direction speeds combined harmonically in 2D.  A zero wave
    speed everywhere falls back to dt_max."""
    if cfl <= 0.0:
        raise ValueError("cfl must be positive")
    model, mesh, basis = ws.model, ws.mesh, ws.basis
    fac = 2 * basis.degree + 1
    if mesh.ndim == 1:
        lam = model.node_wave_speed(state.u, 0).max(axis=1)
        denom = lam * (fac / mesh.spacings[0])
    else:
        lx = model.node_wave_speed(state.u, 0).max(axis=(2, 3))
        ly = model.node_wave_speed(state.u, 1).max(axis=(2, 3))
        denom = (lx / mesh.spacings[0] + ly / mesh.spacings[1]) * fac
    worst = float(denom.max())
    if worst <= 0.0:
        return float(dt_max)
    return float(min(cfl / worst, dt_max))


def admissibility_monitor(state: StateField, model) -> None:
    """Raise AdmissibilityError (with time and location) on the first
    inadmissible or non-finite node; no-op for healthy states."""
    model.require_admissible(state.u, time=state.t, element_shape=state.u.shape[:-1])


STEPPERS = {"rkfr": rkfr_step, "crkfr": crkfr_step}
