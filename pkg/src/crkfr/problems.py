"""Initial conditions, exact/manufactured solutions and error norms.

Each problem id maps to a :class:`ProblemSetup` factory; the stable ids
are the ones accepted in run configurations: density_wave,
isentropic_vortex, khi_euler, richtmyer_meshkov, lake_at_rest,
sw_manufactured, burgers_smooth.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .basis import Basis
from .mesh import CartesianMesh, box_mesh, interval_mesh
from .models import Burgers, Euler, ShallowWater


@dataclass
class ProblemSetup:
    name: str
    model: object
    mesh: CartesianMesh
    initial: Callable  # coords -> state array (..., M)
    exact: Optional[Callable] = None  # (coords, t) -> state array
    source: Optional[Callable] = None  # (coords, t) -> source array


# ---------------------------------------------------------------------------
# Euler problems


def ic_density_wave(x, gamma=1.4):
    """Smooth density advection on [0, 2]: rho = 1 + sin(pi x)/2, v = p = 1."""
    model = Euler(ndim=1, gamma=gamma)
    rho = 1.0 + 0.5 * np.sin(np.pi * np.asarray(x))
    one = np.ones_like(rho)
    return model.conserved(rho, one, one)


def _density_wave_exact(x, t, gamma=1.4):
    return ic_density_wave(np.asarray(x) - t, gamma)


def ic_isentropic_vortex(x, y, gamma=1.4, beta=5.0, center=(0.0, 0.0)):
    """Isentropic vortex perturbation of the uniform (1, 1, 1, 1) flow."""
    model = Euler(ndim=2, gamma=gamma)
    dx = np.asarray(x) - center[0]
    dy = np.asarray(y) - center[1]
    r2 = dx * dx + dy * dy
    dT = -(gamma - 1.0) * beta**2 / (8.0 * gamma * np.pi**2) * np.exp(1.0 - r2)
    amp = beta / (2.0 * np.pi) * np.exp(0.5 * (1.0 - r2))
    temp = 1.0 + dT
    rho = temp ** (1.0 / (gamma - 1.0))
    return model.conserved(rho, 1.0 - amp * dy, 1.0 + amp * dx, rho * temp)


def _vortex_exact(coords, t, gamma=1.4):
    x, y = coords
    # advected by the (1, 1) mean flow on the periodic [-5, 5]^2 box
    xs = np.mod(np.asarray(x) - t + 5.0, 10.0) - 5.0
    ys = np.mod(np.asarray(y) - t + 5.0, 10.0) - 5.0
    return ic_isentropic_vortex(xs, ys, gamma)


def ic_khi_euler(x, y, gamma=1.4):
    """Kelvin-Helmholtz shear layer on [-1, 1]^2:
    (rho, v1, v2, p) = (1/4 + 3B/4, (B-1)/2, sin(2 pi x)/10, 1) with
    B = tanh(15 y + 7.5) - tanh(15 y - 7.5)."""
    model = Euler(ndim=2, gamma=gamma)
    y = np.asarray(y)
    b = np.tanh(15.0 * y + 7.5) - np.tanh(15.0 * y - 7.5)
    rho = 0.25 + 0.75 * b
    v1 = 0.5 * (b - 1.0)
    v2 = 0.1 * np.sin(2.0 * np.pi * np.asarray(x))
    return model.conserved(rho, v1, v2, np.ones_like(rho))


def _smooth_step(x, a, b, slope=2.0):
    return a + (1.0 + np.tanh(slope * x)) * (b - a) / 2.0


def ic_richtmyer_meshkov(x, y, gamma=1.4):
    """Shock over a stratified density interface on [0, 40/3] x [0, 40];
    needs a limiter to run to late times, provided for completeness."""
    model = Euler(ndim=2, gamma=gamma)
    x = np.asarray(x)
    y = np.asarray(y)
    length = 40.0
    rho = _smooth_step(y - (18.0 + 2.0 * np.cos(6.0 * np.pi * x / length)), 1.0, 0.25)
    rho = rho + _smooth_step(np.abs(y - 4.0) - 2.0, 3.22, 0.0)
    p = _smooth_step(np.abs(y - 4.0) - 2.0, 4.9, 1.0)
    zero = np.zeros_like(rho)
    return model.conserved(rho, zero, zero, p)


# ---------------------------------------------------------------------------
# Shallow water problems


def sw_topography(x):
    return 0.1 + 0.05 * np.sin(2.0 * np.pi * np.asarray(x))


def ic_lake_at_rest(x, g_grav=9.812):
    """Still water of total surface height 1 over smooth topography."""
    b = sw_topography(x)
    u = np.zeros(b.shape + (3,))
    u[..., 0] = 1.0 - b
    u[..., 2] = b
    return u


def sw_manufactured_state(x, t):
    """Travelling-depth target (h, v) = (2 + cos(2 pi (x - t))/10, 1/2)."""
    x = np.asarray(x)
    h = 2.0 + 0.1 * np.cos(2.0 * np.pi * (x - t))
    u = np.zeros(h.shape + (3,))
    u[..., 0] = h
    u[..., 1] = 0.5 * h
    u[..., 2] = sw_topography(x)
    return u


def sw_manufactured_source(x, t, g_grav=9.812):
    """Source that makes :func:`sw_manufactured_state` solve the system
    (derived symbolically; the test suite re-checks the PDE residual)."""
    x = np.asarray(x)
    theta = 2.0 * np.pi * (x - t)
    h = 2.0 + 0.1 * np.cos(theta)
    s = np.zeros(x.shape + (3,))
    s[..., 0] = 0.1 * np.pi * np.sin(theta)
    s[..., 1] = (
        0.05 * np.pi * np.sin(theta)
        - 0.2 * np.pi * g_grav * h * np.sin(theta)
        + 0.1 * np.pi * g_grav * h * np.cos(2.0 * np.pi * x)
    )
    return s


# ---------------------------------------------------------------------------
# Burgers


def ic_burgers_smooth(x):
    return np.sin(2.0 * np.pi * np.asarray(x))[..., None]


# ---------------------------------------------------------------------------
# Registry


def build_problem(
    name: str, nx: int, ny: Optional[int] = None, gamma: float = 1.4, g_grav: float = 9.812
) -> ProblemSetup:
    ny = nx if ny is None else ny
    if name == "density_wave":
        return ProblemSetup(
            name,
            Euler(1, gamma),
            interval_mesh(nx, 0.0, 2.0),
            lambda x: ic_density_wave(x, gamma),
            exact=lambda x, t: _density_wave_exact(x, t, gamma),
        )
    if name == "isentropic_vortex":
        return ProblemSetup(
            name,
            Euler(2, gamma),
            box_mesh(nx, ny, (-5.0, 5.0), (-5.0, 5.0)),
            lambda c: ic_isentropic_vortex(c[0], c[1], gamma),
            exact=lambda c, t: _vortex_exact(c, t, gamma),
        )
    if name == "khi_euler":
        return ProblemSetup(
            name,
            Euler(2, gamma),
            box_mesh(nx, ny, (-1.0, 1.0), (-1.0, 1.0)),
            lambda c: ic_khi_euler(c[0], c[1], gamma),
        )
    if name == "richtmyer_meshkov":
        return ProblemSetup(
            name,
            Euler(2, gamma),
            box_mesh(nx, ny, (0.0, 40.0 / 3.0), (0.0, 40.0)),
            lambda c: ic_richtmyer_meshkov(c[0], c[1], gamma),
        )
    if name == "lake_at_rest":
        return ProblemSetup(
            name,
            ShallowWater(g_grav),
            interval_mesh(nx, 0.0, 1.0),
            lambda x: ic_lake_at_rest(x, g_grav),
            exact=lambda x, t: ic_lake_at_rest(x, g_grav),
        )
    if name == "sw_manufactured":
        return ProblemSetup(
            name,
            ShallowWater(g_grav),
            interval_mesh(nx, 0.0, 1.0),
            lambda x: sw_manufactured_state(x, 0.0),
            exact=sw_manufactured_state,
            source=lambda x, t: sw_manufactured_source(x, t, g_grav),
        )
    if name == "burgers_smooth":
        return ProblemSetup(
            name,
            Burgers(),
            interval_mesh(nx, 0.0, 1.0),
            ic_burgers_smooth,
        )
    raise ValueError(f"unknown problem '{name}' (available: {', '.join(PROBLEM_NAMES)})")


PROBLEM_NAMES = (
    "density_wave",
    "isentropic_vortex",
    "khi_euler",
    "richtmyer_meshkov",
    "lake_at_rest",
    "sw_manufactured",
    "burgers_smooth",
)


# ---------------------------------------------------------------------------
# Error norms


def error_norms(u: np.ndarray, u_exact: np.ndarray, basis: Basis, mesh: CartesianMesh):
    """Quadrature-weighted L1/L2/Linf error norms per variable.

    Returns three arrays of length M.  L2 is the root of the weighted
    sum of squares; the quadrature uses the basis weights and the
    element volumes.
    """
    if u_exact is None:
        raise ValueError("error norms need an exact solution")
    diff = u - u_exact
    w = basis.weights
    vol = math.prod(mesh.spacings)
    if mesh.ndim == 1:
        l1 = vol * np.einsum("p,epm->m", w, np.abs(diff))
        l2 = np.sqrt(vol * np.einsum("p,epm->m", w, diff * diff))
    else:
        l1 = vol * np.einsum("p,q,efpqm->m", w, w, np.abs(diff))
        l2 = np.sqrt(vol * np.einsum("p,q,efpqm->m", w, w, diff * diff))
    linf = np.abs(diff).reshape(-1, diff.shape[-1]).max(axis=0)
    return l1, l2, linf
