import numpy as np
import pytest

from crkfr.basis import make_basis
from crkfr.mesh import box_mesh, interval_mesh
from crkfr.problems import (
    PROBLEM_NAMES,
    build_problem,
    error_norms,
    ic_density_wave,
    ic_khi_euler,
    ic_lake_at_rest,
    ic_richtmyer_meshkov,
    sw_manufactured_source,
    sw_manufactured_state,
    sw_topography,
)


def test_mesh_validation():
    with pytest.raises(ValueError):
        interval_mesh(0, 0.0, 1.0)
    with pytest.raises(ValueError):
        interval_mesh(4, 1.0, 1.0)


def test_mesh_node_coords_shared_endpoints_bitwise():
    mesh = interval_mesh(8, 0.0, 2.0)
    basis = make_basis(3)
    x = mesh.node_coords(basis)
    assert x.shape == (8, 4)
    # last node of element e coincides bitwise with first node of e+1
    assert np.array_equal(x[:-1, -1], x[1:, 0])
    assert np.all(np.diff(x.reshape(-1)) >= 0)


def test_mesh_2d_coordinate_round_trip():
    mesh = box_mesh(3, 4, (-1.0, 1.0), (0.0, 2.0))
    basis = make_basis(2)
    x, y = mesh.node_coords(basis)
    assert x.shape == (3, 4, 3, 3)
    dx, dy = mesh.spacings
    for ex in range(3):
        for ey in range(4):
            for p in range(3):
                for q in range(3):
                    assert x[ex, ey, p, q] == pytest.approx(-1.0 + (ex + basis.nodes[p]) * dx)
                    assert y[ex, ey, p, q] == pytest.approx(0.0 + (ey + basis.nodes[q]) * dy)


# ---------------------------------------------------------------------------
# initial conditions


def test_density_wave_values():
    u = ic_density_wave(np.array([0.0, 1.0, 0.5]))
    rho = u[..., 0]
    assert rho[0] == pytest.approx(1.0)  # sin(0) = 0
    assert rho[2] == pytest.approx(1.5)  # sin(pi/2) = 1
    assert rho.min() > 0.4


def test_density_wave_exact_periodicity():
    p = build_problem("density_wave", 4)
    x = np.linspace(0.0, 2.0, 17)
    assert np.allclose(p.exact(x, 2.0), p.exact(x, 0.0), atol=1e-13)
    assert np.allclose(p.exact(x, 0.0), p.initial(x), atol=1e-15)


def test_khi_values_from_profile():
    u = ic_khi_euler(np.array([0.25]), np.array([0.0]))
    model = build_problem("khi_euler", 4).model
    rho, v1, v2, p = model.primitives(u)
    assert rho[0] == pytest.approx(1.75, abs=1e-4)
    assert v1[0] == pytest.approx(0.5, abs=1e-4)
    assert v2[0] == pytest.approx(0.1, abs=1e-12)  # sin peak / 10
    assert p[0] == pytest.approx(1.0, abs=1e-12)

    u_edge = ic_khi_euler(np.array([0.0]), np.array([1.0]))
    rho_e, v1_e, _, _ = model.primitives(u_edge)
    assert rho_e[0] == pytest.approx(0.25, abs=1e-5)
    assert v1_e[0] == pytest.approx(-0.5, abs=1e-5)


def test_vortex_far_field_and_core():
    p = build_problem("isentropic_vortex", 4)
    far = p.initial((np.array([-5.0]), np.array([-5.0])))
    model = p.model
    rho, v1, v2, pr = model.primitives(far)
    assert rho[0] == pytest.approx(1.0, abs=1e-8)
    assert v1[0] == pytest.approx(1.0, abs=1e-8)
    assert pr[0] == pytest.approx(1.0, abs=1e-8)
    core = p.initial((np.array([0.0]), np.array([0.0])))
    assert model.primitives(core)[-1][0] < pr[0]  # pressure dip at the core
    assert np.allclose(p.exact((np.array([0.0]), np.array([0.0])), 10.0), core, atol=1e-10)


def test_richtmyer_meshkov_fields_finite_and_positive():
    x = np.linspace(0.0, 40.0 / 3.0, 24)
    y = np.linspace(0.0, 40.0, 60)
    xx, yy = np.meshgrid(x, y, indexing="ij")
    u = ic_richtmyer_meshkov(xx, yy)
    model = build_problem("richtmyer_meshkov", 4).model
    rho, v1, v2, p = model.primitives(u)
    assert np.all(rho > 0) and np.all(p > 0)
    assert np.all(v1 == 0) and np.all(v2 == 0)
    assert rho.max() > 3.0 and p.max() > 4.0  # shocked layer present


def test_lake_at_rest_surface():
    x = np.linspace(0.0, 1.0, 33)
    u = ic_lake_at_rest(x)
    assert np.allclose(u[..., 0] + u[..., 2], 1.0, atol=1e-15)
    assert np.all(u[..., 1] == 0.0)
    assert u[..., 0].min() > 0.84


def test_all_ics_admissible_on_mesh():
    basis = make_basis(3)
    for name in PROBLEM_NAMES:
        p = build_problem(name, 8)
        coords = p.mesh.node_coords(basis)
        u = p.initial(coords)
        assert p.model.admissibility_violation(u) is None, name


def test_unknown_problem():
    with pytest.raises(ValueError, match="unknown problem"):
        build_problem("kh_instability", 8)


# ---------------------------------------------------------------------------
# manufactured solution


def test_manufactured_state_plugin():
    u = sw_manufactured_state(np.array([0.0]), 0.0)
    assert u[0, 0] == pytest.approx(2.1)
    assert u[0, 1] == pytest.approx(0.5 * 2.1)


def test_manufactured_source_symbolic_residual():
    # oracle: substitute the target into the PDE with sympy
    import sympy as sp

    x, t = sp.symbols("x t", real=True)
    g = sp.Float(9.812)
    h = 2 + sp.Rational(1, 10) * sp.cos(2 * sp.pi * (x - t))
    v = sp.Rational(1, 2)
    b = sp.Rational(1, 10) + sp.Rational(1, 20) * sp.sin(2 * sp.pi * x)
    src_h = sp.diff(h, t) + sp.diff(h * v, x)
    src_hv = sp.diff(h * v, t) + sp.diff(h * v**2 + g * h**2 / 2, x) + g * h * sp.diff(b, x)
    f_h = sp.lambdify((x, t), src_h, "numpy")
    f_hv = sp.lambdify((x, t), src_hv, "numpy")

    rng = np.random.default_rng(9)
    xs = rng.uniform(0.0, 1.0, 50)
    ts = rng.uniform(0.0, 2.0, 50)
    for tv in ts[:5]:
        got = sw_manufactured_source(xs, tv)
        assert np.abs(got[..., 0] - f_h(xs, tv)).max() < 1e-12
        assert np.abs(got[..., 1] - f_hv(xs, tv)).max() < 1e-10
        assert np.all(got[..., 2] == 0.0)


def test_manufactured_convergence_smoke():
    # the source must actually drive the scheme toward the target
    from crkfr.models import FluxKinds
    from crkfr.steppers import Workspace, compute_dt, crkfr_step
    from crkfr.tableaus import standard_tableaus

    errs = []
    for nx in (8, 16):
        p = build_problem("sw_manufactured", nx)
        basis = make_basis(2)
        ws = Workspace(p.mesh, basis, p.model, standard_tableaus("rk4"), FluxKinds(volume="ec"), source=p.source)
        state = ws.initial_state(p.initial)
        while state.t < 0.1:
            dt = min(compute_dt(state, ws, 0.4), 0.1 - state.t)
            crkfr_step(state, ws, dt)
        exact = p.exact(p.mesh.node_coords(basis), state.t)
        _, l2, _ = error_norms(state.u, exact, basis, p.mesh)
        errs.append(np.sqrt((l2**2).sum()))
    assert errs[1] < errs[0] / 4.0


# ---------------------------------------------------------------------------
# error norms


def test_error_norms_zero_for_exact():
    basis = make_basis(2)
    mesh = interval_mesh(4, 0.0, 1.0)
    u = np.ones((4, 3, 2))
    l1, l2, linf = error_norms(u, u.copy(), basis, mesh)
    assert np.all(l1 == 0) and np.all(l2 == 0) and np.all(linf == 0)


def test_error_norms_constant_offset():
    basis = make_basis(3)
    mesh = interval_mesh(5, 0.0, 1.0)
    u = np.zeros((5, 4, 1))
    exact = u - 0.25
    l1, l2, linf = error_norms(u, exact, basis, mesh)
    assert l1[0] == pytest.approx(0.25, rel=1e-13)
    assert l2[0] == pytest.approx(0.25, rel=1e-13)
    assert linf[0] == pytest.approx(0.25, rel=1e-13)


@pytest.mark.parametrize("degree", [2, 3])
def test_error_norms_linear_ramp(degree):
    # |u| = xi on a unit element: L2 = 1/sqrt(3), exact for quadrature
    # of degree >= 2 (so N >= 2)
    basis = make_basis(degree)
    mesh = interval_mesh(1, 0.0, 1.0)
    u = basis.nodes[None, :, None].copy()
    exact = np.zeros_like(u)
    l1, l2, linf = error_norms(u, exact, basis, mesh)
    assert l2[0] == pytest.approx(1.0 / np.sqrt(3.0), rel=1e-13)
    assert l1[0] == pytest.approx(0.5, rel=1e-13)
    assert linf[0] == pytest.approx(1.0, rel=1e-13)


def test_error_norms_2d_weighting():
    basis = make_basis(2)
    mesh = box_mesh(2, 3, (0.0, 1.0), (0.0, 1.0))
    u = np.full((2, 3, 3, 3, 1), 0.5)
    exact = np.zeros_like(u)
    _, l2, _ = error_norms(u, exact, basis, mesh)
    assert l2[0] == pytest.approx(0.5, rel=1e-13)


def test_error_norms_require_exact():
    basis = make_basis(2)
    mesh = interval_mesh(2, 0.0, 1.0)
    with pytest.raises(ValueError):
        error_norms(np.zeros((2, 3, 1)), None, basis, mesh)


def test_topography_positive_clearance():
    x = np.linspace(0.0, 1.0, 101)
    b = sw_topography(x)
    assert np.all(1.0 - b >= 0.84)
