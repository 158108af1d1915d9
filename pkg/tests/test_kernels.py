import numpy as np
import pytest

from crkfr.basis import make_basis
from crkfr.kernels import (
    assemble_face_totals,
    fluxdiff_noncons_volume,
    fluxdiff_volume,
    local_flux_derivative,
    local_noncons_derivative,
    surface_correction,
)
from crkfr.models import Burgers, Euler, ShallowWater, rusanov_surface_flux


def fluxdiff_double_loop(basis, dx, u, model, kind, direction=0):
    """Brute-force reference: explicit double loop over node pairs."""
    npts = basis.npoints
    out = np.zeros_like(u)
    for e in range(u.shape[0]):
        for p in range(npts):
            acc = np.zeros(u.shape[-1])
            for q in range(npts):
                acc += 2.0 * basis.diff[p, q] * model.two_point_flux(
                    kind, u[e, p], u[e, q], direction
                )
            out[e, p] = acc / dx
    return out


def random_euler_field(model, shape, seed):
    rng = np.random.default_rng(seed)
    rho = rng.uniform(0.5, 2.0, shape)
    p = rng.uniform(0.5, 2.0, shape)
    vs = [rng.uniform(-1.0, 1.0, shape) for _ in range(model.ndim)]
    return model.conserved(rho, *vs, p)


def test_local_derivative_constant_state():
    basis = make_basis(3)
    model = Euler(1, 1.4)
    u = np.tile(model.conserved(1.0, 0.3, 2.0), (5, 4, 1))
    r = local_flux_derivative(basis, 0.1, u, model)
    assert np.abs(r).max() < 1e-13


def test_local_derivative_burgers_hand_value():
    # N=1, nodes (0,1), u=(0,1), f=(0,1/2), D=[[-1,1],[-1,1]] -> (1/2,1/2)
    basis = make_basis(1)
    model = Burgers()
    u = np.array([[[0.0], [1.0]]])
    r = local_flux_derivative(basis, 1.0, u, model)
    assert np.allclose(r[0, :, 0], [0.5, 0.5])


def test_local_derivative_linear_exact():
    basis = make_basis(3)

    class LinearModel(Burgers):
        def flux(self, u, direction=0):
            return u.copy()

    u = basis.nodes[None, :, None] * np.ones((3, 1, 1))
    r = local_flux_derivative(basis, 1.0, u, LinearModel())
    assert np.allclose(r, 1.0, atol=1e-12)


@pytest.mark.parametrize("degree", [1, 2, 3, 4])
@pytest.mark.parametrize("kind", ["central", "ec", "kep"])
def test_fluxdiff_matches_double_loop(degree, kind):
    basis = make_basis(degree)
    model = Euler(1, 1.4)
    u = random_euler_field(model, (4, basis.npoints), seed=degree)
    got = fluxdiff_volume(basis, 0.37, u, model, kind)
    want = fluxdiff_double_loop(basis, 0.37, u, model, kind)
    assert np.abs(got - want).max() < 1e-11


def test_fluxdiff_burgers_ec_node_value():
    # N=2, nodal u=(1,2,3): frozen against the double-loop oracle
    basis = make_basis(2)
    model = Burgers()
    u = np.array([[[1.0], [2.0], [3.0]]])
    got = fluxdiff_volume(basis, 1.0, u, model, "ec")
    want = fluxdiff_double_loop(basis, 1.0, u, model, "ec")
    assert np.allclose(got, want, atol=1e-13)


@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_central_fluxdiff_equals_local_derivative(degree):
    basis = make_basis(degree)
    model = Euler(1, 1.4)
    u = random_euler_field(model, (6, basis.npoints), seed=100 + degree)
    a = fluxdiff_volume(basis, 0.2, u, model, "central")
    b = local_flux_derivative(basis, 0.2, u, model)
    assert np.abs(a - b).max() / max(1.0, np.abs(b).max()) < 1e-13


@pytest.mark.parametrize("kind", ["central", "ec", "kep"])
def test_fluxdiff_constant_state_is_zero(kind):
    basis = make_basis(3)
    model = Euler(1, 1.4)
    u = np.tile(model.conserved(1.2, -0.4, 0.9), (4, 4, 1))
    r = fluxdiff_volume(basis, 0.25, u, model, kind)
    assert np.abs(r).max() < 1e-13


@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_noncons_pairing_equals_factorized_form(degree):
    basis = make_basis(degree)
    model = ShallowWater()
    rng = np.random.default_rng(degree)
    u = np.zeros((5, basis.npoints, 3))
    u[..., 0] = rng.uniform(0.5, 2.0, u.shape[:2])
    u[..., 1] = rng.uniform(-1.0, 1.0, u.shape[:2])
    u[..., 2] = rng.uniform(0.0, 0.3, u.shape[:2])
    a = fluxdiff_noncons_volume(basis, 0.11, u, model)
    b = local_noncons_derivative(basis, 0.11, u, model)
    assert np.abs(a - b).max() < 1e-12


def test_noncons_constant_state_is_zero():
    basis = make_basis(2)
    model = ShallowWater()
    u = np.tile(np.array([1.5, 0.2, 0.1]), (3, 3, 1))
    assert np.abs(fluxdiff_noncons_volume(basis, 0.3, u, model)).max() < 1e-13


def test_lake_at_rest_volume_balance():
    # momentum: conservative flux differencing cancels the topography
    # pairing when v = 0 and h + b is constant
    basis = make_basis(3)
    model = ShallowWater()
    rng = np.random.default_rng(12)
    b = rng.uniform(0.0, 0.4, (6, basis.npoints))
    u = np.zeros((6, basis.npoints, 3))
    u[..., 0] = 1.0 - b
    u[..., 2] = b
    total = fluxdiff_volume(basis, 0.17, u, model, "ec") + fluxdiff_noncons_volume(
        basis, 0.17, u, model
    )
    assert np.abs(total).max() < 1e-12


def test_surface_correction_zero_when_matched():
    basis = make_basis(2)
    f = np.ones((4, 3))
    corr = surface_correction(basis, 0.5, f, f, f, f)
    assert np.abs(corr).max() == 0.0


def test_surface_correction_boundary_sparsity():
    basis = make_basis(2)
    fnum_r = np.array([[1.0, 2.0, 3.0]])
    ftot_r = np.zeros((1, 3))
    fnum_l = np.array([[0.5, -1.0, 0.0]])
    ftot_l = np.zeros((1, 3))
    corr = surface_correction(basis, 1.0, fnum_r, ftot_r, fnum_l, ftot_l)
    assert np.abs(corr[0, 1]).max() == 0.0  # interior node untouched
    assert np.any(corr[0, 0] != 0.0) and np.any(corr[0, 2] != 0.0)


def test_surface_correction_right_jump_value():
    # jump (1,0,0) at the right face only, N=1, dx=1: node 1 gets dgR=2
    basis = make_basis(1)
    fnum_r = np.array([[1.0, 0.0, 0.0]])
    zeros = np.zeros((1, 3))
    corr = surface_correction(basis, 1.0, fnum_r, zeros, zeros, zeros)
    assert np.allclose(corr[0, 1], [2.0, 0.0, 0.0])
    assert np.allclose(corr[0, 0], 0.0)


def test_assemble_face_totals_gll_reads_boundary_flux():
    basis = make_basis(3)
    model = Euler(1, 1.4)
    u = random_euler_field(model, (4, basis.npoints), seed=7)
    u_l, u_r, f_l, f_r = assemble_face_totals(basis, u, model)
    assert np.array_equal(u_l, u[:, 0])
    assert np.array_equal(u_r, u[:, -1])
    assert np.allclose(f_l, model.flux(u[:, 0]))
    assert np.allclose(f_r, model.flux(u[:, -1]))


def test_assemble_face_totals_noncons_adds_bg():
    basis = make_basis(2)
    model = ShallowWater()
    u = np.zeros((2, 3, 3))
    u[..., 0] = 1.4
    u[..., 1] = 0.6
    u[..., 2] = 0.2
    _, u_r, _, f_r = assemble_face_totals(basis, u, model)
    want = model.flux(u[:, -1]) + model.b_apply(u[:, -1], model.g_of(u[:, -1]))
    assert np.allclose(f_r, want)


def test_discrete_integration_by_parts_conservation():
    # periodic chain of elements: quadrature sum of volume + surface
    # residuals telescopes to zero for a conservative model
    basis = make_basis(3)
    model = Burgers()
    ne = 8
    dx = 1.0 / ne
    rng = np.random.default_rng(77)
    u = rng.uniform(-1.0, 1.0, (ne, basis.npoints, 1))

    vol = fluxdiff_volume(basis, dx, u, model, "ec")
    u_l, u_r, f_l, f_r = assemble_face_totals(basis, u, model)
    u_plus = np.roll(u_l, -1, axis=0)
    fnum = rusanov_surface_flux(model, u_r, u_plus)
    corr = surface_correction(
        basis, dx, fnum, f_r, np.roll(fnum, 1, axis=0), f_l
    )
    total = dx * np.einsum("p,epm->m", basis.weights, vol + corr)
    assert np.abs(total).max() < 1e-12
