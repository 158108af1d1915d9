"""Nodal polynomial infrastructure on the reference interval [0, 1].

Everything downstream (volume kernels, surface corrections, quadrature)
is built from the objects constructed here: Gauss-Lobatto-Legendre
solution points and weights, the Lagrange differentiation matrix, and
the nodal derivatives of the boundary correction functions.  All
quantities live on [0, 1]; the mapping to physical elements is applied
by the callers through a 1/dx factor, never here.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import legendre as _leg


@dataclass(frozen=True)
class Basis:
    """Degree-N nodal basis: points, weights and derivative operators.

    Attributes:
        degree: polynomial degree N >= 0.
        nodes: N+1 strictly increasing points in [0, 1].
        weights: quadrature weights on [0, 1]; they sum to 1 and are
            exact for polynomials of degree <= 2N-1 (N >= 1).
        diff: (N+1, N+1) matrix with D[p, q] = l_q'(xi_p), the
            derivative of the q-th Lagrange cardinal polynomial.
        dg_left: nodal values of d/dxi of the left correction function.
        dg_right: nodal values of d/dxi of the right correction function.
        eval_left: Lagrange evaluation weights at xi = 0.
        eval_right: Lagrange evaluation weights at xi = 1.
    """

    degree: int
    nodes: np.ndarray
    weights: np.ndarray
    diff: np.ndarray
    dg_left: np.ndarray
    dg_right: np.ndarray
    eval_left: np.ndarray
    eval_right: np.ndarray

    @property
    def npoints(self) -> int:
        return self.degree + 1

    @property
    def endpoint_nodes(self) -> bool:
        """True when xi=0 and xi=1 are solution points (extrapolation
        then reduces to reading the boundary nodal values)."""
        return self.nodes[0] == 0.0 and self.nodes[-1] == 1.0


def gll_nodes_weights(degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Lobatto-Legendre points and weights mapped to [0, 1].

    The interior points are the roots of P_N', polished by Newton
    iteration; the weights are 2 / (N (N+1) P_N(x)^2) on [-1, 1],
    halved by the affine map to [0, 1].

    Raises:
        ValueError: for degree < 1 (a Lobatto rule needs both
            endpoints; degree 0 is handled by the midpoint special
            case in :func:`make_basis`).
    """
    if degree < 1:
        raise ValueError(
            "Gauss-Lobatto-Legendre needs degree >= 1 (two endpoint nodes); "
            "degree 0 uses the midpoint rule, see make_basis"
        )
    n = degree
    pn = np.zeros(n + 1)
    pn[-1] = 1.0
    dpn = _leg.legder(pn)
    interior = np.sort(_leg.legroots(dpn)) if n >= 2 else np.empty(0)
    # Newton polish on P_N' so the residual is at machine level.
    if interior.size:
        d2pn = _leg.legder(dpn)
        for _ in range(4):
            r = _leg.legval(interior, dpn)
            if np.max(np.abs(r)) < 1e-15:
                break
            interior = interior - r / _leg.legval(interior, d2pn)
    x = np.concatenate(([-1.0], interior, [1.0]))
    w = 2.0 / (n * (n + 1) * _leg.legval(x, pn) ** 2)
    return (x + 1.0) / 2.0, w / 2.0


def diff_matrix(nodes: np.ndarray) -> np.ndarray:
    """Lagrange differentiation matrix D[p, q] = l_q'(xi_p).

    Uses the barycentric form; the diagonal is set by the zero row-sum
    property (exact derivative of the constant).
    """
    nodes = np.asarray(nodes, dtype=float)
    npts = nodes.size
    dx = nodes[:, None] - nodes[None, :]
    if np.any(dx[~np.eye(npts, dtype=bool)] == 0.0):
        raise ValueError("duplicate interpolation nodes")
    np.fill_diagonal(dx, 1.0)
    bary = 1.0 / np.prod(dx, axis=1)
    d = np.zeros((npts, npts))
    off = ~np.eye(npts, dtype=bool)
    d[off] = (bary[None, :] / bary[:, None] / dx)[off]
    np.fill_diagonal(d, -d.sum(axis=1))
    return d


def lagrange_eval_weights(nodes: np.ndarray, xi: float) -> np.ndarray:
    """Weights v with sum_p v[p] f(xi_p) = (interpolant of f)(xi).

    Exact cardinal-basis evaluation; when xi coincides with a node the
    result is the corresponding unit vector.
    """
    nodes = np.asarray(nodes, dtype=float)
    hit = np.nonzero(nodes == xi)[0]
    if hit.size:
        v = np.zeros(nodes.size)
        v[hit[0]] = 1.0
        return v
    diffs = xi - nodes
    full = np.prod(diffs)
    dx = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(dx, 1.0)
    denom = np.prod(dx, axis=1)
    return full / (diffs * denom)


def g2_correction_derivatives(
    nodes: np.ndarray, weights: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Nodal derivative values of the boundary-localized correction pair.

    With Lobatto points the derivative interpolant of the left
    correction function is -l_0(xi)/w_0, so its nodal values collapse to
    a single entry at the left endpoint (mirrored on the right).  The
    summation-by-parts boundary identity tested in the suite is the
    ground truth for this closed form.
    """
    nodes = np.asarray(nodes, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if nodes[0] != 0.0 or nodes[-1] != 1.0:
        raise ValueError("correction derivatives require endpoint nodes (Lobatto)")
    dgl = np.zeros(nodes.size)
    dgr = np.zeros(nodes.size)
    dgl[0] = -1.0 / weights[0]
    dgr[-1] = 1.0 / weights[-1]
    return dgl, dgr


def extrapolate_to_faces(basis: Basis, values: np.ndarray, axis: int = -1):
    """Evaluate the Lagrange interpolant of nodal ``values`` at xi=0 and xi=1.

    ``axis`` selects the node axis.  Implemented as a generic evaluation
    so bases without endpoint nodes keep working; for Lobatto points the
    weights are unit vectors and the result is bitwise the boundary
    nodal value.
    """
    values = np.asarray(values)
    left = np.tensordot(values, basis.eval_left, axes=(axis, 0))
    right = np.tensordot(values, basis.eval_right, axes=(axis, 0))
    return left, right


def make_basis(degree: int) -> Basis:
    """Build the full degree-N basis (degree 0 degenerates to the
    midpoint rule so the scheme reduces to first-order finite volume)."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if degree == 0:
        return Basis(
            degree=0,
            nodes=np.array([0.5]),
            weights=np.array([1.0]),
            diff=np.zeros((1, 1)),
            dg_left=np.array([-1.0]),
            dg_right=np.array([1.0]),
            eval_left=np.array([1.0]),
            eval_right=np.array([1.0]),
        )
    nodes, weights = gll_nodes_weights(degree)
    dgl, dgr = g2_correction_derivatives(nodes, weights)
    return Basis(
        degree=degree,
        nodes=nodes,
        weights=weights,
        diff=diff_matrix(nodes),
        dg_left=dgl,
        dg_right=dgr,
        eval_left=lagrange_eval_weights(nodes, 0.0),
        eval_right=lagrange_eval_weights(nodes, 1.0),
    )
