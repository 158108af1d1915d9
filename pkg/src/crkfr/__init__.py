"""Compact Runge-Kutta flux reconstruction solver with entropy-
conservative and kinetic-energy-preserving volume fluxes, for
hyperbolic systems with non-conservative products."""

__version__ = "0.1.0"

from .basis import Basis, make_basis
from .mesh import CartesianMesh, box_mesh, interval_mesh
from .models import AdmissibilityError, Burgers, Euler, FluxKinds, ShallowWater
from .steppers import (
    StateField,
    Workspace,
    admissibility_monitor,
    compute_dt,
    crkfr_step,
    rkfr_step,
)
from .tableaus import ButcherTableau, standard_tableaus

__all__ = [
    "AdmissibilityError",
    "Basis",
    "Burgers",
    "ButcherTableau",
    "CartesianMesh",
    "Euler",
    "FluxKinds",
    "ShallowWater",
    "StateField",
    "Workspace",
    "admissibility_monitor",
    "box_mesh",
    "compute_dt",
    "crkfr_step",
    "interval_mesh",
    "make_basis",
    "rkfr_step",
    "standard_tableaus",
    "__version__",
]
