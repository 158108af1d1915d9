from .base import AdmissibilityError, EquationModel, FluxKinds
from .burgers import Burgers
from .euler import Euler
from .means import inv_log_mean, log_mean
from .shallow_water import ShallowWater


def rusanov_surface_flux(model, ul, ur, direction=0):
    """Central flux plus local max-wave-speed dissipation.

    The dissipation coefficient is the two-state maximum of the
    spectral radius of the combined Jacobian, so it covers the
    non-conservative coupling as well.
    """
    lam = model.max_wave_speed(ul, ur, direction)
    return 0.5 * (model.flux(ul, direction) + model.flux(ur, direction)) - 0.5 * lam[
        ..., None
    ] * (ur - ul)


__all__ = [
    "AdmissibilityError",
    "Burgers",
    "EquationModel",
    "Euler",
    "FluxKinds",
    "ShallowWater",
    "inv_log_mean",
    "log_mean",
    "rusanov_surface_flux",
]
