"""Common model interface and admissibility error channel.

A model bundles the pointwise flux, the non-conservative coefficient
pair (B, g), wave-speed estimates, the entropy machinery and the
two-point volume fluxes for one equation system.  All methods are pure
and vectorized: state arrays carry the variables on the last axis and
broadcast over any leading shape.
"""

from dataclasses import dataclass

import numpy as np


class AdmissibilityError(Exception):
    """Raised when a state leaves the admissible set (or goes non-finite).

    Carries enough context for the run loop to report a crash: the
    physical reason, the simulation time of the last accepted state,
    and where the violation happened.
    """

    def __init__(self, reason, time=None, element=None, stage=None, value=None):
        self.reason = reason
        self.time = time
        self.element = element
        self.stage = stage
        self.value = value
        parts = [f"inadmissible state: {reason}"]
        if value is not None:
            parts.append(f"value={value:.6g}")
        if element is not None:
            parts.append(f"element={element}")
        if stage is not None:
            parts.append(f"stage={stage}")
        if time is not None:
            parts.append(f"t={time:.6g}")
        super().__init__(", ".join(parts))


@dataclass(frozen=True)
class FluxKinds:
    """Which flux goes where: volume two-point kind, interface kind and
    the non-conservative interface variant."""

    volume: str = "central"
    surface: str = "rusanov"
    noncons_interface: str = "reduced"

    VOLUME_KINDS = ("central", "ec", "kep")
    SURFACE_KINDS = ("rusanov", "ec_test")
    NONCONS_KINDS = ("reduced", "stage_averaged")

    def __post_init__(self):
        if self.volume not in self.VOLUME_KINDS:
            raise ValueError(
                f"unknown volume_flux '{self.volume}' (choose from {', '.join(self.VOLUME_KINDS)})"
            )
        if self.surface not in self.SURFACE_KINDS:
            raise ValueError(
                f"unknown surface_flux '{self.surface}' (choose from {', '.join(self.SURFACE_KINDS)})"
            )
        if self.noncons_interface not in self.NONCONS_KINDS:
            raise ValueError(
                f"unknown noncons_interface '{self.noncons_interface}' "
                f"(choose from {', '.join(self.NONCONS_KINDS)})"
            )


class EquationModel:
    """Base class; concrete systems override the marked methods."""

    nvars: int
    ndim: int
    name: str
    var_names: tuple
    has_noncons: bool = False
    volume_flux_kinds: tuple = ("central",)

    # -- fluxes ------------------------------------------------------

    def flux(self, u, direction=0):
        raise NotImplementedError

    def two_point_flux(self, kind, ul, ur, direction=0):
        """Symmetric volume flux of the requested kind; 'central' is
        always available, the others where the model defines them."""
        if kind == "central":
            return 0.5 * (self.flux(ul, direction) + self.flux(ur, direction))
        raise ValueError(f"model '{self.name}' has no '{kind}' two-point flux")

    def check_flux_kinds(self, kinds: FluxKinds):
        if kinds.volume not in self.volume_flux_kinds:
            raise ValueError(
                f"model '{self.name}' does not provide volume flux '{kinds.volume}' "
                f"(available: {', '.join(self.volume_flux_kinds)})"
            )
        if kinds.surface == "ec_test" and "ec" not in self.volume_flux_kinds:
            raise ValueError(f"model '{self.name}' has no entropy-conservative flux for ec_test")

    # -- wave speeds --------------------------------------------------

    def node_wave_speed(self, u, direction=0):
        """Spectral radius of the combined Jacobian at a state."""
        raise NotImplementedError

    def max_wave_speed(self, ul, ur, direction=0):
        return np.maximum(
            self.node_wave_speed(ul, direction), self.node_wave_speed(ur, direction)
        )

    # -- non-conservative product -------------------------------------

    def g_of(self, u):
        """Argument of the non-conservative derivative; identity by default."""
        return u

    def b_apply(self, u, gvec):
        """B(u) @ gvec; zero for purely conservative systems."""
        return np.zeros(np.broadcast_shapes(u.shape, gvec.shape))

    def noncons_two_point(self, up, uq, direction=0):
        """Non-symmetric pairing (B g)(u_p, u_q); default B(u_p) g(u_q)."""
        return self.b_apply(up, self.g_of(uq))

    # -- entropy machinery --------------------------------------------

    def entropy(self, u):
        raise NotImplementedError

    def entropy_vars(self, u):
        raise NotImplementedError

    def entropy_potential(self, u, direction=0):
        raise NotImplementedError

    def kinetic_energy(self, u):
        raise NotImplementedError

    # -- admissibility -------------------------------------------------

    def admissibility_violation(self, u):
        """Return (reason, flat_node_index, value) for the first bad
        node in C order, or None when every state is admissible."""
        raise NotImplementedError

    def require_admissible(self, u, time=None, element_shape=None, stage=None):
        hit = self.admissibility_violation(u)
        if hit is None:
            return
        reason, flat, value = hit
        element = None
        if element_shape is not None:
            element = tuple(int(i) for i in np.unravel_index(flat, element_shape))
        raise AdmissibilityError(
            reason, time=time, element=element, stage=stage, value=value
        )

    def _first_violation(self, checks):
        """checks: list of (reason, mask, values); masks share one shape."""
        for reason, mask, values in checks:
            if np.any(mask):
                flat = int(np.argmax(mask.reshape(-1)))
                return reason, flat, float(values.reshape(-1)[flat])
        return None
