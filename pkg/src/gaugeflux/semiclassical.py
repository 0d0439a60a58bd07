"""Closed-form double-slit fringe displacement and phase-sign identities.

For small trajectory deflections, the phase picked up between the two
deflected beams (from the optical path difference set by the Lorentz
force) is exactly opposite to the enclosed-flux phase, in both the
magnetic and the electric arrangement.  The formulas are written in
terms of the flux quantum hc/e and the de Broglie wavelength so that
h and e never appear separately.

Sign conventions: the screen axis is positive upward; the electric field
amplitude is signed along that axis (a downward field is negative).  The
small-deflection assumption is advisory: setups with a strip width (or
pulse length) above a tenth of the flight scale get a warning, not an
error.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .fields import DEFAULT_CONSTANTS, PhysicalConstants

__all__ = [
    "FringeSetupMagnetic",
    "FringeSetupElectric",
    "FringeResult",
    "magnetic_fringe",
    "electric_fringe",
]

_SMALL_DEFLECTION_RATIO = 0.1


def _require_positive(**lengths):
    for name, value in lengths.items():
        if value <= 0.0:
            raise ValueError(f"{name} must be positive, got {value!r}")


@dataclass(frozen=True)
class FringeSetupMagnetic:
    """Double slit with a perpendicular magnetic strip before the screen."""

    q_over_e: float
    B: float
    W: float
    d: float
    L: float
    lambda_dB: float
    constants: PhysicalConstants = DEFAULT_CONSTANTS

    def __post_init__(self):
        _require_positive(W=self.W, d=self.d, L=self.L, lambda_dB=self.lambda_dB)
        if self.W / self.L > _SMALL_DEFLECTION_RATIO:
            warnings.warn(
                f"W/L = {self.W / self.L:.3g} exceeds {_SMALL_DEFLECTION_RATIO}; "
                "the small-deflection formulas degrade", stacklevel=3)


@dataclass(frozen=True)
class FringeSetupElectric:
    """Double slit with a screen-parallel electric pulse of duration T."""

    q_over_e: float
    E: float
    T: float
    d: float
    L: float
    lambda_dB: float
    v: float
    constants: PhysicalConstants = DEFAULT_CONSTANTS

    def __post_init__(self):
        _require_positive(T=self.T, d=self.d, L=self.L,
                          lambda_dB=self.lambda_dB, v=self.v)
        if self.T * self.v / self.L > _SMALL_DEFLECTION_RATIO:
            warnings.warn(
                f"T*v/L = {self.T * self.v / self.L:.3g} exceeds "
                f"{_SMALL_DEFLECTION_RATIO}; the small-deflection formulas degrade",
                stacklevel=3)


@dataclass(frozen=True)
class FringeResult:
    """Enclosed-flux phase, central-fringe displacement, and their sum."""

    phi_ab: float
    x_c: float
    phi_semi: float
    sum: float


def _result(phi_ab: float, x_c: float, d: float, L: float,
            lambda_dB: float) -> FringeResult:
    phi_semi = (2.0 * math.pi / lambda_dB) * d * x_c / L
    return FringeResult(phi_ab=phi_ab, x_c=x_c, phi_semi=phi_semi,
                        sum=phi_ab + phi_semi)


def magnetic_fringe(setup: FringeSetupMagnetic) -> FringeResult:
    """Magnetic-strip variant: phi_ab = 2 pi (q/e) B W d / flux_quantum.

    The central fringe moves by x_c = -(q/e) B W L lambda / flux_quantum
    and the resulting path-difference phase cancels phi_ab exactly.
    """
    phi0 = setup.constants.flux_quantum
    enclosed = setup.B * setup.W * setup.d
    phi_ab = 2.0 * math.pi * setup.q_over_e * enclosed / phi0
    x_c = -setup.q_over_e * setup.B * setup.W * setup.L * setup.lambda_dB / phi0
    return _result(phi_ab, x_c, setup.d, setup.L, setup.lambda_dB)


def electric_fringe(setup: FringeSetupElectric) -> FringeResult:
    """Electric-pulse variant: phi_ab = -2 pi (q/e) c T E d / flux_quantum.

    The potential difference across the slits is E*d; the fringe
    displacement x_c = (q/e) E T L lambda c / flux_quantum again cancels
    phi_ab exactly.
    """
    phi0 = setup.constants.flux_quantum
    c = setup.constants.c
    phi_ab = -2.0 * math.pi * setup.q_over_e * c * setup.T * setup.E * setup.d / phi0
    x_c = setup.q_over_e * setup.E * setup.T * setup.L * setup.lambda_dB * c / phi0
    return _result(phi_ab, x_c, setup.d, setup.L, setup.lambda_dB)
