"""Static two-dimensional gauge functions Lambda(x, y).

Both path solutions over the observation rectangle are computed:

    lambda1 (clockwise Dirac path, up the x0-column then along the
    y-row) carries the nonlocal term ``+ integral of B_z`` over the
    rectangle plus a gauge-fix function g(x);

    lambda2 (counterclockwise, along the y0-row then up the x-column)
    carries ``- integral of B_z`` plus h(y).

g and h are built from reference coordinates anchored at the same
ordinate, so the two branches share their arbitrary constant and agree
exactly in simple-connected regions (the generalized Werner-Brill
cancellation).  In multiple-connected configurations the declared
enclosed flux enters through constant multiplicities f(y0) = -flux and
h_hat(x0) = +flux, which cancel the nonlocal terms and reduce both
branches to plain Dirac phases.

A polar variant handles circular field shapes whose rectangle flux does
not separate into x- and y-parts; its annular-slice flux carries the
rho' drho' measure.  When the rectangle flux is not separable and no
reference patch is field-free, the solvers raise
``DecompositionUnsupportedError`` instead of guessing a coordinate
change.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._engine import PlaneProblem, solve_branch
from .errors import SingularPointError
from .fields import FieldConfig
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_1d, integrate_rect
from .solution import GaugeSolution, ResidualReport

__all__ = [
    "ObservationFrame",
    "MultiplicityLedger",
    "PolarPoint",
    "PolarFrame",
    "rect_flux",
    "lambda1_static",
    "lambda2_static",
    "verify_gradient",
    "cancellation_check",
    "ab_multiplicities",
    "lambda_polar",
    "annular_flux",
]

FIELD_TOL = 1e-6


@dataclass(frozen=True)
class ObservationFrame:
    """Initial point, observation point and reference coordinates.

    ``y_ref`` defaults to y0 (right for vertical strips; must be moved
    into the observation-side field-free band for shapes like horizontal
    strips or triangles).  ``x_ref`` defaults to the observation
    abscissa.
    """

    p0: tuple[float, float]
    p: tuple[float, float]
    y_ref: float | None = None
    x_ref: float | None = None
    lambda0: float = 0.0

    def resolved(self) -> tuple[float, float, float, float, float, float]:
        x0, y0 = self.p0
        x, y = self.p
        xr = self.x_ref if self.x_ref is not None else x
        yr = self.y_ref if self.y_ref is not None else y0
        return float(x0), float(y0), float(x), float(y), float(xr), float(yr)


@dataclass(frozen=True)
class MultiplicityLedger:
    """Constant offsets present only for multiple-connected topologies."""

    f_y0: float = 0.0
    h_hat_x0: float = 0.0


def rect_flux(config: FieldConfig, x_span, y_span, t: float = 0.0,
              spec: QuadratureSpec | None = None) -> float:
    """Signed B_z flux over the rectangle, declared point flux included."""
    spec = spec or DEFAULT_SPEC
    x0, x1 = float(x_span[0]), float(x_span[1])
    y0, y1 = float(y_span[0]), float(y_span[1])
    needs_rows = config.row_edges is not None or config.retarded is not None
    smooth = integrate_rect(
        lambda X, Y: config.bz(X, Y, t),
        (x0, x1), (y0, y1), spec,
        x_breaks=config.breaks_x(t=t),
        y_breaks=config.rect_kinks_y(min(x0, x1), max(x0, x1), t),
        x_breaks_of_y=(lambda yv: config.breaks_x(y=yv, t=t)) if needs_rows else None,
    )
    return smooth + config.enclosed_point_flux((x0, x1), (y0, y1), t)


def _plane_problem(config: FieldConfig, spec: QuadratureSpec, t: float) -> PlaneProblem:
    def pot_u(a, b, yv):
        return integrate_1d(lambda X: config.ax(X, yv, t), a, b, spec,
                            config.breaks_x(y=yv, t=t))

    def pot_v(a, b, xv):
        return integrate_1d(lambda Y: config.ay(xv, Y, t), a, b, spec,
                            config.breaks_y(x=xv, t=t))

    return PlaneProblem(
        pot_u=pot_u,
        pot_v=pot_v,
        flux=lambda ua, ub, va, vb: rect_flux(config, (ua, ub), (va, vb), t, spec),
        field=lambda xv, yv: float(config.bz(np.asarray(xv), np.asarray(yv),
                                             np.asarray(t))),
        u_name="x", v_name="y",
    )


def ab_multiplicities(config: FieldConfig, frame: ObservationFrame) -> MultiplicityLedger:
    """Multiplicity constants for the declared flux in the observation rectangle.

    ``f(y0) = -flux`` and ``h_hat(x0) = +flux`` when a declared flux line
    sits inside the rectangle; zeros for simple-connected configurations
    or when the flux lies outside.
    """
    x0, y0, x, y, _, _ = frame.resolved()
    if not config.multiple_connected:
        return MultiplicityLedger()
    enclosed = config.enclosed_point_flux((x0, x), (y0, y), 0.0)
    return MultiplicityLedger(f_y0=-enclosed, h_hat_x0=+enclosed)


def lambda1_static(config: FieldConfig, frame: ObservationFrame,
                   spec: QuadratureSpec | None = None, *,
                   include_multiplicities: bool = True,
                   validate: bool = True,
                   field_tol: float = FIELD_TOL) -> GaugeSolution:
    """Clockwise path solution with the +flux nonlocal term and g(x).

    Requires B_z = 0 at the observation point and on the reference patch
    (in particular the segment {x} x [y_ref, y], which is what makes
    g well defined).
    """
    spec = spec or DEFAULT_SPEC
    x0, y0, x, y, xr, yr = frame.resolved()
    mult = ab_multiplicities(config, frame).f_y0 if include_multiplicities else 0.0
    return solve_branch(_plane_problem(config, spec, 0.0), 1, frame.lambda0,
                        x0, y0, x, y, xr, yr, mult,
                        branch_name="lambda1", sense="clockwise",
                        field_tol=field_tol, validate=validate)


def lambda2_static(config: FieldConfig, frame: ObservationFrame,
                   spec: QuadratureSpec | None = None, *,
                   include_multiplicities: bool = True,
                   validate: bool = True,
                   field_tol: float = FIELD_TOL) -> GaugeSolution:
    """Counterclockwise path solution with the -flux term and h(y)."""
    spec = spec or DEFAULT_SPEC
    x0, y0, x, y, xr, yr = frame.resolved()
    mult = ab_multiplicities(config, frame).h_hat_x0 if include_multiplicities else 0.0
    return solve_branch(_plane_problem(config, spec, 0.0), 2, frame.lambda0,
                        x0, y0, x, y, xr, yr, mult,
                        branch_name="lambda2", sense="counterclockwise",
                        field_tol=field_tol, validate=validate)


def verify_gradient(config: FieldConfig, frame: ObservationFrame,
                    solution_fn: Callable, step: float = 1e-4, tol: float = 1e-6,
                    spec: QuadratureSpec | None = None) -> ResidualReport:
    """Central-difference check that grad Lambda equals the potential at p.

    ``solution_fn`` is one of the solvers above (same call signature).
    Reference coordinates are frozen at their base-frame resolution so
    all shifted evaluations differentiate the same solution function.
    """
    x0, y0, x, y, xr, yr = frame.resolved()

    def value(px, py):
        shifted = ObservationFrame(p0=(x0, y0), p=(px, py), y_ref=yr, x_ref=xr,
                                   lambda0=frame.lambda0)
        return solution_fn(config, shifted, spec, validate=False).lambda_value

    dl_dx = (value(x + step, y) - value(x - step, y)) / (2.0 * step)
    dl_dy = (value(x, y + step) - value(x, y - step)) / (2.0 * step)
    ax = float(config.ax(np.asarray(x), np.asarray(y), np.asarray(0.0)))
    ay = float(config.ay(np.asarray(x), np.asarray(y), np.asarray(0.0)))
    residuals = {"x": dl_dx - ax, "y": dl_dy - ay}
    passed = all(abs(v) <= tol for v in residuals.values())
    return ResidualReport(residuals=residuals, tol=tol, passed=passed,
                          point=(x, y), branch=getattr(solution_fn, "__name__", ""))


def cancellation_check(config: FieldConfig, frame: ObservationFrame,
                       spec: QuadratureSpec | None = None, *,
                       include_multiplicities: bool = False) -> float:
    """Difference of the two path solutions.

    Zero (to quadrature accuracy) in simple-connected space; with
    multiplicities suppressed on a multiple-connected configuration the
    difference equals the enclosed flux.
    """
    s1 = lambda1_static(config, frame, spec,
                        include_multiplicities=include_multiplicities)
    s2 = lambda2_static(config, frame, spec,
                        include_multiplicities=include_multiplicities)
    return s1.lambda_value - s2.lambda_value


# -- polar coordinates --------------------------------------------------------


@dataclass(frozen=True)
class PolarPoint:
    """Radius and angle; the angle is kept in (-pi, pi]."""

    rho: float
    phi: float

    def __post_init__(self):
        if self.rho < 0.0:
            raise ValueError("rho must be nonnegative")
        if not (-math.pi < self.phi <= math.pi):
            raise ValueError("phi must lie in (-pi, pi]")

    def cartesian(self) -> tuple[float, float]:
        return self.rho * math.cos(self.phi), self.rho * math.sin(self.phi)


@dataclass(frozen=True)
class PolarFrame:
    """Observation frame in polar coordinates about the origin."""

    p0: PolarPoint
    p: PolarPoint
    phi_ref: float | None = None
    rho_ref: float | None = None
    lambda0: float = 0.0

    def resolved(self):
        rr = self.rho_ref if self.rho_ref is not None else self.p.rho
        pr = self.phi_ref if self.phi_ref is not None else self.p0.phi
        return (self.p0.rho, self.p0.phi, self.p.rho, self.p.phi,
                float(rr), float(pr))


def annular_flux(config: FieldConfig, rho_span, phi_span,
                 spec: QuadratureSpec | None = None) -> float:
    """Signed flux over an annular slice with the rho' drho' measure."""
    spec = spec or DEFAULT_SPEC
    return integrate_rect(
        lambda R, PH: R * config.bz(R * np.cos(PH), R * np.sin(PH), 0.0),
        rho_span, phi_span, spec,
        y_breaks=config.polar_phi_kinks,
        x_breaks_of_y=config.polar_rho_breaks,
    )


def lambda_polar(config: FieldConfig, frame: PolarFrame, branch: int = 1,
                 spec: QuadratureSpec | None = None, *,
                 validate: bool = True,
                 field_tol: float = FIELD_TOL) -> GaugeSolution:
    """Annular-slice analog of the two path solutions.

    Branch 1 integrates radially at the observation angle then along the
    rho0 arc and carries +flux with g(rho); branch 2 is the mirror with
    -flux and h(phi).  A warning is issued when the radial integration
    range touches rho = 0 (the measure is regular there, but azimuthal
    potential components generally are not).
    """
    spec = spec or DEFAULT_SPEC
    rho0, phi0, rho, phi, rho_ref, phi_ref = frame.resolved()
    if min(rho0, rho) <= 0.0:
        warnings.warn("radial integration range touches rho = 0; azimuthal "
                      "potentials singular at the origin will not integrate",
                      stacklevel=2)

    def a_rho(R, PH):
        X, Y = R * np.cos(PH), R * np.sin(PH)
        return config.ax(X, Y, 0.0) * np.cos(PH) + config.ay(X, Y, 0.0) * np.sin(PH)

    def a_phi(R, PH):
        X, Y = R * np.cos(PH), R * np.sin(PH)
        return -config.ax(X, Y, 0.0) * np.sin(PH) + config.ay(X, Y, 0.0) * np.cos(PH)

    def pot_u(a, b, phiv):
        breaks = config.polar_rho_breaks(phiv) if config.polar_rho_breaks else ()
        return integrate_1d(lambda R: a_rho(R, np.full_like(R, phiv)), a, b,
                            spec, breaks)

    def pot_v(a, b, rhov):
        return integrate_1d(lambda PH: rhov * a_phi(np.full_like(PH, rhov), PH),
                            a, b, spec, config.polar_phi_kinks)

    problem = PlaneProblem(
        pot_u=pot_u,
        pot_v=pot_v,
        flux=lambda ua, ub, va, vb: annular_flux(config, (ua, ub), (va, vb), spec),
        field=lambda rv, pv: float(config.bz(np.asarray(rv * math.cos(pv)),
                                             np.asarray(rv * math.sin(pv)),
                                             np.asarray(0.0))),
        u_name="rho", v_name="phi",
    )
    names = {1: ("polar1", "clockwise"), 2: ("polar2", "counterclockwise")}
    try:
        name, sense = names[branch]
    except KeyError:
        raise ValueError("branch must be 1 or 2") from None
    return solve_branch(problem, branch, frame.lambda0,
                        rho0, phi0, rho, phi, rho_ref, phi_ref, 0.0,
                        branch_name=name, sense=sense,
                        field_tol=field_tol, validate=validate)
