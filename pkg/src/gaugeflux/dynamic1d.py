"""Dynamic one-dimensional gauge functions Lambda(x, t).

The spacetime analog of the static plane problem: with coordinates
(x, t), the two path solutions over the observation rectangle are

    lambda3:  integral of A along the t-row, minus c * integral of phi
              up the x0 column, plus { +c*int int E + g(x) } + tau(t0)

    lambda4:  A along the t0-row, phi up the x column,
              { -c*int int E + g_hat(t) } + chi(x0)

where E is the electric field difference; the enclosed "electric flux"
is c times the (dx dt)-integral of E, in ordinary flux units.  The
widely quoted formula that combines both potential integrals at the
observation coordinates (``lambda_naive``) solves neither equation when
A depends on t or phi on x; it is provided as a negative control.

Electric-type multiplicities tau(t0) = +flux and chi(x0) = -flux appear
for declared spacetime-multiple-connected configurations; the declared
flux is booked inside the nonlocal term with the opposite sign, so
adding the constants reduces both branches to pure potential integrals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._engine import PlaneProblem, solve_branch
from .fields import DEFAULT_CONSTANTS, FieldConfig, PhysicalConstants
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_1d, integrate_rect
from .solution import GaugeSolution, ResidualReport

__all__ = [
    "SpacetimeFrame",
    "ElectricMultiplicities",
    "spacetime_flux_integral",
    "lambda3_dynamic",
    "lambda4_dynamic",
    "lambda_naive",
    "verify_xt_system",
    "cancellation_check_xt",
    "electric_ab_multiplicities",
]

FIELD_TOL = 1e-6


@dataclass(frozen=True)
class SpacetimeFrame:
    """Initial event, observation event and reference coordinates.

    ``t_ref`` defaults to t0; ``x_ref`` defaults to the observation
    abscissa.  The segment {x} x [t_ref, t] must be free of electric
    field difference for the first branch, [x_ref, x] x {t} for the
    second.
    """

    p0: tuple[float, float]
    p: tuple[float, float]
    t_ref: float | None = None
    x_ref: float | None = None
    lambda0: float = 0.0

    def resolved(self):
        x0, t0 = self.p0
        x, t = self.p
        xr = self.x_ref if self.x_ref is not None else x
        tr = self.t_ref if self.t_ref is not None else t0
        return float(x0), float(t0), float(x), float(t), float(xr), float(tr)


@dataclass(frozen=True)
class ElectricMultiplicities:
    """Spacetime multiplicity constants; zero when simple-connected."""

    tau_t0: float = 0.0
    chi_x0: float = 0.0


def spacetime_flux_integral(config: FieldConfig, x_span, t_span,
                            spec: QuadratureSpec | None = None,
                            constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """c * signed integral of E over the (x, t) rectangle.

    The declared spacetime point flux enters with a minus sign: it is
    stored tau-oriented, and the multiplicity constant is what restores
    the pure potential-integral form.
    """
    spec = spec or DEFAULT_SPEC
    x0, x1 = float(x_span[0]), float(x_span[1])
    t0, t1 = float(t_span[0]), float(t_span[1])
    smooth = constants.c * integrate_rect(
        lambda X, T: config.ex(X, 0.0, T),
        (x0, x1), (t0, t1), spec,
        x_breaks=config.breaks_x(y=0.0),
        y_breaks=config.breaks_t(),
    )
    return smooth - config.enclosed_xt_flux((x0, x1), (t0, t1))


def _xt_problem(config: FieldConfig, spec: QuadratureSpec,
                constants: PhysicalConstants) -> PlaneProblem:
    c = constants.c

    def pot_u(a, b, tv):
        return integrate_1d(lambda X: config.ax(X, 0.0, tv), a, b, spec,
                            config.breaks_x(y=0.0, t=tv))

    def pot_v(a, b, xv):
        return -c * integrate_1d(lambda T: config.phi(xv, 0.0, T), a, b, spec,
                                 config.breaks_t(x=xv, y=0.0))

    return PlaneProblem(
        pot_u=pot_u,
        pot_v=pot_v,
        flux=lambda ua, ub, va, vb: spacetime_flux_integral(
            config, (ua, ub), (va, vb), spec, constants),
        field=lambda xv, tv: float(config.ex(np.asarray(xv), np.asarray(0.0),
                                             np.asarray(tv))),
        u_name="x", v_name="t",
    )


def electric_ab_multiplicities(config: FieldConfig,
                               frame: SpacetimeFrame) -> ElectricMultiplicities:
    """tau(t0) = +enclosed spacetime flux, chi(x0) = -enclosed flux."""
    x0, t0, x, t, _, _ = frame.resolved()
    if not config.spacetime_multiple_connected:
        return ElectricMultiplicities()
    enclosed = config.enclosed_xt_flux((x0, x), (t0, t))
    return ElectricMultiplicities(tau_t0=+enclosed, chi_x0=-enclosed)


def lambda3_dynamic(config: FieldConfig, frame: SpacetimeFrame,
                    spec: QuadratureSpec | None = None, *,
                    constants: PhysicalConstants = DEFAULT_CONSTANTS,
                    include_multiplicities: bool = True,
                    validate: bool = True,
                    field_tol: float = FIELD_TOL) -> GaugeSolution:
    """First spacetime path solution (+c*int int E nonlocal term, g(x))."""
    spec = spec or DEFAULT_SPEC
    x0, t0, x, t, xr, tr = frame.resolved()
    mult = (electric_ab_multiplicities(config, frame).tau_t0
            if include_multiplicities else 0.0)
    return solve_branch(_xt_problem(config, spec, constants), 1, frame.lambda0,
                        x0, t0, x, t, xr, tr, mult,
                        branch_name="lambda3", sense="clockwise",
                        field_tol=field_tol, validate=validate)


def lambda4_dynamic(config: FieldConfig, frame: SpacetimeFrame,
                    spec: QuadratureSpec | None = None, *,
                    constants: PhysicalConstants = DEFAULT_CONSTANTS,
                    include_multiplicities: bool = True,
                    validate: bool = True,
                    field_tol: float = FIELD_TOL) -> GaugeSolution:
    """Second spacetime path solution (-c*int int E term, g_hat(t))."""
    spec = spec or DEFAULT_SPEC
    x0, t0, x, t, xr, tr = frame.resolved()
    mult = (electric_ab_multiplicities(config, frame).chi_x0
            if include_multiplicities else 0.0)
    return solve_branch(_xt_problem(config, spec, constants), 2, frame.lambda0,
                        x0, t0, x, t, xr, tr, mult,
                        branch_name="lambda4", sense="counterclockwise",
                        field_tol=field_tol, validate=validate)


def lambda_naive(config: FieldConfig, frame: SpacetimeFrame,
                 spec: QuadratureSpec | None = None, *,
                 constants: PhysicalConstants = DEFAULT_CONSTANTS,
                 variant: str = "observation",
                 validate: bool = True) -> GaugeSolution:
    """The literature's combined-potential formula; incorrect in general.

    ``variant="observation"`` integrates A at the observation time and
    phi at the observation abscissa; ``variant="initial"`` pins both to
    the initial event instead.  Neither has nonlocal or gauge-fix parts,
    and neither solves the defining system once A depends on t or phi on
    x.  No preconditions are enforced (``validate`` is accepted for
    signature compatibility and ignored).
    """
    spec = spec or DEFAULT_SPEC
    x0, t0, x, t, _, _ = frame.resolved()
    c = constants.c
    if variant == "observation":
        a_time, phi_abscissa = t, x
    elif variant == "initial":
        a_time, phi_abscissa = t0, x0
    else:
        raise ValueError("variant must be 'observation' or 'initial'")
    a_part = integrate_1d(lambda X: config.ax(X, 0.0, a_time), x0, x, spec,
                          config.breaks_x(y=0.0, t=a_time))
    phi_part = -c * integrate_1d(lambda T: config.phi(phi_abscissa, 0.0, T),
                                 t0, t, spec, config.breaks_t(x=phi_abscissa, y=0.0))
    name = "naive" if variant == "observation" else "naive-initial"
    return GaugeSolution.assemble(frame.lambda0, a_part + phi_part, 0.0, 0.0, 0.0,
                                  branch=name, sense="disconnected")


def verify_xt_system(config: FieldConfig, frame: SpacetimeFrame,
                     solution_fn: Callable, step: float = 1e-4, tol: float = 1e-6,
                     spec: QuadratureSpec | None = None,
                     constants: PhysicalConstants = DEFAULT_CONSTANTS,
                     **solver_kwargs) -> ResidualReport:
    """Central-difference residuals of dLambda/dx = A and -(1/c)dLambda/dt = phi."""
    x0, t0, x, t, xr, tr = frame.resolved()
    c = constants.c

    def value(px, pt):
        shifted = SpacetimeFrame(p0=(x0, t0), p=(px, pt), t_ref=tr, x_ref=xr,
                                 lambda0=frame.lambda0)
        return solution_fn(config, shifted, spec, constants=constants,
                           validate=False, **solver_kwargs).lambda_value

    dl_dx = (value(x + step, t) - value(x - step, t)) / (2.0 * step)
    dl_dt = (value(x, t + step) - value(x, t - step)) / (2.0 * step)
    a = float(config.ax(np.asarray(x), np.asarray(0.0), np.asarray(t)))
    phi = float(config.phi(np.asarray(x), np.asarray(0.0), np.asarray(t)))
    residuals = {"x": dl_dx - a, "t": -dl_dt / c - phi}
    passed = all(abs(v) <= tol for v in residuals.values())
    return ResidualReport(residuals=residuals, tol=tol, passed=passed,
                          point=(x, t), branch=getattr(solution_fn, "__name__", ""))


def cancellation_check_xt(config: FieldConfig, frame: SpacetimeFrame,
                          spec: QuadratureSpec | None = None, *,
                          constants: PhysicalConstants = DEFAULT_CONSTANTS,
                          include_multiplicities: bool = False) -> float:
    """Difference lambda3 - lambda4 (zero in simple-connected spacetime)."""
    s3 = lambda3_dynamic(config, frame, spec, constants=constants,
                         include_multiplicities=include_multiplicities)
    s4 = lambda4_dynamic(config, frame, spec, constants=constants,
                         include_multiplicities=include_multiplicities)
    return s3.lambda_value - s4.lambda_value
