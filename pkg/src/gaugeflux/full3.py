"""Full Lambda(x, y, t) solver: four solution variants plus the causality sweep.

The three-equation system (dLambda/dx = A_x, dLambda/dy = A_y,
-(1/c) dLambda/dt = phi) admits families of solutions indexed by the
integration route.  The four printed forms are implemented:

    full1: counterclockwise A-path, -B_z flux at time t,   E-path clockwise
    full2: counterclockwise A-path, -B_z flux at time t0,  E-path counterclockwise
    full4: clockwise A-path,        +B_z flux at time t,   E-path counterclockwise
    fin:   clockwise A-path,        +B_z flux at time t0,  E-path clockwise

Within ``full2`` and ``fin`` the E-segment placement matches the A-path
(same sense), which is what makes their difference a pair of closed loop
integrals: Delta = loop(A at t) + c * time-integral of loop(E).  For a
confined time-dependent flux observed before light can reach the loop,
that difference is the flux at the initial instant - the causal value -
rather than the instantaneous one (``van_kampen_delta``).

Condition functions G(y, t0) / G_hat(x, t0) / F(x, y) default to zero
and are always validated by sampling; constructed defaults based on the
frame's reference coordinates are available for static-limit work.
Multiplicity constants at t0 cancel the B_z(t0) flux terms exactly as in
the static multiple-connected case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DecompositionUnsupportedError, FieldAtObservationError
from .fields import DEFAULT_CONSTANTS, FieldConfig, PhysicalConstants
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_1d
from .solution import GaugeSolution, ResidualReport
from .static2d import rect_flux

__all__ = [
    "Frame3",
    "ConditionSet",
    "Ledger3",
    "VARIANTS",
    "conditions_from_references",
    "flux_ledger",
    "lambda_full",
    "van_kampen_delta",
    "verify_full_system",
    "loop_a_integral",
    "loop_e_time_integral",
]

FIELD_TOL = 1e-6
N_SAMPLES = 9

VARIANTS = ("full1", "full2", "full4", "fin")

# per-variant geometry: A-path sense, B_z evaluation time, E-path sense
_VARIANT_TABLE = {
    "full1": {"a_sense": "ccw", "b_at_t0": False, "b_sign": -1.0, "e_sense": "cw"},
    "full2": {"a_sense": "ccw", "b_at_t0": True, "b_sign": -1.0, "e_sense": "ccw"},
    "full4": {"a_sense": "cw", "b_at_t0": False, "b_sign": +1.0, "e_sense": "ccw"},
    "fin": {"a_sense": "cw", "b_at_t0": True, "b_sign": +1.0, "e_sense": "cw"},
}


@dataclass(frozen=True)
class Frame3:
    """Initial event, observation event and reference coordinates."""

    p0: tuple[float, float, float]
    p: tuple[float, float, float]
    x_ref: float | None = None
    y_ref: float | None = None
    t_ref: float | None = None
    lambda0: float = 0.0

    def resolved(self):
        x0, y0, t0 = self.p0
        x, y, t = self.p
        xr = self.x_ref if self.x_ref is not None else x
        yr = self.y_ref if self.y_ref is not None else y0
        tr = self.t_ref if self.t_ref is not None else t0
        return (float(x0), float(y0), float(t0), float(x), float(y), float(t),
                float(xr), float(yr), float(tr))


@dataclass(frozen=True)
class ConditionSet:
    """User-supplied condition functions (None means identically zero)."""

    G_y_t0: Callable[[float], float] | None = None
    G_hat_x_t0: Callable[[float], float] | None = None
    F_x_y: Callable[[float, float], float] | None = None

    @classmethod
    def zeros(cls) -> "ConditionSet":
        return cls()

    def g(self, y: float) -> float:
        return float(self.G_y_t0(y)) if self.G_y_t0 is not None else 0.0

    def g_hat(self, x: float) -> float:
        return float(self.G_hat_x_t0(x)) if self.G_hat_x_t0 is not None else 0.0

    def f(self, x: float, y: float) -> float:
        return float(self.F_x_y(x, y)) if self.F_x_y is not None else 0.0


@dataclass(frozen=True)
class Ledger3:
    """Multiplicity constants at the initial instant."""

    f_x0_t0: float = 0.0
    h_hat_y0_t0: float = 0.0


def flux_ledger(config: FieldConfig, frame: Frame3,
                spec: QuadratureSpec | None = None) -> Ledger3:
    """Constants cancelling the B_z(t0) flux terms for a confined flux.

    Zero for simple-connected spacetime.  For a declared flux line inside
    the observation rectangle the constants equal plus/minus the flux at
    t0 (well defined because the profile is constant before t0).
    """
    x0, y0, t0, x, y, _, _, _, _ = frame.resolved()
    if not config.multiple_connected:
        return Ledger3()
    enclosed = config.enclosed_point_flux((x0, x), (y0, y), t0)
    return Ledger3(f_x0_t0=+enclosed, h_hat_y0_t0=-enclosed)


def conditions_from_references(config: FieldConfig, frame: Frame3,
                               spec: QuadratureSpec | None = None) -> ConditionSet:
    """Constructed G / G_hat mirroring the static gauge-fix functions.

    G(y) is the h(y)-style construction at t0 anchored at (x_ref, y_ref);
    G_hat(x) the g(x)-style one.  F stays zero (suitable whenever the
    E-field double integrals are independent of the observation
    coordinates, e.g. static limits and causal confined-flux frames).
    """
    spec = spec or DEFAULT_SPEC
    x0, y0, t0, x, y, t, xr, yr, tr = frame.resolved()

    def G(yv: float) -> float:
        return (rect_flux(config, (x0, xr), (y0, yv), t0, spec)
                - rect_flux(config, (x0, xr), (y0, yr), t0, spec))

    def G_hat(xv: float) -> float:
        return -(rect_flux(config, (x0, xv), (y0, yr), t0, spec)
                 - rect_flux(config, (x0, x0), (y0, yr), t0, spec))

    return ConditionSet(G_y_t0=G, G_hat_x_t0=G_hat, F_x_y=None)


def _samples(a: float, b: float) -> np.ndarray:
    if a == b:
        return np.array([a])
    return np.linspace(min(a, b), max(a, b), N_SAMPLES)


def _e_segment_time_integral(config: FieldConfig, component: str,
                             span, fixed: float, t0: float, t: float,
                             c: float, spec: QuadratureSpec) -> float:
    """c * int_{t0}^{t} dt' of the E-component line integral along a segment.

    ``component`` is "x" (integrate E_x over x' at row y=fixed) or "y"
    (integrate E_y over y' at column x=fixed).  Iterated with time inner:
    at a fixed segment point the time integrand is piecewise smooth with
    known breaks (a light-cone crossing is a single jump in time, whereas
    the cone sweeping across the segment would put square-root kinks into
    a time-outer integrand).
    """
    a, b = float(span[0]), float(span[1])
    if a == b or t0 == t:
        return 0.0

    if component == "x":
        def inner(s: float) -> float:
            return integrate_1d(lambda T: config.ex(s, fixed, T), t0, t, spec,
                                config.breaks_t(x=s, y=fixed))
        seg_breaks = list(config.breaks_x(y=fixed, t=t))
    elif component == "y":
        def inner(s: float) -> float:
            return integrate_1d(lambda T: config.ey(fixed, s, T), t0, t, spec,
                                config.breaks_t(x=fixed, y=s))
        seg_breaks = list(config.breaks_y(x=fixed, t=t))
    else:
        raise ValueError("component must be 'x' or 'y'")

    if config.retarded is not None:
        # distance-to-center kink at the closest approach
        cx, cy = config.retarded.center
        seg_breaks.append(cx if component == "x" else cy)

    def outer(sv: np.ndarray) -> np.ndarray:
        sv = np.atleast_1d(np.asarray(sv, dtype=float))
        return np.array([inner(float(s)) for s in sv])

    return c * integrate_1d(outer, a, b, spec, seg_breaks)


def _validate_event(config: FieldConfig, x: float, y: float, t: float,
                    field_tol: float) -> None:
    bz = float(config.bz(np.asarray(x), np.asarray(y), np.asarray(t)))
    ex = float(config.ex(np.asarray(x), np.asarray(y), np.asarray(t)))
    ey = float(config.ey(np.asarray(x), np.asarray(y), np.asarray(t)))
    worst = max(abs(bz), abs(ex), abs(ey))
    if not worst <= field_tol:
        raise FieldAtObservationError(
            f"field difference {worst:.3e} at observation event "
            f"(x={x:g}, y={y:g}, t={t:g}) exceeds {field_tol:g}",
            point=(x, y, t), value=worst)


def _validate_conditions(config: FieldConfig, frame: Frame3, variant: str,
                         conditions: ConditionSet, c: float,
                         spec: QuadratureSpec, tol: float) -> None:
    """Sampled independence checks for the chosen condition functions."""
    x0, y0, t0, x, y, t, xr, yr, tr = frame.resolved()
    geo = _VARIANT_TABLE[variant]

    if geo["a_sense"] == "ccw":
        vals = [conditions.g(float(yv))
                - rect_flux(config, (x0, x), (y0, float(yv)), t0, spec)
                for yv in _samples(yr, y)]
        label, coords = "G(y, t0)", _samples(yr, y)
    else:
        vals = [conditions.g_hat(float(xv))
                + rect_flux(config, (x0, float(xv)), (y0, y), t0, spec)
                for xv in _samples(xr, x)]
        label, coords = "G_hat(x, t0)", _samples(xr, x)
    spread = max(vals) - min(vals)
    if not spread <= tol:
        worst = coords[int(np.argmax(np.abs(np.asarray(vals) - vals[0])))]
        raise DecompositionUnsupportedError(
            f"condition on {label} violated: bracket varies by {spread:.3e} "
            f"(> {tol:g}), e.g. near coordinate {worst:g}",
            coordinate=float(worst), value=spread)

    f_vals = [conditions.f(float(xv), y)
              + _e_segment_time_integral(config, "x", (x0, float(xv)), y,
                                         t0, t, c, spec)
              for xv in _samples(xr, x)]
    spread = max(f_vals) - min(f_vals)
    if not spread <= tol:
        worst = _samples(xr, x)[int(np.argmax(np.abs(np.asarray(f_vals) - f_vals[0])))]
        raise DecompositionUnsupportedError(
            f"condition on F(x, y) violated along x: bracket varies by "
            f"{spread:.3e} (> {tol:g}), e.g. near x={worst:g}",
            coordinate=float(worst), value=spread)

    f_vals = [conditions.f(x, float(yv))
              + _e_segment_time_integral(config, "y", (y0, float(yv)), x,
                                         t0, t, c, spec)
              for yv in _samples(yr, y)]
    spread = max(f_vals) - min(f_vals)
    if not spread <= tol:
        worst = _samples(yr, y)[int(np.argmax(np.abs(np.asarray(f_vals) - f_vals[0])))]
        raise DecompositionUnsupportedError(
            f"condition on F(x, y) violated along y: bracket varies by "
            f"{spread:.3e} (> {tol:g}), e.g. near y={worst:g}",
            coordinate=float(worst), value=spread)


def lambda_full(config: FieldConfig, frame: Frame3, variant: str,
                conditions: ConditionSet | None = None,
                spec: QuadratureSpec | None = None, *,
                constants: PhysicalConstants = DEFAULT_CONSTANTS,
                include_multiplicities: bool = True,
                validate: bool = True,
                field_tol: float = FIELD_TOL) -> GaugeSolution:
    """One of the four printed solutions of the full three-variable system."""
    if variant not in _VARIANT_TABLE:
        raise ValueError(f"variant must be one of {VARIANTS}")
    spec = spec or DEFAULT_SPEC
    conditions = conditions or ConditionSet.zeros()
    geo = _VARIANT_TABLE[variant]
    c = constants.c
    x0, y0, t0, x, y, t, xr, yr, tr = frame.resolved()

    if validate:
        _validate_event(config, x, y, t, field_tol)
        _validate_conditions(config, frame, variant, conditions, c, spec, field_tol)

    if geo["a_sense"] == "ccw":
        a_row, a_col = y0, x        # A_x along the y0 row, A_y up the x column
    else:
        a_row, a_col = y, x0
    a_part = (integrate_1d(lambda X: config.ax(X, a_row, t), x0, x, spec,
                           config.breaks_x(y=a_row, t=t))
              + integrate_1d(lambda Y: config.ay(a_col, Y, t), y0, y, spec,
                             config.breaks_y(x=a_col, t=t)))

    phi_part = -c * integrate_1d(lambda T: config.phi(x0, y0, T), t0, t, spec,
                                 config.breaks_t(x=x0, y=y0))

    b_time = t0 if geo["b_at_t0"] else t
    b_part = geo["b_sign"] * rect_flux(config, (x0, x), (y0, y), b_time, spec)

    if geo["e_sense"] == "ccw":
        e_row, e_col = y0, x
    else:
        e_row, e_col = y, x0
    e_part = (_e_segment_time_integral(config, "x", (x0, x), e_row, t0, t, c, spec)
              + _e_segment_time_integral(config, "y", (y0, y), e_col, t0, t, c, spec))

    if geo["a_sense"] == "ccw":
        cond_part = conditions.g(y) + conditions.f(x, y)
    else:
        cond_part = conditions.g_hat(x) + conditions.f(x, y)

    ledger = flux_ledger(config, frame, spec) if include_multiplicities else Ledger3()
    mult = ledger.f_x0_t0 if geo["a_sense"] == "ccw" else ledger.h_hat_y0_t0

    return GaugeSolution.assemble(
        frame.lambda0,
        a_part + phi_part,
        b_part + e_part,
        cond_part,
        mult,
        branch=variant,
        sense=geo["a_sense"],
        extras={
            "a_part": a_part, "phi_part": phi_part, "b_part": b_part,
            "e_part": e_part, "a_sense": geo["a_sense"], "e_sense": geo["e_sense"],
            "b_at_t0": geo["b_at_t0"],
        },
    )


def van_kampen_delta(config: FieldConfig, frame: Frame3,
                     spec: QuadratureSpec | None = None, *,
                     constants: PhysicalConstants = DEFAULT_CONSTANTS,
                     validate: bool = True,
                     field_tol: float = FIELD_TOL) -> float:
    """Phase difference full2 - fin for a confined time-dependent flux.

    Equals the closed A-loop integral at time t plus c times the
    time-integrated closed E-loop integral around the observation
    rectangle; when no light from the flux change has reached the
    E-carrying sides of the rectangle, the result is the flux at t0.
    Requires the temporal gauge (phi identically zero).
    """
    spec = spec or DEFAULT_SPEC
    x0, y0, t0, x, y, t, _, _, _ = frame.resolved()
    phis = [abs(float(config.phi(np.asarray(px), np.asarray(py), np.asarray(tv))))
            for px in (x0, x) for py in (y0, y) for tv in (t0, t)]
    if max(phis) > field_tol:
        raise FieldAtObservationError(
            "van Kampen scenario requires the temporal gauge (phi = 0)",
            point=(x, y, t), value=max(phis))
    zeros = ConditionSet.zeros()
    s2 = lambda_full(config, frame, "full2", zeros, spec, constants=constants,
                     validate=validate, field_tol=field_tol)
    sf = lambda_full(config, frame, "fin", zeros, spec, constants=constants,
                     validate=False, field_tol=field_tol)
    return s2.lambda_value - sf.lambda_value


def loop_a_integral(config: FieldConfig, frame: Frame3, t: float,
                    spec: QuadratureSpec | None = None) -> float:
    """Closed counterclockwise A-loop around the observation rectangle."""
    spec = spec or DEFAULT_SPEC
    x0, y0, _, x, y, _, _, _, _ = frame.resolved()

    def seg_x(row: float) -> float:
        return integrate_1d(lambda X: config.ax(X, row, t), x0, x, spec,
                            config.breaks_x(y=row, t=t))

    def seg_y(col: float) -> float:
        return integrate_1d(lambda Y: config.ay(col, Y, t), y0, y, spec,
                            config.breaks_y(x=col, t=t))

    return seg_x(y0) + seg_y(x) - seg_x(y) - seg_y(x0)


def loop_e_time_integral(config: FieldConfig, frame: Frame3,
                         spec: QuadratureSpec | None = None, *,
                         constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """c * int_{t0}^{t} of the closed counterclockwise E-loop integral."""
    spec = spec or DEFAULT_SPEC
    x0, y0, t0, x, y, t, _, _, _ = frame.resolved()
    c = constants.c
    return (
        _e_segment_time_integral(config, "x", (x0, x), y0, t0, t, c, spec)
        + _e_segment_time_integral(config, "y", (y0, y), x, t0, t, c, spec)
        - _e_segment_time_integral(config, "x", (x0, x), y, t0, t, c, spec)
        - _e_segment_time_integral(config, "y", (y0, y), x0, t0, t, c, spec)
    )


def verify_full_system(config: FieldConfig, frame: Frame3, variant: str,
                       step: float = 1e-4, tol: float = 1e-6,
                       conditions: ConditionSet | None = None,
                       spec: QuadratureSpec | None = None,
                       constants: PhysicalConstants = DEFAULT_CONSTANTS) -> ResidualReport:
    """Three-component residual check of the full system at the observation event."""
    x0, y0, t0, x, y, t, xr, yr, tr = frame.resolved()
    c = constants.c

    def value(px, py, pt):
        shifted = Frame3(p0=(x0, y0, t0), p=(px, py, pt), x_ref=xr, y_ref=yr,
                         t_ref=tr, lambda0=frame.lambda0)
        return lambda_full(config, shifted, variant, conditions, spec,
                           constants=constants, validate=False).lambda_value

    dl_dx = (value(x + step, y, t) - value(x - step, y, t)) / (2.0 * step)
    dl_dy = (value(x, y + step, t) - value(x, y - step, t)) / (2.0 * step)
    dl_dt = (value(x, y, t + step) - value(x, y, t - step)) / (2.0 * step)
    ax = float(config.ax(np.asarray(x), np.asarray(y), np.asarray(t)))
    ay = float(config.ay(np.asarray(x), np.asarray(y), np.asarray(t)))
    phi = float(config.phi(np.asarray(x), np.asarray(y), np.asarray(t)))
    residuals = {"x": dl_dx - ax, "y": dl_dy - ay, "t": -dl_dt / c - phi}
    passed = all(abs(v) <= tol for v in residuals.values())
    return ResidualReport(residuals=residuals, tol=tol, passed=passed,
                          point=(x, y, t), branch=variant)
