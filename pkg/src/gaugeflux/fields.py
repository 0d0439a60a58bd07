"""Electromagnetic field-difference configurations.

A :class:`FieldConfig` bundles the six evaluators describing the
*difference* between two mapped systems: vector potential components
``A_x, A_y``, scalar potential ``phi``, perpendicular magnetic field
``B_z`` and in-plane electric field ``E_x, E_y``.  All evaluators take
``(x, y, t)`` (numpy-broadcastable) and are pure, so they are safe for
concurrent use.  One-dimensional spacetime solvers simply freeze ``y=0``
and read ``A_x``/``E_x``.

The defining relations

    B_z = dA_y/dx - dA_x/dy        E = -grad(phi) - (1/c) dA/dt

are checkable by finite differences via :func:`check_consistency`.

Built-in configurations fix a documented gauge each so that outputs are
reproducible: strips use a Landau-type gauge, the capacitor a pure
scalar-potential gauge, the duration field a pure vector-potential gauge,
and circular sources a symmetric azimuthal gauge.  The time-dependent
confined flux uses the sharp-front azimuthal potential
``A_phi(r, t) = Phi(t - r/c) / (2 pi r)``, which satisfies Faraday's law
exactly and vanishes outside the light cone; no claim is made about
Ampere-law compliance of a finite solenoid.

Idealized point fluxes (Aharonov-Bohm solenoids and their spacetime
analog) are *declared* rather than resolved by the evaluators: ``B_z``
returns zero while ``flux_value``/``xt_flux_value`` carry the enclosed
flux for the multiplicity ledgers and rectangle-flux bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .errors import EvaluatorError, GridFormatError, SingularPointError

__all__ = [
    "PhysicalConstants",
    "Rect",
    "FieldConfig",
    "FluxProfile",
    "ConsistencyReport",
    "check_consistency",
    "retarded_flux_fields",
    "zero_config",
    "vertical_strip",
    "horizontal_strip",
    "triangle",
    "solenoid_flux",
    "capacitor_1d",
    "retarded_flux",
    "circular_blob",
    "spacetime_flux",
    "load_grid_config",
    "builtin_configs",
    "make_config",
]

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class PhysicalConstants:
    """Unit system: Gaussian-style with an explicit speed of light.

    Gauge-function values carry flux units; multiplying by
    ``q_over_hbar_c`` turns them into phases.  ``flux_quantum`` (hc/e) is
    used only by the semiclassical fringe module.
    """

    c: float = 1.0
    q_over_hbar_c: float = 1.0
    flux_quantum: float = 1.0

    def __post_init__(self):
        if self.c <= 0.0:
            raise ValueError("c must be positive")
        if self.flux_quantum <= 0.0:
            raise ValueError("flux_quantum must be positive")

    def phase(self, lambda_value: float) -> float:
        """Phase angle (radians) carried by a gauge-function value."""
        return self.q_over_hbar_c * lambda_value


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class Rect:
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def contains(self, x: float, y: float) -> bool:
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi


def _zero(x, y, t):
    return np.zeros(np.broadcast(x, y, t).shape)


@dataclass(frozen=True)
class FluxProfile:
    """Confined flux history Phi(t); constant (= phi0) before onset."""

    phi0: float
    rate: float = 0.0
    onset: float = 0.0

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return self.phi0 + self.rate * np.maximum(t - self.onset, 0.0)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t > self.onset, self.rate, 0.0)


@dataclass(frozen=True)
class Retarded:
    """Sharp-front retarded source descriptor: center, onset, c, profile."""

    center: tuple[float, float]
    profile: FluxProfile
    c: float = 1.0

    def cone_radius(self, t: float) -> float:
        return self.c * max(t - self.profile.onset, 0.0)


def _circle_row_crossings(cx: float, cy: float, radius: float, y: float) -> tuple[float, ...]:
    if radius <= 0.0:
        return ()
    dy = y - cy
    if abs(dy) >= radius:
        return ()
    h = math.sqrt(radius * radius - dy * dy)
    return (cx - h, cx + h)


def _circle_span_kinks(c_par: float, c_perp: float, radius: float,
                       lo: float, hi: float) -> tuple[float, ...]:
    """Outer-coordinate values where a circle's row overlap with [lo, hi] kinks.

    ``c_par`` is the circle center along the inner axis, ``c_perp`` along
    the outer axis.
    """
    if radius <= 0.0:
        return ()
    out = [c_perp - radius, c_perp + radius]
    for s in (lo, hi):
        d = abs(s - c_par)
        if d < radius:
            h = math.sqrt(radius * radius - d * d)
            out.extend((c_perp - h, c_perp + h))
    return tuple(out)


@dataclass(frozen=True)
class FieldConfig:
    """Evaluators plus quadrature metadata for one field-difference setup."""

    name: str
    kind: str  # "analytic" | "tabulated-grid"
    ax: Callable
    ay: Callable
    phi: Callable
    bz: Callable
    ex: Callable
    ey: Callable
    support: Rect | None = None
    potentials_confined: bool = False
    x_breaks: tuple[float, ...] = ()
    y_breaks: tuple[float, ...] = ()
    t_breaks: tuple[float, ...] = ()
    # movable discontinuity curves (spatial shapes, light cones)
    row_edges: Callable[[float], Sequence[float]] | None = None      # y -> x-breaks
    col_edges: Callable[[float], Sequence[float]] | None = None      # x -> y-breaks
    row_kink_ys: Callable[[float, float], Sequence[float]] | None = None  # (x0,x1) -> y kinks
    polar_rho_breaks: Callable[[float], Sequence[float]] | None = None    # phi -> rho-breaks
    polar_phi_kinks: tuple[float, ...] = ()
    # declared (inaccessible) fluxes
    multiple_connected: bool = False
    flux_center: tuple[float, float] | None = None
    flux_value: Callable[[float], float] | None = None               # t -> flux
    spacetime_multiple_connected: bool = False
    xt_flux_center: tuple[float, float] | None = None                # (x, t)
    xt_flux_value: float = 0.0
    retarded: Retarded | None = None
    params: dict = field(default_factory=dict)

    # -- breakpoint assembly ------------------------------------------------

    def breaks_x(self, y: float | None = None, t: float | None = None) -> tuple[float, ...]:
        out = list(self.x_breaks)
        if self.row_edges is not None and y is not None:
            out.extend(self.row_edges(y))
        if self.retarded is not None and y is not None and t is not None:
            cx, cy = self.retarded.center
            out.extend(_circle_row_crossings(cx, cy, self.retarded.cone_radius(t), y))
        return tuple(out)

    def breaks_y(self, x: float | None = None, t: float | None = None) -> tuple[float, ...]:
        out = list(self.y_breaks)
        if self.col_edges is not None and x is not None:
            out.extend(self.col_edges(x))
        if self.retarded is not None and x is not None and t is not None:
            cx, cy = self.retarded.center
            out.extend(_circle_row_crossings(cy, cx, self.retarded.cone_radius(t), x))
        return tuple(out)

    def breaks_t(self, x: float | None = None, y: float | None = None) -> tuple[float, ...]:
        out = list(self.t_breaks)
        if self.retarded is not None and x is not None and y is not None:
            cx, cy = self.retarded.center
            r = math.hypot(x - cx, y - cy)
            out.append(self.retarded.profile.onset + r / self.retarded.c)
        return tuple(out)

    def rect_kinks_y(self, x_lo: float, x_hi: float, t: float | None = None) -> tuple[float, ...]:
        """Outer (y) breakpoints for a rectangle flux over [x_lo, x_hi]."""
        out = list(self.y_breaks)
        if self.row_kink_ys is not None:
            out.extend(self.row_kink_ys(x_lo, x_hi))
        if self.retarded is not None and t is not None:
            cx, cy = self.retarded.center
            out.extend(_circle_span_kinks(cx, cy, self.retarded.cone_radius(t), x_lo, x_hi))
        return tuple(out)

    # -- declared point fluxes ----------------------------------------------

    def enclosed_point_flux(self, x_span, y_span, t: float) -> float:
        """Declared magnetic point flux inside the oriented rectangle."""
        if self.flux_center is None or self.flux_value is None:
            return 0.0
        cx, cy = self.flux_center
        x0, x1 = x_span
        y0, y1 = y_span
        if min(x0, x1) < cx < max(x0, x1) and min(y0, y1) < cy < max(y0, y1):
            sign = (1.0 if x1 > x0 else -1.0) * (1.0 if y1 > y0 else -1.0)
            return sign * float(self.flux_value(t))
        return 0.0

    def enclosed_xt_flux(self, x_span, t_span) -> float:
        """Declared spacetime flux (tau-oriented) inside the oriented rectangle."""
        if self.xt_flux_center is None:
            return 0.0
        cx, ct = self.xt_flux_center
        x0, x1 = x_span
        t0, t1 = t_span
        if min(x0, x1) < cx < max(x0, x1) and min(t0, t1) < ct < max(t0, t1):
            sign = (1.0 if x1 > x0 else -1.0) * (1.0 if t1 > t0 else -1.0)
            return sign * self.xt_flux_value
        return 0.0


# -- consistency checking -----------------------------------------------------


@dataclass(frozen=True)
class ConsistencyReport:
    passed: bool
    max_curl_residual: float
    max_electric_residual: float
    tol: float
    n_samples: int
    worst_point: tuple[float, float, float]

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        return (f"consistency {status}: |B - curl A| <= {self.max_curl_residual:.3e}, "
                f"|E + grad phi + (1/c) dA/dt| <= {self.max_electric_residual:.3e} "
                f"(tol {self.tol:g}, {self.n_samples} samples)")


def _sample_axis(lo: float, hi: float, n: int) -> np.ndarray:
    # interior samples; endpoints often sit on support edges
    return lo + (hi - lo) * (np.arange(n) + 0.5) / n


def check_consistency(
    config: FieldConfig,
    region: Rect | tuple[float, float, float, float],
    samples: int = 10,
    tol: float = 1e-6,
    *,
    times: Sequence[float] = (0.0,),
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
    collar: float = 1e-3,
) -> ConsistencyReport:
    """Finite-difference check of the defining field/potential relations.

    Samples a ``samples x samples`` grid over ``region`` at each time in
    ``times``, excluding a collar (fraction of the region size) around
    declared discontinuity curves.  The difference step is kept well
    below the collar so no stencil straddles a discontinuity.
    """
    if samples < 4:
        raise ValueError("samples must be >= 4")
    if isinstance(region, tuple):
        region = Rect(*region)
    span = max(region.x_hi - region.x_lo, region.y_hi - region.y_lo)
    if span <= 0.0:
        raise ValueError("region must have positive extent")
    h = span * min(1e-5, collar / 4.0)
    guard = collar * span

    xs = _sample_axis(region.x_lo, region.x_hi, samples)
    ys = _sample_axis(region.y_lo, region.y_hi, samples)

    max_curl = 0.0
    max_elec = 0.0
    worst = (xs[0], ys[0], float(times[0]))
    n_used = 0
    c = constants.c

    def ev(fn, X, Y, T):
        try:
            return np.asarray(fn(X, Y, T), dtype=float)
        except Exception as exc:  # pinpoint the offending coordinate
            Xa, Ya, Ta = np.broadcast_arrays(np.asarray(X, float), np.asarray(Y, float),
                                             np.asarray(T, float))
            for xi, yi, ti in zip(Xa.ravel(), Ya.ravel(), Ta.ravel()):
                try:
                    fn(np.asarray(xi), np.asarray(yi), np.asarray(ti))
                except Exception:
                    raise EvaluatorError(
                        f"evaluator failed at (x={xi:g}, y={yi:g}, t={ti:g}): {exc}",
                        point=(float(xi), float(yi), float(ti)),
                    ) from exc
            raise EvaluatorError(f"evaluator failed on batch: {exc}") from exc

    for t in times:
        t = float(t)
        X, Y = np.meshgrid(xs, ys)
        keep = np.ones_like(X, dtype=bool)
        for xb in config.breaks_x(t=t):
            keep &= np.abs(X - xb) > guard
        for yb in config.breaks_y(t=t):
            keep &= np.abs(Y - yb) > guard
        if config.row_edges is not None:
            for i in range(X.shape[0]):
                for xb in config.row_edges(float(Y[i, 0])):
                    keep[i] &= np.abs(X[i] - xb) > guard
        if config.col_edges is not None:
            for j in range(X.shape[1]):
                for yb in config.col_edges(float(X[0, j])):
                    keep[:, j] &= np.abs(Y[:, j] - yb) > guard
        if config.retarded is not None:
            cx, cy = config.retarded.center
            R = np.hypot(X - cx, Y - cy)
            keep &= np.abs(R - config.retarded.cone_radius(t)) > guard
            keep &= R > guard  # singular core
        if config.flux_center is not None:
            cx, cy = config.flux_center
            keep &= np.hypot(X - cx, Y - cy) > guard
        for tb in config.breaks_t():
            if abs(t - tb) <= guard:
                keep &= False
        Xk, Yk = X[keep], Y[keep]
        if Xk.size == 0:
            continue
        n_used += Xk.size
        T = np.full_like(Xk, t)

        day_dx = (ev(config.ay, Xk + h, Yk, T) - ev(config.ay, Xk - h, Yk, T)) / (2 * h)
        dax_dy = (ev(config.ax, Xk, Yk + h, T) - ev(config.ax, Xk, Yk - h, T)) / (2 * h)
        curl_res = np.abs(ev(config.bz, Xk, Yk, T) - (day_dx - dax_dy))

        dphi_dx = (ev(config.phi, Xk + h, Yk, T) - ev(config.phi, Xk - h, Yk, T)) / (2 * h)
        dphi_dy = (ev(config.phi, Xk, Yk + h, T) - ev(config.phi, Xk, Yk - h, T)) / (2 * h)
        dax_dt = (ev(config.ax, Xk, Yk, T + h) - ev(config.ax, Xk, Yk, T - h)) / (2 * h)
        day_dt = (ev(config.ay, Xk, Yk, T + h) - ev(config.ay, Xk, Yk, T - h)) / (2 * h)
        ex_res = np.abs(ev(config.ex, Xk, Yk, T) + dphi_dx + dax_dt / c)
        ey_res = np.abs(ev(config.ey, Xk, Yk, T) + dphi_dy + day_dt / c)
        elec_res = np.maximum(ex_res, ey_res)

        i_curl = int(np.argmax(curl_res))
        if curl_res[i_curl] > max_curl:
            max_curl = float(curl_res[i_curl])
            worst = (float(Xk[i_curl]), float(Yk[i_curl]), t)
        i_e = int(np.argmax(elec_res))
        if elec_res[i_e] > max_elec:
            max_elec = float(elec_res[i_e])
            if max_elec > max_curl:
                worst = (float(Xk[i_e]), float(Yk[i_e]), t)

    return ConsistencyReport(
        passed=(max_curl <= tol and max_elec <= tol),
        max_curl_residual=max_curl,
        max_electric_residual=max_elec,
        tol=tol,
        n_samples=n_used,
        worst_point=worst,
    )


# -- built-in catalog ---------------------------------------------------------


def zero_config() -> FieldConfig:
    """All six evaluators identically zero."""
    return FieldConfig(
        name="zero", kind="analytic",
        ax=_zero, ay=_zero, phi=_zero, bz=_zero, ex=_zero, ey=_zero,
        support=Rect(0.0, 0.0, 0.0, 0.0), potentials_confined=True,
    )


def vertical_strip(x_lo: float, x_hi: float, amplitude: float = 1.0) -> FieldConfig:
    """Uniform B_z on a vertical strip x in [x_lo, x_hi].

    Landau gauge: ``A_y(x) = B0 * clamp(x - x_lo, 0, width)``, ``A_x = 0``.
    """
    if not x_hi > x_lo:
        raise ValueError("need x_hi > x_lo")
    width = x_hi - x_lo
    b0 = float(amplitude)

    def ay(x, y, t):
        return b0 * np.clip(np.asarray(x, float) - x_lo, 0.0, width) \
            * np.ones(np.broadcast(x, y, t).shape)

    def bz(x, y, t):
        x = np.asarray(x, float)
        return np.where((x >= x_lo) & (x <= x_hi), b0, 0.0) \
            * np.ones(np.broadcast(x, y, t).shape)

    return FieldConfig(
        name="vertical_strip", kind="analytic",
        ax=_zero, ay=ay, phi=_zero, bz=bz, ex=_zero, ey=_zero,
        support=Rect(x_lo, x_hi, -math.inf, math.inf),
        x_breaks=(x_lo, x_hi),
        params={"x_lo": x_lo, "x_hi": x_hi, "amplitude": b0},
    )


def horizontal_strip(lo: float, hi: float, amplitude: float = 1.0,
                     axis: str = "y", c: float = 1.0) -> FieldConfig:
    """Uniform field on a horizontal strip.

    ``axis="y"``: magnetic strip y in [lo, hi]; Landau gauge
    ``A_x(y) = -B0 * clamp(y - lo, 0, height)``.

    ``axis="t"``: electric field E_x = E0 everywhere in space for
    t in [lo, hi] (a field of finite duration); vector-potential gauge
    ``A_x(t) = -c * E0 * clamp(t - lo, 0, duration)``, ``phi = 0``.
    """
    if not hi > lo:
        raise ValueError("need hi > lo")
    extent = hi - lo
    a0 = float(amplitude)

    if axis == "y":
        def ax(x, y, t):
            return -a0 * np.clip(np.asarray(y, float) - lo, 0.0, extent) \
                * np.ones(np.broadcast(x, y, t).shape)

        def bz(x, y, t):
            y = np.asarray(y, float)
            return np.where((y >= lo) & (y <= hi), a0, 0.0) \
                * np.ones(np.broadcast(x, y, t).shape)

        return FieldConfig(
            name="horizontal_strip", kind="analytic",
            ax=ax, ay=_zero, phi=_zero, bz=bz, ex=_zero, ey=_zero,
            support=Rect(-math.inf, math.inf, lo, hi),
            y_breaks=(lo, hi),
            params={"lo": lo, "hi": hi, "amplitude": a0, "axis": "y"},
        )
    if axis == "t":
        def ax_t(x, y, t):
            return -c * a0 * np.clip(np.asarray(t, float) - lo, 0.0, extent) \
                * np.ones(np.broadcast(x, y, t).shape)

        def ex(x, y, t):
            t = np.asarray(t, float)
            return np.where((t >= lo) & (t <= hi), a0, 0.0) \
                * np.ones(np.broadcast(x, y, t).shape)

        return FieldConfig(
            name="horizontal_strip", kind="analytic",
            ax=ax_t, ay=_zero, phi=_zero, bz=_zero, ex=ex, ey=_zero,
            support=None,
            t_breaks=(lo, hi),
            params={"lo": lo, "hi": hi, "amplitude": a0, "axis": "t", "c": c},
        )
    raise ValueError("axis must be 'y' or 't'")


def triangle(a: float = 1.0, amplitude: float = 1.0,
             origin: tuple[float, float] = (0.0, 0.0)) -> FieldConfig:
    """Uniform B_z on an equilateral triangle of side ``a``.

    Vertices sit at origin, origin+(a,0) and origin+(a/2, sqrt(3)a/2);
    with the initial point at the origin vertex, observation points to
    the right of the right side see nontrivial gauge-fix functions on
    both path solutions.  Gauge: ``A_x = 0`` and ``A_y(x, y)`` equal to
    the row overlap integral of B_z up to x.
    """
    if a <= 0.0:
        raise ValueError("side must be positive")
    b0 = float(amplitude)
    ox, oy = origin
    height = SQRT3 * a / 2.0

    def row_span(y):
        """Left/right triangle edges at height y (arrays ok)."""
        u = np.asarray(y, float) - oy
        inside = (u >= 0.0) & (u <= height)
        left = ox + u / SQRT3
        right = ox + a - u / SQRT3
        return inside, left, right

    def ay(x, y, t):
        inside, left, right = row_span(y)
        x = np.asarray(x, float)
        seg = np.clip(np.minimum(x, right) - left, 0.0, None)
        return np.where(inside, b0 * seg, 0.0) * np.ones(np.broadcast(x, y, t).shape)

    def bz(x, y, t):
        inside, left, right = row_span(y)
        x = np.asarray(x, float)
        hit = inside & (x >= left) & (x <= right)
        return np.where(hit, b0, 0.0) * np.ones(np.broadcast(x, y, t).shape)

    def row_edges(y: float):
        u = y - oy
        if 0.0 <= u <= height:
            return (ox + u / SQRT3, ox + a - u / SQRT3)
        return ()

    def col_edges(x: float):
        u = x - ox
        out = [oy, oy + height]
        if 0.0 <= u <= a:
            out.extend((oy + SQRT3 * u, oy + SQRT3 * (a - u)))
        return tuple(out)

    def row_kink_ys(x0: float, x1: float):
        out = [oy, oy + height]
        for s in (x0, x1):
            u = s - ox
            if 0.0 <= u <= a:
                out.extend((oy + SQRT3 * u, oy + SQRT3 * (a - u)))
        return tuple(out)

    return FieldConfig(
        name="triangle", kind="analytic",
        ax=_zero, ay=ay, phi=_zero, bz=bz, ex=_zero, ey=_zero,
        support=Rect(ox, ox + a, oy, oy + height),
        x_breaks=(ox, ox + a / 2.0, ox + a),
        y_breaks=(oy, oy + height),
        row_edges=row_edges, col_edges=col_edges, row_kink_ys=row_kink_ys,
        params={"a": a, "amplitude": b0, "origin": list(origin)},
    )


def _vortex_components(flux_of_t, cx: float, cy: float):
    """Azimuthal potential A_phi = flux/(2 pi r) in Cartesian components."""

    def ax(x, y, t):
        dx = np.asarray(x, float) - cx
        dy = np.asarray(y, float) - cy
        r2 = dx * dx + dy * dy
        with np.errstate(divide="ignore", invalid="ignore"):
            val = -flux_of_t(t) * dy / (2.0 * math.pi * r2)
        return val * np.ones(np.broadcast(x, y, t).shape)

    def ay(x, y, t):
        dx = np.asarray(x, float) - cx
        dy = np.asarray(y, float) - cy
        r2 = dx * dx + dy * dy
        with np.errstate(divide="ignore", invalid="ignore"):
            val = flux_of_t(t) * dx / (2.0 * math.pi * r2)
        return val * np.ones(np.broadcast(x, y, t).shape)

    return ax, ay


def solenoid_flux(flux: float, center: tuple[float, float] = (0.0, 0.0)) -> FieldConfig:
    """Idealized static Aharonov-Bohm flux line at ``center``.

    The B_z evaluator is identically zero in the accessible region; the
    enclosed flux is declared, which is what drives the multiplicity
    ledger.  Gauge: azimuthal vortex ``A_phi = flux / (2 pi r)``.
    """
    cx, cy = center
    ax, ay = _vortex_components(lambda t: float(flux), cx, cy)
    return FieldConfig(
        name="solenoid_flux", kind="analytic",
        ax=ax, ay=ay, phi=_zero, bz=_zero, ex=_zero, ey=_zero,
        support=Rect(cx, cx, cy, cy),
        multiple_connected=True,
        flux_center=(cx, cy),
        flux_value=lambda t: float(flux),
        params={"flux": float(flux), "center": [cx, cy]},
    )


def capacitor_1d(x_lo: float, x_hi: float, amplitude: float = 1.0) -> FieldConfig:
    """Uniform E_x between the plates x in [x_lo, x_hi], for all time.

    Scalar-potential gauge: ``phi(x) = -E0 * clamp(x - x_lo, 0, width)``,
    ``A = 0``.  Read through the (x, t) solvers with y frozen.
    """
    if not x_hi > x_lo:
        raise ValueError("need x_hi > x_lo")
    width = x_hi - x_lo
    e0 = float(amplitude)

    def phi(x, y, t):
        return -e0 * np.clip(np.asarray(x, float) - x_lo, 0.0, width) \
            * np.ones(np.broadcast(x, y, t).shape)

    def ex(x, y, t):
        x = np.asarray(x, float)
        return np.where((x >= x_lo) & (x <= x_hi), e0, 0.0) \
            * np.ones(np.broadcast(x, y, t).shape)

    return FieldConfig(
        name="capacitor_1d", kind="analytic",
        ax=_zero, ay=_zero, phi=phi, bz=_zero, ex=ex, ey=_zero,
        support=Rect(x_lo, x_hi, -math.inf, math.inf),
        x_breaks=(x_lo, x_hi),
        params={"x_lo": x_lo, "x_hi": x_hi, "amplitude": e0},
    )


def retarded_flux(phi0: float, rate: float, t0: float = 0.0,
                  center: tuple[float, float] = (0.0, 0.0),
                  c: float = 1.0) -> FieldConfig:
    """Confined flux with history Phi(t) = phi0 + rate*max(t - t0, 0).

    All fields derive from the sharp-front azimuthal potential
    ``A_phi(r, t) = Phi(t - r/c) / (2 pi r)`` in the temporal gauge
    (phi = 0): the radiated fields vanish identically outside the light
    cone of the onset and satisfy Faraday's law exactly.  The enclosed
    point flux Phi(t) is declared for the multiplicity ledger.
    """
    profile = FluxProfile(phi0=float(phi0), rate=float(rate), onset=float(t0))
    cx, cy = center

    def flux_ret(x, y, t):
        dx = np.asarray(x, float) - cx
        dy = np.asarray(y, float) - cy
        r = np.hypot(dx, dy)
        return profile.value(np.asarray(t, float) - r / c)

    def dflux_ret(x, y, t):
        dx = np.asarray(x, float) - cx
        dy = np.asarray(y, float) - cy
        r = np.hypot(dx, dy)
        return profile.derivative(np.asarray(t, float) - r / c)

    def _geom(x, y):
        dx = np.asarray(x, float) - cx
        dy = np.asarray(y, float) - cy
        r2 = dx * dx + dy * dy
        return dx, dy, r2

    def ax(x, y, t):
        dx, dy, r2 = _geom(x, y)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = -flux_ret(x, y, t) * dy / (2.0 * math.pi * r2)
        return val * np.ones(np.broadcast(x, y, t).shape)

    def ay(x, y, t):
        dx, dy, r2 = _geom(x, y)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = flux_ret(x, y, t) * dx / (2.0 * math.pi * r2)
        return val * np.ones(np.broadcast(x, y, t).shape)

    def ex(x, y, t):
        dx, dy, r2 = _geom(x, y)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = dflux_ret(x, y, t) * dy / (2.0 * math.pi * r2 * c)
        return val * np.ones(np.broadcast(x, y, t).shape)

    def ey(x, y, t):
        dx, dy, r2 = _geom(x, y)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = -dflux_ret(x, y, t) * dx / (2.0 * math.pi * r2 * c)
        return val * np.ones(np.broadcast(x, y, t).shape)

    def bz(x, y, t):
        dx, dy, r2 = _geom(x, y)
        r = np.sqrt(r2)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = -dflux_ret(x, y, t) / (2.0 * math.pi * r * c)
        return val * np.ones(np.broadcast(x, y, t).shape)

    return FieldConfig(
        name="retarded_flux", kind="analytic",
        ax=ax, ay=ay, phi=_zero, bz=bz, ex=ex, ey=ey,
        support=None,
        multiple_connected=True,
        flux_center=(cx, cy),
        flux_value=lambda t: float(profile.value(t)),
        retarded=Retarded(center=(cx, cy), profile=profile, c=c),
        t_breaks=(float(t0),),
        params={"phi0": float(phi0), "rate": float(rate), "t0": float(t0),
                "center": [cx, cy], "c": c},
    )


def circular_blob(amplitude: float = 1.0, center: tuple[float, float] = (0.0, 0.0),
                  radius: float = 1.0) -> FieldConfig:
    """Smooth compact B_z bump: B0*(1 - (r/R)^2)^5 inside radius R.

    C^4-smooth at the rim, so plain panel quadrature converges fast even
    without rim-aligned breakpoints.  Total flux is pi*B0*R^2/6.  Gauge:
    symmetric azimuthal, ``A_phi(r) = enclosed_flux(r) / (2 pi r)``.
    """
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    b0 = float(amplitude)
    cx, cy = center
    R2 = radius * radius

    def bz(x, y, t):
        dx = np.asarray(x, float) - cx
        dy = np.asarray(y, float) - cy
        u2 = (dx * dx + dy * dy) / R2
        val = np.where(u2 < 1.0, b0 * np.clip(1.0 - u2, 0.0, None) ** 5, 0.0)
        return val * np.ones(np.broadcast(x, y, t).shape)

    def _shear(x, y):
        """A_phi / r, finite at the center."""
        dx = np.asarray(x, float) - cx
        dy = np.asarray(y, float) - cy
        u2 = (dx * dx + dy * dy) / R2
        # (1 - (1-u^2)^6) / (6 u^2) expanded; exact polynomial for u <= 1
        series = (1.0 - 2.5 * u2 + (10.0 / 3.0) * u2 ** 2 - 2.5 * u2 ** 3
                  + u2 ** 4 - (1.0 / 6.0) * u2 ** 5)
        with np.errstate(divide="ignore", invalid="ignore"):
            outside = 1.0 / (6.0 * u2)
        return dx, dy, 0.5 * b0 * np.where(u2 < 1.0, series, outside)

    def ax(x, y, t):
        dx, dy, s = _shear(x, y)
        return -dy * s * np.ones(np.broadcast(x, y, t).shape)

    def ay(x, y, t):
        dx, dy, s = _shear(x, y)
        return dx * s * np.ones(np.broadcast(x, y, t).shape)

    def row_edges(y: float):
        return _circle_row_crossings(cx, cy, radius, y)

    def col_edges(x: float):
        return _circle_row_crossings(cy, cx, radius, x)

    def row_kink_ys(x0: float, x1: float):
        return _circle_span_kinks(cx, cy, radius, x0, x1)

    d = math.hypot(cx, cy)

    def polar_rho_breaks(ph: float):
        # crossings of the ray at angle ph with the blob rim
        if d <= radius:
            return (radius - d, radius + d)
        delta = ph - math.atan2(cy, cx)
        s = d * math.sin(delta)
        if abs(s) >= radius:
            return ()
        half = math.sqrt(R2 - s * s)
        mid = d * math.cos(delta)
        return tuple(r for r in (mid - half, mid + half) if r > 0.0)

    phi_kinks: tuple[float, ...] = ()
    if d > radius:
        spread = math.asin(radius / d)
        phi_kinks = (math.atan2(cy, cx) - spread, math.atan2(cy, cx) + spread)

    return FieldConfig(
        name="circular_blob", kind="analytic",
        ax=ax, ay=ay, phi=_zero, bz=bz, ex=_zero, ey=_zero,
        support=Rect(cx - radius, cx + radius, cy - radius, cy + radius),
        row_edges=row_edges, col_edges=col_edges, row_kink_ys=row_kink_ys,
        polar_rho_breaks=polar_rho_breaks, polar_phi_kinks=phi_kinks,
        params={"amplitude": b0, "center": [cx, cy], "radius": radius},
    )


def spacetime_flux(flux: float, center: tuple[float, float] = (0.0, 0.0)) -> FieldConfig:
    """Declared electric-type flux in the (x, t) plane at ``center=(x, t)``.

    The idealized spacetime analog of the flux line: potentials and
    fields vanish in the accessible region, while the enclosed flux
    drives the spacetime multiplicity constants.  The stored value is
    oriented so the first dynamic solution's constant equals ``+flux``.
    """
    return FieldConfig(
        name="spacetime_flux", kind="analytic",
        ax=_zero, ay=_zero, phi=_zero, bz=_zero, ex=_zero, ey=_zero,
        support=Rect(center[0], center[0], 0.0, 0.0), potentials_confined=True,
        spacetime_multiple_connected=True,
        xt_flux_center=(float(center[0]), float(center[1])),
        xt_flux_value=float(flux),
        params={"flux": float(flux), "center": [float(center[0]), float(center[1])]},
    )


def retarded_flux_fields(profile: FluxProfile, center: tuple[float, float],
                         t0: float, point: tuple[float, float], t: float,
                         c: float = 1.0) -> tuple[float, float, float]:
    """Radiated (E_x, E_y, B_z) of the sharp-front confined-flux model.

    The profile must be constant before ``t0``; the fields vanish
    identically for c*(t - t0) < r.
    """
    if profile.onset != t0:
        profile = replace(profile, onset=float(t0))
    px, py = point
    cx, cy = center
    r = math.hypot(px - cx, py - cy)
    if r == 0.0:
        raise SingularPointError("field requested on the flux line core")
    cfg = retarded_flux(profile.phi0, profile.rate, t0, center, c)
    x, y, tt = np.asarray(px), np.asarray(py), np.asarray(t)
    return (float(cfg.ex(x, y, tt)), float(cfg.ey(x, y, tt)), float(cfg.bz(x, y, tt)))


# -- tabulated grids ----------------------------------------------------------

GRID_COLUMNS = ("x", "y", "t", "A_x", "A_y", "phi", "B_z", "E_x", "E_y")


def load_grid_config(path) -> FieldConfig:
    """Load a tabulated-grid configuration from columnar text.

    Format: header line ``x y t A_x A_y phi B_z E_x E_y`` followed by
    whitespace-separated rows covering a full regular (x, y, t) grid.
    Interpolation is bilinear in space and linear in time; evaluation
    outside the grid raises, so grids must enclose the computational
    domain.
    """
    from scipy.interpolate import RegularGridInterpolator

    with open(path) as fh:
        header = fh.readline().split()
        if tuple(header) != GRID_COLUMNS:
            raise GridFormatError(
                f"bad grid header {header!r}; expected {' '.join(GRID_COLUMNS)}")
        try:
            data = np.loadtxt(fh, ndmin=2)
        except ValueError as exc:
            raise GridFormatError(f"unreadable grid rows: {exc}") from exc
    if data.size == 0 or data.shape[1] != len(GRID_COLUMNS):
        raise GridFormatError("grid rows must have 9 columns")

    axes = [np.unique(data[:, i]) for i in range(3)]
    nx, ny, nt = (len(ax) for ax in axes)
    if nx * ny * nt != data.shape[0]:
        raise GridFormatError(
            f"expected a full {nx}x{ny}x{nt} grid, got {data.shape[0]} rows")

    order = np.lexsort((data[:, 2], data[:, 1], data[:, 0]))
    data = data[order]

    interps = {}
    for k, col in enumerate(GRID_COLUMNS[3:], start=3):
        cube = data[:, k].reshape(nx, ny, nt)
        use_axes = []
        take = []
        for ax in axes:
            if len(ax) > 1:
                use_axes.append(ax)
                take.append(slice(None))
            else:
                take.append(0)
        reduced = cube[tuple(take)]
        if use_axes:
            interps[col] = RegularGridInterpolator(tuple(use_axes), reduced,
                                                   method="linear", bounds_error=True)
        else:
            interps[col] = None
        if interps[col] is None:
            interps[col] = float(reduced)

    active = [i for i, ax in enumerate(axes) if len(ax) > 1]

    def evaluator(col):
        itp = interps[col]

        def ev(x, y, t):
            shape = np.broadcast(x, y, t).shape
            if not callable(itp):
                return np.full(shape, itp)
            coords = [np.broadcast_to(np.asarray(v, float), shape).ravel()
                      for v in (x, y, t)]
            pts = np.stack([coords[i] for i in active], axis=-1)
            try:
                vals = itp(pts)
            except ValueError as exc:
                raise GridFormatError(
                    f"evaluation outside tabulated grid: {exc}") from exc
            return vals.reshape(shape)

        return ev

    return FieldConfig(
        name="tabulated-grid", kind="tabulated-grid",
        ax=evaluator("A_x"), ay=evaluator("A_y"), phi=evaluator("phi"),
        bz=evaluator("B_z"), ex=evaluator("E_x"), ey=evaluator("E_y"),
        support=Rect(float(axes[0][0]), float(axes[0][-1]),
                     float(axes[1][0]), float(axes[1][-1])),
        params={"path": str(path)},
    )


# -- registry -----------------------------------------------------------------

_BUILTINS: dict[str, Callable[..., FieldConfig]] = {
    "zero": zero_config,
    "vertical_strip": vertical_strip,
    "horizontal_strip": horizontal_strip,
    "triangle": triangle,
    "solenoid_flux": solenoid_flux,
    "capacitor_1d": capacitor_1d,
    "retarded_flux": retarded_flux,
    "circular_blob": circular_blob,
    "spacetime_flux": spacetime_flux,
}


def builtin_configs() -> dict[str, Callable[..., FieldConfig]]:
    """Name -> constructor map for the built-in catalog."""
    return dict(_BUILTINS)


def make_config(name: str, **params) -> FieldConfig:
    """Instantiate a built-in configuration by name and parameter map."""
    try:
        factory = _BUILTINS[name]
    except KeyError:
        known = ", ".join(sorted(_BUILTINS))
        raise ValueError(f"unknown config {name!r}; built-ins: {known}") from None
    if "center" in params and isinstance(params["center"], list):
        params["center"] = tuple(params["center"])
    if "origin" in params and isinstance(params["origin"], list):
        params["origin"] = tuple(params["origin"])
    return factory(**params)
