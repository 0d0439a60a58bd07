"""Deterministic 1-D and iterated 2-D quadrature used by every solver.

Two rules are provided: composite Gauss-Legendre on a fixed panel layout
(bitwise reproducible, spectrally accurate on smooth pieces) and adaptive
Simpson for integrands whose kinks sit at unknown locations.  Integrands
with *known* discontinuities should pass them as breakpoints: panels are
split there, which keeps Gauss-Legendre exact for piecewise polynomials
such as strip fields in a Landau gauge.

Sign conventions follow the integral limits: ``integrate_1d(f, a, b)``
equals ``-integrate_1d(f, b, a)`` exactly, and the iterated rectangle
integral inherits the same convention on both axes.

Integrands are evaluated on numpy arrays of nodes (one call per panel
batch), so field evaluators must accept array arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ToleranceNotMetError

__all__ = [
    "QuadratureSpec",
    "DEFAULT_SPEC",
    "integrate_1d",
    "integrate_rect",
]

RULE_GAUSS = "gauss-legendre"
RULE_SIMPSON = "adaptive-simpson"


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration rule, panel budget and tolerances.

    ``panels`` is the composite panel count for Gauss-Legendre and the
    maximum recursion depth for adaptive Simpson.
    """

    rule: str = RULE_GAUSS
    order: int = 8
    panels: int = 64
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10

    def __post_init__(self):
        if self.rule not in (RULE_GAUSS, RULE_SIMPSON):
            raise ValueError(f"unknown quadrature rule {self.rule!r}")
        if self.panels < 1:
            raise ValueError("panels must be >= 1")
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.abs_tol <= 0.0 or self.rel_tol < 0.0:
            raise ValueError("tolerances must be positive")


DEFAULT_SPEC = QuadratureSpec()

_gl_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    rule = _gl_cache.get(order)
    if rule is None:
        rule = leggauss(order)
        _gl_cache[order] = rule
    return rule


def _interior_breaks(lo: float, hi: float, breakpoints: Iterable[float]) -> list[float]:
    eps = 1e-14 * max(1.0, abs(lo), abs(hi))
    pts = sorted({float(p) for p in breakpoints if lo + eps < p < hi - eps})
    # collapse near-duplicates so panels never degenerate
    out: list[float] = []
    for p in pts:
        if not out or p - out[-1] > eps:
            out.append(p)
    return out


def _gl_nodes(lo: float, hi: float, breaks: Sequence[float], spec: QuadratureSpec):
    """Panel nodes and weights over [lo, hi] split at the breakpoints."""
    cuts = [lo, *breaks, hi]
    total = hi - lo
    nodes, weights = _gl_rule(spec.order)
    xs: list[np.ndarray] = []
    ws: list[np.ndarray] = []
    for s0, s1 in zip(cuts[:-1], cuts[1:]):
        n = max(1, int(round(spec.panels * (s1 - s0) / total)))
        edges = np.linspace(s0, s1, n + 1)
        mids = 0.5 * (edges[1:] + edges[:-1])
        halfs = 0.5 * (edges[1:] - edges[:-1])
        xs.append((mids[:, None] + halfs[:, None] * nodes[None, :]).ravel())
        ws.append((halfs[:, None] * weights[None, :]).ravel())
    return np.concatenate(xs), np.concatenate(ws)


def _eval(f: Callable, x: np.ndarray) -> np.ndarray:
    vals = np.asarray(f(x), dtype=float)
    if vals.shape != x.shape:
        vals = np.broadcast_to(vals, x.shape)
    return vals


def _simpson_segment(f, a, b, fa, fm, fb, whole, tol, depth, spec):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = _eval(f, np.array([lm, rm]))
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth >= spec.panels:
        raise ToleranceNotMetError(
            f"adaptive Simpson depth {spec.panels} exhausted on [{a}, {b}]",
            best_estimate=left + right,
        )
    if abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    try:
        lval = _simpson_segment(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1, spec)
    except ToleranceNotMetError as err:
        try:
            rval = _simpson_segment(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1, spec)
        except ToleranceNotMetError as rerr:
            rval = rerr.best_estimate
        raise ToleranceNotMetError(str(err), best_estimate=err.best_estimate + rval)
    try:
        rval = _simpson_segment(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1, spec)
    except ToleranceNotMetError as err:
        raise ToleranceNotMetError(str(err), best_estimate=lval + err.best_estimate)
    return lval + rval


def _adaptive_simpson(f, lo, hi, breaks, spec) -> float:
    cuts = [lo, *breaks, hi]
    total = 0.0
    failure: ToleranceNotMetError | None = None
    for s0, s1 in zip(cuts[:-1], cuts[1:]):
        m = 0.5 * (s0 + s1)
        fa, fm, fb = _eval(f, np.array([s0, m, s1]))
        whole = (s1 - s0) / 6.0 * (fa + 4.0 * fm + fb)
        # crude magnitude guess to seed the relative tolerance
        tol = max(spec.abs_tol, spec.rel_tol * abs(whole))
        try:
            total += _simpson_segment(f, s0, s1, fa, fm, fb, whole, tol, 0, spec)
        except ToleranceNotMetError as err:
            total += err.best_estimate
            failure = err
    if failure is not None:
        raise ToleranceNotMetError(str(failure), best_estimate=total)
    return total


def integrate_1d(
    f: Callable,
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
    breakpoints: Iterable[float] = (),
) -> float:
    """Signed integral of ``f`` from ``a`` to ``b``.

    ``f`` is called with numpy arrays of abscissae.  Breakpoints inside
    the interval split the panel layout; points outside are ignored.
    """
    spec = spec or DEFAULT_SPEC
    a = float(a)
    b = float(b)
    if a == b:
        return 0.0
    lo, hi = (a, b) if a < b else (b, a)
    sign = 1.0 if a < b else -1.0
    breaks = _interior_breaks(lo, hi, breakpoints)
    if spec.rule == RULE_SIMPSON:
        return sign * _adaptive_simpson(f, lo, hi, breaks, spec)
    xs, ws = _gl_nodes(lo, hi, breaks, spec)
    return sign * float(np.dot(_eval(f, xs), ws))


def integrate_rect(
    f: Callable,
    x_span: tuple[float, float],
    y_span: tuple[float, float],
    spec: QuadratureSpec | None = None,
    *,
    x_breaks: Iterable[float] = (),
    y_breaks: Iterable[float] = (),
    x_breaks_of_y: Callable[[float], Iterable[float]] | None = None,
) -> float:
    """Iterated integral over a rectangle, inner over the first variable.

    Computes ``∫_{y0}^{y1} dy ∫_{x0}^{x1} dx f(x, y)`` with the 1-D sign
    convention applied to both spans.  ``x_breaks_of_y`` may supply extra
    inner breakpoints as a function of the outer ordinate (used for field
    shapes whose row edges move with y, e.g. triangles and light cones).
    """
    spec = spec or DEFAULT_SPEC
    x0, x1 = float(x_span[0]), float(x_span[1])
    y0, y1 = float(y_span[0]), float(y_span[1])
    if x0 == x1 or y0 == y1:
        return 0.0
    sign = (1.0 if x0 < x1 else -1.0) * (1.0 if y0 < y1 else -1.0)
    xlo, xhi = min(x0, x1), max(x0, x1)
    ylo, yhi = min(y0, y1), max(y0, y1)

    if spec.rule == RULE_SIMPSON or x_breaks_of_y is not None:
        def outer(yv: np.ndarray) -> np.ndarray:
            yv = np.atleast_1d(np.asarray(yv, dtype=float))
            out = np.empty_like(yv)
            for i, y in enumerate(yv):
                inner_breaks = list(x_breaks)
                if x_breaks_of_y is not None:
                    inner_breaks.extend(x_breaks_of_y(float(y)))
                out[i] = integrate_1d(
                    lambda xv, _y=float(y): f(xv, np.full_like(xv, _y)),
                    xlo, xhi, spec, inner_breaks,
                )
            return out

        return sign * integrate_1d(outer, ylo, yhi, spec, y_breaks)

    xs, wx = _gl_nodes(xlo, xhi, _interior_breaks(xlo, xhi, x_breaks), spec)
    ys, wy = _gl_nodes(ylo, yhi, _interior_breaks(ylo, yhi, y_breaks), spec)
    grid = np.asarray(f(xs[None, :], ys[:, None]), dtype=float)
    if grid.shape != (ys.size, xs.size):
        grid = np.broadcast_to(grid, (ys.size, xs.size))
    return sign * float(wy @ grid @ wx)
