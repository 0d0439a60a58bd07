import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from gaugeflux import QuadratureSpec, integrate_1d, integrate_rect
from gaugeflux.errors import ToleranceNotMetError

SIMPSON = QuadratureSpec(rule="adaptive-simpson", panels=48,
                         abs_tol=1e-10, rel_tol=1e-10)


def test_zero_integrand():
    assert integrate_1d(lambda x: np.zeros_like(x), 0.0, 1.0) == 0.0


def test_constant():
    assert_allclose(integrate_1d(lambda x: np.ones_like(x), 2.0, 5.0), 3.0,
                    rtol=1e-14)


def test_clamp_with_breakpoints():
    # antiderivative by hand: 0 on [0,1], (x-1)^2/2 on [1,2], x-3/2 beyond
    val = integrate_1d(lambda x: np.clip(x - 1.0, 0.0, 1.0), 0.0, 3.0,
                       breakpoints=(1.0, 2.0))
    assert_allclose(val, 1.5, rtol=1e-14)


def test_degenerate_interval():
    assert integrate_1d(lambda x: x, 2.0, 2.0) == 0.0


@settings(max_examples=50, derandomize=True)
@given(a=st.floats(-5, 5), b=st.floats(-5, 5),
       coeffs=st.tuples(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2)))
def test_antisymmetry_exact(a, b, coeffs):
    c0, c1, c2 = coeffs

    def f(x):
        return c0 + c1 * x + c2 * x * x

    assert integrate_1d(f, a, b) == -integrate_1d(f, b, a)


def test_additivity_piecewise():
    def f(x):
        return np.where(x < 1.0, x ** 2, np.cos(x))

    whole = integrate_1d(f, 0.0, 3.0, breakpoints=(1.0,))
    split = (integrate_1d(f, 0.0, 1.0) + integrate_1d(f, 1.0, 3.0))
    assert_allclose(whole, split, rtol=1e-12)


def test_smooth_reference_value():
    assert_allclose(integrate_1d(np.exp, 0.0, 1.0), math.e - 1.0, rtol=1e-13)
    assert_allclose(integrate_1d(np.exp, 0.0, 1.0, SIMPSON), math.e - 1.0,
                    rtol=1e-9)


def test_bitwise_reproducible():
    def f(x):
        return np.sin(3.0 * x) / (1.0 + x * x)

    first = integrate_1d(f, -1.0, 4.0, breakpoints=(0.5,))
    second = integrate_1d(f, -1.0, 4.0, breakpoints=(0.5,))
    assert first == second


def test_adaptive_depth_exhausted_carries_estimate():
    shallow = QuadratureSpec(rule="adaptive-simpson", panels=2,
                             abs_tol=1e-15, rel_tol=1e-15)
    with pytest.raises(ToleranceNotMetError) as err:
        integrate_1d(lambda x: np.abs(np.sin(40.0 * x)) ** 0.3, 0.0, 1.0, shallow)
    assert 0.0 < err.value.best_estimate < 2.0


def test_rect_constant():
    assert_allclose(integrate_rect(lambda x, y: x * 0 + y * 0 + 1.0,
                                   (0.0, 2.0), (0.0, 3.0)), 6.0, rtol=1e-14)


def test_rect_strip_field(spec16):
    from gaugeflux import vertical_strip
    cfg = vertical_strip(1.0, 2.0, 1.0)
    val = integrate_rect(lambda x, y: cfg.bz(x, y, 0.0), (0.0, 3.0), (0.0, 2.0),
                         spec16, x_breaks=cfg.x_breaks)
    assert_allclose(val, 2.0, rtol=1e-13)


def test_rect_triangle_indicator(spec16):
    # equilateral triangle of side 1 fully inside the rectangle
    from gaugeflux import triangle
    cfg = triangle(1.0, 1.0)
    val = integrate_rect(lambda x, y: cfg.bz(x, y, 0.0), (-0.2, 1.3), (-0.2, 1.0),
                         spec16,
                         y_breaks=cfg.rect_kinks_y(-0.2, 1.3),
                         x_breaks_of_y=lambda yv: cfg.breaks_x(y=yv))
    assert_allclose(val, math.sqrt(3.0) / 4.0, atol=1e-12)


def test_rect_triangle_adaptive():
    from gaugeflux import triangle
    cfg = triangle(1.0, 1.0)
    spec = QuadratureSpec(rule="adaptive-simpson", panels=44,
                          abs_tol=1e-9, rel_tol=1e-9)
    val = integrate_rect(lambda x, y: cfg.bz(x, y, 0.0), (-0.2, 1.3), (-0.2, 1.0),
                         spec)
    assert_allclose(val, math.sqrt(3.0) / 4.0, atol=1e-6)


def test_rect_orientation_signs():
    f = lambda x, y: x * 0 + y * 0 + 1.0
    base = integrate_rect(f, (0.0, 2.0), (0.0, 3.0))
    assert integrate_rect(f, (2.0, 0.0), (0.0, 3.0)) == -base
    assert integrate_rect(f, (2.0, 0.0), (3.0, 0.0)) == base


def test_fubini_smooth():
    def f(x, y):
        return np.sin(x) * np.exp(-y) + x * y

    forward = integrate_rect(f, (0.0, 1.5), (-1.0, 2.0))
    swapped = integrate_rect(lambda y, x: f(x, y), (-1.0, 2.0), (0.0, 1.5))
    assert_allclose(forward, swapped, rtol=1e-12)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(rule="romberg")
    with pytest.raises(ValueError):
        QuadratureSpec(panels=0)
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0.0)
