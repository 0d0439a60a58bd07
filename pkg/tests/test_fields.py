import math
from dataclasses import replace

import numpy as np
import pytest
from numpy.testing import assert_allclose

import gaugeflux as gf
from gaugeflux import FluxProfile, Rect, check_consistency, retarded_flux_fields
from gaugeflux.errors import GridFormatError, SingularPointError

CATALOG_CASES = [
    (gf.zero_config(), (0.0, 1.0, 0.0, 1.0), (0.0,)),
    (gf.vertical_strip(1.0, 2.0, 1.0), (0.0, 3.0, 0.0, 2.0), (0.0,)),
    (gf.horizontal_strip(1.0, 2.0, 1.0), (0.0, 2.0, 0.0, 3.0), (0.0,)),
    (gf.horizontal_strip(1.0, 2.0, 1.0, axis="t"), (0.0, 3.0, -1.0, 1.0),
     (0.5, 1.5, 2.5)),
    (gf.triangle(1.0, 1.0), (0.0, 1.0, 0.0, 0.9), (0.0,)),
    (gf.solenoid_flux(1.0, (1.5, 1.0)), (2.0, 3.0, 0.0, 2.0), (0.0,)),
    (gf.capacitor_1d(1.0, 2.0, 1.0), (0.0, 3.0, -1.0, 1.0), (0.0, 1.0)),
    (gf.retarded_flux(1.0, 0.4, 0.0, (0.0, 0.0), 1.0), (2.0, 4.0, 2.0, 4.0),
     (3.0, 6.0)),
    (gf.circular_blob(1.0, (1.2, 0.9), 0.4), (0.5, 2.0, 0.0, 1.6), (0.0,)),
    (gf.spacetime_flux(1.0, (1.5, 1.0)), (0.0, 3.0, -1.0, 1.0), (0.0,)),
]


def test_zero_config_consistency():
    rep = check_consistency(gf.zero_config(), (0.0, 1.0, 0.0, 1.0), 10, 1e-6)
    assert rep.passed
    assert rep.max_curl_residual == 0.0
    assert rep.max_electric_residual == 0.0


def test_vertical_strip_consistency_tight():
    cfg = gf.vertical_strip(1.0, 2.0, 1.0)
    rep = check_consistency(cfg, (0.0, 3.0, 0.0, 2.0), 10, 1e-8)
    assert rep.passed


def test_corrupted_config_fails():
    good = gf.vertical_strip(1.0, 2.0, 1.0)
    bad = replace(good, bz=lambda x, y, t: 2.0 * good.bz(x, y, t))
    rep = check_consistency(bad, (0.0, 3.0, 0.0, 2.0), 10, 1e-6)
    assert not rep.passed
    assert_allclose(rep.max_curl_residual, 1.0, atol=1e-8)
    # worst point sits inside the strip
    assert 1.0 < rep.worst_point[0] < 2.0


@pytest.mark.parametrize("cfg,region,times", CATALOG_CASES,
                         ids=[c[0].name + str(i) for i, c in enumerate(CATALOG_CASES)])
def test_catalog_consistency(cfg, region, times):
    rep = check_consistency(cfg, region, 10, 1e-6, times=times)
    assert rep.passed, str(rep)


@pytest.mark.parametrize("cfg", [c for c, _, _ in CATALOG_CASES],
                         ids=[c[0].name + str(i) for i, c in enumerate(CATALOG_CASES)])
def test_fields_vanish_outside_support(cfg):
    if cfg.support is None:
        pytest.skip("unbounded field support")
    rng = np.random.default_rng(7)
    span = 3.0
    xs = np.concatenate([cfg.support.x_lo - span * rng.random(25) - 1e-6,
                         cfg.support.x_hi + span * rng.random(25) + 1e-6])
    ys = rng.uniform(-4.0, 4.0, xs.size)
    ts = rng.uniform(-2.0, 5.0, xs.size)
    for fn in (cfg.bz, cfg.ex, cfg.ey):
        assert_allclose(np.asarray(fn(xs, ys, ts)), 0.0, atol=1e-15)
    if cfg.potentials_confined:
        for fn in (cfg.ax, cfg.ay, cfg.phi):
            assert_allclose(np.asarray(fn(xs, ys, ts)), 0.0, atol=1e-15)


def test_samples_precondition():
    with pytest.raises(ValueError):
        check_consistency(gf.zero_config(), (0.0, 1.0, 0.0, 1.0), samples=3)


def test_constants_validation():
    with pytest.raises(ValueError):
        gf.PhysicalConstants(c=0.0)
    with pytest.raises(ValueError):
        gf.PhysicalConstants(flux_quantum=-1.0)
    assert gf.PhysicalConstants(q_over_hbar_c=2.0).phase(0.5) == 1.0


# -- retarded model -----------------------------------------------------------


def test_retarded_outside_light_cone_zero():
    profile = FluxProfile(1.0, 0.7, 0.0)
    ex, ey, bz = retarded_flux_fields(profile, (0.0, 0.0), 0.0, (5.0, 0.0), 3.0)
    assert (ex, ey, bz) == (0.0, -0.0, -0.0)


def test_retarded_static_limit():
    profile = FluxProfile(2.0, 0.0, 0.0)
    ex, ey, bz = retarded_flux_fields(profile, (0.0, 0.0), 0.0, (1.0, 1.0), 9.0)
    assert ex == ey == bz == 0.0
    cfg = gf.retarded_flux(2.0, 0.0, 0.0)
    # static azimuthal potential flux/(2 pi r) at r = 2
    assert_allclose(float(cfg.ay(np.asarray(2.0), np.asarray(0.0), np.asarray(5.0))),
                    2.0 / (2.0 * math.pi * 2.0), rtol=1e-14)


def test_retarded_ramp_magnitude_and_faraday():
    k = 0.7
    profile = FluxProfile(1.0, k, 0.0)
    ex, ey, bz = retarded_flux_fields(profile, (0.0, 0.0), 0.0, (1.0, 0.0), 2.0)
    assert_allclose(math.hypot(ex, ey), k / (2.0 * math.pi), rtol=1e-14)
    assert_allclose(bz, -k / (2.0 * math.pi), rtol=1e-14)
    # loop integral of E over the radius-1 circle equals -k/c by quadrature
    cfg = gf.retarded_flux(1.0, k, 0.0)

    def tangential(theta):
        x, y = np.cos(theta), np.sin(theta)
        return (cfg.ex(x, y, 2.0) * (-np.sin(theta))
                + cfg.ey(x, y, 2.0) * np.cos(theta))

    loop = gf.integrate_1d(tangential, 0.0, 2.0 * math.pi)
    assert_allclose(loop, -k, rtol=1e-6)


def test_retarded_singular_core():
    with pytest.raises(SingularPointError):
        retarded_flux_fields(FluxProfile(1.0, 0.7, 0.0), (0.0, 0.0), 0.0,
                             (0.0, 0.0), 2.0)


# -- tabulated grids ----------------------------------------------------------


def _write_grid(path, config, xs, ys, ts):
    rows = []
    for x in xs:
        for y in ys:
            for t in ts:
                X, Y, T = np.asarray(x), np.asarray(y), np.asarray(t)
                rows.append((x, y, t,
                             float(config.ax(X, Y, T)), float(config.ay(X, Y, T)),
                             float(config.phi(X, Y, T)), float(config.bz(X, Y, T)),
                             float(config.ex(X, Y, T)), float(config.ey(X, Y, T))))
    with open(path, "w") as fh:
        fh.write("x y t A_x A_y phi B_z E_x E_y\n")
        for row in rows:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def test_grid_roundtrip_linear_field(tmp_path):
    # linear-in-x potential: exactly representable by bilinear interpolation
    lin = replace(
        gf.zero_config(), name="linear",
        ay=lambda x, y, t: 0.5 * np.asarray(x, float) * np.ones(np.broadcast(x, y, t).shape),
        bz=lambda x, y, t: 0.5 * np.ones(np.broadcast(x, y, t).shape),
    )
    path = tmp_path / "grid.txt"
    _write_grid(path, lin, np.linspace(0, 3, 7), np.linspace(0, 2, 5),
                np.linspace(0, 1, 3))
    loaded = gf.load_grid_config(path)
    assert loaded.kind == "tabulated-grid"
    pts = np.array([[0.3, 1.1, 0.2], [2.7, 0.4, 0.9]])
    for x, y, t in pts:
        assert_allclose(float(loaded.ay(np.asarray(x), np.asarray(y), np.asarray(t))),
                        0.5 * x, rtol=1e-12)
    rep = check_consistency(loaded, (0.2, 2.8, 0.2, 1.8), 8, 1e-6,
                            times=(0.3, 0.7))
    assert rep.passed


def test_grid_static_time_axis(tmp_path):
    cfg = gf.vertical_strip(1.0, 2.0, 1.0)
    path = tmp_path / "grid.txt"
    _write_grid(path, cfg, np.linspace(0, 3, 61), np.linspace(0, 2, 5), [0.0])
    loaded = gf.load_grid_config(path)
    val = float(loaded.ay(np.asarray(2.5), np.asarray(1.0), np.asarray(0.0)))
    assert_allclose(val, 1.0, rtol=1e-12)


def test_grid_bad_header(tmp_path):
    path = tmp_path / "grid.txt"
    path.write_text("x y z A_x A_y phi B_z E_x E_y\n0 0 0 0 0 0 0 0 0\n")
    with pytest.raises(GridFormatError):
        gf.load_grid_config(path)


def test_grid_incomplete_rows(tmp_path):
    path = tmp_path / "grid.txt"
    path.write_text("x y t A_x A_y phi B_z E_x E_y\n"
                    "0 0 0 0 0 0 0 0 0\n"
                    "1 0 0 0 0 0 0 0 0\n"
                    "0 1 0 0 0 0 0 0 0\n")
    with pytest.raises(GridFormatError):
        gf.load_grid_config(path)


def test_grid_out_of_domain(tmp_path):
    path = tmp_path / "grid.txt"
    _write_grid(path, gf.zero_config(), [0.0, 1.0], [0.0, 1.0], [0.0, 1.0])
    loaded = gf.load_grid_config(path)
    with pytest.raises(GridFormatError):
        loaded.ax(np.asarray(2.0), np.asarray(0.5), np.asarray(0.5))


def test_make_config_registry():
    cfg = gf.make_config("vertical_strip", x_lo=0.0, x_hi=1.0, amplitude=2.0)
    assert cfg.name == "vertical_strip"
    with pytest.raises(ValueError):
        gf.make_config("no-such-config")
    assert set(gf.builtin_configs()) >= {
        "zero", "vertical_strip", "horizontal_strip", "triangle",
        "solenoid_flux", "capacitor_1d", "retarded_flux"}
