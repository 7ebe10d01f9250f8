"""Tube volumes against closed forms, curvature integrals, Monte Carlo.

Oracles: concentric-sphere geometry (offset sheets of a sphere of radius R
are spheres of radius R - t), classical torus area, and exact annulus and
shell volumes for the sampling cross-checks.
"""

import math

import numpy as np
import pytest

from supertubes.tubegeom import (
    FocalBoundWarning,
    LevelSetSurface,
    MultiPoly,
    QuadratureError,
    TubePolynomial,
    flat_chart,
    half_tube_volume,
    monte_carlo_tube_volume,
    sphere,
    surface_quadrature,
    torus,
    weighted_integral,
    weyl_coefficients,
)


def _unit_sphere_levelset():
    x, y, z = (MultiPoly.variable(3, i) for i in range(3))
    return LevelSetSurface(x * x + y * y + z * z - MultiPoly.constant(3, 1))


def test_sphere_half_tube_closed_form():
    ps = sphere(1.0, 2)
    for h in (0.0, 0.1, 0.25, 0.4):
        expected = 4.0 * math.pi * (1.0 - h) ** 2
        assert abs(half_tube_volume(ps, h) - expected) < 1e-8


def test_torus_surface_volume():
    ps = torus(2.0, 1.0)
    assert abs(half_tube_volume(ps, 0.0) - 8.0 * math.pi ** 2) < 1e-8


def test_weyl_coefficients_sphere():
    poly = weyl_coefficients(sphere(1.0, 2))
    np.testing.assert_allclose(poly.coefficients,
                               [4.0 * math.pi, -8.0 * math.pi, 4.0 * math.pi],
                               atol=1e-8)
    assert poly.euler_estimate == pytest.approx(2.0, abs=1e-6)
    assert poly.gauss_map_degree == pytest.approx(1.0, abs=1e-6)
    for h in (0.15, 0.35):
        assert poly.evaluate(h) == pytest.approx(half_tube_volume(sphere(1.0, 2), h), abs=1e-8)


def test_weyl_coefficients_torus():
    poly = weyl_coefficients(torus(2.0, 1.0))
    np.testing.assert_allclose(poly.coefficients,
                               [8.0 * math.pi ** 2, -8.0 * math.pi ** 2, 0.0],
                               atol=1e-7)
    assert poly.euler_estimate == pytest.approx(0.0, abs=1e-6)
    assert poly.gauss_map_degree == pytest.approx(0.0, abs=1e-6)


def test_weyl_coefficients_circle():
    poly = weyl_coefficients(sphere(1.0, 1))
    np.testing.assert_allclose(poly.coefficients, [2.0 * math.pi, -2.0 * math.pi], atol=1e-9)
    # band integral = annulus area between radii 1 and 1-h
    h = 0.3
    assert poly.band_integral(h) == pytest.approx(math.pi * (1.0 - (1.0 - h) ** 2), rel=1e-9)


def test_weyl_coefficients_open_chart():
    poly = weyl_coefficients(flat_chart(1.0))
    np.testing.assert_allclose(poly.coefficients, [1.0, 0.0, 0.0], atol=1e-12)
    assert poly.euler_estimate is None
    assert poly.gauss_map_degree is None


def test_two_surface_identity():
    """Adding the two one-sided tubes leaves twice the volume plus the
    Euler term; the torus term cancels."""
    h = 0.2
    ps = sphere(1.0, 2)
    lhs = half_tube_volume(ps, h) + half_tube_volume(ps, -h) - 2.0 * half_tube_volume(ps, 0.0)
    assert abs(lhs - 4.0 * math.pi * 2 * h * h) < 1e-7
    pt = torus(2.0, 1.0)
    lhs_t = half_tube_volume(pt, h) + half_tube_volume(pt, -h) - 2.0 * half_tube_volume(pt, 0.0)
    assert abs(lhs_t) < 1e-8


def test_focal_bound_warning():
    ps = sphere(1.0, 2)
    with pytest.warns(FocalBoundWarning):
        half_tube_volume(ps, 1.5)
    with pytest.warns(FocalBoundWarning):
        half_tube_volume(ps, -1.0)


def test_tube_polynomial_invariants():
    poly = TubePolynomial([2.0, -1.0], [0.0, 0.0])
    assert poly.evaluate(0.0) == 2.0
    assert poly.band_integral(1.0) == pytest.approx(2.0 - 0.5)
    with pytest.raises(ValueError, match="positive"):
        TubePolynomial([-1.0, 0.0], [0.0, 0.0])
    with pytest.raises(ValueError, match="length"):
        TubePolynomial([1.0], [0.0, 0.0])


def test_quadrature_budget_error():
    ps = sphere(1.0, 1)
    with pytest.raises(QuadratureError):
        surface_quadrature(ps, lambda u: abs(math.cos(u[0])), tol=1e-14, max_nodes=16)


def test_monte_carlo_sphere_shell():
    ps = sphere(1.0, 2)
    h = 0.3
    exact = 4.0 * math.pi / 3.0 * (1.0 - (1.0 - h) ** 3)
    est, err = monte_carlo_tube_volume(ps, h, samples=200_000, seed=42)
    assert err > 0
    assert abs(est - exact) < 3.0 * err
    # the shell volume is the integral of the offset-sheet volumes
    poly = weyl_coefficients(ps)
    assert poly.band_integral(h) == pytest.approx(exact, rel=1e-9)


def test_monte_carlo_negative_depth():
    ps = sphere(1.0, 2)
    h = -0.2
    exact = 4.0 * math.pi / 3.0 * (1.2 ** 3 - 1.0)
    est, err = monte_carlo_tube_volume(ps, h, samples=200_000, seed=7)
    assert abs(est - exact) < 3.0 * err
    poly = weyl_coefficients(ps)
    assert -poly.band_integral(h) == pytest.approx(exact, rel=1e-9)


def test_monte_carlo_torus_shell():
    ps = torus(2.0, 1.0)
    h = 0.25
    est, err = monte_carlo_tube_volume(ps, h, samples=200_000, seed=11)
    poly = weyl_coefficients(ps)
    assert abs(est - poly.band_integral(h)) < 3.0 * err


def test_monte_carlo_zero_depth_and_validation():
    ps = sphere(1.0, 2)
    assert monte_carlo_tube_volume(ps, 0.0, samples=100, seed=0) == (0.0, 0.0)
    with pytest.raises(ValueError, match="positive sample"):
        monte_carlo_tube_volume(ps, 0.1, samples=0, seed=0)


def test_monte_carlo_worker_independence():
    ps = torus(2.0, 1.0)
    single = monte_carlo_tube_volume(ps, 0.2, samples=150_000, seed=9, workers=1)
    multi = monte_carlo_tube_volume(ps, 0.2, samples=150_000, seed=9, workers=4)
    assert single == multi


def test_monte_carlo_level_set_sphere():
    ls = _unit_sphere_levelset()
    h = 0.3
    exact = 4.0 * math.pi / 3.0 * (1.0 - (1.0 - h) ** 3)
    est, err = monte_carlo_tube_volume(
        ls, h, samples=4000, seed=5,
        box=([-1.4, -1.4, -1.4], [1.4, 1.4, 1.4]))
    assert abs(est - exact) < 4.0 * err


def test_monte_carlo_level_set_needs_box():
    with pytest.raises(ValueError, match="bounding box"):
        monte_carlo_tube_volume(_unit_sphere_levelset(), 0.1, samples=10, seed=0)


def test_weighted_integral_circle_bump():
    """Polar-coordinates oracle: the weighted ambient integral around a
    circle of radius 1 is the profile integrated against 2 pi (1 - t)."""
    ps = sphere(1.0, 1)
    width = 0.2

    def bump(t):
        return np.cos(np.pi * t / (2.0 * width)) ** 2

    res = weighted_integral(ps, bump, band=(-width, width), samples=400_000, seed=21)
    exact = 2.0 * math.pi * width  # even part of rho integrates to width; odd part cancels
    assert res.tube_integral == pytest.approx(exact, abs=1e-8)
    assert abs(res.ambient_estimate - exact) < 4.0 * res.ambient_stderr
    assert res.rejected_samples >= 0


def test_weighted_integral_indicator_matches_shell():
    ps = sphere(1.0, 2)
    h = 0.3
    res = weighted_integral(ps, lambda t: np.ones_like(t), band=(0.0, h),
                            samples=200_000, seed=42)
    est, _ = monte_carlo_tube_volume(ps, h, samples=200_000, seed=42)
    assert res.ambient_estimate == pytest.approx(est, abs=1e-12)
    exact = 4.0 * math.pi / 3.0 * (1.0 - (1.0 - h) ** 3)
    assert res.tube_integral == pytest.approx(exact, abs=1e-7)
    assert abs(res.ambient_estimate - res.tube_integral) < 3.0 * res.ambient_stderr


def test_weighted_integral_zero_profile():
    ps = sphere(1.0, 1)
    res = weighted_integral(ps, lambda t: np.zeros_like(t), band=(-0.1, 0.1),
                            samples=10_000, seed=0)
    assert res.ambient_estimate == 0.0
    assert res.tube_integral == 0.0


def test_weighted_integral_validation():
    ps = sphere(1.0, 2)
    with pytest.raises(ValueError, match="ordered"):
        weighted_integral(ps, lambda t: t, band=(0.3, 0.1))
    with pytest.raises(ValueError, match="focal"):
        weighted_integral(ps, lambda t: t, band=(-0.5, 1.5))


def test_weighted_integral_worker_independence():
    ps = sphere(1.0, 1)
    kw = dict(band=(0.0, 0.2), samples=120_000, seed=3)
    one = weighted_integral(ps, lambda t: 1.0 + t, workers=1, **kw)
    two = weighted_integral(ps, lambda t: 1.0 + t, workers=3, **kw)
    assert one == two
