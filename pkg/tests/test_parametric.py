"""Parametric charts: curvature spectra, tube Jacobians, chart plumbing.

Oracles: classical principal curvatures of the round sphere and the torus
of revolution, and cross-checks of the parametric route against the
level-set route on the same surfaces.
"""

import math

import numpy as np
import pytest

from supertubes.tubegeom import (
    DegenerateMetricError,
    LevelSetSurface,
    MultiPoly,
    ParametricSurface,
    flat_chart,
    sphere,
    surface_from_json,
    torus,
    tube_jacobian,
    weingarten_parametric,
)


def _torus_quartic(big=2, small=1):
    # (x^2+y^2+z^2 + big^2 - small^2)^2 = 4 big^2 (x^2+y^2)
    x, y, z = (MultiPoly.variable(3, i) for i in range(3))
    radial = x * x + y * y
    shifted = radial + z * z + MultiPoly.constant(3, big * big - small * small)
    return shifted * shifted - radial * (4 * big * big)


def test_sphere_weingarten():
    for radius in (1.0, 2.0):
        ps = sphere(radius, 2)
        data = weingarten_parametric(ps, (math.pi / 3, math.pi / 4))
        np.testing.assert_allclose(data.weingarten, -np.eye(2) / radius, atol=1e-12)
        assert data.mean_curvature == pytest.approx(-2.0 / radius)
        np.testing.assert_allclose(sorted(np.linalg.eigvalsh(data.extended)),
                                   [-2.0 / radius, -1.0 / radius, -1.0 / radius],
                                   atol=1e-12)
        np.testing.assert_allclose(data.normal, data.point / radius, atol=1e-12)


def test_circle_weingarten():
    ps = sphere(1.0, 1)
    data = weingarten_parametric(ps, (0.7,))
    np.testing.assert_allclose(data.weingarten, [[-1.0]], atol=1e-12)
    assert data.mean_curvature == pytest.approx(-1.0)


def test_torus_principal_curvatures():
    ps = torus(2.0, 1.0)
    outer = weingarten_parametric(ps, (0.0, 0.3))
    np.testing.assert_allclose(sorted(np.linalg.eigvalsh(outer.weingarten)),
                               [-1.0, -1.0 / 3.0], atol=1e-12)
    inner = weingarten_parametric(ps, (math.pi, 1.2))
    np.testing.assert_allclose(sorted(np.linalg.eigvalsh(inner.weingarten)),
                               [-1.0, 1.0], atol=1e-12)
    assert inner.mean_curvature == pytest.approx(0.0, abs=1e-12)
    top = weingarten_parametric(ps, (math.pi / 2, 0.0))
    np.testing.assert_allclose(sorted(np.linalg.eigvalsh(top.weingarten)),
                               [-1.0, 0.0], atol=1e-12)


def test_torus_curvature_general_point():
    big, small = 2.0, 1.0
    ps = torus(big, small)
    alpha = 0.9
    rho = big + small * math.cos(alpha)
    expected = sorted([-1.0 / small, -math.cos(alpha) / rho])
    data = weingarten_parametric(ps, (alpha, 2.2))
    np.testing.assert_allclose(sorted(np.linalg.eigvalsh(data.weingarten)),
                               expected, atol=1e-12)


def test_flat_chart_is_flat():
    ps = flat_chart(2.0)
    data = weingarten_parametric(ps, (0.3, 1.1))
    np.testing.assert_allclose(data.weingarten, np.zeros((2, 2)), atol=1e-15)
    assert tube_jacobian(ps, (0.3, 1.1), 0.7) == pytest.approx(1.0)


def test_normals_unit_and_orthogonal():
    for ps, u in ((sphere(1.5, 2), (1.0, 2.0)), (torus(2.0, 1.0), (0.8, 2.5))):
        n = ps.normal(u)
        j = ps.jacobian(u)
        assert np.linalg.norm(n) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(j.T @ n, np.zeros(2), atol=1e-12)


def test_volume_elements():
    ps = sphere(2.0, 2)
    theta = 1.1
    assert ps.volume_element((theta, 0.4)) == pytest.approx(4.0 * math.sin(theta), rel=1e-12)
    pt = torus(2.0, 1.0)
    alpha = 2.0
    assert pt.volume_element((alpha, 0.1)) == pytest.approx(2.0 + math.cos(alpha), rel=1e-12)


def test_tube_jacobian_sphere_equator():
    radius = 1.0
    ps = sphere(radius, 2)
    u = (math.pi / 2, 1.0)
    assert tube_jacobian(ps, u, 0.0) == pytest.approx(radius ** 2, rel=1e-12)
    for t in (0.1, 0.3, -0.2):
        expected = radius ** 2 * (1.0 - t / radius) ** 2
        assert tube_jacobian(ps, u, t) == pytest.approx(expected, rel=1e-12)


def test_tube_jacobian_torus_equators():
    ps = torus(2.0, 1.0)
    for t in (0.1, -0.1, 0.25):
        outer = tube_jacobian(ps, (0.0, 0.5), t) / tube_jacobian(ps, (0.0, 0.5), 0.0)
        assert outer == pytest.approx((1.0 - t) * (1.0 - t / 3.0), rel=1e-12)
        inner = tube_jacobian(ps, (math.pi, 0.5), t) / tube_jacobian(ps, (math.pi, 0.5), 0.0)
        assert inner == pytest.approx((1.0 - t) * (1.0 + t), rel=1e-12)


def test_parametric_agrees_with_level_set_sphere():
    radius = 2
    ps = sphere(float(radius), 2)
    x, y, z = (MultiPoly.variable(3, i) for i in range(3))
    ls = LevelSetSurface(x * x + y * y + z * z - MultiPoly.constant(3, radius * radius))
    for u in ((0.8, 0.3), (2.1, 4.0)):
        par = weingarten_parametric(ps, u)
        dual = ls.cal_shape_operator(par.point)
        np.testing.assert_allclose(sorted(np.linalg.eigvalsh(par.weingarten)),
                                   sorted(np.linalg.eigvalsh(dual.weingarten)), atol=1e-8)
        assert par.mean_curvature == pytest.approx(dual.mean_curvature, abs=1e-8)
        np.testing.assert_allclose(sorted(np.linalg.eigvalsh(par.extended)),
                                   sorted(np.linalg.eigvalsh(dual.extended)), atol=1e-8)


def test_parametric_agrees_with_level_set_torus():
    ps = torus(2.0, 1.0)
    ls = LevelSetSurface(_torus_quartic(2, 1))
    for u in ((0.0, 0.0), (0.7, 1.1), (math.pi, 2.0), (2.4, 5.0)):
        par = weingarten_parametric(ps, u)
        dual = ls.cal_shape_operator(par.point)
        np.testing.assert_allclose(sorted(np.linalg.eigvalsh(par.weingarten)),
                                   sorted(np.linalg.eigvalsh(dual.weingarten)), atol=1e-8)
        assert par.mean_curvature == pytest.approx(dual.mean_curvature, abs=1e-8)
        np.testing.assert_allclose(par.normal, dual.normal, atol=1e-8)


def test_degenerate_metric_rejected():
    def embed(u):
        return np.array([u[0], u[0], 0.0])

    def jac(u):
        return np.array([[1.0, 1.0], [1.0, 1.0], [0.0, 0.0]])

    def second(u):
        return np.zeros((2, 2, 3))

    def normal(u):
        return np.array([0.0, 0.0, 1.0])

    bad = ParametricSurface("chart", [(0, 1, False), (0, 1, False)],
                            embed, jac, second, normal,
                            closed=False, focal_radius=math.inf)
    with pytest.raises(DegenerateMetricError):
        weingarten_parametric(bad, (0.5, 0.5))


def test_constructor_validation():
    with pytest.raises(ValueError, match="dimensions 1 and 2"):
        sphere(1.0, 3)
    with pytest.raises(ValueError, match="positive"):
        sphere(-1.0, 2)
    with pytest.raises(ValueError, match="major > minor"):
        torus(1.0, 2.0)


def test_surface_from_json():
    ps = surface_from_json({"kind": "sphere", "R": 2.5, "n": 2})
    assert ps.kind == "sphere"
    assert ps.focal_radius == 2.5
    pt = surface_from_json({"kind": "torus", "R": 3.0, "r": 0.5})
    assert pt.params == {"R": 3.0, "r": 0.5}
    chart = surface_from_json({"kind": "chart", "size": 2.0})
    assert not chart.closed
    ls = surface_from_json({
        "kind": "levelset",
        "phi": {"nvars": 3, "terms": [{"exps": [2, 0, 0], "coeff": 1},
                                      {"exps": [0, 2, 0], "coeff": 1},
                                      {"exps": [0, 0, 2], "coeff": 1},
                                      {"exps": [0, 0, 0], "coeff": -1}]},
    })
    assert isinstance(ls, LevelSetSurface)
    assert ls.dual_density_vol([1, 0, 0]) == 2.0
    with pytest.raises(ValueError, match="kind"):
        surface_from_json({"kind": "klein-bottle"})
    with pytest.raises(ValueError, match="phi"):
        surface_from_json({"kind": "levelset"})


def test_tube_coordinate_batch():
    ps = sphere(1.0, 2)
    pts = np.array([[0.8, 0.0, 0.0], [0.0, 1.3, 0.0]])
    np.testing.assert_allclose(ps.tube_coordinate_batch(pts), [0.2, -0.3], atol=1e-12)
    pt = torus(2.0, 1.0)
    samples = np.array([[3.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.5]])
    np.testing.assert_allclose(pt.tube_coordinate_batch(samples), [0.0, 0.0, 0.5], atol=1e-12)
    with pytest.raises(ValueError, match="signed-distance"):
        flat_chart().tube_coordinate_batch(np.zeros((1, 3)))
