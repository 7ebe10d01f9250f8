"""Explicit charts for built-in surfaces and the parametric curvature route.

The built-ins are the circle, the round 2-sphere and the torus of
revolution, all oriented by the outward unit normal.  Offsetting follows
x(u, t) = x(u) - t * normal(u), so positive tube parameter moves inward and
the shape operator of a sphere of radius R is -1/R times the identity.
"""

from __future__ import annotations

import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .levelset import LevelSetSurface, ShapeData
from .mpoly import MultiPoly


class DegenerateMetricError(ValueError):
    """First fundamental form is singular at the requested parameter point."""


AxisDomain = Tuple[float, float, bool]  # (lo, hi, periodic)


class ParametricSurface:
    """Embedded hypersurface given by a chart with two derivative orders.

    All callables take a plain tuple of parameter floats.  ``second``
    returns an array of shape (param_dim, param_dim, ambient_dim).  A
    vectorized signed tube coordinate and a bounding box are present for
    the closed built-ins and power the Monte Carlo volume checks.
    """

    def __init__(
        self,
        kind: str,
        domain: Sequence[AxisDomain],
        embed: Callable[[Tuple[float, ...]], np.ndarray],
        jacobian: Callable[[Tuple[float, ...]], np.ndarray],
        second: Callable[[Tuple[float, ...]], np.ndarray],
        normal: Callable[[Tuple[float, ...]], np.ndarray],
        closed: bool,
        focal_radius: float,
        tube_coordinate_batch: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        bounding_box: Optional[Callable[[float], Tuple[np.ndarray, np.ndarray]]] = None,
        params: Optional[dict] = None,
    ):
        self.kind = kind
        self.domain = [(float(lo), float(hi), bool(per)) for lo, hi, per in domain]
        self.param_dim = len(self.domain)
        self.ambient_dim = self.param_dim + 1
        self._embed = embed
        self._jacobian = jacobian
        self._second = second
        self._normal = normal
        self.closed = closed
        self.focal_radius = float(focal_radius)
        self._tube_coordinate_batch = tube_coordinate_batch
        self._bounding_box = bounding_box
        self.params = dict(params or {})

    def embed(self, u: Sequence[float]) -> np.ndarray:
        return self._embed(tuple(float(v) for v in u))

    def jacobian(self, u: Sequence[float]) -> np.ndarray:
        return self._jacobian(tuple(float(v) for v in u))

    def second_derivatives(self, u: Sequence[float]) -> np.ndarray:
        return self._second(tuple(float(v) for v in u))

    def normal(self, u: Sequence[float]) -> np.ndarray:
        return self._normal(tuple(float(v) for v in u))

    def metric(self, u: Sequence[float]) -> np.ndarray:
        j = self.jacobian(u)
        return j.T @ j

    def volume_element(self, u: Sequence[float]) -> float:
        det = float(np.linalg.det(self.metric(u)))
        if det <= 0.0:
            raise DegenerateMetricError(f"metric determinant {det:.3e} at u={tuple(u)}")
        return math.sqrt(det)

    def tube_coordinate_batch(self, points: np.ndarray) -> np.ndarray:
        """Signed tube coordinate for an (m, ambient_dim) array of points."""
        if self._tube_coordinate_batch is None:
            raise ValueError(f"surface kind {self.kind!r} has no signed-distance model")
        return self._tube_coordinate_batch(np.asarray(points, dtype=float))

    def bounding_box(self, pad: float) -> Tuple[np.ndarray, np.ndarray]:
        if self._bounding_box is None:
            raise ValueError(f"surface kind {self.kind!r} has no bounding box")
        return self._bounding_box(float(pad))


def weingarten_parametric(ps: ParametricSurface, u: Sequence[float]) -> ShapeData:
    """Curvature data from chart derivatives at a regular parameter point."""
    uu = tuple(float(v) for v in u)
    j = ps.jacobian(uu)
    g = j.T @ j
    det_g = float(np.linalg.det(g))
    if det_g <= 1e-14 * max(1.0, float(np.abs(g).max())) ** ps.param_dim:
        raise DegenerateMetricError(f"metric determinant {det_g:.3e} at u={uu}")
    n = ps.normal(uu)
    sec = ps.second_derivatives(uu)
    # b_ik = normal . d^2 x / du_i du_k; shape operator in chart basis is g^{-1} b.
    b = np.einsum("ika,a->ik", sec, n)
    s_coord = np.linalg.solve(g, b)
    mc = float(np.trace(s_coord))
    g_inv = np.linalg.inv(g)
    extended = j @ s_coord @ g_inv @ j.T + mc * np.outer(n, n)
    q, _ = np.linalg.qr(j)
    weingarten = q.T @ extended @ q
    data = ShapeData(
        point=ps.embed(uu),
        normal=n,
        weingarten=weingarten,
        mean_curvature=mc,
        extended=extended,
        tangent_basis=q,
    )
    data.check()
    return data


def tube_jacobian(ps: ParametricSurface, u: Sequence[float], t: float) -> float:
    """Volume distortion of the offset map at parameter u and tube depth t.

    Product of the chart volume element with det(1 + t * shape operator).
    """
    uu = tuple(float(v) for v in u)
    j = ps.jacobian(uu)
    g = j.T @ j
    det_g = float(np.linalg.det(g))
    if det_g <= 0.0:
        raise DegenerateMetricError(f"metric determinant {det_g:.3e} at u={uu}")
    b = np.einsum("ika,a->ik", ps.second_derivatives(uu), ps.normal(uu))
    s_coord = np.linalg.solve(g, b)
    eye = np.eye(ps.param_dim)
    return math.sqrt(det_g) * float(np.linalg.det(eye + float(t) * s_coord))


# -- built-in surfaces -----------------------------------------------------


def sphere(radius: float = 1.0, dim: int = 2) -> ParametricSurface:
    """Round sphere of the given radius: circle for dim=1, 2-sphere for dim=2."""
    r = float(radius)
    if r <= 0.0:
        raise ValueError("radius must be positive")
    if dim == 1:
        return _circle(r)
    if dim == 2:
        return _sphere2(r)
    raise ValueError("built-in spheres cover dimensions 1 and 2")


def _circle(r: float) -> ParametricSurface:
    def embed(u):
        (a,) = u
        return np.array([r * math.cos(a), r * math.sin(a)])

    def jac(u):
        (a,) = u
        return np.array([[-r * math.sin(a)], [r * math.cos(a)]])

    def second(u):
        (a,) = u
        return np.array([[[-r * math.cos(a), -r * math.sin(a)]]])

    def normal(u):
        (a,) = u
        return np.array([math.cos(a), math.sin(a)])

    def tube_batch(pts):
        return r - np.linalg.norm(pts, axis=1)

    def box(pad):
        half = r + pad
        return -half * np.ones(2), half * np.ones(2)

    return ParametricSurface(
        kind="sphere", domain=[(0.0, 2.0 * math.pi, True)],
        embed=embed, jacobian=jac, second=second, normal=normal,
        closed=True, focal_radius=r,
        tube_coordinate_batch=tube_batch, bounding_box=box,
        params={"R": r, "n": 1},
    )


def _sphere2(r: float) -> ParametricSurface:
    def embed(u):
        th, ph = u
        st, ct = math.sin(th), math.cos(th)
        return np.array([r * st * math.cos(ph), r * st * math.sin(ph), r * ct])

    def jac(u):
        th, ph = u
        st, ct = math.sin(th), math.cos(th)
        sp, cp = math.sin(ph), math.cos(ph)
        return np.array([
            [r * ct * cp, -r * st * sp],
            [r * ct * sp, r * st * cp],
            [-r * st, 0.0],
        ])

    def second(u):
        th, ph = u
        st, ct = math.sin(th), math.cos(th)
        sp, cp = math.sin(ph), math.cos(ph)
        d_thth = np.array([-r * st * cp, -r * st * sp, -r * ct])
        d_thph = np.array([-r * ct * sp, r * ct * cp, 0.0])
        d_phph = np.array([-r * st * cp, -r * st * sp, 0.0])
        return np.array([[d_thth, d_thph], [d_thph, d_phph]])

    def normal(u):
        return embed(u) / r

    def tube_batch(pts):
        return r - np.linalg.norm(pts, axis=1)

    def box(pad):
        half = r + pad
        return -half * np.ones(3), half * np.ones(3)

    return ParametricSurface(
        kind="sphere", domain=[(0.0, math.pi, False), (0.0, 2.0 * math.pi, True)],
        embed=embed, jacobian=jac, second=second, normal=normal,
        closed=True, focal_radius=r,
        tube_coordinate_batch=tube_batch, bounding_box=box,
        params={"R": r, "n": 2},
    )


def torus(major: float = 2.0, minor: float = 1.0) -> ParametricSurface:
    """Torus of revolution around the z axis; needs major > minor > 0."""
    big, small = float(major), float(minor)
    if not big > small > 0.0:
        raise ValueError("torus needs major > minor > 0")

    def embed(u):
        al, be = u
        rho = big + small * math.cos(al)
        return np.array([rho * math.cos(be), rho * math.sin(be), small * math.sin(al)])

    def jac(u):
        al, be = u
        sa, ca = math.sin(al), math.cos(al)
        sb, cb = math.sin(be), math.cos(be)
        rho = big + small * ca
        return np.array([
            [-small * sa * cb, -rho * sb],
            [-small * sa * sb, rho * cb],
            [small * ca, 0.0],
        ])

    def second(u):
        al, be = u
        sa, ca = math.sin(al), math.cos(al)
        sb, cb = math.sin(be), math.cos(be)
        rho = big + small * ca
        d_aa = np.array([-small * ca * cb, -small * ca * sb, -small * sa])
        d_ab = np.array([small * sa * sb, -small * sa * cb, 0.0])
        d_bb = np.array([-rho * cb, -rho * sb, 0.0])
        return np.array([[d_aa, d_ab], [d_ab, d_bb]])

    def normal(u):
        al, be = u
        ca = math.cos(al)
        return np.array([ca * math.cos(be), ca * math.sin(be), math.sin(al)])

    def tube_batch(pts):
        rho = np.hypot(pts[:, 0], pts[:, 1])
        return small - np.hypot(rho - big, pts[:, 2])

    def box(pad):
        xy = big + small + pad
        z = small + pad
        return np.array([-xy, -xy, -z]), np.array([xy, xy, z])

    return ParametricSurface(
        kind="torus", domain=[(0.0, 2.0 * math.pi, True), (0.0, 2.0 * math.pi, True)],
        embed=embed, jacobian=jac, second=second, normal=normal,
        closed=True, focal_radius=min(small, big - small),
        tube_coordinate_batch=tube_batch, bounding_box=box,
        params={"R": big, "r": small},
    )


def flat_chart(size: float = 1.0) -> ParametricSurface:
    """Open planar square patch; smoke-test surface with zero curvature."""
    s = float(size)
    if s <= 0.0:
        raise ValueError("size must be positive")

    def embed(u):
        return np.array([u[0], u[1], 0.0])

    def jac(u):
        return np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])

    def second(u):
        return np.zeros((2, 2, 3))

    def normal(u):
        return np.array([0.0, 0.0, 1.0])

    return ParametricSurface(
        kind="chart", domain=[(0.0, s, False), (0.0, s, False)],
        embed=embed, jacobian=jac, second=second, normal=normal,
        closed=False, focal_radius=math.inf,
        params={"size": s},
    )


def surface_from_json(data: dict):
    """Build a surface from its JSON description.

    Supported kinds: sphere {R, n}, torus {R, r}, chart {size}, and
    levelset {phi: sparse polynomial}.
    """
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError('surface JSON needs a "kind" field')
    kind = data["kind"]
    if kind == "sphere":
        return sphere(float(data.get("R", 1.0)), int(data.get("n", 2)))
    if kind == "torus":
        return torus(float(data.get("R", 2.0)), float(data.get("r", 1.0)))
    if kind == "chart":
        return flat_chart(float(data.get("size", 1.0)))
    if kind == "levelset":
        if "phi" not in data:
            raise ValueError('level-set JSON needs a "phi" polynomial')
        return LevelSetSurface(MultiPoly.from_json(data["phi"]))
    raise ValueError(f"unknown surface kind {kind!r}")
