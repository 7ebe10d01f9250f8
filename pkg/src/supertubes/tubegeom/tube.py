"""Tube volumes, curvature-integral coefficients, and Monte Carlo checks.

The volume of the one-sided tube at depth h is the surface integral of
det(1 + h * shape operator); as a function of h it is a polynomial whose
coefficients are integrals of the elementary symmetric functions of the
principal curvatures.  Quadrature is tensor-product: trapezoid on periodic
axes, Gauss-Legendre otherwise, with doubling until two refinements agree.

Monte Carlo estimates integrate the same geometry ambiently, by sampling a
bounding box and classifying points through the signed tube coordinate.
Randomness is counter-based per chunk, so results depend only on the seed
and the sample count, never on the worker count.
"""

from __future__ import annotations

import itertools
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .levelset import LevelSetSurface, ProjectionError, char_poly_one_plus
from .parametric import ParametricSurface, weingarten_parametric

QUAD_TOL = 1e-10
MAX_QUAD_NODES = 2 ** 22
MC_CHUNK = 1 << 16


class FocalBoundWarning(UserWarning):
    """Tube depth at or beyond the focal radius; the polynomial loses its geometric meaning."""


class QuadratureError(RuntimeError):
    """Doubling exhausted the node budget without the estimates settling."""


@dataclass
class TubePolynomial:
    """Tube volume as a polynomial in the depth h, with quadrature error bars.

    ``euler_estimate`` (top coefficient over 2*pi, for 2-surfaces) and
    ``gauss_map_degree`` (top coefficient over the volume of the unit
    sphere) are filled in for closed surfaces.
    """

    coefficients: List[float]
    errors: List[float]
    euler_estimate: Optional[float] = None
    gauss_map_degree: Optional[float] = None

    def __post_init__(self) -> None:
        if len(self.coefficients) != len(self.errors):
            raise ValueError("coefficient and error lists differ in length")
        if not self.coefficients or self.coefficients[0] <= 0.0:
            raise ValueError("leading coefficient must be the positive surface volume")

    def evaluate(self, h: float) -> float:
        total = 0.0
        for c in reversed(self.coefficients):
            total = total * h + c
        return total

    def band_integral(self, h: float) -> float:
        """Integral of the polynomial from 0 to h: predicted shell volume."""
        total = 0.0
        for k in reversed(range(len(self.coefficients))):
            total = total * h + self.coefficients[k] / (k + 1)
        return total * h


def _axis_rule(lo: float, hi: float, periodic: bool, m: int) -> Tuple[np.ndarray, np.ndarray]:
    if periodic:
        nodes = lo + (hi - lo) * np.arange(m) / m
        weights = np.full(m, (hi - lo) / m)
    else:
        x, w = np.polynomial.legendre.leggauss(m)
        nodes = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        weights = 0.5 * (hi - lo) * w
    return nodes, weights


def surface_quadrature(
    ps: ParametricSurface,
    integrand: Callable[[Tuple[float, ...]], Union[float, np.ndarray]],
    tol: float = QUAD_TOL,
    max_nodes: int = MAX_QUAD_NODES,
    start: int = 8,
) -> Tuple[np.ndarray, float]:
    """Integrate over the chart domain, doubling nodes until stable.

    The integrand must include the volume element itself.  Returns the
    estimate as an array (scalars come back as length-1 arrays) and the gap
    between the last two refinements.
    """
    m = start
    prev: Optional[np.ndarray] = None
    while True:
        rules = [_axis_rule(lo, hi, per, m) for lo, hi, per in ps.domain]
        total: Optional[np.ndarray] = None
        for combo in itertools.product(*(range(m) for _ in ps.domain)):
            u = tuple(rules[i][0][k] for i, k in enumerate(combo))
            w = 1.0
            for i, k in enumerate(combo):
                w *= rules[i][1][k]
            val = np.atleast_1d(np.asarray(integrand(u), dtype=float)) * w
            total = val if total is None else total + val
        assert total is not None
        if prev is not None:
            gap = float(np.abs(total - prev).max())
            if gap < tol:
                return total, gap
        if (2 * m) ** ps.param_dim > max_nodes:
            gap = math.inf if prev is None else float(np.abs(total - prev).max())
            if gap > 1e-6:
                raise QuadratureError(
                    f"estimates still {gap:.3e} apart at the {max_nodes}-node budget")
            return total, gap
        prev = total
        m *= 2


def _shape_at(ps: ParametricSurface, u: Tuple[float, ...]):
    sd = weingarten_parametric(ps, u)
    vol = ps.volume_element(u)
    return sd, vol


def half_tube_volume(ps: ParametricSurface, h: float, tol: float = QUAD_TOL) -> float:
    """Surface integral of det(1 + h * shape operator): the offset-sheet volume."""
    hh = float(h)
    if math.isfinite(ps.focal_radius) and abs(hh) >= ps.focal_radius:
        warnings.warn(
            f"depth {hh} reaches the focal radius {ps.focal_radius}; "
            "the offset sheet self-intersects", FocalBoundWarning)

    def integrand(u: Tuple[float, ...]) -> float:
        sd, vol = _shape_at(ps, u)
        eye = np.eye(ps.param_dim)
        return vol * float(np.linalg.det(eye + hh * sd.weingarten))

    value, _ = surface_quadrature(ps, integrand, tol=tol)
    return float(value[0])


def weyl_coefficients(ps: ParametricSurface, tol: float = QUAD_TOL) -> TubePolynomial:
    """Integrals of the elementary symmetric curvature functions.

    Coefficient k is the surface integral of the degree-k elementary
    symmetric function of the principal curvatures, so evaluating the
    polynomial at h reproduces half_tube_volume(ps, h).
    """
    n = ps.param_dim

    def integrand(u: Tuple[float, ...]) -> np.ndarray:
        sd, vol = _shape_at(ps, u)
        return vol * np.asarray(char_poly_one_plus(sd.weingarten))

    value, gap = surface_quadrature(ps, integrand, tol=tol)
    coeffs = [float(v) for v in value]
    errors = [gap] * (n + 1)
    euler = None
    degree = None
    if ps.closed:
        if n == 2:
            euler = coeffs[2] / (2.0 * math.pi)
        sphere_vol = 2.0 * math.pi ** ((n + 1) / 2.0) / math.gamma((n + 1) / 2.0)
        degree = coeffs[n] / sphere_vol
    return TubePolynomial(coeffs, errors, euler_estimate=euler, gauss_map_degree=degree)


# -- Monte Carlo -----------------------------------------------------------


def _chunk_sizes(samples: int) -> List[int]:
    if samples <= 0:
        return []
    full, rest = divmod(samples, MC_CHUNK)
    sizes = [MC_CHUNK] * full
    if rest:
        sizes.append(rest)
    return sizes


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    # Counter-based stream keyed on (seed, chunk): worker-count independent.
    return np.random.Generator(np.random.Philox(key=np.array([seed, index], dtype=np.uint64)))


def _run_chunks(worker: Callable[[int], tuple], nchunks: int, workers: int) -> List[tuple]:
    if workers <= 1 or nchunks <= 1:
        return [worker(i) for i in range(nchunks)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves chunk order, so float reductions are deterministic
        return list(pool.map(worker, range(nchunks)))


def _tube_coords(surface, pts: np.ndarray) -> Tuple[np.ndarray, int]:
    """Signed tube coordinates; returns (values with NaN failures, failure count)."""
    if isinstance(surface, ParametricSurface):
        return surface.tube_coordinate_batch(pts), 0
    if isinstance(surface, LevelSetSurface):
        out = np.empty(len(pts))
        failures = 0
        for i, p in enumerate(pts):
            try:
                out[i] = surface.signed_tube_coordinate(p)
            except (ProjectionError, ValueError):
                out[i] = math.nan
                failures += 1
        return out, failures
    raise TypeError(f"unsupported surface type {type(surface).__name__}")


def monte_carlo_tube_volume(
    surface,
    h: float,
    samples: int = 1_000_000,
    seed: int = 0,
    workers: int = 1,
    box: Optional[Tuple[Sequence[float], Sequence[float]]] = None,
) -> Tuple[float, float]:
    """Volume of the one-sided shell of depth h, by rejection sampling.

    Counts box samples whose signed tube coordinate lies strictly between 0
    and h.  Returns (estimate, standard error).  For level-set surfaces a
    bounding box must be supplied and coordinates come from Newton
    projection; a projection failure rate above 0.1% aborts.
    """
    hh = float(h)
    if samples <= 0:
        raise ValueError("need a positive sample count")
    if hh == 0.0:
        return 0.0, 0.0
    if box is None:
        if not isinstance(surface, ParametricSurface):
            raise ValueError("a bounding box is required for level-set surfaces")
        lo, hi = surface.bounding_box(abs(hh))
    else:
        lo = np.asarray(box[0], dtype=float)
        hi = np.asarray(box[1], dtype=float)
    if np.any(hi <= lo):
        raise ValueError("bounding box is empty")
    box_vol = float(np.prod(hi - lo))
    t_lo, t_hi = (0.0, hh) if hh > 0 else (hh, 0.0)
    sizes = _chunk_sizes(samples)

    def worker(i: int) -> tuple:
        rng = _chunk_rng(seed, i)
        pts = lo + rng.random((sizes[i], len(lo))) * (hi - lo)
        t, failures = _tube_coords(surface, pts)
        with np.errstate(invalid="ignore"):
            hits = int(np.count_nonzero((t > t_lo) & (t < t_hi)))
        return hits, failures

    results = _run_chunks(worker, len(sizes), workers)
    hits = sum(r[0] for r in results)
    failures = sum(r[1] for r in results)
    if failures > 0.001 * samples:
        raise ProjectionError(
            f"{failures} of {samples} projections failed; surface too hard to project onto")
    p = hits / samples
    estimate = box_vol * p
    stderr = box_vol * math.sqrt(max(p * (1.0 - p), 0.0) / samples)
    return estimate, stderr


@dataclass
class WeightedIntegralResult:
    """Ambient Monte Carlo total versus the profile-weighted tube integral."""

    ambient_estimate: float
    ambient_stderr: float
    tube_integral: float
    tube_integral_gap: float
    rejected_samples: int
    samples: int


def weighted_integral(
    ps: ParametricSurface,
    rho: Callable[[np.ndarray], np.ndarray],
    band: Tuple[float, float],
    samples: int = 200_000,
    seed: int = 0,
    workers: int = 1,
    tol: float = QUAD_TOL,
) -> WeightedIntegralResult:
    """Check that an ambient integral of rho(tube coordinate) matches geometry.

    The ambient side samples a bounding box; the tube side integrates
    rho(t) against the tube polynomial over the support band, which must
    sit inside the focal bound.  rho must accept numpy arrays.
    """
    t_lo, t_hi = float(band[0]), float(band[1])
    if t_lo > t_hi:
        raise ValueError("band must be ordered (low, high)")
    if math.isfinite(ps.focal_radius) and max(abs(t_lo), abs(t_hi)) >= ps.focal_radius:
        raise ValueError("band must sit strictly inside the focal radius")

    poly = weyl_coefficients(ps, tol=tol)
    tube_side, gap = _profile_quadrature(rho, poly, t_lo, t_hi, tol)

    pad = max(abs(t_lo), abs(t_hi))
    lo, hi = ps.bounding_box(pad)
    box_vol = float(np.prod(hi - lo))
    sizes = _chunk_sizes(samples)
    if not sizes:
        raise ValueError("need a positive sample count")

    def worker(i: int) -> tuple:
        rng = _chunk_rng(seed, i)
        pts = lo + rng.random((sizes[i], len(lo))) * (hi - lo)
        t, _ = _tube_coords(ps, pts)
        inside = (t > t_lo) & (t < t_hi)
        rejected = int(np.count_nonzero(np.abs(t) >= ps.focal_radius))
        vals = np.zeros(sizes[i])
        if np.any(inside):
            vals[inside] = np.asarray(rho(t[inside]), dtype=float)
        return float(vals.sum()), float((vals * vals).sum()), rejected

    results = _run_chunks(worker, len(sizes), workers)
    s1 = 0.0
    s2 = 0.0
    rejected = 0
    for a, b, r in results:
        s1 += a
        s2 += b
        rejected += r
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0)
    return WeightedIntegralResult(
        ambient_estimate=box_vol * mean,
        ambient_stderr=box_vol * math.sqrt(var / samples),
        tube_integral=tube_side,
        tube_integral_gap=gap,
        rejected_samples=rejected,
        samples=samples,
    )


def _profile_quadrature(
    rho: Callable[[np.ndarray], np.ndarray],
    poly: TubePolynomial,
    t_lo: float,
    t_hi: float,
    tol: float,
) -> Tuple[float, float]:
    if t_hi == t_lo:
        return 0.0, 0.0
    m = 16
    prev: Optional[float] = None
    while True:
        x, w = np.polynomial.legendre.leggauss(m)
        t = 0.5 * (t_hi - t_lo) * x + 0.5 * (t_hi + t_lo)
        area = np.array([poly.evaluate(float(v)) for v in t])
        val = float(np.sum(w * np.asarray(rho(t), dtype=float) * area)) * 0.5 * (t_hi - t_lo)
        if prev is not None and abs(val - prev) < tol:
            return val, abs(val - prev)
        if m >= 1 << 14:
            return val, math.inf if prev is None else abs(val - prev)
        prev = val
        m *= 2
