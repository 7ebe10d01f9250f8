"""Hypersurfaces defined implicitly, and their dual curvature densities.

A surface is the zero set of a polynomial in n+1 variables.  From the exact
gradient and Hessian this module builds the volume density, the mean
curvature density, the matrix-valued density whose ratio to the volume
density extends the Weingarten operator to the whole ambient space, and the
local characteristic polynomial obtained by dividing out the mean-curvature
factor.  All densities rescale by a common factor when the defining
polynomial is rescaled, which is what makes them usable under a surface
delta function.

Derivatives are evaluated in exact rational arithmetic at rational points;
the assembled densities are returned as floats (the volume density carries
a square root).  Exact variants of the purely rational quantities are
provided for algebraic checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import numpy as np

from .mpoly import MultiPoly

# |grad|^2 at or below this is treated as a critical point and rejected.
SINGULAR_TOL = 1e-12
# Max remainder coefficient allowed when dividing out the mean-curvature factor.
REMAINDER_TOL = 1e-8


class SingularPointError(ValueError):
    """Density requested at a point where the gradient vanishes."""


class ProjectionError(RuntimeError):
    """Newton projection onto the surface failed to converge."""


class IdentityViolationError(AssertionError):
    """A checked algebraic identity failed beyond tolerance."""


@dataclass
class ShapeData:
    """Pointwise curvature data of a hypersurface.

    ``weingarten`` is the shape operator in the orthonormal tangent basis
    given by the columns of ``tangent_basis``, with the sign convention that
    applying it to a tangent vector gives minus the normal's directional
    derivative.  ``extended`` acts on the full ambient space: it restricts
    to the shape operator on the tangent space and multiplies the normal
    line by the mean curvature.
    """

    point: np.ndarray
    normal: np.ndarray
    weingarten: np.ndarray
    mean_curvature: float
    extended: np.ndarray
    tangent_basis: np.ndarray

    def check(self, tol: float = 1e-9) -> None:
        """Verify the eigenstructure the construction promises."""
        scale = 1.0 + float(np.abs(self.extended).max())
        if abs(float(np.trace(self.weingarten)) - self.mean_curvature) > tol * scale:
            raise IdentityViolationError("trace of shape operator differs from mean curvature")
        resid = self.extended @ self.normal - self.mean_curvature * self.normal
        if float(np.abs(resid).max()) > tol * scale:
            raise IdentityViolationError("normal is not an eigenvector of the extended operator")


def char_poly_one_plus(a: np.ndarray) -> List[float]:
    """Coefficients of det(1 + t*A) for symmetric A, ascending in t."""
    lam = np.linalg.eigvalsh(np.asarray(a, dtype=float))
    coeffs = [1.0]
    for ell in lam:
        nxt = [0.0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c
            nxt[i + 1] += c * ell
        coeffs = nxt
    return coeffs


def divide_out_linear(coeffs: Sequence[float], slope: float) -> Tuple[List[float], float]:
    """Divide a polynomial by (1 + slope*t); returns (quotient, remainder).

    Runs the synthetic division from the constant term up, so a slope of
    zero is handled without special cases.
    """
    quot: List[float] = []
    prev = 0.0
    for c in coeffs[:-1]:
        prev = c - slope * prev
        quot.append(prev)
    rem = coeffs[-1] - slope * prev
    return quot, rem


Point = Sequence[Union[int, Fraction, float]]


class LevelSetSurface:
    """The zero set of a polynomial in n+1 ambient variables."""

    def __init__(self, phi: MultiPoly):
        if phi.nvars < 2:
            raise ValueError("ambient space must have dimension at least 2")
        self.phi = phi
        self.ambient_dim = phi.nvars
        self.dim = phi.nvars - 1
        self._grad = [phi.partial(a) for a in range(phi.nvars)]
        self._hess = [[self._grad[a].partial(b) for b in range(phi.nvars)]
                      for a in range(phi.nvars)]

    # -- exact layer -------------------------------------------------------

    def grad_hess(self, x: Point):
        """Value, gradient and Hessian of the defining polynomial at x.

        Exact Fractions at rational points, floats otherwise.
        """
        value = self.phi.evaluate(x)
        grad = [g.evaluate(x) for g in self._grad]
        hess = [[self._hess[a][b].evaluate(x) for b in range(self.ambient_dim)]
                for a in range(self.ambient_dim)]
        return value, grad, hess

    def _exact_parts(self, x: Point):
        _, grad, hess = self.grad_hess(x)
        gg = sum(g * g for g in grad)
        if gg == 0:
            raise SingularPointError("singular point: gradient vanishes")
        return grad, hess, gg

    def dual_density_vol_sq_exact(self, x: Point) -> Fraction:
        """Square of the volume density; rational, so exact at rational points."""
        _, _, gg = self._exact_parts(x)
        return gg

    def dual_density_mcurv_exact(self, x: Point) -> Fraction:
        grad, hess, gg = self._exact_parts(x)
        n = self.ambient_dim
        lap = sum(hess[a][a] for a in range(n))
        ghg = sum(grad[a] * hess[a][b] * grad[b] for a in range(n) for b in range(n))
        return -lap + ghg / gg

    def shape_density_matrix_exact(self, x: Point) -> List[List[Fraction]]:
        grad, hess, gg = self._exact_parts(x)
        n = self.ambient_dim
        lap = sum(hess[a][a] for a in range(n))
        hg = [sum(hess[a][d] * grad[d] for d in range(n)) for a in range(n)]
        out = []
        for a in range(n):
            row = []
            for b in range(n):
                val = -hess[a][b] - grad[a] * grad[b] * lap / gg
                val += (grad[a] * hg[b] + grad[b] * hg[a]) / gg
                row.append(val)
            out.append(row)
        return out

    # -- float layer -------------------------------------------------------

    def _float_parts(self, x: Point):
        grad, hess, gg = self._exact_parts(x)
        g = np.array([float(v) for v in grad])
        h = np.array([[float(v) for v in row] for row in hess])
        gg_f = float(gg)
        if gg_f <= SINGULAR_TOL:
            raise SingularPointError("singular point: gradient vanishes")
        return g, h, gg_f

    def dual_density_vol(self, x: Point) -> float:
        _, _, gg = self._float_parts(x)
        return math.sqrt(gg)

    def dual_density_mcurv(self, x: Point) -> float:
        g, h, gg = self._float_parts(x)
        return float(-np.trace(h) + g @ h @ g / gg)

    def mean_curvature(self, x: Point) -> float:
        """Ratio of the two scalar densities; invariant under rescaling phi."""
        g, h, gg = self._float_parts(x)
        mc = float(-np.trace(h) + g @ h @ g / gg)
        return mc / math.sqrt(gg)

    def shape_density_matrix(self, x: Point) -> np.ndarray:
        g, h, gg = self._float_parts(x)
        lap = float(np.trace(h))
        hg = h @ g
        m = -h - np.outer(g, g) * (lap / gg)
        m += (np.outer(g, hg) + np.outer(hg, g)) / gg
        return m

    def cal_shape_operator(self, x: Point) -> ShapeData:
        """Extended shape operator at a regular point, with its eigen-split.

        The matrix density divided by the volume density acts as the
        Weingarten operator on the tangent space and as mean-curvature
        multiplication on the normal line; both facts are verified to 1e-9
        before returning.
        """
        g, h, gg = self._float_parts(x)
        avol = math.sqrt(gg)
        m = self.shape_density_matrix(x)
        extended = m / avol
        normal = g / avol
        mc = float(-np.trace(h) + g @ h @ g / gg) / avol
        basis = _tangent_frame(normal)
        weingarten = basis.T @ extended @ basis
        data = ShapeData(
            point=np.array([float(v) for v in x]),
            normal=normal,
            weingarten=weingarten,
            mean_curvature=mc,
            extended=extended,
            tangent_basis=basis,
        )
        data.check()
        return data

    def local_char_poly_dual(self, x: Point) -> Tuple[List[float], float]:
        """Characteristic polynomial of the shape operator from the dual route.

        Expands det(1 + t * extended operator), divides out the factor
        (1 + t * mean curvature), and returns (quotient coefficients,
        absolute remainder).  The remainder must vanish; exceeding the
        tolerance signals a singular point or a bug.
        """
        data = self.cal_shape_operator(x)
        full = char_poly_one_plus(data.extended)
        quot, rem = divide_out_linear(full, data.mean_curvature)
        if abs(rem) >= REMAINDER_TOL:
            raise IdentityViolationError(
                f"mean-curvature factor does not divide evenly (remainder {rem:.3e})")
        return quot, abs(rem)

    # -- projection --------------------------------------------------------

    def _phi_float(self, x: np.ndarray) -> float:
        return float(self.phi.evaluate([float(v) for v in x]))

    def _grad_float(self, x: np.ndarray) -> np.ndarray:
        pt = [float(v) for v in x]
        return np.array([float(g.evaluate(pt)) for g in self._grad])

    def project_to_surface(self, x0: Point, max_iter: int = 50,
                           tol: float = 1e-12) -> np.ndarray:
        """Damped Newton projection onto the zero set along the gradient."""
        x = np.array([float(v) for v in x0])
        value = self._phi_float(x)
        for _ in range(max_iter):
            if abs(value) <= tol:
                return x
            g = self._grad_float(x)
            gg = float(g @ g)
            if gg <= SINGULAR_TOL:
                raise SingularPointError("projection hit a critical point")
            step = -(value / gg) * g
            lam = 1.0
            while True:
                trial = x + lam * step
                trial_value = self._phi_float(trial)
                if abs(trial_value) < abs(value):
                    x, value = trial, trial_value
                    break
                lam *= 0.5
                if lam < 1e-4:
                    raise ProjectionError("projection stalled; no descent step found")
        if abs(value) <= tol:
            return x
        raise ProjectionError(f"no convergence after {max_iter} iterations "
                              f"(residual {value:.3e})")

    def signed_tube_coordinate(self, y: Point) -> float:
        """Signed offset of y from the surface along the outward normal.

        Positive on the side swept by positive tube parameter, i.e. the side
        the inward sweep x - t*normal reaches for t > 0.  Uses Newton
        projection, so y must be within the reach of the nearest-point map.
        """
        y_arr = np.array([float(v) for v in y])
        p = self.project_to_surface(y_arr)
        g = self._grad_float(p)
        norm = float(np.linalg.norm(g))
        if norm <= SINGULAR_TOL:
            raise SingularPointError("projection landed on a critical point")
        return float(-(g / norm) @ (y_arr - p))


def _tangent_frame(normal: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the hyperplane orthogonal to a unit vector.

    Columns of the result; built from a Householder reflection so the frame
    depends continuously on the normal away from the flip locus.
    """
    m = len(normal)
    sign = 1.0 if normal[0] >= 0 else -1.0
    v = normal.astype(float).copy()
    v[0] += sign
    v /= np.linalg.norm(v)
    q = np.eye(m) - 2.0 * np.outer(v, v)
    return q[:, 1:]
