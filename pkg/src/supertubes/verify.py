"""Verification suites: batches of identity checks with pinned tolerances.

Each suite derives its own deterministic random stream from the base
seed and the suite name, runs a batch of cases, and reports one row per
case with the measured residual and the tolerance it was held to.
Exact-arithmetic suites report residual 0.0 on success and 1.0 on a
mismatch; numerical suites report the actual deviation.
"""

from __future__ import annotations

import math
import random
import warnings
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exact import RationalFunction, UniPoly, linear_recurrence_check
from .report import Table
from .superalg import (
    GrassmannElement,
    GrassmannSeries,
    SuperDim,
    SuperMatrix,
    ber_plus_minus,
    berezinian,
    char_dual_series,
    char_function_exact,
    char_function_raw,
    char_series,
    complex_cohomology_char,
    quotient_char_check,
    realize_operator,
)
from .superalg import linalg
from .tubegeom import (
    FocalBoundWarning,
    IdentityViolationError,
    LevelSetSurface,
    MultiPoly,
    ProjectionError,
    SingularPointError,
    half_tube_volume,
    monte_carlo_tube_volume,
    sphere,
    torus,
    weyl_coefficients,
)
from .tubegeom.levelset import char_poly_one_plus
from .zeta import (
    DEFAULT_BUDGET,
    PrimePolyVariety,
    count_points,
    predict_counts,
    zeta_rational,
    zeta_realize,
)

F = Fraction

TOLERANCE_DEFAULTS: Dict[str, float] = {
    "closed_form": 1e-8,
    "two_surface": 1e-7,
    "det_split": 1e-8,
    "gauge": 1e-9,
    "mc_sigma": 4.0,
}

COLUMNS = ["case", "value", "reference", "residual", "tolerance", "verdict"]

_NGEN = 4
_DIMS = [(1, 1), (2, 1), (2, 2)]


def suite_seed(base: int, name: str) -> int:
    """Stable per-suite stream: the base seed folded with the suite name."""
    return (int(base) ^ zlib.crc32(name.encode("ascii"))) & 0x7FFF_FFFF_FFFF_FFFF


@dataclass
class SuiteContext:
    seed: int = 0
    workers: int = 1
    budget: int = DEFAULT_BUDGET
    samples: int = 400_000
    tolerances: Dict[str, float] = field(default_factory=dict)

    def rng(self, name: str) -> random.Random:
        return random.Random(suite_seed(self.seed, name))

    def tol(self, name: str) -> float:
        return float(self.tolerances.get(name, TOLERANCE_DEFAULTS[name]))


@dataclass
class SuiteOutcome:
    name: str
    passed: bool
    max_residual: float
    tolerance: float
    table: Table


class _Rows:
    """Accumulates verdict rows and tracks the worst residual."""

    def __init__(self, tolerance: float):
        self.tolerance = float(tolerance)
        self.rows: List[List[object]] = []
        self.worst = 0.0

    def add(self, case: str, value, reference, residual: float) -> None:
        residual = float(residual)
        self.worst = max(self.worst, residual)
        verdict = "pass" if residual <= self.tolerance else "fail"
        self.rows.append([case, value, reference, residual, self.tolerance, verdict])

    def exact(self, case: str, value, reference, equal: bool) -> None:
        self.add(case, value, reference, 0.0 if equal else 1.0)

    def outcome(self, name: str) -> SuiteOutcome:
        passed = all(row[-1] == "pass" for row in self.rows)
        return SuiteOutcome(name, passed, self.worst, self.tolerance,
                            Table(name, COLUMNS, self.rows))


# ------------------------------------------------------- random constructions


def random_anchored_level_set(rng: random.Random, nvars: int,
                              degree: int = 4, nterms: int = 8):
    """Polynomial level set through a rational anchor with a healthy gradient."""
    while True:
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for _ in range(nterms):
            exps = [0] * nvars
            for _ in range(rng.randint(0, degree)):
                exps[rng.randrange(nvars)] += 1
            key = tuple(exps)
            coeff = F(rng.randint(-4, 4), rng.randint(1, 3))
            terms[key] = terms.get(key, F(0)) + coeff
        poly = MultiPoly(nvars, terms)
        anchor = [F(rng.randint(-6, 6), 4) for _ in range(nvars)]
        shifted = poly - MultiPoly.constant(nvars, poly.evaluate(anchor))
        surface = LevelSetSurface(shifted)
        _, grad, _ = surface.grad_hess(anchor)
        if sum(g * g for g in grad) >= F(1, 4):
            return surface, anchor


def projected_surface_points(surface: LevelSetSurface, rng: random.Random,
                             anchor, want: int, max_tries: int = 250,
                             spread: float = 0.6, op_bound: float = 25.0,
                             vol_floor: float = 0.5) -> List[np.ndarray]:
    """Newton-projected points near the anchor, rejecting ill-conditioned ones."""
    pts = [np.array([float(v) for v in anchor])]
    for _ in range(max_tries):
        if len(pts) >= want:
            break
        start = pts[0] + np.array(
            [rng.uniform(-spread, spread) for _ in range(surface.ambient_dim)])
        try:
            p = surface.project_to_surface(start)
            data = surface.cal_shape_operator(p)
        except (ProjectionError, SingularPointError):
            continue
        if np.linalg.norm(data.extended, 2) > op_bound:
            continue
        if surface.dual_density_vol(p) < vol_floor:
            continue
        pts.append(p)
    return pts[:want]


def det_split_scan(seed: int, surfaces_per_dim: int, points_per_surface: int,
                   dims: Sequence[int] = (3, 4), degree: int = 4):
    """Worst splitting residual of the local characteristic polynomial.

    Returns (worst residual, points checked, per-surface rows).
    """
    rng = random.Random(seed)
    rows: List[List[object]] = []
    worst = 0.0
    total = 0
    for nvars in dims:
        for index in range(surfaces_per_dim):
            surface, anchor = random_anchored_level_set(rng, nvars, degree)
            pts = projected_surface_points(surface, rng, anchor, points_per_surface)
            local = 0.0
            for p in pts:
                try:
                    data = surface.cal_shape_operator(p)
                    full = char_poly_one_plus(data.extended)
                    split = np.convolve(char_poly_one_plus(data.weingarten),
                                        [1.0, data.mean_curvature])
                    resid = max(abs(a - b) for a, b in zip(full, split))
                    _, rem = surface.local_char_poly_dual(p)
                except IdentityViolationError:
                    resid, rem = math.inf, math.inf
                local = max(local, resid, rem)
            total += len(pts)
            worst = max(worst, local)
            rows.append((f"dim {nvars} surface {index}", len(pts), local))
    return worst, total, rows


def gauge_scan(seed: int, cases: int):
    """Density rescaling under multiplying the defining polynomial.

    At an exact surface point the volume density picks up |G|, the mean
    curvature density and the matrix density the signed factor G.
    Returns (worst relative deviation, per-case rows).
    """
    rng = random.Random(seed)
    rows: List[List[object]] = []
    worst = 0.0
    done = 0
    while done < cases:
        nvars = rng.choice((3, 4))
        surface, anchor = random_anchored_level_set(rng, nvars, degree=3)
        factor = MultiPoly.constant(nvars, F(rng.randint(-3, 3), 2))
        for a in range(nvars):
            factor = factor + F(rng.randint(-2, 2), 2) * MultiPoly.variable(nvars, a)
        g0 = factor.evaluate(anchor)
        if abs(g0) < F(3, 10):
            continue
        scaled = LevelSetSurface(factor * surface.phi)
        pt = [float(v) for v in anchor]
        g = float(g0)
        base_vol = surface.dual_density_vol(pt)
        base_mc = surface.dual_density_mcurv(pt)
        base_mat = surface.shape_density_matrix(pt)
        try:
            dev_vol = abs(scaled.dual_density_vol(pt) - abs(g) * base_vol)
            dev_mc = abs(scaled.dual_density_mcurv(pt) - g * base_mc)
            dev_mat = float(np.max(np.abs(scaled.shape_density_matrix(pt) - g * base_mat)))
        except SingularPointError:
            continue
        scale = max(1.0, abs(g) * base_vol, abs(g * base_mc),
                    float(np.max(np.abs(g * base_mat))))
        dev = max(dev_vol, dev_mc, dev_mat) / scale
        worst = max(worst, dev)
        rows.append((f"case {done} (dim {nvars}, factor {g0})", dev))
        done += 1
    return worst, rows


def _random_even_element(rng: random.Random, ngen: int) -> GrassmannElement:
    out = GrassmannElement.scalar(ngen, rng.randint(-3, 3))
    for _ in range(rng.randint(0, 2)):
        i, j = sorted(rng.sample(range(1, ngen + 1), 2))
        out = out + rng.randint(-2, 2) * GrassmannElement.monomial(ngen, (i, j))
    return out


def _random_odd_element(rng: random.Random, ngen: int) -> GrassmannElement:
    out = GrassmannElement(ngen)
    for _ in range(rng.randint(0, 2)):
        out = out + rng.randint(-2, 2) * GrassmannElement.monomial(
            ngen, (rng.randint(1, ngen),))
    return out


def random_even_supermatrix(rng: random.Random, p: int, q: int,
                            ngen: int = _NGEN) -> SuperMatrix:
    """Even supermatrix with invertible diagonal-block bodies."""
    while True:
        t = p + q
        entries = [[_random_even_element(rng, ngen) if (i < p) == (j < p)
                    else _random_odd_element(rng, ngen)
                    for j in range(t)] for i in range(t)]
        m = SuperMatrix(SuperDim(p, q), entries)
        b00 = [[F(entries[i][j].body) for j in range(p)] for i in range(p)]
        b11 = [[F(entries[p + i][p + j].body) for j in range(q)] for i in range(q)]
        if (not p or linalg.rank(b00) == p) and (not q or linalg.rank(b11) == q):
            return m


def random_scalar_supermatrix(rng: random.Random, p: int, q: int,
                              lo: int = -3, hi: int = 3) -> SuperMatrix:
    a00 = [[rng.randint(lo, hi) for _ in range(p)] for _ in range(p)]
    a11 = [[rng.randint(lo, hi) for _ in range(q)] for _ in range(q)]
    return SuperMatrix.from_scalar_blocks(a00, a11)


def _random_unimodular(rng: random.Random, n: int):
    lower = linalg.identity(n)
    upper = linalg.identity(n)
    for i in range(n):
        for j in range(n):
            if i > j:
                lower[i][j] = F(rng.randint(-2, 2))
            elif i < j:
                upper[i][j] = F(rng.randint(-2, 2))
    return linalg.matmul(lower, upper)


def random_reduced_rational(rng: random.Random, max_deg: int = 3) -> RationalFunction:
    """Reduced rational function equal to 1 at the origin."""
    while True:
        num = UniPoly([1] + [F(rng.randint(-4, 4), rng.randint(1, 2))
                             for _ in range(rng.randint(0, max_deg))])
        den = UniPoly([1] + [F(rng.randint(-4, 4), rng.randint(1, 2))
                             for _ in range(rng.randint(0, max_deg))])
        ratio = RationalFunction(num, den)
        if ratio.num.degree > 0 or ratio.den.degree > 0:
            return ratio


def zeta_corpus() -> List[Tuple[str, Optional[PrimePolyVariety], RationalFunction]]:
    """Named small varieties with independently derived zeta fractions.

    The expected fractions come from closed-form counts: full affine
    spaces give geometric counts, the single-point cone over a field
    where -1 is not a square alternates with the parity of the extension
    degree, and the plane curves follow linear recurrences fixed by
    their first few brute-force counts.
    """
    rf = RationalFunction.from_coeffs
    return [
        ("point-cone", PrimePolyVariety(3, 2, {(2, 0): 1, (0, 2): 1}),
         rf([1, 1], [1, 0, -9])),
        ("affine-line-p2", PrimePolyVariety(2, 1, {}), rf([1], [1, -2])),
        ("affine-plane-p2", PrimePolyVariety(2, 2, {}), rf([1], [1, -4])),
        ("affine-line-p3", PrimePolyVariety(3, 1, {}), rf([1], [1, -3])),
        ("affine-plane-p3", PrimePolyVariety(3, 2, {}), rf([1], [1, -9])),
        ("origin-line", PrimePolyVariety(2, 1, {(1,): 1}), rf([1], [1, -1])),
        ("conic", PrimePolyVariety(3, 2, {(2, 0): 1, (0, 2): 1, (0, 0): -1}),
         rf([1, 1], [1, -3])),
        ("cubic", PrimePolyVariety(5, 2, {(0, 2): 1, (3, 0): -1, (1, 0): -1, (0, 0): -1}),
         rf([1, 3, 5], [1, -5])),
    ]


# ---------------------------------------------------------------- tube suites


def _suite_tube_closed_form(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(ctx.tol("closed_form"))
    ball = sphere(1.0, 2)
    for h in (0.1, 0.25, 0.4):
        got = half_tube_volume(ball, h)
        want = 4 * math.pi * (1 - h) ** 2
        rows.add(f"sphere inward volume h={h}", got, want, abs(got - want))
    tube = weyl_coefficients(ball)
    for k, want in enumerate((4 * math.pi, -8 * math.pi, 4 * math.pi)):
        got = tube.coefficients[k]
        rows.add(f"sphere depth coefficient {k}", got, want, abs(got - want))
    rows.add("sphere Euler estimate", tube.euler_estimate, 2.0,
             abs(tube.euler_estimate - 2.0))
    ring = weyl_coefficients(torus(2.0, 1.0))
    area = 8 * math.pi ** 2
    for k, want in enumerate((area, -area, 0.0)):
        got = ring.coefficients[k]
        rows.add(f"torus depth coefficient {k}", got, want, abs(got - want))
    rows.add("torus Euler estimate", ring.euler_estimate, 0.0,
             abs(ring.euler_estimate))
    loop = weyl_coefficients(sphere(1.0, 1))
    for k, want in enumerate((2 * math.pi, -2 * math.pi)):
        got = loop.coefficients[k]
        rows.add(f"circle depth coefficient {k}", got, want, abs(got - want))
    return rows.outcome("tube-closed-form")


def _suite_two_surface(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(ctx.tol("two_surface"))
    for name, ps, chi in (("sphere", sphere(1.0, 2), 2), ("torus", torus(2.0, 1.0), 0)):
        area = weyl_coefficients(ps).coefficients[0]
        for h in (0.1, 0.2):
            both = half_tube_volume(ps, h) + half_tube_volume(ps, -h)
            want = 2 * area + 4 * math.pi * chi * h * h
            rows.add(f"{name} h={h}", both, want, abs(both - want))
    return rows.outcome("two-surface")


def _suite_det_split(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(ctx.tol("det_split"))
    worst, total, scan = det_split_scan(
        suite_seed(ctx.seed, "det-split"), surfaces_per_dim=3, points_per_surface=8)
    for case, npts, resid in scan:
        rows.add(f"{case} ({npts} points)", resid, 0.0, resid)
    rows.add(f"total points {total}", total, total, 0.0)
    return rows.outcome("det-split")


def _suite_gauge(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(ctx.tol("gauge"))
    _, scan = gauge_scan(suite_seed(ctx.seed, "gauge"), cases=20)
    for case, dev in scan:
        rows.add(case, dev, 0.0, dev)
    return rows.outcome("gauge")


def _suite_tube_mc(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(ctx.tol("mc_sigma"))
    seed = suite_seed(ctx.seed, "tube-mc")
    for name, ps, h in (("sphere", sphere(1.0, 2), 0.3),
                        ("torus", torus(2.0, 1.0), 0.25)):
        band = weyl_coefficients(ps).band_integral(h)
        est, err = monte_carlo_tube_volume(ps, h, samples=ctx.samples,
                                           seed=seed, workers=ctx.workers)
        rows.add(f"{name} shell h={h} ({ctx.samples} samples)",
                 est, band, abs(est - band) / err)
    lone = monte_carlo_tube_volume(sphere(1.0, 2), 0.3, samples=1 << 17, seed=seed,
                                   workers=1)
    pooled = monte_carlo_tube_volume(sphere(1.0, 2), 0.3, samples=1 << 17, seed=seed,
                                     workers=3)
    rows.exact("sampling is worker-count independent", lone, pooled, lone == pooled)
    return rows.outcome("tube-mc")


# ----------------------------------------------------------- operator suites


def _suite_ber_mult(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(0.0)
    rng = ctx.rng("ber-mult")
    for i in range(30):
        p, q = _DIMS[i % len(_DIMS)]
        a = random_even_supermatrix(rng, p, q)
        b = random_even_supermatrix(rng, p, q)
        lhs = berezinian(a @ b)
        rhs = berezinian(a) * berezinian(b)
        rows.exact(f"case {i} ({p}|{q})", str(lhs), str(rhs), lhs == rhs)
    return rows.outcome("ber-mult")


def _suite_char_series(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(0.0)
    rng = ctx.rng("char-series")
    for i in range(20):
        p, q = _DIMS[i % len(_DIMS)]
        order = p + q + 4
        scalar = random_scalar_supermatrix(rng, p, q)
        fraction = char_function_exact(scalar)
        direct = char_series(scalar, order)
        rows.exact(f"scalar case {i} ({p}|{q}) series match",
                   str(fraction.value), "direct series",
                   fraction.value.series(order) == direct)
        grassmann = random_even_supermatrix(rng, p, q)
        raw = char_function_raw(grassmann)
        raw_series = raw.series(order)
        full = char_series(grassmann, order)
        if not isinstance(full, GrassmannSeries):
            full = GrassmannSeries(
                _NGEN, [GrassmannElement.scalar(_NGEN, c) for c in full.coeffs])
        rows.exact(f"raw case {i} ({p}|{q}) series match",
                   "raw fraction series", "direct series", raw_series == full)
        in_bounds = (raw.num.degree <= p + p * q and raw.den.degree <= q + p * q)
        rows.exact(f"raw case {i} ({p}|{q}) degree bounds",
                   f"({raw.num.degree}, {raw.den.degree})",
                   f"<= ({p + p * q}, {q + p * q})", in_bounds)
    return rows.outcome("char-series")


def _suite_recurrence(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(0.0)
    rng = ctx.rng("recurrence")
    done = 0
    while done < 20:
        p, q = _DIMS[done % len(_DIMS)]
        a = random_scalar_supermatrix(rng, p, q)
        fraction = char_function_exact(a)
        pd, qd = fraction.value.degrees
        if qd < 1:
            continue
        seq = fraction.value.series(pd + qd + 8).coeffs
        ok = linear_recurrence_check(seq, fraction.value.den, pd + 1)
        rows.exact(f"series case {done} ({p}|{q})",
                   f"window {pd + 1}..{pd + qd + 8}", "recurrence holds", ok)
        try:
            dual = dict(char_dual_series(a, 12))
        except ValueError:
            done += 1
            continue
        tail = fraction.value.series(10)
        gamma = []
        for k in range(-4, 11):
            ck = tail.coefficient(k) if k >= 0 else F(0)
            gamma.append(ck - dual.get(k, F(0)))
        ok = linear_recurrence_check(gamma, fraction.value.den, qd)
        rows.exact(f"two-sided case {done} ({p}|{q})",
                   "difference sequence", "recurrence holds", ok)
        done += 1
    return rows.outcome("recurrence")


def _suite_ber_split(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(0.0)
    rng = ctx.rng("ber-split")
    done = 0
    while done < 25:
        p, q = _DIMS[done % len(_DIMS)]
        diag = [rng.choice([1, 2, 3, -1, -2, 5]) for _ in range(p + q)]
        a00 = [[diag[i] if i == j else (rng.randint(-2, 2) if j > i else 0)
                for j in range(p)] for i in range(p)]
        a11 = [[diag[p + i] if i == j else (rng.randint(-2, 2) if j > i else 0)
                for j in range(q)] for i in range(q)]
        a = SuperMatrix.from_scalar_blocks(a00, a11)
        plus, minus, _ = ber_plus_minus(char_function_exact(a))
        if minus == 0:
            continue
        want = berezinian(a).as_fraction()
        rows.exact(f"case {done} ({p}|{q})", plus / minus, want,
                   plus / minus == want)
        done += 1
    return rows.outcome("ber-split")


def _suite_quotient(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(0.0)
    rng = ctx.rng("quotient")
    done = 0
    while done < 20:
        p, q = rng.choice([(2, 1), (2, 2), (3, 2)])
        r, s = rng.randint(0, p), rng.randint(0, q)
        a00 = [[F(rng.randint(-3, 3)) if (i < r or j >= r) else F(0)
                for j in range(p)] for i in range(p)]
        a11 = [[F(rng.randint(-3, 3)) if (i < s or j >= s) else F(0)
                for j in range(q)] for i in range(q)]
        pe = _random_unimodular(rng, p)
        po = _random_unimodular(rng, q)
        c00 = linalg.matmul(linalg.matmul(pe, a00), linalg.inverse(pe)) if p else []
        c11 = linalg.matmul(linalg.matmul(po, a11), linalg.inverse(po)) if q else []
        a = SuperMatrix.from_scalar_blocks(c00, c11)
        mbasis = []
        for k in range(r):
            mbasis.append([pe[i][k] for i in range(p)] + [F(0)] * q)
        for k in range(s):
            mbasis.append([F(0)] * p + [po[i][k] for i in range(q)])
        lhs, rhs, equal = quotient_char_check(a, mbasis)
        rows.exact(f"case {done} ({p}|{q}, invariant {r}|{s})",
                   str(lhs.value), str(rhs.value), equal)
        done += 1
    return rows.outcome("quotient")


def _suite_cohomology(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(0.0)
    rng = ctx.rng("cohomology")
    done = 0
    while done < 20:
        h_e, h_o = rng.randint(0, 2), rng.randint(0, 2)
        r, s = rng.randint(0, 2), rng.randint(0, 2)
        p, q = h_e + s + r, h_o + r + s
        if p == 0 and q == 0:
            continue
        d10 = [[F(0)] * p for _ in range(q)]
        d01 = [[F(0)] * q for _ in range(p)]
        for k in range(r):
            d10[h_o + k][h_e + s + k] = F(1)
        for k in range(s):
            d01[h_e + k][h_o + r + k] = F(1)
        he_block = [[F(rng.randint(-3, 3)) for _ in range(h_e)] for _ in range(h_e)]
        ho_block = [[F(rng.randint(-3, 3)) for _ in range(h_o)] for _ in range(h_o)]
        t_block = [[F(rng.randint(-3, 3)) for _ in range(r)] for _ in range(r)]
        s_block = [[F(rng.randint(-3, 3)) for _ in range(s)] for _ in range(s)]
        a00 = _block_diag3(he_block, s_block, t_block)
        a11 = _block_diag3(ho_block, t_block, s_block)
        pe = _random_unimodular(rng, p)
        po = _random_unimodular(rng, q)
        pe_inv = linalg.inverse(pe)
        po_inv = linalg.inverse(po)
        a00c = linalg.matmul(linalg.matmul(pe, a00), pe_inv)
        a11c = linalg.matmul(linalg.matmul(po, a11), po_inv)
        d10c = linalg.matmul(linalg.matmul(po, d10), pe_inv) if p and q else d10
        d01c = linalg.matmul(linalg.matmul(pe, d01), po_inv) if p and q else d01
        dim = SuperDim(p, q)
        d = SuperMatrix.from_scalar_blocks(
            [[0] * p for _ in range(p)], [[0] * q for _ in range(q)],
            parity=1, a01=d01c, a10=d10c)
        a = SuperMatrix.from_scalar_blocks(a00c, a11c)
        on_h, on_e, equal = complex_cohomology_char(dim, d, a)
        want = char_function_exact(
            SuperMatrix.from_scalar_blocks(he_block, ho_block)).value
        rows.exact(f"case {done} ({p}|{q}, harmonic {h_e}|{h_o})",
                   str(on_h.value), str(want),
                   equal and on_h.value == want)
        done += 1
    return rows.outcome("cohomology")


def _block_diag3(a, b, c):
    n = len(a) + len(b) + len(c)
    out = [[F(0)] * n for _ in range(n)]
    for off, blk in ((0, a), (len(a), b), (len(a) + len(b), c)):
        for i in range(len(blk)):
            for j in range(len(blk)):
                out[off + i][off + j] = F(blk[i][j])
    return out


# ------------------------------------------------------------- zeta suites


def _suite_zeta_corpus(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(0.0)
    for name, variety, expected in zeta_corpus():
        if name == "cubic":
            continue  # the large count lives in the acceptance run
        counts = [count_points(variety, k, budget=ctx.budget,
                               workers=ctx.workers) for k in range(1, 7)]
        ratio = zeta_rational(counts, 2, 2)
        rows.exact(f"{name} fraction", str(ratio), str(expected), ratio == expected)
        back = [int(c) for c in predict_counts(ratio, 6)]
        rows.exact(f"{name} counts round trip", back, counts, back == counts)
        realized = zeta_realize(ratio)
        rows.exact(f"{name} realization {realized.dim.p}|{realized.dim.q}",
                   str(char_function_exact(realized).value), str(ratio),
                   char_function_exact(realized).value == ratio)
    conic = zeta_corpus()[6][1]
    lone = count_points(conic, 7, budget=ctx.budget, workers=1)
    pooled = count_points(conic, 7, budget=ctx.budget, workers=4)
    rows.exact("counting is worker-count independent", lone, pooled, lone == pooled)
    return rows.outcome("zeta-corpus")


def _suite_bridge(ctx: SuiteContext) -> SuiteOutcome:
    rows = _Rows(0.0)
    for name, _, expected in zeta_corpus():
        realized = zeta_realize(expected)
        back = char_function_exact(realized).value
        rows.exact(f"{name} round trip ({realized.dim.p}|{realized.dim.q})",
                   str(back), str(expected), back == expected)
    rng = ctx.rng("bridge")
    for i in range(25):
        ratio = random_reduced_rational(rng)
        back = char_function_exact(realize_operator(ratio)).value
        rows.exact(f"random fraction {i}", str(back), str(ratio), back == ratio)
    return rows.outcome("bridge")


# ---------------------------------------------------------------- the runner


SUITES: Dict[str, Callable[[SuiteContext], SuiteOutcome]] = {
    "tube-closed-form": _suite_tube_closed_form,
    "two-surface": _suite_two_surface,
    "det-split": _suite_det_split,
    "gauge": _suite_gauge,
    "tube-mc": _suite_tube_mc,
    "ber-mult": _suite_ber_mult,
    "char-series": _suite_char_series,
    "recurrence": _suite_recurrence,
    "ber-split": _suite_ber_split,
    "quotient": _suite_quotient,
    "cohomology": _suite_cohomology,
    "zeta-corpus": _suite_zeta_corpus,
    "bridge": _suite_bridge,
}


def run_suites(names: Sequence[str], ctx: Optional[SuiteContext] = None
               ) -> List[SuiteOutcome]:
    """Run the named suites (or all of them for the name "all")."""
    ctx = ctx or SuiteContext()
    if list(names) == ["all"]:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite name(s) {unknown}; "
                       f"choose from {sorted(SUITES)} or 'all'")
    outcomes = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", FocalBoundWarning)
        for name in names:
            outcomes.append(SUITES[name](ctx))
    return outcomes
