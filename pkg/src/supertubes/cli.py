"""Command-line front end: tube, super, zeta, and verify subcommands.

Reports are emitted in JSON, CSV, or plain text; identical configuration
and inputs produce byte-identical JSON.  Exit codes: 0 on success, 1 when
a verified identity fails, 2 on input errors, 3 on budget refusals.
When --out names a file, figures for the report are rendered next to it.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from .exact import linear_recurrence_check
from .report import FORMATS, Report, Table, write_report
from .superalg import (
    SuperMatrix,
    ber_plus_minus,
    berezinian,
    char_dual_series,
    char_function_exact,
    char_function_raw,
)
from .tubegeom import (
    FocalBoundWarning,
    LevelSetSurface,
    half_tube_volume,
    monte_carlo_tube_volume,
    surface_from_json,
    weighted_integral,
    weyl_coefficients,
)
from .tubegeom.tube import MC_CHUNK
from .verify import SUITES, SuiteContext, TOLERANCE_DEFAULTS, run_suites
from .zeta import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    PrimePolyVariety,
    RationalityError,
    count_points,
    predict_counts,
    zeta_rational,
    zeta_realize,
    zeta_series,
)
from .zeta.counting import COUNT_CHUNK

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


@dataclass
class RunConfig:
    """Everything that determines a run's output."""

    seed: int = 0
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    samples: int = 200_000
    tolerances: Dict[str, float] = field(default_factory=dict)
    fmt: str = "text"
    out: Optional[str] = None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        tolerances = {}
        for item in args.tol:
            name, sep, value = item.partition("=")
            if not sep or not value:
                raise ValueError(f"--tol needs NAME=VALUE, got {item!r}")
            if name not in TOLERANCE_DEFAULTS:
                raise ValueError(
                    f"unknown tolerance {name!r}; "
                    f"choose from {sorted(TOLERANCE_DEFAULTS)}")
            tolerances[name] = float(value)
        if args.seed < 0 or args.seed >= 1 << 64:
            raise ValueError("seed must fit in 64 bits")
        if args.workers < 1:
            raise ValueError("need at least one worker")
        if args.samples < 1:
            raise ValueError("need at least one sample")
        return cls(seed=args.seed, budget=args.budget, workers=args.workers,
                   samples=args.samples, tolerances=tolerances,
                   fmt=args.fmt, out=args.out)

    def tol(self, name: str) -> float:
        return float(self.tolerances.get(name, TOLERANCE_DEFAULTS[name]))

    def header(self, chunks: Optional[int] = None) -> Dict[str, object]:
        out: Dict[str, object] = {
            "seed": self.seed,
            "budget": self.budget,
            "workers": self.workers,
            "samples": self.samples,
        }
        for name in sorted(self.tolerances):
            out[f"tolerance {name}"] = self.tolerances[name]
        if chunks is not None:
            out["chunks"] = chunks
        return out

    def suite_context(self) -> SuiteContext:
        return SuiteContext(seed=self.seed, workers=self.workers,
                            budget=self.budget, samples=self.samples,
                            tolerances=dict(self.tolerances))


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}") from exc


def _parse_depths(text: str) -> List[float]:
    try:
        depths = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(f"bad depth list {text!r}: {exc}") from exc
    if not depths:
        raise ValueError("need at least one depth")
    return depths


# ------------------------------------------------------------------- tube


def cmd_tube(args, config: RunConfig) -> Report:
    surface = surface_from_json(_load_json(args.surface))
    if isinstance(surface, LevelSetSurface):
        raise ValueError(
            "tube volume reports need a parametric surface kind "
            "(sphere, torus, chart); level sets have no quadrature domain")
    depths = _parse_depths(args.depths)
    chunks = -(-config.samples // MC_CHUNK) if (args.mc or args.weighted) else None
    report = Report("tube", config.header(chunks))

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", FocalBoundWarning)
        tube = weyl_coefficients(surface)
        vol_rows = []
        identity_rows = []
        quad_tol = config.tol("closed_form")
        symm_tol = config.tol("two_surface")
        coeffs = tube.coefficients
        c2 = coeffs[2] if len(coeffs) > 2 else 0.0
        for h in depths:
            poly_val = tube.evaluate(h)
            quad_val = half_tube_volume(surface, h)
            shell = tube.band_integral(h)
            est = err = None
            if args.mc:
                est, err = monte_carlo_tube_volume(
                    surface, h, samples=config.samples,
                    seed=config.seed, workers=config.workers)
            vol_rows.append([h, poly_val, quad_val, shell, est, err])
            expansion = abs(quad_val - poly_val)
            symmetric = abs(half_tube_volume(surface, h)
                            + half_tube_volume(surface, -h)
                            - 2 * coeffs[0] - 2 * c2 * h * h)
            identity_rows.append([
                h, expansion, quad_tol,
                "pass" if expansion <= quad_tol else "fail",
                symmetric, symm_tol,
                "pass" if symmetric <= symm_tol else "fail",
            ])
        report.add_table(
            "volumes",
            ["depth", "polynomial", "quadrature", "shell_volume",
             "mc_estimate", "mc_stderr"],
            vol_rows)
        report.add_table(
            "identity",
            ["depth", "expansion_residual", "expansion_tolerance", "expansion",
             "symmetric_residual", "symmetric_tolerance", "symmetric"],
            identity_rows)
        if any(row[3] == "fail" or row[6] == "fail" for row in identity_rows):
            report.fail()
        if args.weyl:
            report.add_table(
                "coefficients", ["order", "coefficient", "quadrature_gap"],
                [[k, c, g] for k, (c, g) in
                 enumerate(zip(tube.coefficients, tube.errors))])
            if tube.euler_estimate is not None:
                report.add_scalar("euler_estimate", tube.euler_estimate)
            if tube.gauss_map_degree is not None:
                report.add_scalar("gauss_map_degree", tube.gauss_map_degree)
        if args.mc:
            for row in vol_rows:
                if row[5]:
                    sigma = abs(row[4] - row[3]) / row[5]
                    if sigma > config.tol("mc_sigma"):
                        report.fail()
                        report.add_warning(
                            f"Monte Carlo at depth {row[0]} sits {sigma:.2f} "
                            "standard errors from the shell volume")
        if args.weighted:
            h0 = min(abs(h) for h in depths)
            result = weighted_integral(
                surface, lambda t: 1.0 - (t / h0) ** 2, (0.0, h0),
                samples=config.samples, seed=config.seed, workers=config.workers)
            sigma = (abs(result.ambient_estimate - result.tube_integral)
                     / result.ambient_stderr if result.ambient_stderr else 0.0)
            verdict = "pass" if sigma <= config.tol("mc_sigma") else "fail"
            report.add_table(
                "weighted",
                ["band", "tube_integral", "tube_gap", "ambient_estimate",
                 "ambient_stderr", "sigma", "verdict"],
                [[f"(0, {h0})", result.tube_integral, result.tube_integral_gap,
                  result.ambient_estimate, result.ambient_stderr, sigma, verdict]])
            if verdict == "fail":
                report.fail()
    for warning in caught:
        report.add_warning(str(warning.message))
    return report


# ------------------------------------------------------------------- super


def cmd_super(args, config: RunConfig) -> Report:
    matrix = SuperMatrix.from_json(_load_json(args.matrix))
    report = Report("super", config.header())
    report.add_scalar("dimension", f"{matrix.dim.p}|{matrix.dim.q}")
    wants_any = args.ber or args.char or args.dual or args.berpm or args.props
    show_ber = args.ber or not wants_any
    show_char = args.char or not wants_any

    if show_ber:
        try:
            report.add_scalar("berezinian", str(berezinian(matrix)))
        except ZeroDivisionError as exc:
            raise ValueError(f"Berezinian undefined: {exc}") from exc

    if show_char:
        order = matrix.dim.p + matrix.dim.q + 4
        if matrix.is_scalar() and matrix.parity == 0:
            fraction = char_function_exact(matrix)
            report.add_scalar("characteristic_numerator", str(fraction.value.num))
            report.add_scalar("characteristic_denominator", str(fraction.value.den))
            pd, qd = fraction.value.degrees
            window = fraction.value.series(pd + max(qd, 1) + 6)
            report.add_table(
                "series", ["order", "coefficient"],
                [[k, c] for k, c in enumerate(window.coeffs)])
            if qd >= 1:
                holds = linear_recurrence_check(window.coeffs,
                                                fraction.value.den, pd + 1)
                report.add_scalar("recurrence",
                                  "pass" if holds else "fail")
                if not holds:
                    report.fail()
        else:
            raw = char_function_raw(matrix)
            series = raw.series(order)
            report.add_table(
                "raw_numerator", ["order", "coefficient"],
                [[k, str(raw.num.coefficient(k))] for k in range(raw.num.degree + 1)])
            report.add_table(
                "raw_denominator", ["order", "coefficient"],
                [[k, str(raw.den.coefficient(k))] for k in range(raw.den.degree + 1)])
            report.add_table(
                "series", ["order", "coefficient"],
                [[k, str(series.coefficient(k))] for k in range(order + 1)])

    if args.dual:
        try:
            pairs = char_dual_series(matrix, 8)
        except ValueError as exc:
            raise ValueError(f"two-sided expansion unavailable: {exc}") from exc
        report.add_table("dual_series", ["index", "coefficient"],
                         [[idx, str(c)] for idx, c in pairs])

    if args.berpm:
        if not (matrix.is_scalar() and matrix.parity == 0):
            raise ValueError("--berpm needs rational-multiple-of-1 entries")
        plus, minus, res = ber_plus_minus(char_function_exact(matrix))
        report.add_scalar("ber_plus", plus)
        report.add_scalar("ber_minus", minus)
        report.add_scalar("resultant", res)
        if minus != 0:
            want = berezinian(matrix).as_fraction()
            agree = plus / minus == want
            report.add_scalar("split_matches_berezinian",
                              "pass" if agree else "fail")
            if not agree:
                report.fail()

    if args.props:
        outcomes = run_suites(["quotient", "cohomology"], config.suite_context())
        for outcome in outcomes:
            report.tables.append(outcome.table)
            if not outcome.passed:
                report.fail()
    return report


# ------------------------------------------------------------------- zeta


def cmd_zeta(args, config: RunConfig) -> Report:
    variety = PrimePolyVariety.from_json(_load_json(args.variety))
    if args.extensions < 1:
        raise ValueError("need at least one extension degree")
    if args.holdout < 0:
        raise ValueError("held-out count cannot be negative")
    kmax = args.extensions + args.holdout
    required = (variety.p ** kmax) ** variety.nvars
    if required > config.budget:
        raise BudgetExceededError(
            f"counting through extension degree {kmax} needs {required} "
            f"evaluations, above the budget of {config.budget}", required)
    chunks = sum(-(-(variety.p ** k) ** variety.nvars // COUNT_CHUNK)
                 for k in range(1, kmax + 1))
    report = Report("zeta", config.header(chunks))
    report.add_scalar("prime", variety.p)
    report.add_scalar("variables", variety.nvars)

    counts = [count_points(variety, k, budget=config.budget,
                           workers=config.workers) for k in range(1, kmax + 1)]
    series = zeta_series(counts)
    report.add_table("series", ["order", "coefficient"],
                     [[k, c] for k, c in enumerate(series.coeffs)])

    predicted: List[Optional[int]] = [None] * kmax
    if args.rational is not None:
        pmax, qmax = args.rational
        try:
            ratio = zeta_rational(counts, pmax, qmax)
        except RationalityError as exc:
            report.add_scalar("reconstruction", "fail")
            report.add_scalar("reconstruction_detail", str(exc))
            report.fail()
        else:
            report.add_scalar("reconstruction", "pass")
            report.add_scalar("numerator", str(ratio.num))
            report.add_scalar("denominator", str(ratio.den))
            held_out = len(counts) - (pmax + qmax)
            report.add_scalar(
                "held_out",
                f"{held_out} coefficients beyond the fit reproduced exactly")
            predicted = [int(c) if c.denominator == 1 else None
                         for c in predict_counts(ratio, kmax)]
            if args.realize:
                realized = zeta_realize(ratio)
                report.add_scalar(
                    "realization_dimension",
                    f"{realized.dim.p}|{realized.dim.q}")
                even, odd = realized.scalar_blocks()
                rows = []
                for i, row in enumerate(even):
                    for j, value in enumerate(row):
                        rows.append(["even", i, j, value])
                for i, row in enumerate(odd):
                    for j, value in enumerate(row):
                        rows.append(["odd", i, j, value])
                report.add_table("realization", ["block", "row", "col", "value"],
                                 rows)
    elif args.realize:
        raise ValueError("--realize needs --rational degree bounds")

    report.add_table("counts", ["k", "points", "predicted"],
                     [[k + 1, nu, predicted[k]] for k, nu in enumerate(counts)])
    return report


# ------------------------------------------------------------------- verify


def cmd_verify(args, config: RunConfig) -> Report:
    try:
        outcomes = run_suites([args.suite], config.suite_context())
    except KeyError as exc:
        raise ValueError(exc.args[0]) from exc
    report = Report("verify", config.header())
    summary = []
    for outcome in outcomes:
        summary.append([outcome.name, len(outcome.table.rows),
                        outcome.max_residual, outcome.tolerance,
                        "pass" if outcome.passed else "fail"])
        report.tables.append(outcome.table)
        if not outcome.passed:
            report.fail()
    report.tables.insert(0, Table(
        "suites", ["suite", "cases", "max_residual", "tolerance", "verdict"],
        summary))
    return report


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="base seed for every random stream")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="cap on field-point evaluations")
    common.add_argument("--workers", type=int, default=1,
                        help="worker threads; never changes results")
    common.add_argument("--samples", type=int, default=200_000,
                        help="Monte Carlo sample count")
    common.add_argument("--tol", action="append", default=[],
                        metavar="NAME=VALUE", help="override a named tolerance")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="text",
                        help="report format")
    common.add_argument("--out", default=None, metavar="PATH",
                        help="write the report (and figures) here")

    parser = argparse.ArgumentParser(
        prog="supertubes",
        description="Tube volumes, Berezinian characteristic functions, "
                    "and zeta functions of varieties over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    tube = sub.add_parser("tube", parents=[common],
                          help="tube volumes and depth coefficients")
    tube.add_argument("surface", help="surface description JSON file")
    tube.add_argument("--h", dest="depths", default="0.1,0.25",
                      help="comma-separated depths")
    tube.add_argument("--weyl", action="store_true",
                      help="include the depth-polynomial coefficients")
    tube.add_argument("--mc", action="store_true",
                      help="add Monte Carlo shell estimates")
    tube.add_argument("--weighted", action="store_true",
                      help="check a weighted ambient integral against the "
                           "depth polynomial")

    sup = sub.add_parser("super", parents=[common],
                         help="Berezinian and characteristic function")
    sup.add_argument("matrix", help="supermatrix JSON file")
    sup.add_argument("--ber", action="store_true", help="Berezinian")
    sup.add_argument("--char", action="store_true",
                     help="characteristic fraction and series")
    sup.add_argument("--dual", action="store_true",
                     help="expansion through negative powers")
    sup.add_argument("--berpm", action="store_true",
                     help="resultant factorization of the fraction")
    sup.add_argument("--props", action="store_true",
                     help="run the quotient and cohomology suites")

    zeta = sub.add_parser("zeta", parents=[common],
                          help="point counts and zeta reconstruction")
    zeta.add_argument("variety", help="variety JSON file")
    zeta.add_argument("extensions", type=int, metavar="K",
                      help="count points over extensions 1..K")
    zeta.add_argument("--rational", nargs=2, type=int,
                      metavar=("PMAX", "QMAX"),
                      help="reconstruct a rational form within degree bounds")
    zeta.add_argument("--realize", action="store_true",
                      help="realize the fraction as a superspace operator")
    zeta.add_argument("--holdout", type=int, default=0, metavar="M",
                      help="count M extra extensions as held-out checks")

    ver = sub.add_parser("verify", parents=[common],
                         help="run verification suites")
    ver.add_argument("suite", nargs="?", default="all",
                     help=f"suite name or 'all'; known: {', '.join(sorted(SUITES))}")
    return parser


_HANDLERS = {
    "tube": cmd_tube,
    "super": cmd_super,
    "zeta": cmd_zeta,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig.from_args(args)
        report = _HANDLERS[args.command](args, config)
    except BudgetExceededError as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    write_report(report, config.fmt, config.out)
    if config.out is not None:
        from .plots import render_figures

        for figure in render_figures(report, config.out):
            print(f"figure: {figure}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
