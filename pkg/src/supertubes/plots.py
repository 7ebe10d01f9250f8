"""Figures rendered from report tables, written beside the delimited output.

Every figure is derived from the report's own tables, so a plot never
shows anything the serialized report does not contain.  File names are
the output stem plus a figure suffix.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import List, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)
import numpy as np  # noqa: E402

from .report import Report, Table

DPI = 120


def _table(report: Report, name: str) -> Optional[Table]:
    for table in report.tables:
        if table.name == name:
            return table
    return None


def _column(table: Table, name: str) -> list:
    idx = table.columns.index(name)
    return [row[idx] for row in table.rows]


def _floats(values) -> np.ndarray:
    out = []
    for v in values:
        if v is None:
            out.append(np.nan)
        elif isinstance(v, str):
            out.append(float(Fraction(v)))
        else:
            out.append(float(v))
    return np.asarray(out)


def _save(fig, path: Path) -> Path:
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def _render_tube(report: Report, stem: Path) -> List[Path]:
    volumes = _table(report, "volumes")
    if volumes is None or not volumes.rows:
        return []
    h = _floats(_column(volumes, "depth"))
    poly = _floats(_column(volumes, "polynomial"))
    quad = _floats(_column(volumes, "quadrature"))
    coeffs = _table(report, "coefficients")
    ncols = 2 if coeffs is not None else 1
    fig, axes = plt.subplots(1, ncols, figsize=(5.0 * ncols, 3.6))
    ax = axes[0] if ncols > 1 else axes
    order = np.argsort(h)
    ax.plot(h[order], poly[order], "-", label="depth polynomial")
    ax.plot(h[order], quad[order], "x", label="quadrature")
    if "shell_volume" in volumes.columns:
        shell = _floats(_column(volumes, "shell_volume"))
        ax.plot(h[order], shell[order], "--", label="shell volume")
    if "mc_estimate" in volumes.columns:
        est = _floats(_column(volumes, "mc_estimate"))
        err = _floats(_column(volumes, "mc_stderr"))
        mask = ~np.isnan(est)
        if mask.any():
            ax.errorbar(h[mask], est[mask], yerr=3 * err[mask], fmt="o",
                        capsize=3, label="Monte Carlo (3 sigma)")
    ax.set_xlabel("depth")
    ax.set_ylabel("offset-sheet measure / shell volume")
    ax.legend(fontsize=8)
    if coeffs is not None:
        ax2 = axes[1]
        k = _floats(_column(coeffs, "order"))
        c = _floats(_column(coeffs, "coefficient"))
        ax2.bar(k, c, width=0.6)
        ax2.axhline(0.0, color="black", linewidth=0.8)
        ax2.set_xlabel("depth power")
        ax2.set_ylabel("coefficient")
    fig.tight_layout()
    return [_save(fig, stem.with_name(stem.name + "_tube.png"))]


def _render_super(report: Report, stem: Path) -> List[Path]:
    series = _table(report, "series")
    if series is None or not series.rows:
        return []
    k = _floats(_column(series, "order"))
    try:
        c = _floats(_column(series, "coefficient"))
    except ValueError:
        return []  # Grassmann-valued coefficients have no numeric plot
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.bar(k, c, width=0.6)
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel("series order")
    ax.set_ylabel("coefficient")
    fig.tight_layout()
    return [_save(fig, stem.with_name(stem.name + "_charfn.png"))]


def _render_zeta(report: Report, stem: Path) -> List[Path]:
    counts = _table(report, "counts")
    if counts is None or not counts.rows:
        return []
    k = _floats(_column(counts, "k"))
    nu = _floats(_column(counts, "points"))
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.semilogy(k, np.maximum(nu, 0.5), "o", label="counted")
    if "predicted" in counts.columns:
        pred = _floats(_column(counts, "predicted"))
        mask = ~np.isnan(pred)
        if mask.any():
            ax.semilogy(k[mask], np.maximum(pred[mask], 0.5), "-",
                        label="from the fraction")
    ax.set_xlabel("extension degree")
    ax.set_ylabel("points")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return [_save(fig, stem.with_name(stem.name + "_zeta.png"))]


def _render_verify(report: Report, stem: Path) -> List[Path]:
    summary = _table(report, "suites")
    if summary is None or not summary.rows:
        return []
    names = _column(summary, "suite")
    resid = _floats(_column(summary, "max_residual"))
    tol = _floats(_column(summary, "tolerance"))
    floor = 1e-17
    fig, ax = plt.subplots(figsize=(6.4, 0.4 * len(names) + 1.6))
    y = np.arange(len(names))
    ax.barh(y, np.log10(np.maximum(resid, floor)) - np.log10(floor),
            left=np.log10(floor), height=0.6, label="max residual")
    keep = tol > 0
    if keep.any():
        ax.plot(np.log10(np.maximum(tol[keep], floor)), y[keep], "k|",
                markersize=12, label="tolerance")
    ax.set_yticks(y)
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("log10 residual")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return [_save(fig, stem.with_name(stem.name + "_verify.png"))]


_RENDERERS = {
    "tube": _render_tube,
    "super": _render_super,
    "zeta": _render_zeta,
    "verify": _render_verify,
}


def render_figures(report: Report, out_path) -> List[Path]:
    """Write the figures for a report next to its output file."""
    renderer = _RENDERERS.get(report.command)
    if renderer is None:
        return []
    stem = Path(out_path)
    if stem.suffix:
        stem = stem.with_suffix("")
    return renderer(report, stem)
