"""Exact arithmetic: rationals, univariate polynomials, truncated power
series, and rational functions, with reconstruction utilities."""

from supertubes.exact.poly import UniPoly, parse_rational, format_rational, resultant
from supertubes.exact.series import PowerSeries, series_exp, series_log
from supertubes.exact.ratfn import (
    RationalFunction,
    PadeError,
    pade_reconstruct,
    linear_recurrence_check,
)

__all__ = [
    "UniPoly",
    "PowerSeries",
    "RationalFunction",
    "PadeError",
    "parse_rational",
    "format_rational",
    "resultant",
    "series_exp",
    "series_log",
    "pade_reconstruct",
    "linear_recurrence_check",
]
