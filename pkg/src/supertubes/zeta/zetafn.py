"""From point counts to a rational function and a superspace operator.

The counts enter through the exponential generating identity: the series
is exp of the sum of count_k t^k / k.  Empirical rationality means a
rational function of bounded degrees reproduces every computed series
coefficient, including coefficients never used for the fit; realization
turns that rational function into an even supermatrix whose characteristic
function it is, with even and odd dimensions equal to the reduced
numerator and denominator degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from ..exact import (
    PadeError,
    PowerSeries,
    RationalFunction,
    pade_reconstruct,
    series_exp,
)
from ..superalg import SuperMatrix, char_function_exact, realize_operator


class RationalityError(ValueError):
    """No rational function within the degree bounds matches all counts."""


def zeta_series(counts: Sequence[int]) -> PowerSeries:
    """Exponential of the count generating sum, to the order of the data."""
    if not counts:
        raise ValueError("need at least one count")
    order = len(counts)
    log_terms = [Fraction(0)] * (order + 1)
    for k, nu in enumerate(counts, start=1):
        if nu < 0:
            raise ValueError("counts must be nonnegative")
        log_terms[k] = Fraction(nu, k)
    return series_exp(PowerSeries(log_terms))


def series_is_integral(series: PowerSeries) -> bool:
    return all(c.denominator == 1 for c in series.coeffs)


def zeta_rational(counts: Sequence[int], pmax: int, qmax: int) -> RationalFunction:
    """Rational reconstruction with every extra count as a held-out check.

    Needs at least pmax + qmax + 2 counts, so at least two coefficients
    beyond the fitting window exist; all of them must be reproduced
    exactly or the reconstruction is rejected.
    """
    if len(counts) < pmax + qmax + 2:
        raise ValueError(
            f"need at least {pmax + qmax + 2} counts for degree bounds ({pmax}, {qmax})")
    series = zeta_series(counts)
    window = series.truncate(pmax + qmax)
    try:
        ratio = pade_reconstruct(window, pmax, qmax)
    except PadeError as exc:
        raise RationalityError(
            f"not yet rational within bounds ({pmax}, {qmax}): {exc}") from exc
    expanded = ratio.series(series.order)
    if expanded.coeffs != series.coeffs:
        raise RationalityError(
            f"not yet rational within bounds ({pmax}, {qmax}): "
            "held-out series coefficients disagree with the fitted fraction")
    return ratio


def predict_counts(ratio: RationalFunction, upto: int) -> List[Fraction]:
    """Counts implied by a rational series: coefficients of t R'/R.

    Exact rationals; a genuine variety yields nonnegative integers, which
    genuine_counts checks.
    """
    if ratio.evaluate(Fraction(0)) != 1:
        raise ValueError("rational function must equal 1 at the origin")
    if upto < 1:
        raise ValueError("need at least one predicted count")
    series = ratio.log_derivative_series(upto)
    return [series.coefficient(k) for k in range(1, upto + 1)]


def genuine_counts(predictions: Sequence[Fraction]) -> Optional[List[int]]:
    """Integer counts if every prediction is a nonnegative integer, else None."""
    out = []
    for value in predictions:
        if value.denominator != 1 or value < 0:
            return None
        out.append(int(value))
    return out


def zeta_realize(ratio: RationalFunction, ngen: int = 0) -> SuperMatrix:
    """Supermatrix whose characteristic function is the given zeta.

    Dictionary: a numerator factor (1 - a t) contributes an even eigenvalue
    -a and a denominator factor (1 - b t) an odd eigenvalue -b, via
    companion matrices of the reversed numerator and denominator.  The
    round trip through the characteristic function is verified exactly.
    """
    realized = realize_operator(ratio, ngen=ngen)
    check = char_function_exact(realized)
    if check.value != ratio:
        raise AssertionError("realization failed to reproduce the rational function")
    return realized


@dataclass
class ZetaResult:
    """Counts with their series and optional rational/operator forms."""

    counts: List[int]
    series: PowerSeries
    integral: bool
    rational: Optional[RationalFunction] = None
    realization: Optional[SuperMatrix] = None
    predicted: Optional[List[int]] = None

    def to_json(self) -> dict:
        data = {
            "counts": list(self.counts),
            "series": [str(c) for c in self.series.coeffs],
            "integral": self.integral,
        }
        if self.rational is not None:
            data["rational"] = {
                "numerator": [str(c) for c in self.rational.num.coeffs],
                "denominator": [str(c) for c in self.rational.den.coeffs],
            }
        if self.realization is not None:
            data["realization"] = self.realization.to_json()
        if self.predicted is not None:
            data["predicted"] = list(self.predicted)
        return data


def analyze_counts(
    counts: Sequence[int],
    pmax: Optional[int] = None,
    qmax: Optional[int] = None,
    realize: bool = False,
    predict_upto: Optional[int] = None,
) -> ZetaResult:
    """Bundle the series, optional reconstruction, and optional realization."""
    series = zeta_series(counts)
    result = ZetaResult(list(int(c) for c in counts), series, series_is_integral(series))
    if pmax is not None and qmax is not None:
        result.rational = zeta_rational(counts, pmax, qmax)
        upto = predict_upto if predict_upto is not None else len(counts)
        preds = predict_counts(result.rational, upto)
        result.predicted = genuine_counts(preds)
        if realize:
            result.realization = zeta_realize(result.rational)
    return result
