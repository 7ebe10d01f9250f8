"""Point counting over finite field towers and empirical zeta rationality.

Counts solutions of a polynomial over extensions of a prime field,
assembles the exponential generating series of the counts, reconstructs it
as a rational function with held-out verification, and realizes that
rational function as the characteristic function of a superspace operator.
"""

from .finitefield import ExtField, find_irreducible, is_prime
from .counting import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    PrimePolyVariety,
    count_points,
)
from .zetafn import (
    RationalityError,
    ZetaResult,
    genuine_counts,
    predict_counts,
    zeta_rational,
    zeta_realize,
    zeta_series,
)

__all__ = [
    "ExtField",
    "find_irreducible",
    "is_prime",
    "PrimePolyVariety",
    "count_points",
    "BudgetExceededError",
    "DEFAULT_BUDGET",
    "ZetaResult",
    "RationalityError",
    "zeta_series",
    "zeta_rational",
    "predict_counts",
    "genuine_counts",
    "zeta_realize",
]
