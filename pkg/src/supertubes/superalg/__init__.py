"""Grassmann algebra, supermatrices, Berezinians, characteristic
functions of operators on superspaces, and super metric geometry."""

from supertubes.superalg.grassmann import (
    GrassmannElement,
    grassmann_product,
    grassmann_inverse,
    grassmann_sqrt,
    berezin_integral,
)
from supertubes.superalg.supermatrix import (
    SuperDim,
    SuperMatrix,
    berezinian,
    supertrace,
    super_inverse,
)
from supertubes.superalg.charfn import (
    GPoly,
    GrassmannSeries,
    RawCharFraction,
    CharFunction,
    char_series,
    char_function_raw,
    char_function_exact,
    char_dual_series,
    ber_plus_minus,
    realize_operator,
)
from supertubes.superalg.quotients import quotient_char_check, complex_cohomology_char
from supertubes.superalg.supergeom import (
    super_metric,
    super_metric_inverse,
    super_first_fundamental_form,
    super_volume_density,
    dual_super_volume_density,
)

__all__ = [
    "GrassmannElement",
    "grassmann_product",
    "grassmann_inverse",
    "grassmann_sqrt",
    "berezin_integral",
    "SuperDim",
    "SuperMatrix",
    "berezinian",
    "supertrace",
    "super_inverse",
    "GPoly",
    "GrassmannSeries",
    "RawCharFraction",
    "CharFunction",
    "char_series",
    "char_function_raw",
    "char_function_exact",
    "char_dual_series",
    "ber_plus_minus",
    "realize_operator",
    "quotient_char_check",
    "complex_cohomology_char",
    "super_metric",
    "super_metric_inverse",
    "super_first_fundamental_form",
    "super_volume_density",
    "dual_super_volume_density",
]
