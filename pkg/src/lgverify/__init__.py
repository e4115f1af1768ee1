"""Exact and high-precision checks for Landau-Ginzburg pairs (W, <J>) of general type."""

from .errors import InputError, LGError
from .exact import ApComplex, Cyclotomic, Rational
from .weights import (
    FamilySpec,
    WeightSystem,
    family,
    mir_set,
    parse_family,
    parse_input,
    parse_weight_system,
    principal_T,
    sector_data,
    tau_coefficients,
)

__all__ = [
    "ApComplex",
    "Cyclotomic",
    "FamilySpec",
    "InputError",
    "LGError",
    "Rational",
    "WeightSystem",
    "family",
    "mir_set",
    "parse_family",
    "parse_input",
    "parse_weight_system",
    "principal_T",
    "sector_data",
    "tau_coefficients",
]
