"""Exact symbolic verification of bracket identities in coordinate charts.

The package computes with polynomial coefficients over the rationals, so every
identity check is an exact zero test and every verdict is reproducible.
"""

__version__ = "0.1.0"

from .poly import (Chart, GrowthLimitError, ParseError, Poly, PolyError,
                   parse_poly, set_degree_limit)
from .forms import (DiffForm, Multivector, VForm, exterior_d,
                    frolicher_nijenhuis, nijenhuis_torsion, schouten, sharp,
                    wedge)
from .report import CheckItem, CheckReport

__all__ = [
    "Chart",
    "Poly",
    "PolyError",
    "ParseError",
    "GrowthLimitError",
    "parse_poly",
    "set_degree_limit",
    "DiffForm",
    "Multivector",
    "VForm",
    "wedge",
    "exterior_d",
    "schouten",
    "sharp",
    "frolicher_nijenhuis",
    "nijenhuis_torsion",
    "CheckItem",
    "CheckReport",
    "__version__",
]
