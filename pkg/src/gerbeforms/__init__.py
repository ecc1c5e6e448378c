"""Exact verification of Lie-valued form identities and non-abelian gerbe equations.

Polynomial coefficients are exact rationals; every identity is checked by
reducing its residual to the zero polynomial.
"""

from .crossed import CrossedModuleInstance, abelian, inner, instance_by_name
from .errors import (CheckRefused, DatasetError, GerbeFormsError, MalformedFormError,
                     ParseError, RejectedInputError, ShapeError)
from .forms import LieForm
from .gerbe import (BundleData, CoboundaryData, ConnectionData, Cover, CurvingData,
                    DerivedCurving, GerbeCocycle, GerbeData, check_all, generate_exact,
                    transport)
from .groups import GroupMap
from .matrix import Matrix
from .poly import Poly, format_poly, parse_poly
from .report import Record, Report
from .simplicial import CombForm, comb_d, extract, lift
from .weil import WeilElement

__version__ = "0.1.0"

__all__ = [
    "BundleData", "CheckRefused", "CoboundaryData", "CombForm", "ConnectionData", "Cover",
    "CrossedModuleInstance", "CurvingData", "DatasetError", "DerivedCurving", "GerbeCocycle",
    "GerbeData", "GerbeFormsError", "GroupMap", "LieForm", "MalformedFormError", "Matrix",
    "ParseError", "Poly", "Record", "RejectedInputError", "Report", "ShapeError", "WeilElement",
    "abelian", "check_all", "comb_d", "extract", "format_poly", "generate_exact", "inner",
    "instance_by_name", "lift", "parse_poly", "transport",
]
