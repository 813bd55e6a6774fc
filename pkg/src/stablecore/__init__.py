"""Degree-two strongly stable ideals, their diagonal reductions and their cores."""

from .corecalc import CoreResult, GdFailure, core
from .diagred import DiagonalReduction, diagonal_reduction, run_algorithm
from .gradedmembership import IdealPresentation, component_equal, contains
from .polyarith import HomogeneousPoly, Monomial, parse_monomial, parse_poly
from .stableideal import NotStronglyStable, StableIdeal2, from_generators, has_Gd, trim

__version__ = "0.1.0"

__all__ = [
    "CoreResult",
    "DiagonalReduction",
    "GdFailure",
    "HomogeneousPoly",
    "IdealPresentation",
    "Monomial",
    "NotStronglyStable",
    "StableIdeal2",
    "component_equal",
    "contains",
    "core",
    "diagonal_reduction",
    "from_generators",
    "has_Gd",
    "parse_monomial",
    "parse_poly",
    "run_algorithm",
    "trim",
]
