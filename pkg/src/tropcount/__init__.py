"""Counting and lifting rational tropical curves with toric and cross-ratio constraints."""

__version__ = "0.1.0"

from .curves import CombinatorialType, TropicalCurve, cross_ratio_formula, cross_ratio_geodesic, satisfies
from .deformation import build_theta, multiplicity_report, real_multiplicity
from .enumerator import EnumerationResult, enumerate_curves, validate_genericity
from .errors import (
    DimensionError,
    FieldExtensionRequired,
    GeneralityError,
    InvariantError,
    LiftingStalled,
    ParseError,
    PrecisionError,
    TropError,
)
from .lifting import LiftedMap, LiftingSystem, lift_curve
from .linalg import smith_normal_form, solve_rational
from .problem import Constraint, ProblemSpec
from .series import TSeries
from .trees import MarkedTree, enumerate_trivalent_trees

__all__ = [
    "CombinatorialType",
    "Constraint",
    "DimensionError",
    "EnumerationResult",
    "FieldExtensionRequired",
    "GeneralityError",
    "InvariantError",
    "LiftedMap",
    "LiftingStalled",
    "LiftingSystem",
    "MarkedTree",
    "ParseError",
    "PrecisionError",
    "ProblemSpec",
    "TSeries",
    "TropError",
    "TropicalCurve",
    "build_theta",
    "cross_ratio_formula",
    "cross_ratio_geodesic",
    "enumerate_curves",
    "enumerate_trivalent_trees",
    "lift_curve",
    "multiplicity_report",
    "real_multiplicity",
    "satisfies",
    "smith_normal_form",
    "solve_rational",
    "validate_genericity",
]
