"""Exact Jacobian arithmetic on plane curves via divisor ideals."""

from .algebra import GF, QQ, PolyRing, grlex, lex, weighted
from .curve import PlaneCurve, validate_curve
from .divisor_ideal import DivisorSpec, ideal_of_divisor, point_divisor
from .errors import AlgebraError, InvariantViolation, ParseError, ValidationError
from .groebner import Ideal
from .jacobian import JacobianElement, add, equal, neg, reduce, scalar_mul

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "PolyRing", "grlex", "lex", "weighted", "PlaneCurve", "validate_curve",
    "DivisorSpec", "ideal_of_divisor", "point_divisor", "AlgebraError", "InvariantViolation",
    "ParseError", "ValidationError", "Ideal", "JacobianElement", "add", "equal", "neg", "reduce",
    "scalar_mul",
]
