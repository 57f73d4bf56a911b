"""Continued fractions of hyperquadratic power series over finite fields."""
from .ffield import GF, Field, FieldElement, FieldError
from .polyring import RationalFunc, TPoly, XPoly
from .laurent import LaurentSeries, NewtonError, PrecisionError, newton_root

__version__ = "0.1.0"

__all__ = [
    "GF",
    "Field",
    "FieldElement",
    "FieldError",
    "LaurentSeries",
    "NewtonError",
    "PrecisionError",
    "RationalFunc",
    "TPoly",
    "XPoly",
    "newton_root",
]
