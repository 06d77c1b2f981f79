"""Hodge and Newton polygons for a family of toric exponential sums over finite fields."""
from __future__ import annotations

from .cyclotomic import CycInt
from .errors import (DimensionError, GeometryError, InexactDivisionError, InvalidHodgeError, PolyslopeError,
                     RangeError, ResourceError, SingularMatrixError, SpecError)
from .family import FamilySpec, family_spec, predict
from .lfunc import CharCountVector, LPolynomial, exp_sum, l_polynomial, newton_polygon_of
from .polygon import Polygon
from .verify import VerdictReport, archimedean_check, verify_prediction

__version__ = "0.1.0"

__all__ = [
    "CharCountVector", "CycInt", "DimensionError", "FamilySpec", "GeometryError", "InexactDivisionError",
    "InvalidHodgeError", "LPolynomial", "Polygon", "PolyslopeError", "RangeError", "ResourceError",
    "SingularMatrixError", "SpecError", "VerdictReport", "archimedean_check", "exp_sum", "family_spec",
    "l_polynomial", "newton_polygon_of", "predict", "verify_prediction",
]
