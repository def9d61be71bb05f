"""Exact tame symbols, Kummer maps and reciprocity laws for two-dimensional local fields."""

from .gfield import FieldElement, FiniteField, field_of_order, gf
from .laurent import LaurentSeries, PrecisionError, TwoLocalElement
from .reciprocity import SymbolReport, along_curve, around_point, global_product, weil_on_curve
from .surface import ClosedPoint, Curve, Flag, RationalFunction, UnsupportedGeometry
from .symbols import kummer_map, nu_pair, sign3, tame1, tame2

__all__ = [
    "FieldElement", "FiniteField", "field_of_order", "gf",
    "LaurentSeries", "PrecisionError", "TwoLocalElement",
    "SymbolReport", "along_curve", "around_point", "global_product", "weil_on_curve",
    "ClosedPoint", "Curve", "Flag", "RationalFunction", "UnsupportedGeometry",
    "kummer_map", "nu_pair", "sign3", "tame1", "tame2",
]

__version__ = "0.1.0"
