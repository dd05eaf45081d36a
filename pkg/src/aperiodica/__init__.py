"""Cut-and-project sequences, their coded words and substitutions, with exact arithmetic."""
from .exactnum import TAU, QuadraticReal, RingElem, classify, fundamental_unit, qsqrt
from .literals import parse_number

__version__ = "0.1.0"

__all__ = ["TAU", "QuadraticReal", "RingElem", "classify", "fundamental_unit", "qsqrt", "parse_number"]
