"""Exceptional Hendriksen-van Rossum Laurent biorthogonal polynomials."""
from .exact import (
    LaurentPoly,
    QuasiRationalFunc,
    RationalFunc,
    logderiv_split,
    pochhammer,
    wronskian,
)

__all__ = [
    "LaurentPoly",
    "QuasiRationalFunc",
    "RationalFunc",
    "logderiv_split",
    "pochhammer",
    "wronskian",
]
