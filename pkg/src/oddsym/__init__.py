"""Exact computer algebra for odd symplectic supergeometry."""

from .grassmann import SuperNumber, Surd
from .superlinalg import SuperMatrix
from .superpoly import CoordinateSystem, SuperPolynomial, VectorField
from .symplectic import OddSymplecticStructure, VolumeForm, delta_operator, divergence

__version__ = "0.1.0"

__all__ = [
    "CoordinateSystem",
    "OddSymplecticStructure",
    "SuperMatrix",
    "SuperNumber",
    "SuperPolynomial",
    "Surd",
    "VectorField",
    "VolumeForm",
    "delta_operator",
    "divergence",
]
