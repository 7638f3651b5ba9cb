"""K-polynomials and multidegrees of bifiltered D-modules and GKZ systems."""

from .bifiltered import (
    BifilteredPresentation,
    MultidegreeReport,
    NotNiceError,
    PipelineError,
    SpecializationError,
    parse_presentation,
)
from .grading import Multigrading, ShiftPair
from .hypergeom import analyze, closed_form_multidegree, hypergeometric_ideal, toric_ideal, volume
from .kernels import BACKEND
from .kpoly import KPolynomial, Multidegree
from .poly import Polynomial, Ring
from .weyl import WeylRing

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BifilteredPresentation",
    "KPolynomial",
    "Multidegree",
    "MultidegreeReport",
    "Multigrading",
    "NotNiceError",
    "PipelineError",
    "Polynomial",
    "Ring",
    "ShiftPair",
    "SpecializationError",
    "WeylRing",
    "analyze",
    "closed_form_multidegree",
    "hypergeometric_ideal",
    "parse_presentation",
    "toric_ideal",
    "volume",
]
