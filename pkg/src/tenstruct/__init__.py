"""Structured symmetric tensors: Cauchy, Hankel and Cauchy-Hankel
generators, closed-form definiteness tests, Vandermonde and rank-one
decompositions, eigen solvers, and sampling probes."""

from .errors import (
    ConvergenceError,
    DegenerateGeneratorError,
    InputError,
    NoRealMinimalDecomposition,
    UnsupportedQueryError,
)
from .symtensor import DenseSymmetricTensor, RankOneSum
from .cauchy import GeneralizedCauchySpec
from .hankel import HankelSpec, PlaneForm, VandermondeDecomposition
from .cauchy_hankel import CauchyHankelSpec
from .spectra import EigenPair

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DegenerateGeneratorError",
    "InputError",
    "NoRealMinimalDecomposition",
    "UnsupportedQueryError",
    "DenseSymmetricTensor",
    "RankOneSum",
    "GeneralizedCauchySpec",
    "HankelSpec",
    "PlaneForm",
    "VandermondeDecomposition",
    "CauchyHankelSpec",
    "EigenPair",
    "__version__",
]
