"""Exact computations of relative Hochschild, cyclic and bar (co)homology."""

from .linalg import Field, GF, QQ, Matrix, Subspace
from .algebra import Algebra, AlgebraMorphism, Ideal, Module, SpecError
from .complexes import ChainComplex, ChainMap, FilteredComplex, SpectralSequence, homology

__all__ = [
    "Field", "GF", "QQ", "Matrix", "Subspace",
    "Algebra", "AlgebraMorphism", "Ideal", "Module", "SpecError",
    "ChainComplex", "ChainMap", "FilteredComplex", "SpectralSequence", "homology",
]
__version__ = "0.1.0"
