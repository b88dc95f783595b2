"""Exact computations with perverse sheaves on surfaces through their
paracyclic nerves: quiver data on a disk, the paracyclic category, Segal
and Dold-Kan machinery, duplicial objects and global surface data."""

from .combinatorics import Flavor, ParaMap, compose, dual, factorize, membership
from .disk import PervData, PervMorphism, PerverseDataError
from .duplicial import Ducomplex, DuplicialVec
from .linalg import DimensionError, RatMat, SingularMatrixError
from .nerve import Complex, ParacyclicVec, SimplicialVec, paracyclic_nerve
from .surface import StratSurface, SurfacePervData

__version__ = "0.1.0"

__all__ = [
    "Complex",
    "DimensionError",
    "Ducomplex",
    "DuplicialVec",
    "Flavor",
    "ParaMap",
    "ParacyclicVec",
    "PervData",
    "PervMorphism",
    "PerverseDataError",
    "RatMat",
    "SimplicialVec",
    "SingularMatrixError",
    "StratSurface",
    "SurfacePervData",
    "compose",
    "dual",
    "factorize",
    "membership",
    "paracyclic_nerve",
]
