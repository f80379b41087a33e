"""Exact structure algebras of finite root systems over formal group rings.

Schubert classes, dual bases, intersection multiplicities, the twisted
coproduct and double quotients, with executable checks of their identities.
"""
from .exact_arith import CapabilityError, ConsistencyError
from .formal_group import FGLKind, get_backend
from .root_system import LatticeChoice, build_root_system
from .structure import GKMClass, StructureAlgebra

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "ConsistencyError",
    "FGLKind",
    "GKMClass",
    "LatticeChoice",
    "StructureAlgebra",
    "build_root_system",
    "get_backend",
]
