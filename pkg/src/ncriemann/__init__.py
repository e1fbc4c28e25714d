"""Exact Levi-Civita connections and curvature for the noncommutative torus and 3-sphere."""

from .algebra import SPHERE, TORUS, Element
from .calculi import build, sphere_calculus, torus_calculus
from .connection import solve_connection
from .curvature import components, scalar_curvature, symmetry_suite
from .localization import LocalizedElement
from .scalars import Scalar

__all__ = [
    "SPHERE", "TORUS", "Element", "LocalizedElement", "Scalar",
    "build", "sphere_calculus", "torus_calculus",
    "solve_connection", "components", "scalar_curvature", "symmetry_suite",
]
__version__ = "0.1.0"
