"""Exact mixed volumes, Alexandrov-Fenchel equality certificates and toric
Lefschetz kernels for small rational polytopes."""

from .polytope import VPolytope, box, segment, simplex
from .volume import mixed_volume

__version__ = "0.1.0"

__all__ = ["VPolytope", "box", "segment", "simplex", "mixed_volume", "__version__"]
