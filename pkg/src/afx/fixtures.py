"""Small named polytopes used by the self-test, the test-suite and the docs."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .polytope import HPolytope, VPolytope, box, segment, simplex, vertices

__all__ = [
    "cube",
    "unit_square_3d",
    "truncated_cube",
    "stretched_box",
    "diamond",
    "segment_directions",
    "corner_truncation",
    "prism",
    "simplex",
    "box",
    "segment",
]


def cube(n: int = 3, side=1) -> VPolytope:
    return box([side] * n)


def unit_square_3d() -> VPolytope:
    return box([1, 1, 0])


def stretched_box() -> VPolytope:
    """``[0,1]^2 x [0,2]``."""
    return box([1, 1, 2])


def truncated_cube(side=2, cut=5) -> VPolytope:
    """``[0, side]^3`` intersected with ``x + y + z <= cut``."""
    return corner_truncation(cube(3, side), (1, 1, 1), cut)


def diamond() -> VPolytope:
    return VPolytope([(1, 0), (-1, 0), (0, 1), (0, -1)])


def segment_directions() -> list[tuple[int, int, int]]:
    """Six directions in ``R^3`` with several coplanar triples."""
    return [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (1, 1, 1)]


def corner_truncation(P: VPolytope, normal, offset) -> VPolytope:
    """``P`` intersected with ``normal . x <= offset``."""
    hs = [(f.normal, f.offset) for f in P.facets] + [(tuple(normal), Fraction(offset))]
    return vertices(HPolytope.from_pairs(hs, P.ambient_dim))


def prism(k: int = 2, height=1, scale=1) -> VPolytope:
    """``scale * Delta_k x [0, height]`` in ``R^{k+1}``."""
    base = simplex(k, scale).points
    return VPolytope([tuple(p) + (h,) for p, h in product(base, (0, Fraction(height)))], k + 1)
