"""Rational polytopes stored as generating point clouds.

A :class:`VPolytope` is ``conv(points)``; the point list may contain
redundant (non-vertex) points.  Lower-dimensional polytopes are fine for
support functions, faces and dimensions; only :func:`facets` needs a
full-dimensional input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable, Optional, Sequence

from . import cone
from .errors import DegenerateInput, PreconditionRefused
from .linalg import (
    as_fraction,
    dot,
    kernel_basis,
    primitive,
    primitive_direction,
    rank,
    rref,
    solve_square,
    vec,
)


class DegeneratePolytopeError(DegenerateInput):
    pass


class VPolytope:
    """``conv(points)`` in ``R^ambient_dim``; identical points are merged."""

    def __init__(self, points: Iterable[Sequence], ambient_dim: Optional[int] = None):
        pts: list[tuple[Fraction, ...]] = []
        seen = set()
        for p in points:
            q = vec(p)
            if q not in seen:
                seen.add(q)
                pts.append(q)
        if not pts:
            raise ValueError("a polytope needs at least one point")
        if ambient_dim is None:
            ambient_dim = len(pts[0])
        if ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        for q in pts:
            if len(q) != ambient_dim:
                raise ValueError(f"point {q} does not have {ambient_dim} coordinates")
        self.ambient_dim = ambient_dim
        self.points: tuple[tuple[Fraction, ...], ...] = tuple(pts)

    def __repr__(self):
        return f"VPolytope(dim={self.dim}, ambient_dim={self.ambient_dim}, points={len(self.points)})"

    def __eq__(self, other):
        if not isinstance(other, VPolytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.points == other.points

    def __hash__(self):
        return hash((self.ambient_dim, self.points))

    @cached_property
    def dim(self) -> int:
        p0 = self.points[0]
        diffs = [tuple(a - b for a, b in zip(p, p0)) for p in self.points[1:]]
        return rank(diffs) if diffs else 0

    @cached_property
    def facets(self) -> tuple["Facet", ...]:
        return tuple(_facets(self))

    @cached_property
    def vertex_indices(self) -> tuple[int, ...]:
        return tuple(_vertex_indices(self))

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.points[i] for i in self.vertex_indices)

    def pruned(self) -> "VPolytope":
        """Same polytope generated by its vertices only."""
        if len(self.vertex_indices) == len(self.points):
            return self
        return VPolytope([self.points[i] for i in self.vertex_indices], self.ambient_dim)

    def same_polytope(self, other: "VPolytope") -> bool:
        return self.ambient_dim == other.ambient_dim and self.vertex_set == other.vertex_set


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: Fraction
    incident: frozenset


@dataclass(frozen=True)
class HPolytope:
    """``{x : normal . x <= offset}`` over all halfspaces."""

    ambient_dim: int
    halfspaces: tuple

    @classmethod
    def from_pairs(cls, pairs, ambient_dim: Optional[int] = None) -> "HPolytope":
        hs = []
        for normal, offset in pairs:
            nrm = tuple(int(x) for x in normal)
            off = as_fraction(offset)
            g = 0
            for x in nrm:
                g = gcd(g, x)
            if g == 0:
                raise ValueError("zero normal in halfspace")
            hs.append((tuple(x // g for x in nrm), off / g))
        if ambient_dim is None:
            ambient_dim = len(hs[0][0])
        return cls(ambient_dim, tuple(hs))


def _check_dim(P: VPolytope, u) -> None:
    if len(u) != P.ambient_dim:
        raise ValueError(f"direction of length {len(u)} for a polytope in R^{P.ambient_dim}")


def support(P: VPolytope, u) -> Fraction:
    """``h_P(u) = max_x x . u``."""
    _check_dim(P, u)
    return max(dot(p, u) for p in P.points)


def face(P: VPolytope, u) -> VPolytope:
    """Face of ``P`` in direction ``u``: the points attaining ``h_P(u)``."""
    _check_dim(P, u)
    if all(x == 0 for x in u):
        raise ValueError("zero direction")
    vals = [dot(p, u) for p in P.points]
    h = max(vals)
    return VPolytope([p for p, s in zip(P.points, vals) if s == h], P.ambient_dim)


def poly_dim(P: VPolytope) -> int:
    return P.dim


def span_dim(polytopes: Iterable[VPolytope]) -> int:
    """Affine dimension of the Minkowski sum, without forming the sum."""
    diffs = []
    for P in polytopes:
        p0 = P.points[0]
        diffs.extend(tuple(a - b for a, b in zip(p, p0)) for p in P.points[1:])
    return rank(diffs) if diffs else 0


def minkowski_sum(P: VPolytope, Q: VPolytope) -> VPolytope:
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("Minkowski sum of polytopes in different dimensions")
    return VPolytope(
        (tuple(a + b for a, b in zip(p, q)) for p in P.points for q in Q.points), P.ambient_dim
    )


def minkowski_sum_all(polytopes: Sequence[VPolytope], ambient_dim: Optional[int] = None) -> VPolytope:
    """Sum of several polytopes, pruning to vertices between steps."""
    if not polytopes:
        if ambient_dim is None:
            raise ValueError("empty Minkowski sum needs ambient_dim")
        return VPolytope([[0] * ambient_dim], ambient_dim)
    acc = polytopes[0].pruned()
    for P in polytopes[1:]:
        acc = minkowski_sum(acc, P.pruned()).pruned()
    return acc


def scale_translate(P: VPolytope, a, v=None) -> VPolytope:
    """``a P + v`` for ``a >= 0``."""
    a = as_fraction(a)
    if a < 0:
        raise ValueError("negative dilation factor")
    v = vec(v) if v is not None else (Fraction(0),) * P.ambient_dim
    _check_dim(P, v)
    return VPolytope(
        (tuple(a * x + y for x, y in zip(p, v)) for p in P.points), P.ambient_dim
    )


def _common_denominator(points) -> int:
    den = 1
    for p in points:
        for x in p:
            den = den * x.denominator // gcd(den, x.denominator)
    return den


def normal_order_key(u: Sequence[int]):
    """Canonical facet ordering: sparse normals first, then fewer negative entries."""
    return (
        sum(1 for x in u if x != 0),
        sum(1 for x in u if x < 0),
        tuple(-abs(x) for x in u),
        tuple(-x for x in u),
    )


def _make_facets(P: VPolytope, normals) -> list[Facet]:
    out = []
    for u in sorted(set(normals), key=normal_order_key):
        vals = [dot(p, u) for p in P.points]
        h = max(vals)
        out.append(Facet(u, h, frozenset(i for i, s in enumerate(vals) if s == h)))
    return out


def _facets_2d(P: VPolytope) -> list[tuple[int, ...]]:
    pts = sorted(P.points)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]  # counter-clockwise
    normals = []
    for a, b in zip(hull, hull[1:] + hull[:1]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        normals.append(primitive_direction((dy, -dx)))
    return normals


def _facets(P: VPolytope) -> list[Facet]:
    n = P.ambient_dim
    if P.dim < n:
        raise DegeneratePolytopeError("degenerate: use face/dim tools")
    if n == 1:
        return _make_facets(P, [(1,), (-1,)])
    if n == 2:
        return _make_facets(P, _facets_2d(P))
    den = _common_denominator(P.points)
    # cone {(u, c) : c*den - u . (den p) >= 0}; extreme rays are the facets
    rows = [[-int(x * den) for x in p] + [1] for p in P.points]
    normals = []
    for r in cone.extreme_rays(rows, n + 1):
        u = r[:n]
        if any(u):
            normals.append(primitive(u))
    return _make_facets(P, normals)


def facets(P: VPolytope) -> tuple[Facet, ...]:
    """Complete facet list of a full-dimensional polytope, outward primitive normals."""
    return P.facets


def facets_bruteforce(P: VPolytope) -> list[Facet]:
    """Facets by trying every hyperplane through ``n`` points (slow reference)."""
    n = P.ambient_dim
    if P.dim < n:
        raise DegeneratePolytopeError("degenerate: use face/dim tools")
    pts = P.points
    normals = set()
    for combo in combinations(range(len(pts)), n):
        p0 = pts[combo[0]]
        diffs = [tuple(a - b for a, b in zip(pts[i], p0)) for i in combo[1:]]
        ker = kernel_basis(diffs, n) if diffs else [tuple(Fraction(int(k == 0)) for k in range(n))]
        if len(ker) != 1:
            continue
        u = primitive_direction(ker[0])
        for cand in (u, tuple(-x for x in u)):
            c = dot(p0, cand)
            if all(dot(p, cand) <= c for p in pts):
                normals.add(cand)
    return _make_facets(P, normals)


def affine_frame(P: VPolytope):
    """Base point, direction basis and coordinates of every point in that frame."""
    p0 = P.points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in P.points]
    R, pivots = rref(diffs, P.ambient_dim)
    basis = [tuple(r) for r in R]
    # rows of R are reduced, so a vector in their span has coordinates d[pivot]
    coords = [tuple(d[p] for p in pivots) for d in diffs]
    return p0, basis, coords


def _vertex_indices(P: VPolytope) -> list[int]:
    d = P.dim
    if d == 0:
        return [0]
    if d == P.ambient_dim:
        local = P
    else:
        _, _, coords = affine_frame(P)
        local = VPolytope(coords, d)
        if len(local.points) != len(P.points):
            raise AssertionError("affine frame merged distinct points")
    if d == 1:
        vals = [p[0] for p in local.points]
        return sorted({vals.index(min(vals)), vals.index(max(vals))})
    fs = local.facets
    out = []
    for i in range(len(local.points)):
        normals = [f.normal for f in fs if i in f.incident]
        if len(normals) >= d and rank(normals) == d:
            out.append(i)
    return out


def as_hpolytope(P: VPolytope) -> HPolytope:
    return HPolytope(P.ambient_dim, tuple((f.normal, f.offset) for f in P.facets))


class UnboundedError(PreconditionRefused):
    pass


class InfeasibleError(PreconditionRefused):
    pass


def vertices(H: HPolytope) -> VPolytope:
    """Vertex set of a bounded, feasible H-polytope.

    Homogenizes to the cone ``{(x, s) : s >= 0, s b_i - a_i . x >= 0}``;
    rays with ``s > 0`` are vertices and rays with ``s = 0`` are recession
    directions.
    """
    n = H.ambient_dim
    rows_frac = [[-as_fraction(x) for x in a] + [as_fraction(b)] for a, b in H.halfspaces]
    rows_frac.append([Fraction(0)] * n + [Fraction(1)])
    rows = []
    for r in rows_frac:
        den = _common_denominator([r])
        rows.append([int(x * den) for x in r])
    if rank([r[:n] for r in rows]) < n:
        raise UnboundedError("unbounded: halfspace normals do not span")
    rays = cone.extreme_rays(rows, n + 1)
    pts = []
    for r in rays:
        s = r[n]
        if s == 0:
            raise UnboundedError(f"unbounded: recession direction {r[:n]}")
        pts.append(tuple(Fraction(x, s) for x in r[:n]))
    if not pts:
        raise InfeasibleError("infeasible halfspace system")
    return VPolytope(sorted(pts), n)


def vertices_bruteforce(H: HPolytope) -> VPolytope:
    """Vertices by solving every ``n``-subset of tight constraints (reference)."""
    n = H.ambient_dim
    hs = H.halfspaces
    pts = set()
    for combo in combinations(range(len(hs)), n):
        A = [hs[i][0] for i in combo]
        if rank(A) < n:
            continue
        x = solve_square(A, [hs[i][1] for i in combo])
        if all(dot(a, x) <= b for a, b in hs):
            pts.add(x)
    if not pts:
        raise InfeasibleError("infeasible halfspace system")
    return VPolytope(sorted(pts), n)


def box(lengths, origin=None) -> VPolytope:
    """Axis-aligned box ``prod [o_j, o_j + a_j]``."""
    lengths = vec(lengths)
    n = len(lengths)
    origin = vec(origin) if origin is not None else (Fraction(0),) * n
    pts = []
    for mask in range(1 << n):
        pts.append(tuple(o + (a if mask >> j & 1 else 0) for j, (o, a) in enumerate(zip(origin, lengths))))
    return VPolytope(pts, n)


def simplex(n: int, scale=1) -> VPolytope:
    """``conv{0, s e_1, ..., s e_n}``."""
    s = as_fraction(scale)
    pts = [[0] * n] + [[s if j == i else 0 for j in range(n)] for i in range(n)]
    return VPolytope(pts, n)


def segment(a, b) -> VPolytope:
    return VPolytope([a, b])
