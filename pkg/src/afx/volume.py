"""Exact volumes and mixed volumes of rational polytopes.

Two independent mixed-volume engines are provided:

* :func:`mixed_volume_polarization` expands the Minkowski polynomial by
  inclusion-exclusion over subset sums (the reference engine);
* :func:`mixed_volume_recursive` recurses over facet normals of the sum of
  the first ``n - 1`` bodies, projecting faces to lattice coordinates.

Facet recursions use primitive integer normals and lattice-normalized facet
volumes, so the irrational factor ``|u|`` cancels and everything stays in
``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import factorial, prod
from typing import Sequence

from .errors import EngineDisagreement
from .linalg import dot, kernel_basis, lattice_projector, primitive_direction, project
from .polytope import (
    VPolytope,
    face,
    minkowski_sum,
    minkowski_sum_all,
    scale_translate,
    span_dim,
    support,
)

ENGINES = ("polarization", "recursion", "both")


def _projected(P: VPolytope, u) -> VPolytope:
    proj = lattice_projector(tuple(u))
    return VPolytope([project(proj, p) for p in P.points], P.ambient_dim - 1)


def volume(P: VPolytope) -> Fraction:
    """Euclidean volume in the ambient space; zero for lower-dimensional ``P``."""
    n = P.ambient_dim
    if P.dim < n:
        return Fraction(0)
    if n == 1:
        xs = [p[0] for p in P.points]
        return max(xs) - min(xs)
    P = P.pruned()
    total = Fraction(0)
    for f in P.facets:
        if f.offset == 0:
            continue
        F = VPolytope([P.points[i] for i in f.incident], n)
        total += f.offset * volume(_projected(F, f.normal))
    return total / n


def _check_count(bodies: Sequence[VPolytope]) -> int:
    if not bodies:
        raise ValueError("mixed volume of an empty tuple")
    n = bodies[0].ambient_dim
    if any(K.ambient_dim != n for K in bodies):
        raise ValueError("bodies live in different ambient dimensions")
    if len(bodies) != n:
        raise ValueError(f"need exactly {n} bodies in R^{n}, got {len(bodies)}")
    return n


def _distinct(bodies: Sequence[VPolytope]) -> tuple[list[VPolytope], list[int]]:
    uniq: list[VPolytope] = []
    label = []
    for K in bodies:
        for j, U in enumerate(uniq):
            if U is K or U == K:
                label.append(j)
                break
        else:
            label.append(len(uniq))
            uniq.append(K)
    return uniq, label


def mixed_volume_polarization(bodies: Sequence[VPolytope]) -> Fraction:
    """``(1/n!) sum_{S nonempty} (-1)^{n-|S|} vol(sum_{i in S} K_i)``.

    Subset sums depending only on the multiset of bodies involved share one
    volume computation.
    """
    n = _check_count(bodies)
    uniq, label = _distinct(bodies)
    pruned = [K.pruned() for K in uniq]
    memo: dict[tuple[int, ...], Fraction] = {}
    total = Fraction(0)
    for mask in range(1, 1 << n):
        counts = [0] * len(uniq)
        size = 0
        for i in range(n):
            if mask >> i & 1:
                counts[label[i]] += 1
                size += 1
        key = tuple(counts)
        if key not in memo:
            parts = [scale_translate(pruned[j], c) for j, c in enumerate(counts) if c]
            memo[key] = volume(minkowski_sum_all(parts))
        total += memo[key] if (n - size) % 2 == 0 else -memo[key]
    return total / factorial(n)


def _hyperplane_normal(polytopes: Sequence[VPolytope], n: int) -> tuple[int, ...]:
    diffs = []
    for P in polytopes:
        p0 = P.points[0]
        diffs.extend(tuple(a - b for a, b in zip(p, p0)) for p in P.points[1:])
    ker = kernel_basis(diffs, n) if diffs else []
    if len(ker) != 1:
        raise AssertionError("expected a hyperplane")
    return primitive_direction(ker[0])


def _mv_rec(bodies: Sequence[VPolytope]) -> Fraction:
    n = bodies[0].ambient_dim
    if n == 1:
        xs = [p[0] for p in bodies[0].points]
        return max(xs) - min(xs)
    head, last = bodies[:-1], bodies[-1]
    d = span_dim(head)
    if d < n - 1:
        return Fraction(0)
    if d == n - 1:
        w = _hyperplane_normal(head, n)
        width = support(last, w) + support(last, tuple(-x for x in w))
        if width == 0:
            return Fraction(0)
        return width * _mv_rec([_projected(K, w) for K in head]) / n
    S = minkowski_sum_all(list(head))
    total = Fraction(0)
    for f in S.facets:
        h = support(last, f.normal)
        if h == 0:
            continue
        faces = [_projected(face(K, f.normal), f.normal) for K in head]
        total += h * _mv_rec(faces)
    return total / n


def mixed_volume_recursive(bodies: Sequence[VPolytope]) -> Fraction:
    """Facet recursion ``V(K_1..K_n) = (1/n) sum_u h_{K_n}(u) v(F(K_1,u)..F(K_{n-1},u))``.

    ``u`` ranges over primitive facet normals of ``K_1 + ... + K_{n-1}``
    (or the two normals of its affine hull when that sum is a hyperplane
    piece); ``v`` is the lattice-normalized mixed volume in ``u``-perp.
    """
    n = _check_count(bodies)
    if span_dim(bodies) < n:
        return Fraction(0)
    return _mv_rec([K.pruned() for K in bodies])


def mixed_volume(bodies: Sequence[VPolytope], engine: str = "recursion") -> Fraction:
    """Dispatch to an engine; ``"both"`` cross-checks and raises on disagreement."""
    if engine == "polarization":
        return mixed_volume_polarization(bodies)
    if engine == "recursion":
        return mixed_volume_recursive(bodies)
    if engine == "both":
        a = mixed_volume_polarization(bodies)
        b = mixed_volume_recursive(bodies)
        if a != b:
            raise EngineDisagreement(
                f"polarization gives {a}, recursion gives {b}", polarization=a, recursion=b
            )
        return a
    raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")


def permanent(matrix: Sequence[Sequence]) -> Fraction:
    """Permanent by expansion over all permutations."""
    n = len(matrix)
    return sum(
        (prod((Fraction(matrix[i][s[i]]) for i in range(n)), start=Fraction(1)) for s in permutations(range(n))),
        Fraction(0),
    )


def box_edge_lengths(P: VPolytope) -> tuple[Fraction, ...]:
    """Edge lengths of an axis-aligned box; ValueError for anything else."""
    n = P.ambient_dim
    lo = [min(p[j] for p in P.points) for j in range(n)]
    hi = [max(p[j] for p in P.points) for j in range(n)]
    corners = set()
    for mask in range(1 << n):
        corners.add(tuple(hi[j] if mask >> j & 1 else lo[j] for j in range(n)))
    if not corners <= set(P.points):
        raise ValueError("non-box input: missing a box corner")
    if any(any(not (lo[j] <= p[j] <= hi[j]) for j in range(n)) for p in P.points):
        raise AssertionError("point outside its bounding box")
    # extra generating points inside the box are harmless
    return tuple(h - l for h, l in zip(hi, lo))


def box_permanent_oracle(boxes: Sequence[VPolytope]) -> Fraction:
    """``V(boxes) = perm(a) / n!`` for boxes with edge lengths ``a[i][j]``."""
    n = _check_count(boxes)
    a = [box_edge_lengths(B) for B in boxes]
    return permanent(a) / factorial(n)


def _multinomial(counts: Sequence[int]) -> int:
    out = factorial(sum(counts))
    for c in counts:
        out //= factorial(c)
    return out


def minkowski_poly_check(bodies: Sequence[VPolytope], samples, engine: str = "recursion") -> bool:
    """Compare ``vol(sum t_i K_i)`` with its mixed-volume expansion at each sample ``t``."""
    m = len(bodies)
    n = bodies[0].ambient_dim
    samples = [tuple(Fraction(x) for x in t) for t in samples]
    for t in samples:
        if len(t) != m:
            raise ValueError(f"sample {t} does not have {m} entries")
        if any(x < 0 for x in t):
            raise ValueError(f"negative sample entry in {t}")
    coeffs = {}
    for combo in combinations_with_replacement(range(m), n):
        counts = [combo.count(i) for i in range(m)]
        coeffs[combo] = (_multinomial(counts), mixed_volume([bodies[i] for i in combo], engine))
    for t in samples:
        lhs = volume(minkowski_sum_all([scale_translate(K, ti) for K, ti in zip(bodies, t)]))
        rhs = sum(
            (mult * mv * prod((t[i] for i in combo), start=Fraction(1)) for combo, (mult, mv) in coeffs.items()),
            Fraction(0),
        )
        if lhs != rhs:
            return False
    return True
