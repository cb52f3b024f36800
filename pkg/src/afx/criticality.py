"""Dimension conditions: nondegeneracy, supercriticality and extreme normal directions.

Subsets ``I`` are reported as sorted tuples of 0-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .errors import DegenerateInput
from .linalg import primitive
from .polytope import VPolytope, face, span_dim

# Above this many polytopes, enumeration stops expanding supersets of a
# failing subset (they are reported with the same witness).
PRUNE_ABOVE = 12


@dataclass(frozen=True)
class Collection:
    """The ``n - 2`` polytopes entering an Alexandrov-Fenchel collection."""

    ambient_dim: int
    polytopes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "polytopes", tuple(self.polytopes))
        if self.ambient_dim < 2:
            raise ValueError("collections live in dimension n >= 2")
        if len(self.polytopes) != self.ambient_dim - 2:
            raise ValueError(
                f"a collection in R^{self.ambient_dim} has {self.ambient_dim - 2} polytopes, "
                f"got {len(self.polytopes)}"
            )
        for P in self.polytopes:
            if P.ambient_dim != self.ambient_dim:
                raise ValueError("collection polytopes must share the ambient dimension")

    def __len__(self):
        return len(self.polytopes)

    def __iter__(self):
        return iter(self.polytopes)


def _subsets(k: int):
    for size in range(1, k + 1):
        yield from combinations(range(k), size)


def _minimal_failing(fails: Sequence[tuple[int, ...]]) -> Optional[tuple[int, ...]]:
    fail_sets = [frozenset(I) for I in fails]
    minimal = [I for I, s in zip(fails, fail_sets) if not any(t < s for t in fail_sets)]
    return min(minimal) if minimal else None


def _dimension_witness(polys: Sequence[VPolytope], slack: int):
    """Lexicographically least minimal ``I`` with ``dim(sum_I) < |I| + slack``."""
    fails = [I for I in _subsets(len(polys)) if span_dim([polys[i] for i in I]) < len(I) + slack]
    return _minimal_failing(fails)


@dataclass(frozen=True)
class NondegeneracyReport:
    ok: bool
    witness: Optional[tuple[int, ...]] = None

    def __bool__(self):
        return self.ok


def nondegeneracy(bodies: Sequence[VPolytope]) -> NondegeneracyReport:
    """``dim(K_I) >= |I|`` for every nonempty ``I``; the mixed volume is positive iff so."""
    if not bodies or len(bodies) != bodies[0].ambient_dim:
        raise ValueError("nondegeneracy needs exactly n bodies in R^n")
    w = _dimension_witness(bodies, 0)
    return NondegeneracyReport(w is None, w)


@dataclass(frozen=True)
class SupercriticalReport:
    ok: bool
    table: tuple = field(default=())  # ((I, dim P_I), ...)

    def __bool__(self):
        return self.ok

    def failures(self):
        return [(I, d) for I, d in self.table if d < len(I) + 2]


def supercritical(C: Collection) -> SupercriticalReport:
    """``dim(P_I) >= |I| + 2`` for every nonempty ``I``, with the full table."""
    polys = C.polytopes
    table = []
    failed: list[frozenset] = []
    for I in _subsets(len(polys)):
        if len(polys) > PRUNE_ABOVE and any(f <= frozenset(I) for f in failed):
            continue
        d = span_dim([polys[i] for i in I])
        table.append((I, d))
        if d < len(I) + 2:
            failed.append(frozenset(I))
    return SupercriticalReport(not failed, tuple(table))


@dataclass(frozen=True)
class ExtremeReport:
    direction: tuple[int, ...]
    is_extreme: bool
    witness: Optional[tuple[int, ...]] = None

    def to_json(self) -> dict:
        return {
            "direction": list(self.direction),
            "extreme": self.is_extreme,
            "witness": list(self.witness) if self.witness is not None else None,
        }


def extreme_direction(u, C: Collection) -> ExtremeReport:
    """Is ``u`` in the support of the mixed area measure of (ball, collection)?

    Decided by ``dim F(P_I, u) >= |I|`` for all nonempty ``I``.
    """
    u = tuple(int(x) for x in u)
    if len(u) != C.ambient_dim:
        raise ValueError("direction length does not match the collection")
    direction = primitive(u)
    faces = [face(P, direction) for P in C.polytopes]
    w = _dimension_witness(faces, 0)
    return ExtremeReport(direction, w is None, w)


def extreme_facet_normals(Q: VPolytope, C: Collection) -> list[ExtremeReport]:
    """One report per primitive facet normal of the full-dimensional ``Q``."""
    if Q.dim < Q.ambient_dim:
        raise DegenerateInput("degenerate: Q must be full-dimensional")
    return [extreme_direction(f.normal, C) for f in Q.facets]
