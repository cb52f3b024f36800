"""Divisors on the smooth projective toric variety of a Delzant polytope.

Torus-invariant divisors are coefficient tuples ``(a_1, ..., a_m)`` over the
facets of ``Q`` (in :attr:`ToricModel.normals` order).  Intersection
numbers of nef divisors come from mixed volumes of their polytopes
(``D_1 ... D_n = n! V(P_1, ..., P_n)``); arbitrary divisors are split as
``D = N - t L_Q`` with ``N`` nef and expanded multilinearly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import factorial
from typing import Optional, Sequence

from .criticality import Collection, extreme_direction, supercritical
from .errors import NotDelzant, NotSummand, NotSupercritical, TheoremViolation
from .linalg import (
    Inertia,
    det,
    dot,
    inverse,
    kernel_basis,
    lattice_projector,
    matmul,
    matvec,
    primitive,
    project,
    rank,
    rref,
    same_span,
    signature,
    transpose,
    unimodular_completion,
)
from .polytope import DegeneratePolytopeError, HPolytope, VPolytope, face, scale_translate, support, vertices
from .volume import mixed_volume


@dataclass(eq=False)
class ToricModel:
    Q: VPolytope
    normals: tuple
    offsets: tuple
    vertices: tuple
    vertex_cones: tuple

    @property
    def n(self) -> int:
        return self.Q.ambient_dim

    @property
    def m(self) -> int:
        return len(self.normals)

    @property
    def relation_matrix(self) -> list[list[int]]:
        """``n x m``; row ``k`` is the principal divisor of the character ``e_k``."""
        return transpose(self.normals)

    @property
    def picard_rank(self) -> int:
        return self.m - self.n

    @property
    def ample(self) -> tuple:
        return tuple(self.offsets)

    @cached_property
    def _cone_inverses(self):
        return [inverse([self.normals[i] for i in cone]) for cone in self.vertex_cones]

    def vertex_functionals(self, D: Sequence) -> list[tuple[Fraction, ...]]:
        """``m_sigma`` with ``m_sigma . u_i = a_i`` on the rays of each vertex cone."""
        out = []
        for cone, inv in zip(self.vertex_cones, self._cone_inverses):
            rhs = [Fraction(D[i]) for i in cone]
            out.append(tuple(matvec(inv, rhs)))
        return out

    @cached_property
    def _relation_rref(self):
        return rref(self.relation_matrix, self.m)

    def reduce_class(self, D: Sequence) -> tuple[Fraction, ...]:
        """Canonical representative of ``D`` modulo principal divisors."""
        R, pivots = self._relation_rref
        x = [Fraction(a) for a in D]
        for row, p in zip(R, pivots):
            if x[p] != 0:
                c = x[p]
                x = [a - c * b for a, b in zip(x, row)]
        return tuple(x)

    def class_basis_indices(self) -> list[int]:
        """Indices ``i`` whose ``D_i`` form a basis of ``N^1``."""
        _, pivots = self._relation_rref
        return [i for i in range(self.m) if i not in set(pivots)]

    def indicator(self, i: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(j == i)) for j in range(self.m))


def delzant_check(Q: VPolytope) -> ToricModel:
    """Validate smoothness and build the divisor data of ``Q``."""
    n = Q.ambient_dim
    if Q.dim < n:
        raise DegeneratePolytopeError("degenerate: Q must be full-dimensional")
    P = Q.pruned()
    fs = P.facets
    normals = tuple(f.normal for f in fs)
    offsets = tuple(f.offset for f in fs)
    cones = []
    for j, v in enumerate(P.points):
        inc = tuple(i for i, f in enumerate(fs) if j in f.incident)
        if len(inc) != n:
            raise NotDelzant(f"not Delzant: vertex {_show(v)} lies on {len(inc)} facets", vertex=_show(v))
        d = det([normals[i] for i in inc])
        if abs(d) != 1:
            raise NotDelzant(
                f"not Delzant: normals at vertex {_show(v)} have determinant {d}", vertex=_show(v)
            )
        cones.append(inc)
    return ToricModel(P, normals, offsets, P.points, tuple(cones))


def _show(v) -> list[str]:
    return [str(x) for x in v]


def summand_divisor(T: ToricModel, P: VPolytope) -> tuple[Fraction, ...]:
    """``L_P = sum_i h_P(u_i) D_i`` for a Minkowski summand ``P`` of (a dilate of) ``Q``.

    ``P`` is accepted when, for every vertex cone of ``Q``, one point of
    ``P`` maximizes all of the cone's normals at once.
    """
    if P.ambient_dim != T.n:
        raise ValueError("summand lives in the wrong dimension")
    P = P.pruned()
    h = [support(P, u) for u in T.normals]
    for cone, v in zip(T.vertex_cones, T.vertices):
        if not any(all(dot(p, T.normals[i]) == h[i] for i in cone) for p in P.points):
            raise NotSummand(
                f"not a summand: no point of P is extremal for the cone at vertex {_show(v)}",
                vertex=_show(v),
                cone=list(cone),
            )
    return tuple(h)


def is_nef(T: ToricModel, D: Sequence) -> bool:
    """Convexity of the piecewise-linear support function of ``D``."""
    for m_sigma in T.vertex_functionals(D):
        if any(dot(m_sigma, u) > a for u, a in zip(T.normals, D)):
            return False
    return True


def nef_split(T: ToricModel, D: Sequence) -> tuple[tuple[Fraction, ...], Fraction]:
    """Minimal ``t >= 0`` with ``N = D + t L_Q`` nef; returns ``(N, t)``."""
    D = tuple(Fraction(a) for a in D)
    L = T.ample
    t = Fraction(0)
    for m_sigma, v, cone in zip(T.vertex_functionals(D), T.vertices, T.vertex_cones):
        for j, (u, a) in enumerate(zip(T.normals, D)):
            if j in cone:
                continue
            excess = dot(m_sigma, u) - a
            gap = L[j] - dot(v, u)  # positive: the vertex is off facet j
            if excess > 0:
                t = max(t, excess / gap)
    N = tuple(a + t * b for a, b in zip(D, L))
    if not is_nef(T, N):
        raise AssertionError("nef split produced a non-nef divisor")
    return N, t


def polytope_of_nef(T: ToricModel, D: Sequence) -> VPolytope:
    """``{x : x . u_i <= a_i}`` for a nef ``D``, generated by the vertex functionals."""
    if not is_nef(T, D):
        raise ValueError("divisor is not nef")
    return VPolytope(sorted(set(T.vertex_functionals(D))), T.n)


def polytope_of_nef_h(T: ToricModel, D: Sequence) -> VPolytope:
    """Same polytope via H-to-V conversion of the halfspace system."""
    return vertices(HPolytope(T.n, tuple(zip(T.normals, (Fraction(a) for a in D)))))


class IntersectionCalculator:
    """Memoized intersection numbers on one toric model."""

    def __init__(self, T: ToricModel, engine: str = "recursion"):
        self.T = T
        self.engine = engine
        self._splits: dict = {}
        self._polys: dict = {}
        self._products: dict = {}

    def split(self, D):
        D = tuple(Fraction(a) for a in D)
        if D not in self._splits:
            self._splits[D] = nef_split(self.T, D)
        return self._splits[D]

    def polytope(self, N):
        if N not in self._polys:
            self._polys[N] = polytope_of_nef(self.T, N)
        return self._polys[N]

    def nef_product(self, nefs: Sequence[tuple]) -> Fraction:
        key = tuple(sorted(nefs))
        if key not in self._products:
            polys = [self.polytope(N) for N in key]
            self._products[key] = factorial(self.T.n) * mixed_volume(polys, self.engine)
        return self._products[key]

    def __call__(self, divisors: Sequence) -> Fraction:
        T = self.T
        if len(divisors) != T.n:
            raise ValueError(f"need {T.n} divisors, got {len(divisors)}")
        L = tuple(Fraction(a) for a in T.ample)
        parts = [self.split(D) for D in divisors]
        total = Fraction(0)
        for choice in product((0, 1), repeat=T.n):
            coeff = Fraction(1)
            nefs = []
            for (N, t), c in zip(parts, choice):
                if c:
                    coeff *= -t
                    nefs.append(L)
                else:
                    nefs.append(N)
            if coeff != 0:
                total += coeff * self.nef_product(nefs)
        return total


def intersection_number(T: ToricModel, divisors: Sequence, engine: str = "recursion") -> Fraction:
    return IntersectionCalculator(T, engine)(divisors)


@dataclass
class KernelReport:
    lefschetz_matrix: list
    collection_divisors: list
    kernel_in_classes: list = field(default_factory=list)
    eff_indices: list = field(default_factory=list)
    v_eff: list = field(default_factory=list)
    equal: Optional[bool] = None
    signature: Optional[Inertia] = None  # form on N^1 modulo its kernel
    n1_basis: list = field(default_factory=list)
    n1_gram: list = field(default_factory=list)

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_in_classes)

    def to_json(self) -> dict:
        rat = lambda rows: [[str(x) for x in r] for r in rows]  # noqa: E731
        return {
            "lefschetz_matrix": rat(self.lefschetz_matrix),
            "kernel_dim": self.kernel_dim,
            "kernel_basis": rat(self.kernel_in_classes),
            "eff_indices": list(self.eff_indices),
            "v_eff_basis": rat(self.v_eff),
            "equal": self.equal,
            "signature": list(self.signature) if self.signature else None,
            "n1_basis": list(self.n1_basis),
            "n1_gram": rat(self.n1_gram),
        }


def lefschetz_matrix(T: ToricModel, C: Collection, engine: str = "recursion") -> KernelReport:
    """Matrix ``(L_1 ... L_{n-2} . D_i . D_j)`` for the summand divisors of ``C``."""
    if T.n < 3:
        raise ValueError("the Lefschetz matrix needs n >= 3 (collection of n - 2 >= 1 polytopes)")
    if C.ambient_dim != T.n:
        raise ValueError("collection and model live in different dimensions")
    Ls = [summand_divisor(T, P) for P in C.polytopes]
    calc = IntersectionCalculator(T, engine)
    m = T.m
    M = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            M[i][j] = M[j][i] = calc(Ls + [T.indicator(i), T.indicator(j)])
    U = T.relation_matrix
    if any(x != 0 for row in matmul(U, M) for x in row):
        raise TheoremViolation("principal divisors do not annihilate the Lefschetz matrix")
    return KernelReport(M, Ls)


def kernel_vs_eff(T: ToricModel, C: Collection, engine: str = "recursion", strict: bool = True) -> KernelReport:
    """Compare ``ker L`` with the span of divisors ``D_i`` that ``L`` annihilates."""
    sc = supercritical(C)
    if not sc.ok:
        raise NotSupercritical(
            "collection is not supercritical",
            table=[{"I": list(I), "dim": d, "required": len(I) + 2} for I, d in sc.table],
        )
    rep = lefschetz_matrix(T, C, engine)
    M = rep.lefschetz_matrix
    m = T.m
    U = T.relation_matrix
    ker = kernel_basis(M, m)
    eff = [i for i in range(m) if all(x == 0 for x in M[i])]
    veff_rows = [list(r) for r in U] + [list(T.indicator(i)) for i in eff]
    rep.eff_indices = eff
    rep.equal = same_span(ker, veff_rows, m)
    if rank(ker + veff_rows) != len(ker):
        raise TheoremViolation("an annihilated divisor is missing from the kernel")
    rep.kernel_in_classes = _class_basis(T, ker)
    rep.v_eff = _class_basis(T, veff_rows)
    idx = T.class_basis_indices()
    rep.n1_basis = idx
    rep.n1_gram = [[M[i][j] for j in idx] for i in idx]
    full = signature(M)
    rep.signature = Inertia(full.n_plus, full.n_minus, 0)
    if strict:
        if not rep.equal:
            raise TheoremViolation("kernel differs from the span of annihilated divisors", report=rep.to_json())
        if full.n_plus != 1:
            raise TheoremViolation(f"Lefschetz form has {full.n_plus} positive eigenvalues")
    return rep


def _class_basis(T: ToricModel, rows) -> list[tuple[Fraction, ...]]:
    reduced = [T.reduce_class(r) for r in rows]
    R, _ = rref(reduced, T.m) if reduced else ([], [])
    return [tuple(r) for r in R]


@dataclass(frozen=True)
class AnnihilationCheck:
    eff_indices: tuple
    non_extreme_indices: tuple

    @property
    def agree(self) -> bool:
        return self.eff_indices == self.non_extreme_indices


def annihilated_vs_extreme(
    T: ToricModel, C: Collection, report: Optional[KernelReport] = None, engine: str = "recursion"
) -> AnnihilationCheck:
    """Zero rows of the Lefschetz matrix against non-extreme facet normals."""
    if report is None:
        report = kernel_vs_eff(T, C, engine)
    non_extreme = tuple(i for i, u in enumerate(T.normals) if not extreme_direction(u, C).is_extreme)
    check = AnnihilationCheck(tuple(report.eff_indices), non_extreme)
    if not check.agree:
        raise TheoremViolation(
            f"zero rows {check.eff_indices} differ from non-extreme normals {check.non_extreme_indices}"
        )
    return check


def adjacent_facets(T: ToricModel, f: int) -> list[int]:
    """Facets meeting facet ``f`` in a face of codimension two."""
    n = T.n
    on_f = [j for j, cone in enumerate(T.vertex_cones) if f in cone]
    out = []
    for i in range(T.m):
        if i == f:
            continue
        common = [T.vertices[j] for j in on_f if i in T.vertex_cones[j]]
        if common and VPolytope(common, n).dim == n - 2:
            out.append(i)
    return out


def face_restriction_check(T: ToricModel, P: VPolytope, f: int) -> bool:
    """Restricting ``L_P`` to the facet divisor ``D_f`` gives the divisor of the face ``F(P, u_f)``.

    The facet and the face are moved to lattice coordinates of ``u_f``-perp;
    the facet gets its own toric model, whose normals must be the projected
    neighbouring normals, and the face (translated into ``u_f . x = 0``)
    must have support values equal to the restricted coefficients.
    """
    if not 0 <= f < T.m:
        raise ValueError(f"facet index {f} out of range 0..{T.m - 1}")
    L = summand_divisor(T, P)
    uF = T.normals[f]
    basis, w = unimodular_completion(uF)
    proj = lattice_projector(uF)
    facet_poly = VPolytope([project(proj, p) for p in face(T.Q, uF).points], T.n - 1)
    TF = delzant_check(facet_poly)
    adj = adjacent_facets(T, f)
    restricted_normals = {}
    for i in adj:
        v = tuple(int(dot(b, T.normals[i])) for b in basis)
        if primitive(v) != v:
            return False
        restricted_normals[i] = v
    if sorted(restricted_normals.values()) != sorted(TF.normals):
        return False
    shift = tuple(-L[f] * x for x in w)
    P_shift = scale_translate(P, 1, shift)
    FP = VPolytope([project(proj, p) for p in face(P_shift, uF).points], T.n - 1)
    face_div = dict(zip(TF.normals, summand_divisor(TF, FP)))
    for i in adj:
        restricted = support(P_shift, T.normals[i])
        if restricted != L[i] - L[f] * dot(w, T.normals[i]):
            return False
        if restricted != face_div[restricted_normals[i]]:
            return False
    return True
