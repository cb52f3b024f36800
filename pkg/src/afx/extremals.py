"""Equality cases of the Alexandrov-Fenchel and Khovanskii-Teissier inequalities.

For a supercritical collection ``P`` and rational polytopes ``M, N`` with
``V(M, N, P) > 0``, equality ``V(M,N,P)^2 = V(M,M,P) V(N,N,P)`` holds iff
some ``a > 0`` and ``v`` make ``h_M(u) = a h_N(u) + v . u`` at every extreme
normal direction.  Both sides are computed independently here and must
agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .criticality import Collection, extreme_facet_normals, supercritical
from .errors import NotSupercritical, TheoremViolation
from .linalg import dot, solve_affine, solve_square
from .polytope import VPolytope, minkowski_sum_all, span_dim, support
from .volume import mixed_volume

DEGENERATE, STRICT, EQUALITY = "degenerate", "strict", "equality"


def _fmt(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class AFVerdict:
    v_mn: Fraction
    v_mm: Fraction
    v_nn: Fraction
    status: str
    certificate: Optional[tuple] = None  # (a, v)
    violated_direction: Optional[tuple[int, ...]] = None
    extreme_normals: tuple = ()
    non_extreme_normals: tuple = ()
    note: Optional[str] = None

    @property
    def slack(self) -> Fraction:
        return self.v_mn * self.v_mn - self.v_mm * self.v_nn

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "v_mn": _fmt(self.v_mn),
            "v_mm": _fmt(self.v_mm),
            "v_nn": _fmt(self.v_nn),
            "slack": _fmt(self.slack),
            "certificate": None,
            "violated_direction": list(self.violated_direction) if self.violated_direction else None,
        }
        if self.certificate is not None:
            a, v = self.certificate
            out["certificate"] = {"a": _fmt(a), "v": [_fmt(x) for x in v]}
            out["a"] = _fmt(a)
            out["v"] = [_fmt(x) for x in v]
        if self.extreme_normals or self.non_extreme_normals:
            out["extreme_normals"] = [list(u) for u in self.extreme_normals]
            out["non_extreme_normals"] = [list(u) for u in self.non_extreme_normals]
        if self.note:
            out["note"] = self.note
        return out


def _collection_bodies(C: Collection) -> list[VPolytope]:
    return list(C.polytopes)


def af_triple(M: VPolytope, N: VPolytope, C: Collection, engine: str = "recursion") -> AFVerdict:
    """The three mixed volumes ``V(M,N,C)``, ``V(M,M,C)``, ``V(N,N,C)`` and the status."""
    n = C.ambient_dim
    if M.ambient_dim != n or N.ambient_dim != n:
        raise ValueError("M, N and the collection must share the ambient dimension")
    rest = _collection_bodies(C)
    v_mn = mixed_volume([M, N] + rest, engine)
    v_mm = mixed_volume([M, M] + rest, engine)
    v_nn = mixed_volume([N, N] + rest, engine)
    slack = v_mn * v_mn - v_mm * v_nn
    if slack < 0:
        raise TheoremViolation(f"Alexandrov-Fenchel slack {slack} is negative")
    if v_mn == 0:
        status = DEGENERATE
    elif slack == 0:
        status = EQUALITY
    else:
        status = STRICT
    return AFVerdict(v_mn, v_mm, v_nn, status)


def _least_norm(x0: Sequence[Fraction], null: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    """Point of ``x0 + span(null)`` closest to the origin."""
    if not null:
        return tuple(x0)
    G = [[dot(z, w) for w in null] for z in null]
    rhs = [-dot(z, x0) for z in null]
    c = solve_square(G, rhs)
    return tuple(x + sum((ci * z[k] for ci, z in zip(c, null)), Fraction(0)) for k, x in enumerate(x0))


def _solve_certificate(normals, hM, hN, n):
    rows = [[hN[i]] + list(u) for i, u in enumerate(normals)]
    rhs = list(hM)
    sol = solve_affine(rows, rhs, n + 1)
    if not sol.feasible:
        return None
    if any(z[0] != 0 for z in sol.null_space):
        # a is free on the solution set; pin it to 1
        rows = rows + [[Fraction(1)] + [Fraction(0)] * n]
        rhs = rhs + [Fraction(1)]
        sol = solve_affine(rows, rhs, n + 1)
    a = sol.particular[0]
    if a <= 0:
        return None
    v = _least_norm(sol.particular[1:], [z[1:] for z in sol.null_space])
    return a, v


def certificate_solve(normals, hM, hN, ambient_dim: Optional[int] = None):
    """Find ``(a, v)`` with ``a > 0`` and ``hM[i] = a hN[i] + v . u_i`` for all ``i``.

    Returns None when no such pair exists.  Among solutions, ``a = 1`` is
    preferred when ``a`` is not determined, and ``v`` is the least-norm
    choice for the fixed ``a``.
    """
    normals = [tuple(int(x) for x in u) for u in normals]
    if not (len(normals) == len(hM) == len(hN)):
        raise ValueError("normals and support values are not aligned")
    n = ambient_dim if ambient_dim is not None else len(normals[0])
    hM = [Fraction(x) for x in hM]
    hN = [Fraction(x) for x in hN]
    return _solve_certificate(normals, hM, hN, n)


def _violated_direction(normals, hM, hN, n):
    for k in range(1, len(normals) + 1):
        if _solve_certificate(normals[:k], hM[:k], hN[:k], n) is None:
            return normals[k - 1]
    return None


def af_equality_certificate(
    M: VPolytope, N: VPolytope, C: Collection, engine: str = "recursion"
) -> AFVerdict:
    """Full equality decision with a certificate, cross-checked against the slack."""
    sc = supercritical(C)
    if not sc.ok:
        raise NotSupercritical(
            "collection is not supercritical",
            table=[{"I": list(I), "dim": d, "required": len(I) + 2} for I, d in sc.table],
        )
    verdict = af_triple(M, N, C, engine)
    if verdict.status == DEGENERATE:
        return replace(verdict, note="V(M,N,P) = 0: equality automatic")
    n = C.ambient_dim
    Q = minkowski_sum_all([M, N] + _collection_bodies(C))
    reports = extreme_facet_normals(Q, C)
    extreme = [r.direction for r in reports if r.is_extreme]
    non_extreme = tuple(r.direction for r in reports if not r.is_extreme)
    hM = [support(M, u) for u in extreme]
    hN = [support(N, u) for u in extreme]
    cert = _solve_certificate(extreme, hM, hN, n)
    if (verdict.status == EQUALITY) != (cert is not None):
        raise TheoremViolation(
            f"slack {verdict.slack} but certificate {'found' if cert else 'absent'}",
            slack=verdict.slack,
        )
    violated = None
    if cert is not None:
        a, v = cert
        for u, m_val, n_val in zip(extreme, hM, hN):
            if m_val != a * n_val + dot(v, u):
                raise TheoremViolation(f"certificate fails at {u}")
    else:
        violated = _violated_direction(extreme, hM, hN, n)
    return replace(
        verdict,
        certificate=cert,
        violated_direction=violated,
        extreme_normals=tuple(extreme),
        non_extreme_normals=non_extreme,
    )


@dataclass(frozen=True)
class KTReport:
    """Sequence ``V_k = V(A[k], B[n-k])``; slacks use intersection numbers ``n! V_k``."""

    mixed: tuple
    checked_k: Optional[int] = None
    equality_analysis: Optional[AFVerdict] = None
    status: Optional[str] = None
    degenerate_causes: tuple = ()

    @property
    def n(self) -> int:
        return len(self.mixed) - 1

    @property
    def intersection(self) -> tuple:
        f = factorial(self.n)
        return tuple(f * x for x in self.mixed)

    def slack(self, k: int) -> Fraction:
        s = self.intersection
        return s[k] * s[k] - s[k - 1] * s[k + 1]

    @property
    def slacks(self) -> dict:
        return {k: self.slack(k) for k in range(1, self.n)}

    def to_json(self) -> dict:
        out = {
            "mixed_volumes": [_fmt(x) for x in self.mixed],
            "intersection_numbers": [_fmt(x) for x in self.intersection],
            "log_concavity_slacks": {str(k): _fmt(s) for k, s in self.slacks.items()},
        }
        if self.checked_k is not None:
            out["k"] = self.checked_k
            out["status"] = self.status
            out["slack"] = _fmt(self.slack(self.checked_k))
            out["degenerate_causes"] = list(self.degenerate_causes)
            out["equality_analysis"] = (
                self.equality_analysis.to_json() if self.equality_analysis else None
            )
        return out


def kt_sequence(A: VPolytope, B: VPolytope, engine: str = "recursion") -> KTReport:
    n = A.ambient_dim
    if B.ambient_dim != n:
        raise ValueError("A and B live in different dimensions")
    seq = tuple(mixed_volume([A] * k + [B] * (n - k), engine) for k in range(n + 1))
    report = KTReport(seq)
    for k, s in report.slacks.items():
        if seq[k] > 0 and s < 0:
            raise TheoremViolation(f"log-concavity fails at k={k}")
    return report


def kt_equality(A: VPolytope, B: VPolytope, k: int, engine: str = "recursion") -> KTReport:
    """Decide equality in ``V_k^2 >= V_{k-1} V_{k+1}`` through the AF reduction.

    The reduction uses ``M = A``, ``N = B`` and the collection with ``A``
    repeated ``k - 1`` times and ``B`` repeated ``n - k - 1`` times.
    """
    n = A.ambient_dim
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must satisfy 1 <= k <= {n - 1}, got {k}")
    report = kt_sequence(A, B, engine)
    if report.mixed[k] == 0:
        causes = []
        if A.dim < k:
            causes.append(f"dim A = {A.dim} < k = {k}")
        if B.dim < n - k:
            causes.append(f"dim B = {B.dim} < n - k = {n - k}")
        if span_dim([A, B]) < n:
            causes.append(f"dim(A + B) = {span_dim([A, B])} < n = {n}")
        if not causes:
            raise TheoremViolation("V_k = 0 without a dimensional cause")
        return replace(report, checked_k=k, status=DEGENERATE, degenerate_causes=tuple(causes))
    C = Collection(n, (A,) * (k - 1) + (B,) * (n - k - 1))
    sc = supercritical(C)
    if not sc.ok:
        raise NotSupercritical(
            f"reduced collection A[{k - 1}], B[{n - k - 1}] is not supercritical",
            dim_A=A.dim,
            dim_B=B.dim,
            dim_A_plus_B=span_dim([A, B]),
            required={"dim_A": k + 1, "dim_B": n - k + 1, "dim_A_plus_B": n},
            table=[{"I": list(I), "dim": d, "required": len(I) + 2} for I, d in sc.table],
        )
    verdict = af_equality_certificate(A, B, C, engine)
    if verdict.slack * factorial(n) ** 2 != report.slack(k):
        raise TheoremViolation("AF reduction slack differs from the direct slack")
    return replace(report, checked_k=k, status=verdict.status, equality_analysis=verdict)
