"""Embedded fixture corpus and theorem assertions run by ``afx selftest``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable

from . import fixtures as fx
from .criticality import Collection, nondegeneracy
from .extremals import EQUALITY, STRICT, af_equality_certificate, kt_sequence
from .linalg import lorentz_proportional, signature
from .polytope import VPolytope, scale_translate, segment
from .toric import annihilated_vs_extreme, delzant_check, face_restriction_check, kernel_vs_eff
from .volume import box_permanent_oracle, mixed_volume, volume


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _volumes():
    assert volume(fx.cube()) == 1
    assert volume(fx.simplex(2)) == Fraction(1, 2)
    assert volume(segment((0, 0), (1, 1))) == 0
    return "cube 1, triangle 1/2, segment 0"


def _engines():
    cases = [
        [fx.box([1, 1]), fx.box([1, 2])],
        [fx.segment((0, 0), (1, 0)), fx.segment((0, 0), (1, 1))],
        [fx.cube()] * 3,
        [fx.segment((0, 0, 0), d) for d in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]],
        [fx.truncated_cube(), fx.cube(), fx.stretched_box()],
    ]
    vals = [mixed_volume(c, "both") for c in cases]
    assert vals[:4] == [Fraction(3, 2), Fraction(1, 2), 1, Fraction(1, 6)], vals
    return "polarization == recursion on 5 fixtures"


def _box_family():
    A, B = fx.cube(), fx.stretched_box()
    perms = [6 * box_permanent_oracle([A] * k + [B] * (3 - k)) for k in range(4)]
    assert perms == [12, 10, 8, 6], perms
    seq = kt_sequence(A, B, "both")
    assert list(seq.intersection) == perms
    return "perm = 12, 10, 8, 6"


def _hall_rado():
    dirs = fx.segment_directions()
    count = 0
    for combo in combinations_with_replacement(range(len(dirs)), 3):
        segs = [fx.segment((0, 0, 0), dirs[i]) for i in combo]
        assert bool(nondegeneracy(segs)) == (mixed_volume(segs) > 0), combo
        count += 1
    return f"{count} segment multisets"


def _af():
    c = fx.cube()
    C = Collection(3, (c,))
    hom = af_equality_certificate(c, scale_translate(c, 2, (1, 1, 1)), C, "both")
    assert hom.status == EQUALITY and hom.certificate == (Fraction(1, 2), (Fraction(-1, 2),) * 3)
    st = af_equality_certificate(c, fx.stretched_box(), C, "both")
    assert st.status == STRICT and st.slack == Fraction(1, 9) and st.certificate is None
    tr = af_equality_certificate(fx.truncated_cube(), fx.cube(side=2), C)
    assert tr.status == EQUALITY
    return "homothety a=1/2, stretched box slack 1/9, corner truncation equality"


def _toric():
    c = fx.cube()
    C = Collection(3, (c,))
    T = delzant_check(c)
    rep = kernel_vs_eff(T, C)
    assert rep.kernel_dim == 0 and rep.eff_indices == [] and rep.equal
    assert tuple(rep.signature) == (1, 2, 0)
    assert signature(rep.n1_gram) == (1, 2, 0)
    annihilated_vs_extreme(T, C, rep)
    T2 = delzant_check(fx.truncated_cube())
    rep2 = kernel_vs_eff(T2, C)
    assert rep2.kernel_dim == 1 and rep2.eff_indices == [6] and rep2.equal
    assert T2.normals[6] == (1, 1, 1)
    annihilated_vs_extreme(T2, C, rep2)
    for model in (T, T2):
        for f in range(model.m):
            for P in (c, VPolytope([(0, 0, 0)]), model.Q):
                assert face_restriction_check(model, P, f), (f, P)
    return "cube: ker 0; truncated cube: ker = <D_6>; restriction on all facets"


def _lorentz():
    Q = [[1, 0], [0, -1]]
    assert lorentz_proportional(Q, (1, 0), (2, 0)) == Fraction(1, 2)
    assert lorentz_proportional(Q, (1, 1), (1, 1)) == 1
    return "proportionality witnesses"


CHECKS: list[tuple[str, Callable[[], str]]] = [
    ("volumes", _volumes),
    ("engine equivalence", _engines),
    ("box permanents", _box_family),
    ("hall-rado segments", _hall_rado),
    ("af extremals", _af),
    ("toric kernel", _toric),
    ("lorentz proportionality", _lorentz),
]


def run_selftest() -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        try:
            results.append(CheckResult(name, True, fn()))
        except Exception as e:  # noqa: BLE001 -- report every failure, keep going
            results.append(CheckResult(name, False, f"{type(e).__name__}: {e}"))
    return results
