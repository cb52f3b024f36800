"""Acceptance criteria, one test each, all exact.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary (see conftest.py) and when this file is run directly.
"""

from __future__ import annotations

import functools
import itertools
import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import factorial

from afx import fixtures as fx
from afx import io
from afx.criticality import Collection, nondegeneracy, supercritical
from afx.errors import PreconditionRefused
from afx.extremals import EQUALITY, STRICT, af_equality_certificate, af_triple
from afx.linalg import bilinear, det, inverse, lorentz_proportional, matmul, matvec, signature, transpose
from afx.polytope import VPolytope, box, scale_translate
from afx.toric import annihilated_vs_extreme, delzant_check, face_restriction_check, kernel_vs_eff
from afx.volume import (
    box_permanent_oracle,
    minkowski_poly_check,
    mixed_volume,
    mixed_volume_polarization,
    mixed_volume_recursive,
    permanent,
)
from gen import blow_up_vertex, random_delzant, random_full, random_homothety, random_polytope

F = Fraction
RESULTS: dict[int, tuple[bool, str, str]] = {}


def criterion(number: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs) or ""
            except BaseException as e:
                RESULTS[number] = (False, title, f"{type(e).__name__}: {e}")
                print(f"FAIL criterion {number:2d}: {title} -- {type(e).__name__}: {e}")
                raise
            took = time.perf_counter() - start
            detail = f"{detail} [{took:.1f}s]"
            RESULTS[number] = (True, title, detail)
            print(f"PASS criterion {number:2d}: {title} -- {detail}")

        return run

    return wrap


@criterion(1, "engine equivalence on random rational tuples")
def test_c01_engine_equivalence():
    rng = random.Random(101)
    start = time.perf_counter()
    count = 0
    for n in (2, 3):
        for _ in range(60):
            bodies = [random_polytope(rng, n, 8) for _ in range(n)]
            assert mixed_volume_polarization(bodies) == mixed_volume_recursive(bodies), bodies
            count += 1
    took = time.perf_counter() - start
    assert count >= 100 and took < 60, took
    return f"{count} tuples, n in (2, 3), <= 8 points"


def _box_orbits(n, entries):
    """Edge-length matrices up to permuting bodies and (simultaneously) coordinates."""
    rows = list(itertools.product(entries, repeat=n))
    perms = list(itertools.permutations(range(n)))
    for combo in itertools.combinations_with_replacement(rows, n):
        canon = min(tuple(sorted(tuple(r[p] for p in perm) for r in combo)) for perm in perms)
        if canon == combo:
            yield combo


@criterion(2, "box-permanent oracle")
def test_c02_box_permanents():
    A, B = fx.cube(), fx.stretched_box()
    worked = [6 * mixed_volume([A] * k + [B] * (3 - k), "both") for k in range(4)]
    assert worked == [12, 10, 8, 6]
    counts = {}
    for n, entries in [(1, range(4)), (2, range(4)), (3, range(4)), (4, (0, 1))]:
        counts[n] = 0
        for combo in _box_orbits(n, entries):
            boxes = [box(r) for r in combo]
            assert factorial(n) * mixed_volume(boxes) == permanent(combo), combo
            assert box_permanent_oracle(boxes) == permanent(combo) / factorial(n)
            counts[n] += 1
    rng = random.Random(202)
    for _ in range(30):
        combo = [tuple(rng.randint(0, 3) for _ in range(4)) for _ in range(4)]
        assert 24 * mixed_volume([box(r) for r in combo]) == permanent(combo), combo
    return f"worked family 12,10,8,6; orbit counts {counts}; 30 sampled n=4 tuples"


@criterion(3, "Minkowski polynomial at rational samples")
def test_c03_minkowski_polynomial():
    rng = random.Random(303)
    for _ in range(20):
        bodies = [random_polytope(rng, 3, 5) for _ in range(3)]
        samples = [tuple(F(rng.randint(0, 6), rng.randint(1, 3)) for _ in range(3)) for _ in range(4)]
        assert minkowski_poly_check(bodies, samples), (bodies, samples)
    return "20 triples x 4 samples"


@criterion(4, "nondegeneracy <=> positive mixed volume on segment multisets")
def test_c04_hall_rado_segments():
    dirs = fx.segment_directions()
    count = positive = 0
    for combo in itertools.combinations_with_replacement(range(len(dirs)), 3):
        segs = [fx.segment((0, 0, 0), dirs[i]) for i in combo]
        v = mixed_volume(segs, "both")
        assert nondegeneracy(segs).ok == (v > 0), combo
        count += 1
        positive += v > 0
    assert count == 56
    return f"{count} multisets, {positive} with V > 0"


def _random_supercritical(rng, n, points):
    while True:
        C = Collection(n, tuple(random_polytope(rng, n, points) for _ in range(n - 2)))
        if supercritical(C).ok:
            return C


@criterion(5, "AF inequality on random supercritical instances")
def test_c05_af_inequality():
    rng = random.Random(505)
    count = 0
    for n, reps, points in [(3, 60, 6), (4, 50, 5)]:
        for _ in range(reps):
            C = _random_supercritical(rng, n, points)
            M, N = random_polytope(rng, n, points), random_polytope(rng, n, points)
            assert af_triple(M, N, C).slack >= 0
            count += 1
    return f"{count} instances (n = 3, 4)"


@criterion(6, "equality decision agrees with certificate feasibility")
def test_c06_extremal_theorem():
    rng = random.Random(606)
    start = time.perf_counter()
    kinds = {"random": 0, "homothety": 0, "truncation": 0}
    statuses = {}
    for _ in range(25):
        C = Collection(3, (random_full(rng, 3, 6),))
        M, N = random_full(rng, 3, 6), random_full(rng, 3, 6)
        rep = af_equality_certificate(M, N, C)  # raises if the two decisions differ
        statuses[rep.status] = statuses.get(rep.status, 0) + 1
        kinds["random"] += 1
    for _ in range(20):
        C = Collection(3, (random_full(rng, 3, 6),))
        M = random_full(rng, 3, 6)
        a, v, N = random_homothety(rng, M)
        rep = af_equality_certificate(M, N, C)
        assert rep.status == EQUALITY
        assert rep.certificate == (1 / a, tuple(-x / a for x in v))
        kinds["homothety"] += 1
    # cutting a corner of a box along a direction the cube collection cannot see
    for _ in range(10):
        lengths = [rng.randint(2, 4) for _ in range(3)]
        N = box(lengths)
        corner = tuple(rng.choice((0, L)) for L in lengths)
        M = blow_up_vertex(N, corner, F(rng.randint(1, 3), 2))
        P = scale_translate(fx.cube(), F(rng.randint(1, 3), 2), (rng.randint(-2, 2), 0, 1))
        rep = af_equality_certificate(M, N, Collection(3, (P,)))
        assert rep.status == EQUALITY and rep.certificate == (1, (0, 0, 0))
        kinds["truncation"] += 1
    stretched = af_equality_certificate(fx.cube(), fx.stretched_box(), Collection(3, (fx.cube(),)))
    assert stretched.status == STRICT and stretched.slack == F(1, 9)
    took = time.perf_counter() - start
    assert sum(kinds.values()) >= 50 and took < 120, took
    return f"{kinds}, random statuses {statuses}, stretched-box slack 1/9"


def _toric_instances():
    """Cube and truncated cube, then seeded random Delzant instances."""
    cube = fx.cube()
    yield "cube", delzant_check(cube), Collection(3, (cube,))
    yield "truncated cube", delzant_check(fx.truncated_cube()), Collection(3, (cube,))
    rng = random.Random(707)
    for k in range(24):
        Q, base = random_delzant(rng)
        T = delzant_check(Q)
        P = base if k % 3 else Q
        yield f"random #{k}", T, Collection(3, (P,))


@functools.lru_cache(maxsize=None)
def _accepted_toric():
    out, refused = [], 0
    for name, T, C in _toric_instances():
        try:
            rep = kernel_vs_eff(T, C, strict=False)
        except PreconditionRefused:
            refused += 1
            continue
        out.append((name, T, C, rep))
    return out, refused


@criterion(7, "kernel equals the span of annihilated divisors (toric)")
def test_c07_theorem_a_toric():
    accepted, refused = _accepted_toric()
    by_name = {name: rep for name, _, _, rep in accepted}
    cube = by_name["cube"]
    assert cube.kernel_dim == 0 and cube.eff_indices == [] and cube.equal
    trunc = by_name["truncated cube"]
    assert trunc.kernel_dim == 1 and trunc.eff_indices == [6] and trunc.equal
    assert trunc.kernel_in_classes == [tuple(F(int(i == 6)) for i in range(7))]
    for name, _, _, rep in accepted:
        assert rep.equal, name
    nontrivial = sum(1 for *_, rep in accepted if rep.kernel_dim > 0)
    assert len(accepted) >= 20
    return f"{len(accepted)} accepted ({nontrivial} with nonzero kernel), {refused} refused"


@criterion(8, "zero rows <=> non-extreme facet normals")
def test_c08_zero_rows_vs_extreme():
    accepted, _ = _accepted_toric()
    for name, T, C, rep in accepted:
        assert annihilated_vs_extreme(T, C, rep).agree, name
    return f"{len(accepted)} instances"


@criterion(9, "Lefschetz form on N^1 / kernel has inertia (1, r, 0)")
def test_c09_hodge_index():
    accepted, _ = _accepted_toric()
    for name, T, C, rep in accepted:
        full = signature(rep.lefschetz_matrix)
        assert full.n_plus == 1, name
        assert full.n_plus + full.n_minus == T.picard_rank - rep.kernel_dim, name
        assert tuple(rep.signature) == (1, full.n_minus, 0)
    cube = next(rep for name, _, _, rep in accepted if name == "cube")
    assert tuple(cube.signature) == (1, 2, 0) and signature(cube.n1_gram) == (1, 2, 0)
    return f"{len(accepted)} instances; (P^1)^3 gives (1, 2, 0)"


def _random_lorentz_form(rng, k):
    """``Q = P^T diag(1, -1, ..., -1) P`` and a point ``x`` with ``Q(x) > 0``."""
    d = k + 1
    while True:
        P = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
        if det(P) != 0:
            break
    D = [[(1 if i == 0 else -1) if i == j else 0 for j in range(d)] for i in range(d)]
    z = [rng.randint(1, 3) * d] + [rng.randint(-2, 2) for _ in range(k)]  # z_0^2 > sum z_i^2
    x = list(matvec(inverse(P), z))
    return matmul(matmul(transpose(P), D), P), x


@criterion(10, "reverse Cauchy-Schwarz and proportionality witnesses")
def test_c10_lorentz():
    rng = random.Random(1010)
    samples = witnesses = 0
    for k in range(1, 6):
        for _ in range(6):
            Q, x = _random_lorentz_form(rng, k)
            assert signature(Q) == (1, k, 0) and bilinear(Q, x, x) > 0
            for _ in range(20):
                y = [rng.randint(-3, 3) for _ in range(k + 1)]
                assert bilinear(Q, x, y) ** 2 >= bilinear(Q, x, x) * bilinear(Q, y, y)
                samples += 1
            c = F(rng.randint(1, 5), rng.randint(1, 3))
            y = [c * t for t in x]
            assert lorentz_proportional(Q, y, x) == c
            witnesses += 1
            # a degenerate direction: equality up to the radical of the form
            Qd = [row + [0] for row in Q] + [[0] * (k + 2)]
            xd, yd = x + [0], [c * t for t in x] + [rng.randint(-3, 3)]
            assert lorentz_proportional(Qd, yd, xd) == c
            witnesses += 1
    return f"{samples} sampled pairs, {witnesses} equality witnesses, k = 1..5"


@criterion(11, "restriction to facets")
def test_c11_restriction():
    checked = 0
    for Q in (fx.cube(), fx.truncated_cube()):
        T = delzant_check(Q)
        for P in (fx.cube(), VPolytope([(0, 0, 0)]), Q):
            for f in range(T.m):
                assert face_restriction_check(T, P, f), (Q, P, f)
                checked += 1
    return f"{checked} (model, P, facet) checks"


@criterion(12, "round trip, determinism and selftest")
def test_c12_round_trip_and_selftest():
    rng = random.Random(1212)
    polys = [random_polytope(rng, rng.randint(1, 4), 8) for _ in range(50)]
    polys += [fx.truncated_cube(), fx.prism(2, F(1, 3), 2), VPolytope([(F(-7, 3), F(2, 4))])]
    for P in polys:
        data = io.emit_polytope(P)
        assert io.parse_polytope(data) == P
        assert io.emit_polytope(io.parse_polytope(data)) == data
    start = time.perf_counter()
    outs = [
        subprocess.run([sys.executable, "-m", "afx", "selftest"], capture_output=True, timeout=300)
        for _ in range(2)
    ]
    took = (time.perf_counter() - start) / 2
    assert all(p.returncode == 0 for p in outs), outs[0].stdout
    assert outs[0].stdout == outs[1].stdout
    assert json.loads(outs[0].stdout)["passed"] is True
    assert took < 300
    return f"{len(polys)} polytopes round-trip; selftest exit 0 in {took:.1f}s, byte-identical reruns"


def summary_lines() -> list[str]:
    lines = []
    for number in sorted(RESULTS):
        ok, title, detail = RESULTS[number]
        lines.append(f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} -- {detail}")
    return lines


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c")]
    failed = 0
    for t in tests:
        try:
            t()
        except BaseException:  # noqa: BLE001 -- already reported by the wrapper
            failed += 1
    sys.exit(1 if failed else 0)
