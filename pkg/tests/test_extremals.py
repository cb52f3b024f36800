import random
from fractions import Fraction

import pytest

from afx import fixtures as fx
from afx.criticality import Collection
from afx.errors import NotSupercritical
from afx.extremals import (
    DEGENERATE,
    EQUALITY,
    STRICT,
    af_equality_certificate,
    af_triple,
    certificate_solve,
    kt_equality,
    kt_sequence,
)
from afx.polytope import VPolytope, scale_translate, support
from gen import random_full, random_homothety

F = Fraction
CUBE = Collection(3, (fx.cube(),))


def test_af_triple_examples():
    eq = af_triple(fx.cube(), fx.cube(), CUBE)
    assert (eq.v_mn, eq.v_mm, eq.v_nn, eq.status) == (1, 1, 1, EQUALITY)
    st = af_triple(fx.cube(), fx.stretched_box(), CUBE)
    assert (st.v_mn, st.v_mm, st.v_nn) == (F(4, 3), 1, F(5, 3))
    assert st.slack == F(1, 9) and st.status == STRICT
    deg = af_triple(fx.cube(), VPolytope([(0, 0, 0)]), CUBE)
    assert deg.v_mn == 0 and deg.status == DEGENERATE


def test_certificate_examples():
    e1, m1, e2, m2 = (1, 0), (-1, 0), (0, 1), (0, -1)
    assert certificate_solve([(1,)], [1], [1]) == (1, (0,))
    assert certificate_solve([e1, m1, e2, m2], [1, 0, 1, 0], [2, 0, 2, 0]) == (F(1, 2), (0, 0))
    assert certificate_solve([e1, m1], [1, 0], [0, 0]) is None
    with pytest.raises(ValueError):
        certificate_solve([e1], [1, 2], [1])


def test_homothety_certificate():
    N = scale_translate(fx.cube(), 2, (1, 1, 1))
    rep = af_equality_certificate(fx.cube(), N, CUBE, "both")
    assert rep.status == EQUALITY
    assert rep.certificate == (F(1, 2), (F(-1, 2),) * 3)
    js = rep.to_json()
    assert js["a"] == "1/2" and js["v"] == ["-1/2"] * 3


def test_stretched_box_is_strict_with_violated_direction():
    rep = af_equality_certificate(fx.cube(), fx.stretched_box(), CUBE)
    assert rep.status == STRICT and rep.slack == F(1, 9)
    assert rep.certificate is None
    u = rep.violated_direction
    assert u in rep.extreme_normals


def test_planar_square_vs_diamond():
    C = Collection(2, ())
    sq = fx.box([1, 1])
    assert af_equality_certificate(sq, fx.diamond(), C).status == STRICT
    v = (F(1, 2), -2)
    rep = af_equality_certificate(sq, scale_translate(sq, 3, v), C)
    assert rep.status == EQUALITY
    assert rep.certificate == (F(1, 3), (F(-1, 6), F(2, 3)))


def test_truncated_cube_equality_beyond_homothety():
    rep = af_equality_certificate(fx.truncated_cube(), fx.cube(3, 2), CUBE)
    assert rep.status == EQUALITY
    assert rep.non_extreme_normals == ((1, 1, 1),)
    a, v = rep.certificate
    assert (a, v) == (1, (0, 0, 0))


def test_degenerate_skips_certificate():
    rep = af_equality_certificate(fx.cube(), VPolytope([(1, 2, 3)]), CUBE)
    assert rep.status == DEGENERATE and rep.certificate is None and rep.note


def test_refuses_non_supercritical():
    with pytest.raises(NotSupercritical) as e:
        af_equality_certificate(fx.cube(), fx.cube(), Collection(3, (fx.unit_square_3d(),)))
    assert e.value.exit_code == 3
    assert e.value.details["table"] == [{"I": [0], "dim": 2, "required": 3}]


def test_scaling_equivariance():
    rng = random.Random(17)
    for _ in range(6):
        M, N, P = (random_full(rng, 3, 5) for _ in range(3))
        C = Collection(3, (P,))
        base = af_equality_certificate(M, N, C)
        M2 = scale_translate(M, 2, (1, 0, -1))
        N2 = scale_translate(N, 3, (0, 5, 1))
        moved = af_equality_certificate(M2, N2, C)
        assert moved.status == base.status
        assert moved.slack == 36 * base.slack


def test_random_homotheties_recover_certificate():
    rng = random.Random(23)
    for _ in range(5):
        M, P = random_full(rng, 3, 5), random_full(rng, 3, 5)
        a, v, N = random_homothety(rng, M)
        rep = af_equality_certificate(M, N, Collection(3, (P,)))
        assert rep.status == EQUALITY
        assert rep.certificate == (1 / a, tuple(-x / a for x in v))


def test_certificate_is_valid_on_extreme_normals():
    rep = af_equality_certificate(fx.truncated_cube(), fx.cube(3, 2), CUBE)
    a, v = rep.certificate
    for u in rep.extreme_normals:
        lhs = support(fx.truncated_cube(), u)
        assert lhs == a * support(fx.cube(3, 2), u) + sum(x * y for x, y in zip(v, u))


def test_kt_sequence_examples():
    assert kt_sequence(fx.cube(), fx.cube()).mixed == (1, 1, 1, 1)
    rep = kt_sequence(fx.cube(), fx.stretched_box(), "both")
    assert rep.intersection == (12, 10, 8, 6)
    assert rep.slacks == {1: 4, 2: 4}
    pt = kt_sequence(fx.cube(3, 2), VPolytope([(0, 0, 0)]))
    assert pt.mixed == (0, 0, 0, 8)


def test_kt_equality_examples():
    hom = kt_equality(fx.cube(), scale_translate(fx.cube(), 2, (3, 0, 0)), 1)
    assert hom.status == EQUALITY and hom.equality_analysis.certificate[0] == F(1, 2)
    st = kt_equality(fx.cube(), fx.stretched_box(), 1)
    assert st.status == STRICT and st.slack(1) == 4
    seg = kt_equality(fx.segment((0, 0, 0), (1, 0, 0)), fx.cube(), 2)
    assert seg.status == DEGENERATE and seg.degenerate_causes == ("dim A = 1 < k = 2",)


def test_kt_equality_range_and_refusal():
    with pytest.raises(ValueError):
        kt_equality(fx.cube(), fx.cube(), 3)
    flat = fx.unit_square_3d()
    with pytest.raises(NotSupercritical) as e:
        kt_equality(flat, fx.cube(), 2)
    assert e.value.details["required"]["dim_A"] == 3
