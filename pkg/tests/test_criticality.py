import random

import pytest

from afx import fixtures as fx
from afx.criticality import (
    Collection,
    extreme_direction,
    extreme_facet_normals,
    nondegeneracy,
    supercritical,
)
from afx.errors import DegenerateInput
from afx.polytope import minkowski_sum, scale_translate
from afx.volume import mixed_volume
from gen import random_polytope

e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
O = (0, 0, 0)


def test_nondegeneracy_examples():
    segs = [fx.segment(O, d) for d in (e1, e2, e3)]
    assert nondegeneracy(segs).ok
    rep = nondegeneracy([fx.segment(O, e1), fx.segment(O, e1), fx.segment(O, e2)])
    assert not rep.ok and rep.witness == (0, 1)
    assert nondegeneracy([fx.cube()] * 3)


def test_nondegeneracy_witness_is_least_minimal():
    bodies = [fx.segment(O, e1), fx.segment(O, e2), fx.segment(O, e1)]
    assert nondegeneracy(bodies).witness == (0, 2)
    point = fx.simplex(3, 0)
    assert nondegeneracy([fx.cube(), point, fx.cube()]).witness == (1,)


def test_nondegeneracy_matches_positivity_on_random_bodies():
    rng = random.Random(3)
    for _ in range(30):
        bodies = [random_polytope(rng, 3, 4) for _ in range(3)]
        assert nondegeneracy(bodies).ok == (mixed_volume(bodies) > 0)


def test_supercritical_examples():
    assert supercritical(Collection(3, (fx.cube(),))).ok
    rep = supercritical(Collection(3, (fx.unit_square_3d(),)))
    assert not rep.ok and rep.failures() == [((0,), 2)]
    rep4 = supercritical(Collection(4, (fx.cube(4), fx.cube(4))))
    assert rep4.ok and [d for _, d in rep4.table] == [4, 4, 4]


def test_collection_length_is_checked():
    with pytest.raises(ValueError):
        Collection(3, (fx.cube(), fx.cube()))
    with pytest.raises(ValueError):
        Collection(3, (fx.cube(2),))


def test_supercritical_is_monotone_and_homogeneous():
    rng = random.Random(5)
    for _ in range(20):
        polys = tuple(random_polytope(rng, 4, 5) for _ in range(2))
        base = supercritical(Collection(4, polys)).ok
        grown = tuple(minkowski_sum(P, fx.segment((0,) * 4, (1, 0, 0, 0))) for P in polys)
        if base:
            assert supercritical(Collection(4, grown)).ok
        scaled = tuple(scale_translate(P, 3, (1, 2, 3, 4)) for P in polys)
        assert supercritical(Collection(4, scaled)).ok == base


def test_extreme_direction_examples():
    C = Collection(3, (fx.cube(),))
    assert extreme_direction(e1, C).is_extreme
    rep = extreme_direction((1, 1, 1), C)
    assert not rep.is_extreme and rep.witness == (0,)
    assert extreme_direction((2, 2, 2), C).direction == (1, 1, 1)
    assert extreme_direction((5, -3), Collection(2, ())).is_extreme


def test_extreme_facet_normals_examples():
    C = Collection(3, (fx.cube(),))
    reps = extreme_facet_normals(fx.cube(3, 3), C)
    assert len(reps) == 6 and all(r.is_extreme for r in reps)
    reps = extreme_facet_normals(fx.truncated_cube(), C)
    assert [r.direction for r in reps if not r.is_extreme] == [(1, 1, 1)]
    M, N = fx.box([1, 1]), fx.diamond()
    assert all(r.is_extreme for r in extreme_facet_normals(minkowski_sum(M, N), Collection(2, ())))


def test_extreme_facet_normals_refuses_flat_q():
    with pytest.raises(DegenerateInput):
        extreme_facet_normals(fx.unit_square_3d(), Collection(3, (fx.cube(),)))


def test_report_json():
    rep = extreme_direction((1, 1, 1), Collection(3, (fx.cube(),)))
    assert rep.to_json() == {"direction": [1, 1, 1], "extreme": False, "witness": [0]}
