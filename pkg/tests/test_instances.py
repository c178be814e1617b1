from fractions import Fraction

import numpy as np
import pytest

from rainbow_poly.data.instances import InstanceSpec, check_twins, gen_hard, gen_instance, gen_random, gen_reduction
from rainbow_poly.data.instances import _crosses_left, gen_twins
from rainbow_poly.utils.defaults import EXTERIOR, RANDOM, REDUCTION, S4, S5, S6, S7, TWINS
from rainbow_poly.utils.errors import BadParams, BadSpec
from rainbow_poly.utils.utils import bounding_box, convex_hull, find_collinear_triple, locate_points, point


def test_instance_spec_validation():
    spec = InstanceSpec(S6)
    assert spec.k == 6
    assert spec.as_dict()['kind'] == S6
    with pytest.raises(BadSpec):
        InstanceSpec('hexagonal')
    with pytest.raises(BadSpec):
        InstanceSpec(S5, k=4)
    with pytest.raises(BadSpec):
        InstanceSpec(RANDOM, k=5, n=3)
    with pytest.raises(BadSpec):
        InstanceSpec(TWINS)
    with pytest.raises(BadSpec):
        InstanceSpec(S7, grid_density=Fraction(3, 2))
    with pytest.raises(BadSpec):
        InstanceSpec(RANDOM, k=2, n=4, bbox=(0, 0, 0, 5))


def test_s4_shape():
    S = gen_hard(InstanceSpec(S4, seed=3))
    assert (S.n, S.k) == (5, 4)
    assert len(convex_hull(S.points)) == 3
    assert len(S.points_of(4)) == 2


@pytest.mark.parametrize('kind,singletons', [(S5, 4), (S6, 5), (S7, 6)])
def test_hard_sets_have_one_dense_class(kind, singletons):
    spec = InstanceSpec(kind, grid_density=Fraction(1, 8))
    S = gen_hard(spec)
    assert S.k == singletons + 1
    assert all(len(S.points_of(c)) == 1 for c in range(1, singletons + 1))
    assert len(S.points_of(singletons + 1)) == 81
    hull = convex_hull(S.points)
    assert S.color_at(hull[0]) == singletons + 1


def test_gen_hard_rejects_other_kinds():
    with pytest.raises(BadSpec):
        gen_hard(InstanceSpec(RANDOM, k=3, n=5))


def test_gen_hard_is_deterministic():
    spec = InstanceSpec(S5, grid_density=Fraction(1, 4), seed=7)
    assert gen_hard(spec).points == gen_hard(spec).points


@pytest.mark.parametrize('k', [2, 3, 5, 8])
def test_twins_properties(k):
    pts = gen_twins(k)
    assert len(pts) == 2 * k
    report = check_twins(pts)
    assert report['no_three_collinear']
    assert report['twin_distance']
    assert report['disjoint_disks']
    assert report['decreasing_slopes']
    assert report['crossing_left']


def test_twin_lines_cross_next_to_their_twin():
    a1, _, a2, b2, a3, _ = gen_twins(3)
    assert check_twins(gen_twins(3))['crossing_left']
    assert not _crosses_left([a1, a2, b2, a3])


@pytest.mark.slow
def test_twins_crossing_left_sampled():
    assert check_twins(gen_twins(16), seed=3)['crossing_left']


def test_twins_parameters():
    with pytest.raises(BadParams):
        gen_twins(1)
    with pytest.raises(BadParams):
        gen_twins(3, eps=0)
    with pytest.raises(BadParams):
        check_twins([point(0, 0), point(1, 1), point(2, 5)])


def test_gen_random():
    S = gen_random(6, 40, seed=5)
    assert (S.n, S.k) == (40, 6)
    assert S.color_list == [1, 2, 3, 4, 5, 6]
    assert find_collinear_triple(S.points) is None
    xmin, ymin, xmax, ymax = bounding_box(S.points)
    assert 0 <= xmin and xmax <= 1000 and 0 <= ymin and ymax <= 1000
    assert gen_random(6, 40, seed=5).points == S.points
    assert gen_random(6, 40, seed=6).points != S.points
    with pytest.raises(BadParams):
        gen_random(5, 4)


def test_gen_reduction():
    base = [point(0, 0), point(10, 1), point(3, 7), point(6, 4)]
    S = gen_reduction(base, Fraction(4), to_unit_square=True)
    assert S.k == 5
    assert [len(S.points_of(c)) for c in range(1, 5)] == [1, 1, 1, 1]
    # spacing 1/16 over a 1 x 7/10 box
    assert len(S.points_of(5)) == 17 * 12
    with pytest.raises(BadParams):
        gen_reduction(base, Fraction(0))
    with pytest.raises(BadParams):
        gen_reduction(base, Fraction(1, 1000))


def test_gen_instance_kinds():
    twins = gen_instance(InstanceSpec(TWINS, k=3))
    assert twins.k == 7
    assert all(len(twins.points_of(c)) == 1 for c in range(1, 7))
    assert len(twins.points_of(7)) == twins.n - 6
    xmin, ymin, xmax, ymax = bounding_box(twins.points_of(7))
    assert xmax - xmin < Fraction(1, 2) and ymax - ymin > Fraction(3, 4)
    reduction = gen_instance(InstanceSpec(REDUCTION, k=3, grid_density=Fraction(1, 2)))
    assert reduction.k == 4


@pytest.mark.parametrize('kind', [S5, S6, S7])
def test_dense_class_meets_every_large_triangle(kind):
    # grid step h; a triangle of area 8h inside the unit box holds at least two dense points
    h = Fraction(1, 32)
    S = gen_hard(InstanceSpec(kind, grid_density=h))
    idx = S.classes[S.k]
    dense = [S.points[i] for i in idx]
    coords = S.coords[idx]

    scale = 1024
    rng = np.random.default_rng(17)
    corners = rng.integers(0, scale + 1, size=(20000, 3, 2))
    u, v = corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0]
    det = np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])
    large = corners[det >= int(16 * h * scale * scale)][:60]
    assert len(large) >= 10
    for tri in large:
        poly = [point(Fraction(int(x), scale), Fraction(int(y), scale)) for x, y in tri]
        inside = sum(w != EXTERIOR for w in locate_points(dense, poly, coords))
        assert inside >= 2
