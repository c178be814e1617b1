import logging
from fractions import Fraction

import numpy as np
import pytest

from rainbow_poly.data.point_set import ColoredPointSet
from rainbow_poly.utils.defaults import BOUNDARY, CCW, COLLINEAR, CW, EXTERIOR, GP_FULL_CHECK_N, INTERIOR
from rainbow_poly.utils.errors import DuplicatePoint, GeneralPositionViolation
from rainbow_poly.utils.utils import convex_hull, find_collinear_triple, is_simple, line_intersection
from rainbow_poly.utils.utils import locate_point, locate_points, make_ccw, orient, point, polygon_area, proper_cross
from rainbow_poly.utils.utils import segments_intersect, shear_normalize, signed_area2, to_fraction

SQUARE = [point(0, 0), point(2, 0), point(2, 2), point(0, 2)]


def test_to_fraction_accepts_text_and_rejects_floats():
    assert to_fraction('-1/2') == Fraction(-1, 2)
    assert to_fraction('0.125') == Fraction(1, 8)
    assert to_fraction(3) == 3
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_orient():
    a, b = point(0, 0), point(1, 0)
    assert orient(a, b, point(0, 1)) == CCW
    assert orient(a, b, point(0, -1)) == CW
    assert orient(a, b, point(5, 0)) == COLLINEAR


def test_locate_point_closed_square():
    assert locate_point(point(1, 1), SQUARE) == INTERIOR
    assert locate_point(point(2, 1), SQUARE) == BOUNDARY
    assert locate_point(point(0, 0), SQUARE) == BOUNDARY
    assert locate_point(point(3, 1), SQUARE) == EXTERIOR
    assert locate_point(point(1, 1), list(reversed(SQUARE))) == INTERIOR


def test_locate_point_nonconvex():
    notch = [point(0, 0), point(4, 0), point(4, 4), point(2, 1), point(0, 4)]
    assert locate_point(point(2, 3), notch) == EXTERIOR
    assert locate_point(point(2, '1/2'), notch) == INTERIOR
    assert locate_point(point(1, '5/2'), notch) == BOUNDARY


def test_convex_hull_ccw_without_collinear_points():
    pts = SQUARE + [point(1, 1), point(1, 0), point(2, 1)]
    hull = convex_hull(pts)
    assert sorted(hull) == sorted(SQUARE)
    assert signed_area2(hull) > 0


def test_is_simple():
    assert is_simple(SQUARE)
    bowtie = [point(0, 0), point(2, 2), point(2, 0), point(0, 2)]
    assert not is_simple(bowtie)
    assert not is_simple([point(0, 0), point(1, 1), point(2, 2)])
    assert not is_simple(SQUARE[:2])


def test_make_ccw_and_area():
    cw = list(reversed(SQUARE))
    assert signed_area2(make_ccw(cw)) > 0
    assert polygon_area(cw) == 4


def test_segment_predicates():
    a, b = point(0, 0), point(2, 2)
    assert proper_cross(a, b, point(0, 2), point(2, 0))
    assert not proper_cross(a, b, point(1, 1), point(3, 0))
    assert segments_intersect(a, b, point(1, 1), point(3, 0))
    assert not segments_intersect(a, b, point(3, 3), point(4, 4))
    assert segments_intersect(a, b, point(1, 1), point(3, 3))


def test_line_intersection():
    s, t = line_intersection(point(0, 0), point(1, 0), point(1, -1), point(0, 1))
    assert (s, t) == (1, 1)
    assert line_intersection(point(0, 0), point(1, 1), point(1, 0), point(2, 2)) is None


def test_find_collinear_triple():
    pts = [point(0, 0), point(1, 5), point(1, 1), point(3, 3)]
    assert find_collinear_triple(pts) == (0, 2, 3)
    assert find_collinear_triple(pts[:3]) is None


@pytest.mark.parametrize('seed', [0, 1, 2])
def test_shear_normalize_separates_coordinates(seed):
    rng = np.random.default_rng(seed)
    pts = list({point(int(a), int(b)) for a, b in rng.integers(0, 6, size=(15, 2))})
    shear, moved = shear_normalize(pts)
    assert len({p.x for p in moved}) == len(pts)
    assert len({p.y for p in moved}) == len(pts)
    assert [shear.invert(p) for p in moved] == pts
    for a, b, c in zip(pts, pts[1:], pts[2:]):
        assert orient(a, b, c) == orient(shear.apply(a), shear.apply(b), shear.apply(c))


def test_shear_normalize_identity_when_separated():
    pts = [point(0, 1), point(1, 3), point(2, 0)]
    shear, moved = shear_normalize(pts)
    assert shear.is_identity
    assert moved == pts


def test_shear_normalize_rejects_duplicates():
    with pytest.raises(DuplicatePoint):
        shear_normalize([point(0, 0), point(0, 0)])


def test_colored_point_set_classes():
    S = ColoredPointSet([point(0, 0), point(1, 0), point('1/2', 1), point(3, 7)], [2, 5, 2, 9])
    assert S.k == 3
    assert S.color_list == [2, 5, 9]
    assert S.points_of(2) == [point(0, 0), point('1/2', 1)]
    assert S.color_at(point(3, 7)) == 9
    assert S.color_at(point(4, 4)) is None
    assert S.representatives() == {2: point(0, 0), 5: point(1, 0), 9: point(3, 7)}


def test_colored_point_set_rejects_degenerate_input():
    with pytest.raises(DuplicatePoint):
        ColoredPointSet([point(0, 0), point(0, 0), point(1, 2)], [1, 2, 3])
    with pytest.raises(GeneralPositionViolation) as info:
        ColoredPointSet([point(0, 0), point(1, 1), point(5, 0), point(2, 2)], [1, 2, 3, 4])
    assert info.value.triple == (0, 1, 3)


def test_locate_points_agrees_with_exact_test():
    comb = [point(0, 0), point(6, 0), point(6, 5), point(4, 5), point(4, 2), point(2, 2), point(2, 5), point(0, 5)]
    rng = np.random.default_rng(4)
    pts = [point(Fraction(int(a), 7), Fraction(int(b), 7)) for a, b in rng.integers(-7, 50, size=(400, 2))]
    pts += comb
    pts += [(a + b).scale(Fraction(1, 2)) for a, b in zip(comb, comb[1:] + comb[:1])]
    pts += [point(Fraction(1, 3), 0), point(6, Fraction(10, 3)), point(2, Fraction(7, 3)), point(4, 6), point(-1, 2)]
    located = locate_points(pts, comb)
    assert located == [locate_point(p, comb) for p in pts]
    assert located[-5:] == [BOUNDARY, BOUNDARY, BOUNDARY, EXTERIOR, EXTERIOR]
    assert {INTERIOR, BOUNDARY, EXTERIOR} <= set(located)


def test_locate_points_large_coordinates():
    big = 10 ** 12
    tri = [point(0, 0), point(big, 1), point(0, big)]
    pts = [point(1, 1), point(big - 1, 1), point(big // 2, big // 2), point(big // 2, big // 2 + 1),
           point(big // 3, Fraction(big // 3, big))]
    assert locate_points(pts, tri) == [locate_point(p, tri) for p in pts]
    assert locate_points([], tri) == []


def test_general_position_check_stops_at_the_limit(caplog):
    n = GP_FULL_CHECK_N + 1
    with pytest.raises(GeneralPositionViolation):
        ColoredPointSet([point(i, 2 * i) for i in range(GP_FULL_CHECK_N)], [1] * GP_FULL_CHECK_N)
    with caplog.at_level(logging.WARNING, logger='rainbow_poly.data.point_set'):
        S = ColoredPointSet([point(i, 2 * i) for i in range(n)], [1] * n)
    assert S.n == n
    assert 'not verified exhaustively' in caplog.text
    with pytest.raises(DuplicatePoint):
        ColoredPointSet([point(0, 0)] * n, [1] * n)
