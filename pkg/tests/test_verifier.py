from fractions import Fraction

import pytest

from rainbow_poly.data.instances import gen_twins
from rainbow_poly.data.point_set import ColoredPointSet
from rainbow_poly.models.covering_forest import build_covering_tree
from rainbow_poly.models.utils import CoveringTree, partition_tree
from rainbow_poly.utils.errors import BadK, BadN, NotSimple, UncoveredTarget
from rainbow_poly.utils.utils import point
from rainbow_poly.verifier.verifier import RainbowCertificate, SegmentStats, certify, charging_inequality_holds
from rainbow_poly.verifier.verifier import lower_bound_rainbow, lower_bound_tree, rb_index_small, segment_stats
from rainbow_poly.verifier.verifier import uncovered_colors, upper_bound_rainbow

SQUARE = [point(0, 0), point(4, 0), point(4, 4), point(0, 4)]


def test_certify_counts_closed_polygon():
    S = ColoredPointSet([point(1, 1), point(4, 2), point(7, 1), point(2, 9), point(3, 2)], [1, 2, 1, 3, 3])
    cert = certify(SQUARE, S)
    assert cert.counts == {1: 1, 2: 1, 3: 1}
    assert cert.perfect and cert.rainbow
    assert cert.size == 4
    assert cert.contained == [point(1, 1), point(4, 2), point(3, 2)]

    cert = certify(list(reversed(SQUARE)), ColoredPointSet([point(1, 1), point(2, 3), point(9, 9)], [1, 1, 2]))
    assert cert.counts == {1: 2, 2: 0}
    assert not cert.perfect and not cert.rainbow
    assert uncovered_colors(cert) == [2]


def test_certify_rejects_self_intersecting_polygon():
    bowtie = [point(0, 0), point(2, 2), point(2, 0), point(0, 2)]
    with pytest.raises(NotSimple):
        certify(bowtie, ColoredPointSet([point(1, 5)], [1]))


def test_rainbow_but_not_perfect():
    cert = RainbowCertificate({1: 0, 2: 1, 3: 0}, 4)
    assert cert.rainbow and not cert.perfect
    assert uncovered_colors(cert) == [1, 3]


def test_segment_stats():
    tree = CoveringTree([(point(0, 0), point(2, 0)), (point(2, 0), point(2, 3))])
    partition = partition_tree(tree)
    stats = segment_stats(partition, [point(0, 0), point(1, 0), point(2, 3)])
    assert (stats.s, stats.t) == (2, 0)
    assert (stats.s0, stats.s1, stats.s2) == (0, 1, 1)
    assert stats.size == 4
    with pytest.raises(UncoveredTarget):
        segment_stats(partition, [point(5, 5)])


def test_charging_inequality():
    assert charging_inequality_holds(SegmentStats([2, 2, 2, 2], 0))
    assert not charging_inequality_holds(SegmentStats([2] * 9, 0))
    assert charging_inequality_holds(SegmentStats([2] * 9 + [0], 0))


def test_lower_bounds():
    assert lower_bound_tree(4) == Fraction(72, 19)
    assert lower_bound_tree(100) == Fraction(1992, 19)
    for n in (2, 3, 5):
        with pytest.raises(BadN):
            lower_bound_tree(n)
    assert lower_bound_rainbow(5) == Fraction(72, 19)
    assert lower_bound_rainbow(6) == lower_bound_rainbow(5)
    assert lower_bound_rainbow(101) == Fraction(1992, 19)
    with pytest.raises(BadK):
        lower_bound_rainbow(4)


def test_upper_bounds():
    assert [rb_index_small(k) for k in range(3, 8)] == [3, 4, 5, 6, 8]
    with pytest.raises(BadK):
        rb_index_small(8)
    assert upper_bound_rainbow(1) == upper_bound_rainbow(2) == 3
    assert upper_bound_rainbow(7) == 8
    assert upper_bound_rainbow(8) == 21
    assert upper_bound_rainbow(14) == 31
    with pytest.raises(BadK):
        upper_bound_rainbow(0)
    assert all(lower_bound_rainbow(k) <= upper_bound_rainbow(k) for k in range(5, 200))


@pytest.mark.parametrize('k', range(2, 7))
def test_twins_trees_respect_bounds(k):
    pts = gen_twins(k)
    _, partition = build_covering_tree(pts)
    stats = segment_stats(partition, pts)
    assert charging_inequality_holds(stats)
    assert stats.size == partition.size
    assert stats.size >= lower_bound_tree(2 * k)


@pytest.mark.slow
@pytest.mark.parametrize('k', range(7, 26))
def test_twins_trees_respect_bounds_sweep(k):
    pts = gen_twins(k, seed=k)
    _, partition = build_covering_tree(pts)
    stats = segment_stats(partition, pts)
    assert charging_inequality_holds(stats)
    assert stats.size >= lower_bound_tree(2 * k)
