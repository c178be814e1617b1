from fractions import Fraction

import pytest

from rainbow_poly.data.instances import gen_random
from rainbow_poly.models.covering_forest import build_covering_tree
from rainbow_poly.models import thickener
from rainbow_poly.models.thickener import enclose_segment, obstacle_clearance2, pow2_below, safe_epsilon, thicken
from rainbow_poly.models.thickener import thicken_graph
from rainbow_poly.models.utils import CoveringTree, PlaneGraph, SegmentPartition, partition_tree
from rainbow_poly.utils.errors import InvalidPartition, ObstacleOnTree, PreconditionViolated
from rainbow_poly.utils.utils import contains, is_simple, point, point_segment_dist2, polygon_area, signed_area2

EPSILON = Fraction(1, 1000)


@pytest.fixture
def forked_tree():
    """five segments; a fork of multiplicity 1 at (3, 0) and of multiplicity 2 at (6, 0)"""
    edges = [
        (point(0, 0), point(3, 0)), (point(3, 0), point(6, 0)), (point(6, 0), point(10, 0)),
        (point(3, 0), point(3, 5)), (point(3, 5), point(0, 6)),
        (point(6, 0), point(7, 4)), (point(6, 0), point(4, -4)),
    ]
    return CoveringTree(edges, targets=[point(0, 0), point(10, 0), point(0, 6)])


def test_partition_of_forked_tree(forked_tree):
    partition = partition_tree(forked_tree)
    assert partition.s == 5
    assert partition.t == 3
    assert dict(partition.forks) == {point(3, 0): 1, point(6, 0): 2}
    assert partition.size == 13


def test_thicken_forked_tree(forked_tree):
    partition = partition_tree(forked_tree)
    poly = thicken(forked_tree, partition, EPSILON)
    assert len(poly) == 13
    assert is_simple(poly)
    assert signed_area2(poly) > 0
    assert polygon_area(poly) <= EPSILON
    assert all(contains(poly, v) for v in forked_tree.vertices)


def test_thicken_rejects_foreign_partition(forked_tree):
    partition = SegmentPartition([(point(0, 0), point(10, 0))], [])
    with pytest.raises(InvalidPartition):
        thicken(forked_tree, partition, EPSILON)


def test_thicken_two_segment_path():
    tree = CoveringTree([(point(0, 0), point(2, 0)), (point(2, 0), point(2, 3))])
    partition = partition_tree(tree)
    poly = thicken(tree, partition, EPSILON)
    assert (partition.s, partition.t) == (2, 0)
    assert len(poly) == 4
    assert polygon_area(poly) <= EPSILON


def test_straight_vertices_are_suppressed():
    tree = CoveringTree([(point(0, 0), point(1, 1)), (point(1, 1), point(2, 2))])
    assert tree.edge_list() == [(point(0, 0), point(2, 2))]
    assert tree.uncovered_targets() == []


@pytest.mark.parametrize('seed', range(8))
def test_thicken_covering_trees(seed):
    S = gen_random(1, 9 + seed, seed=seed)
    tree, partition = build_covering_tree(S.points)
    poly = thicken(tree, partition, EPSILON)
    assert len(poly) == partition.size
    assert polygon_area(poly) <= EPSILON
    assert all(contains(poly, p) for p in S.points)


def test_thicken_graph_rejects_enclosed_obstacle():
    triangle = PlaneGraph([(point(0, 0), point(4, 0)), (point(4, 0), point(0, 4)), (point(0, 4), point(0, 0))])
    with pytest.raises(PreconditionViolated):
        thicken_graph(triangle, obstacles=[point(1, 1)])
    with pytest.raises(ObstacleOnTree):
        thicken_graph(triangle, obstacles=[point(2, 0)])


def test_enclose_segment():
    a, b = point(0, 0), point(1, 0)
    tri = enclose_segment((a, b), [a, b], EPSILON, obstacles=[point(0, 1)])
    assert len(tri) == 3
    assert contains(tri, a) and contains(tri, b)
    assert not contains(tri, point(0, 1))
    assert polygon_area(tri) <= EPSILON

    single = enclose_segment((a, a), [a], EPSILON)
    assert contains(single, a)


def test_pow2_below():
    assert pow2_below(Fraction(10)) == 2
    assert pow2_below(Fraction(16)) == 4
    assert pow2_below(Fraction(16), strict=True) == 2
    assert pow2_below(Fraction(1, 10)) == Fraction(1, 4)
    assert pow2_below(Fraction(16), factor=Fraction(2)) == 2


def test_safe_epsilon():
    tree = CoveringTree([(point(0, 0), point(4, 0))])
    assert safe_epsilon(tree, [point(2, 1), point(9, 9)]) == Fraction(1, 2)
    assert safe_epsilon(tree, []) == 1
    with pytest.raises(ObstacleOnTree):
        safe_epsilon(tree, [point(1, 0)])


@pytest.mark.parametrize('work', [0, 10 ** 9])
def test_obstacle_clearance_matches_exact_minimum(monkeypatch, forked_tree, work):
    monkeypatch.setattr(thickener, 'EXACT_CLEARANCE_WORK', work)
    obstacles = [p for p in gen_random(1, 300, seed=6, bbox=(-2, -6, 12, 8)).points
                 if all(point_segment_dist2(p, a, b) > 0 for a, b in forked_tree.edge_list())]
    exact = min(point_segment_dist2(p, a, b) for p in obstacles for a, b in forked_tree.edge_list())
    assert obstacle_clearance2(forked_tree, obstacles) == exact
    assert obstacle_clearance2(forked_tree, []) is None
