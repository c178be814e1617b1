import pytest

from rainbow_poly.data.instances import gen_random
from rainbow_poly.models.covering_forest import ForestTree, build_covering_tree, cover_seven, extend_and_join
from rainbow_poly.models.covering_forest import general_rainbow_polygon, tree_formula
from rainbow_poly.models.utils import check_segments_noncrossing, partition_tree
from rainbow_poly.models import covering_forest
from rainbow_poly.utils.errors import DegenerateInput, InternalInvariant
from rainbow_poly.utils.utils import on_segment, point, segments_intersect, shear_normalize
from rainbow_poly.verifier.verifier import certify, upper_bound_rainbow


def _sorted_seven(seed):
    _, pts = shear_normalize(list(gen_random(1, 7, seed=seed).points))
    return sorted(pts)


def test_tree_formula():
    assert tree_formula(1) == (2, 1)
    assert tree_formula(2) == (2, 1)
    assert tree_formula(7) == (5, 2)
    assert tree_formula(10) == (7, 4)
    assert tree_formula(14) == (9, 4)


def test_cover_seven_lower_arc_with_four_vertices():
    pts = [point(0, 10), point(1, 4), point(3, 1), point(6, 0), point(8, 6), point(9, 10), point(12, 11)]
    cover = cover_seven(pts)
    assert len(cover.t1) == 3
    assert cover.v1 == pts[0]
    assert all(any(on_segment(p, a, b) for a, b in cover.t1 + [cover.t2]) for p in pts)


def test_cover_seven_rejects_unsorted_input():
    pts = [point(0, 10), point(3, 1), point(1, 4), point(6, 0), point(8, 6), point(9, 10), point(12, 11)]
    with pytest.raises(DegenerateInput):
        cover_seven(pts)
    with pytest.raises(DegenerateInput):
        cover_seven(pts[:6])


@pytest.mark.parametrize('seed', range(25))
def test_cover_seven_random(seed):
    pts = _sorted_seven(seed)
    cover = cover_seven(pts)
    edges = cover.t1 + [cover.t2]
    assert all(any(on_segment(p, a, b) for a, b in edges) for p in pts)
    assert not any(segments_intersect(*e, *cover.t2) for e in cover.t1)
    assert cover.v1 == pts[0]
    assert cover.v2 == min(cover.t2)
    for tree in cover.trees():
        assert tree.direction.x < 0
        assert tree.leaf in {v for e in tree.edges for v in e}


def test_extend_and_join_two_segments():
    forest = [
        ForestTree([(point(0, 0), point(2, 1))], point(0, 0), point(-2, -1)),
        ForestTree([(point(3, 5), point(4, -2))], point(3, 5), point(-1, 7)),
    ]
    tree = extend_and_join(forest, -5, targets=[point(0, 0), point(4, -2)])
    partition = partition_tree(tree)
    # both extensions end on the barrier
    assert tree.is_tree()
    assert (partition.s, partition.t) == (3, 2)


@pytest.mark.parametrize('n', list(range(1, 30)) + [49, 50, 63])
def test_build_covering_tree_formulas(n):
    S = gen_random(1, n, seed=n)
    tree, partition = build_covering_tree(S.points)
    assert (partition.s, partition.t) == tree_formula(n)
    assert all(m == 1 for _, m in partition.forks)
    check_segments_noncrossing(partition.segments)
    assert tree.is_tree()
    assert tree.uncovered_targets() == []


@pytest.mark.slow
@pytest.mark.parametrize('n', range(30, 201))
def test_build_covering_tree_formulas_sweep(n):
    S = gen_random(1, n, seed=1000 + n)
    tree, partition = build_covering_tree(S.points)
    assert (partition.s, partition.t) == tree_formula(n)
    assert all(m == 1 for _, m in partition.forks)
    check_segments_noncrossing(partition.segments)
    assert tree.uncovered_targets() == []


@pytest.mark.parametrize('k,n,seed', [(8, 20, 0), (10, 40, 1), (15, 60, 2), (22, 80, 3)])
def test_general_rainbow_polygon(k, n, seed):
    S = gen_random(k, n, seed=seed)
    poly, tree, partition = general_rainbow_polygon(S)
    cert = certify(poly, S)
    assert cert.perfect
    assert len(poly) == partition.size <= upper_bound_rainbow(k)
    assert len(tree.targets) == k


def test_build_covering_tree_rejects_a_count_off_the_formula(monkeypatch):
    S = gen_random(1, 17, seed=4)
    s, t = tree_formula(17)
    monkeypatch.setattr(covering_forest, 'tree_formula', lambda n: (s + 1, t))
    with pytest.raises(InternalInvariant):
        build_covering_tree(S.points)


@pytest.mark.parametrize('seed', [None, 0, 7])
def test_general_rainbow_polygon_seeded_representatives(seed):
    S = gen_random(9, 45, seed=21)
    poly, _, partition = general_rainbow_polygon(S, seed=seed)
    cert = certify(poly, S)
    assert cert.perfect
    assert len(poly) == partition.size
    assert general_rainbow_polygon(S, seed=seed)[0] == poly
    if seed is None:
        assert sorted(cert.contained) == sorted(S.points[idx[0]] for idx in S.classes.values())
