import logging
from fractions import Fraction
from functools import cmp_to_key
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from sortedcontainers import SortedList

from rainbow_poly.data.point_set import ColoredPointSet
from rainbow_poly.models.thickener import enclose_segment, safe_epsilon, thicken
from rainbow_poly.models.utils import CoveringTree, PlaneGraph, SegmentPartition, partition_tree
from rainbow_poly.utils.defaults import DEFAULT_EPSILON, INTERIOR, REPRESENTATIVE_ATTEMPTS
from rainbow_poly.utils.errors import DegenerateInput, InternalInvariant, ObstacleOnTree
from rainbow_poly.utils.utils import Point, cross, line_intersection, locate_point, on_segment, orient_value
from rainbow_poly.utils.utils import shear_normalize

logger = logging.getLogger(__name__)

Edge = Tuple[Point, Point]


class ForestTree(NamedTuple):
    """
    A tree of the covering forest with its special leaf; the extension starts at
    leaf and runs in direction (pointing left) until it hits something
    """
    edges: List[Edge]
    leaf: Point
    direction: Point


class SevenCover:
    """
    Two noncrossing trees covering seven points inside their vertical slab

    t1     - edges of the tree of order four
    t2     - the single edge of the tree of order two
    v1, v2 - special leaves whose leftward extensions cross neither tree
    slab   - (x of the leftmost point, x of the rightmost point)
    """
    def __init__(
            self,
            t1: Sequence[Edge],
            t2: Edge,
            v1: Point,
            v2: Point,
            slab: Tuple[Fraction, Fraction],
    ):
        self.t1   = list(t1)
        self.t2   = tuple(t2)
        self.v1   = v1
        self.v2   = v2
        self.slab = slab

    @staticmethod
    def _direction(edges: Sequence[Edge], leaf: Point) -> Point:
        for a, b in edges:
            if leaf == a:
                return a - b
            if leaf == b:
                return b - a
        raise InternalInvariant(f'{leaf} is not a vertex of the tree')

    def trees(self) -> List[ForestTree]:
        return [ForestTree(self.t1, self.v1, self._direction(self.t1, self.v1)),
                ForestTree([self.t2], self.v2, self._direction([self.t2], self.v2))]

    def map_points(self, fn) -> 'SevenCover':
        lo, hi = self.slab
        return SevenCover([(fn(a), fn(b)) for a, b in self.t1], (fn(self.t2[0]), fn(self.t2[1])),
                          fn(self.v1), fn(self.v2), (lo, hi))

    def __repr__(self):
        return f'SevenCover(t1={self.t1}, t2={self.t2})'


def _lower_arc(pts: Sequence[Point]) -> List[Point]:
    arc = []
    for p in pts:
        while len(arc) >= 2 and orient_value(arc[-2], arc[-1], p) <= 0:
            arc.pop()
        arc.append(p)
    return arc


def _first_turning(pivot: Point, cands: Sequence[Point], clockwise: bool) -> Point:
    """first candidate met by a ray around pivot, all candidates lying in one half-plane"""
    sgn = -1 if clockwise else 1

    def cmp(a, b):
        c = cross(a - pivot, b - pivot) * sgn
        return -1 if c > 0 else (1 if c < 0 else 0)
    return min(cands, key=cmp_to_key(cmp))


def _meeting(p: Point, d: Point, c: Point, e: Point) -> Point:
    st = line_intersection(p, d, c, e)
    if st is None:
        raise DegenerateInput('parallel construction lines')
    return p + d.scale(st[0])


def _star_from_apex(pts, p1, pi, p7, pa) -> Tuple[Point, Point]:
    """
    Slide r from pa along the ray pi->pa until segment p1-r or p7-r meets a
    point inside the triangle p1 pa p7; returns (r, that point)
    """
    tri = [p1, pa, p7]
    inside = [c for c in pts if c not in (p1, pi, p7, pa) and locate_point(c, tri) == INTERIOR]
    if not inside:
        raise InternalInvariant('no point above the apex of the lower arc')
    d = pa - pi
    best: Optional[Tuple[Fraction, Point]] = None
    for c in inside:
        for end in (p1, p7):
            st = line_intersection(pi, d, end, c - end)
            if st is None:
                continue
            lam, mu = st
            if lam > 1 and mu >= 1 and (best is None or lam < best[0]):
                best = (lam, c)
    if best is None:
        raise InternalInvariant('the sliding apex meets no point')
    lam, c = best
    return pi + d.scale(lam), c


def cover_seven(pts: Sequence[Point]) -> SevenCover:
    """
    Cover seven points, sorted by x, with a tree of order four and a segment

    Parameters
    ----------
    pts: seven points with distinct x-coordinates, no three collinear

    Returns
    -------
    SevenCover
    """
    pts = list(pts)
    if len(pts) != 7:
        raise DegenerateInput(f'cover_seven needs 7 points, got {len(pts)}')
    if any(a.x >= b.x for a, b in zip(pts, pts[1:])):
        raise DegenerateInput('points must be sorted by strictly increasing x')
    p1, p7 = pts[0], pts[-1]
    below = sum(1 for p in pts[1:-1] if orient_value(p1, p7, p) < 0)
    if below < 3:
        flip = lambda p: Point(p.x, -p.y)
        return cover_seven([flip(p) for p in pts]).map_points(flip)

    arc = _lower_arc(pts)
    if len(arc) == 3:
        pi = arc[1]
        inside = [c for c in pts if c not in arc and locate_point(c, arc) == INTERIOR]
        pa = _first_turning(p1, inside, clockwise=False)
        pb = _first_turning(p7, inside, clockwise=True)
        if pa != pb:
            center = _meeting(p1, pa - p1, p7, pb - p7)
            covered = {p1, pi, p7, pa, pb}
        else:
            center, pc = _star_from_apex(pts, p1, pi, p7, pa)
            covered = {p1, pi, p7, pa, pc}
        t1 = [(p1, center), (pi, center), (p7, center)]
    else:
        pi, pj, pk = arc[1], arc[2], arc[3]
        center = _meeting(p1, pi - p1, pj, pk - pj)
        rest = [c for c in pts if c not in (p1, pi, pj, pk)]
        pa = _first_turning(pk, rest, clockwise=True)
        t1 = [(p1, center), (center, pk), (pk, pa)]
        covered = {p1, pi, pj, pk, pa}

    left = sorted(p for p in pts if p not in covered)
    if len(left) != 2:
        raise InternalInvariant(f'{len(left)} points left for the second tree')
    cover = SevenCover(t1, (left[0], left[1]), p1, left[0], (p1.x, p7.x))
    _check_seven(pts, cover)
    return cover


def _check_seven(pts: Sequence[Point], cover: SevenCover):
    edges = cover.t1 + [cover.t2]
    for p in pts:
        if not any(on_segment(p, a, b) for a, b in edges):
            raise InternalInvariant(f'{p} is not covered by the seven-point trees')
    lo, hi = cover.slab
    if any(not lo <= v.x <= hi for e in edges for v in e):
        raise InternalInvariant('the seven-point trees leave their slab')


def _ray_hit(v: Point, d: Point, a: Point, b: Point) -> Optional[Fraction]:
    st = line_intersection(v, d, a, b - a)
    if st is None:
        return None
    lam, mu = st
    if lam > 0 and 0 <= mu <= 1:
        return lam
    return None


def extend_and_join(
        forest: Sequence[ForestTree],
        barrier_x: Fraction,
        targets: Sequence[Point] = (),
) -> CoveringTree:
    """
    Join a forest into one tree by extending every special leaf to the left

    Leaves are processed from right to left; an extension stops at the first
    forest edge, earlier extension or the vertical barrier x = barrier_x it meets.
    The barrier finally spans all extensions that reach it.

    Parameters
    ----------
    forest: trees with special leaves and leftward directions
    barrier_x: x-coordinate left of every tree
    targets: points the joined tree covers

    Returns
    -------
    CoveringTree
    """
    forest_edges = [e for tree in forest for e in tree.edges]
    pending = SortedList(range(len(forest)), key=lambda i: (forest[i].leaf.x, forest[i].leaf.y))
    extensions: List[Edge] = []
    survivors: List[Point] = []
    while pending:
        tree = forest[pending.pop()]
        v, d = tree.leaf, tree.direction
        if d.x >= 0:
            raise InternalInvariant(f'extension at {v} does not point left')
        lam = (barrier_x - v.x) / d.x
        on_barrier = True
        for a, b in forest_edges + extensions:
            hit = _ray_hit(v, d, a, b)
            if hit is not None and hit < lam:
                lam, on_barrier = hit, False
        stop = v + d.scale(lam)
        logger.debug('extension from %s stops at %s', v, stop)
        extensions.append((stop, v))
        if on_barrier:
            survivors.append(stop)
    if not survivors:
        raise InternalInvariant('no extension reached the barrier')

    lo = min(p.y for p in survivors) - 1
    hi = max(p.y for p in survivors) + 1
    graph = PlaneGraph(forest_edges + extensions + [(Point(barrier_x, lo), Point(barrier_x, hi))])
    graph.planarize()
    tree = CoveringTree(graph.edge_list(), targets=targets)
    if not tree.is_tree():
        raise InternalInvariant('extensions closed a cycle')
    return tree


def tree_formula(n: int) -> Tuple[int, int]:
    """(s, t) of the covering tree built for n points"""
    j, r = divmod(n, 7)
    return 4 * j + 1 + (r + 1) // 2, 2 * j + (r + 1) // 2


def _cover_remainder(rest: Sequence[Point], h: Fraction) -> List[ForestTree]:
    out = []
    for i in range(0, len(rest), 2):
        if i + 1 < len(rest):
            a, b = rest[i], rest[i + 1]
        else:
            a = rest[i]
            b = Point(a.x + h, a.y)
        out.append(ForestTree([(a, b)], a, a - b))
    return out


def build_covering_tree(pts: Sequence[Point]) -> Tuple[CoveringTree, SegmentPartition]:
    """
    Noncrossing covering tree with 4*floor(n/7) + 1 + ceil(r/2) segments and
    2*floor(n/7) + ceil(r/2) forks of multiplicity 1, r = n mod 7

    Parameters
    ----------
    pts: n >= 1 points, no three collinear

    Returns
    -------
    (CoveringTree, SegmentPartition), in the coordinates of pts
    """
    if not pts:
        raise DegenerateInput('no points to cover')
    shear, moved = shear_normalize(list(pts))
    order = sorted(moved)
    n = len(order)
    j = n // 7
    gaps = [b.x - a.x for a, b in zip(order, order[1:])]
    h = min(gaps) / 2 if gaps else Fraction(1)

    forest: List[ForestTree] = []
    for g in range(j):
        forest += cover_seven(order[7 * g:7 * g + 7]).trees()
    forest += _cover_remainder(order[7 * j:], h)

    tree = extend_and_join(forest, order[0].x - 1, targets=order)
    tree = CoveringTree([(shear.invert(a), shear.invert(b)) for a, b in tree.edge_list()],
                        targets=list(pts))
    tree.validate()
    partition = partition_tree(tree)

    s, t = tree_formula(n)
    if (partition.s, partition.t) != (s, t) or any(m != 1 for _, m in partition.forks):
        raise InternalInvariant(f'covering tree of {n} points has s={partition.s}, t={partition.t} '
                                f'instead of s={s}, t={t}')
    return tree, partition


def general_rainbow_polygon(
        S: ColoredPointSet,
        epsilon: Fraction = DEFAULT_EPSILON,
        seed: Optional[int] = None,
) -> Tuple[List[Point], CoveringTree, SegmentPartition]:
    """
    Perfect rainbow polygon with at most 10*floor(k/7) + 11 vertices: cover one point
    per color by a tree and thicken it below the clearance to all other points

    Without a seed the representatives are the first point of every color, with a
    seed a random point of every color. If another point lies on the tree the
    next points of the classes are tried.
    """
    offsets = {c: 0 for c in S.color_list}
    if seed is not None:
        rng = np.random.default_rng(seed)
        offsets = {c: int(rng.integers(len(S.classes[c]))) for c in S.color_list}
    last = None
    for attempt in range(REPRESENTATIVE_ATTEMPTS):
        reps = [S.points[idx[(offsets[c] + attempt) % len(idx)]] for c, idx in sorted(S.classes.items())]
        selected = set(reps)
        obstacles = [p for p in S.points if p not in selected]
        try:
            tree, partition = build_covering_tree(reps)
            if partition.s <= 1:
                poly = enclose_segment(partition.segments[0], reps, epsilon, obstacles)
            else:
                rho = safe_epsilon(tree, obstacles)
                poly = thicken(tree, partition, epsilon, clearance=rho)
            return poly, tree, partition
        except ObstacleOnTree as e:
            logger.warning('representatives of attempt %d touch the tree: %s', attempt, e)
            last = e
    raise last
