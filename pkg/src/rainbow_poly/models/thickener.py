import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from rainbow_poly.models.utils import CoveringTree, PlaneGraph, SegmentPartition, partition_tree
from rainbow_poly.utils.defaults import CLEARANCE_SLACK, EXACT_CLEARANCE_WORK, EXTERIOR, LOCATE_CHUNK
from rainbow_poly.utils.defaults import MAX_HALVINGS
from rainbow_poly.utils.errors import InternalInvariant, InvalidPartition, ObstacleOnTree
from rainbow_poly.utils.errors import PreconditionViolated
from rainbow_poly.utils.utils import Point, as_array, contains, cross, dist2, dot, edges_of, is_simple
from rainbow_poly.utils.utils import linf_normalize, locate_points, make_ccw, point_segment_dist2
from rainbow_poly.utils.utils import polygon_area, proper_cross

logger = logging.getLogger(__name__)


class ThickeningParams:
    """
    epsilon - area budget
    delta   - radius of the vertex disks the polygon vertices are placed in
    """
    def __init__(
            self,
            epsilon: Optional[Fraction],
            delta: Fraction,
    ):
        assert delta > 0, 'delta must be positive'
        assert epsilon is None or epsilon > 0, 'epsilon must be positive'
        self.epsilon = epsilon
        self.delta   = delta

    def __repr__(self):
        return f'ThickeningParams(epsilon={self.epsilon}, delta={self.delta})'


def pow2_below(bound2: Fraction, factor: Fraction = Fraction(1), strict: bool = False) -> Fraction:
    """
    Largest power of two rho with (factor * rho)**2 <= bound2 (< when strict)
    """
    assert bound2 > 0, 'bound must be positive'
    target = Fraction(bound2) / (factor * factor)
    ok = (lambda r: r * r < target) if strict else (lambda r: r * r <= target)
    e = (target.numerator.bit_length() - target.denominator.bit_length()) // 2 + 1
    rho = Fraction(2) ** e
    while not ok(rho):
        rho /= 2
    while ok(rho * 2):
        rho *= 2
    return rho


def _segments_of(graph: PlaneGraph) -> List[Tuple[Point, Point]]:
    if graph.edges:
        return graph.edge_list()
    return [(v, v) for v in graph.vertices]


def _float_dist2(coords: np.ndarray, segments: List[Tuple[Point, Point]]) -> np.ndarray:
    """float64 squared distance from every row of coords to the nearest segment"""
    a = as_array([s[0] for s in segments])
    b = as_array([s[1] for s in segments])
    d = b - a
    den = np.maximum(np.sum(d * d, axis=1), np.finfo(np.float64).tiny)
    best = np.full(len(coords), np.inf)
    for start in range(0, len(coords), LOCATE_CHUNK):
        c = coords[start:start + LOCATE_CHUNK][:, None, :]
        t = np.clip(np.sum((c - a) * d, axis=2) / den, 0.0, 1.0)
        foot = a + t[:, :, None] * d
        best[start:start + LOCATE_CHUNK] = np.min(np.sum((c - foot) ** 2, axis=2), axis=1)
    return best


def obstacle_clearance2(graph: PlaneGraph, obstacles: Sequence[Point]) -> Optional[Fraction]:
    """
    squared distance from the nearest obstacle to the graph; None without obstacles

    Float distances pick the obstacles that can be nearest, the minimum over
    those is exact.
    """
    segments = _segments_of(graph)
    obstacles = list(obstacles)
    if not obstacles:
        return None
    if len(obstacles) * len(segments) > EXACT_CLEARANCE_WORK:
        coords = as_array(obstacles)
        approx = np.sqrt(_float_dist2(coords, segments))
        magnitude = max(float(np.abs(coords).max()), float(np.abs(as_array(graph.vertices)).max()), 1.0)
        keep = approx <= approx.min() + CLEARANCE_SLACK * magnitude
        obstacles = [obstacles[i] for i in np.flatnonzero(keep).tolist()]
    best = None
    for p in obstacles:
        for a, b in segments:
            d = point_segment_dist2(p, a, b)
            if best is None or d < best:
                best = d
    return best


def safe_epsilon(tree: PlaneGraph, obstacles: Sequence[Point]) -> Fraction:
    """
    Half the distance between the tree and the nearest obstacle, rounded down
    to a power of two and certified by exact squared comparisons

    Parameters
    ----------
    tree: covering tree (or any plane graph)
    obstacles: points the neighborhood must avoid

    Returns
    -------
    rho with 4 * rho**2 <= min squared distance; without obstacles,
    rho with (4 * rho)**2 <= squared length of the shortest edge
    """
    d2 = obstacle_clearance2(tree, obstacles)
    if d2 is not None:
        if d2 == 0:
            raise ObstacleOnTree('an obstacle lies on the tree')
        return pow2_below(d2, factor=Fraction(2))
    if not tree.edges:
        return Fraction(1)
    shortest = min(dist2(a, b) for a, b in tree.edge_list())
    return pow2_below(shortest, factor=Fraction(4))


def disk_radius(graph: PlaneGraph) -> Fraction:
    """
    Largest power of two delta such that disks of radius delta around the vertices
    are pairwise disjoint and meet only the edges incident to their centers
    """
    vertices = graph.vertices
    edges = graph.edge_list()
    best = None
    for i, u in enumerate(vertices):
        for v in vertices[i + 1:]:
            d = dist2(u, v) / 4
            best = d if best is None or d < best else best
        for a, b in edges:
            if u == a or u == b:
                continue
            d = point_segment_dist2(u, a, b)
            best = d if best is None or d < best else best
    if best is None:
        return Fraction(1)
    if best == 0:
        raise InvalidPartition('a vertex lies on a non-incident edge')
    return pow2_below(best, strict=True)


def area_delta(partition: SegmentPartition, epsilon: Fraction) -> Fraction:
    """largest power of two delta with 2*L*delta + 4*s*delta**2 <= epsilon, L bounded by the L1 lengths"""
    length = sum((abs(b.x - a.x) + abs(b.y - a.y) for a, b in partition.segments), Fraction(0))
    delta = Fraction(1)
    while 2 * length * delta + 4 * partition.s * delta * delta > epsilon:
        delta /= 2
    return delta


def sector_vertices(walk: Sequence[Point], mu: Fraction) -> List[Point]:
    """
    One polygon vertex per non-flat sector of the outer walk.

    Convex sectors get v + mu*(d1 + d2), reflex sectors and leaves v - mu*(d1 + d2),
    flat sectors none; d1, d2 are the L-infinity normalized edge directions.
    """
    out = []
    m = len(walk)
    for i in range(m):
        u, v, w = walk[i - 1], walk[i], walk[(i + 1) % m]
        d1 = linf_normalize(u - v)
        d2 = linf_normalize(w - v)
        c = cross(d1, d2)
        if c == 0 and dot(d1, d2) < 0:
            continue
        s = d1 + d2
        out.append(v + s.scale(mu) if c < 0 else v - s.scale(mu))
    return make_ccw(out)


def covers_graph(poly: Sequence[Point], graph: PlaneGraph) -> bool:
    if not all(contains(poly, v) for v in graph.vertices):
        return False
    if not all(contains(poly, p) for p in graph.targets):
        return False
    poly_edges = edges_of(poly)
    for a, b in graph.edge_list():
        if any(proper_cross(a, b, c, d) for c, d in poly_edges):
            return False
    return True


def thicken_graph(
        graph: PlaneGraph,
        obstacles: Sequence[Point] = (),
        epsilon: Optional[Fraction] = None,
        clearance: Optional[Fraction] = None,
        partition: Optional[SegmentPartition] = None,
        expected_size: Optional[int] = None,
) -> List[Point]:
    """
    Simple polygon around a connected plane graph, built from its outer walk

    Parameters
    ----------
    graph: connected plane graph with at least one edge
    obstacles: points that must stay outside
    epsilon: area budget (trees only); None for no budget
    clearance: upper bound for the vertex displacement radius
    partition: segment partition used by the area certificate
    expected_size: vertex count the polygon must have

    Returns
    -------
    counterclockwise vertex list
    """
    assert graph.edges, 'thickening needs at least one edge'
    delta = disk_radius(graph)
    d2 = obstacle_clearance2(graph, obstacles)
    if d2 is not None:
        if d2 == 0:
            raise ObstacleOnTree('an obstacle lies on the graph')
        delta = min(delta, pow2_below(d2, factor=Fraction(2)))
    if clearance is not None:
        delta = min(delta, clearance)
    if epsilon is not None:
        delta = min(delta, area_delta(partition or partition_tree(graph), epsilon))
    params = ThickeningParams(epsilon, delta)
    logger.debug('thickening %r with %r', graph, params)

    walk = graph.outer_walk()
    mu = params.delta / 3
    for _ in range(MAX_HALVINGS):
        poly = sector_vertices(walk, mu)
        if expected_size is not None and len(poly) != expected_size:
            raise InternalInvariant(f'thickening has {len(poly)} vertices, expected {expected_size}')
        if is_simple(poly) and covers_graph(poly, graph) and \
                (epsilon is None or polygon_area(poly) <= epsilon):
            break
        mu /= 2
        logger.debug('halving displacement to %s', mu)
    else:
        raise InternalInvariant('no valid thickening found')

    obstacles = list(obstacles)
    for p, where in zip(obstacles, locate_points(obstacles, poly)):
        if where != EXTERIOR:
            raise PreconditionViolated(f'obstacle {p} is enclosed by the graph')
    return poly


def thicken(
        tree: CoveringTree,
        partition: SegmentPartition,
        epsilon: Fraction,
        clearance: Optional[Fraction] = None,
) -> List[Point]:
    """
    Simple polygon with exactly 2s + t vertices and area at most epsilon containing the tree

    Parameters
    ----------
    tree: noncrossing covering tree
    partition: its segment partition, checked against a recomputation
    epsilon: area budget
    clearance: optional bound on the distance of the polygon from the tree,
               e.g. the value of safe_epsilon against obstacles

    Returns
    -------
    counterclockwise vertex list
    """
    assert epsilon > 0, 'epsilon must be positive'
    recomputed = partition_tree(tree)
    if not recomputed.same_as(partition):
        raise InvalidPartition(f'{partition} does not match the tree ({recomputed})')
    if partition.s <= 1:
        seg = partition.segments[0] if partition.segments else (tree.vertices[0], tree.vertices[0])
        return enclose_segment(seg, tree.targets, epsilon)
    if not tree.is_tree():
        raise InvalidPartition('the edges do not form a tree')
    return thicken_graph(tree, epsilon=epsilon, clearance=clearance, partition=partition,
                         expected_size=partition.size)


def enclose_segment(
        seg: Tuple[Point, Point],
        targets: Sequence[Point],
        epsilon: Fraction,
        obstacles: Sequence[Point] = (),
) -> List[Point]:
    """
    Thin triangle containing a segment (or a single point) with area at most epsilon.

    With direction d and normal n the triangle is
    (a - tau*d - tau**2*n, b + tau*d - tau**2*n, (a + b)/2 + tau*n).
    """
    a, b = seg
    d = b - a if a != b else Point(Fraction(1), Fraction(0))
    n = Point(-d.y, d.x)
    mid = (a + b).scale(Fraction(1, 2))
    obstacles = list(obstacles)
    coords = as_array(obstacles)
    tau = Fraction(1, 4)
    for _ in range(MAX_HALVINGS):
        tri = [a - d.scale(tau) - n.scale(tau * tau),
               b + d.scale(tau) - n.scale(tau * tau),
               mid + n.scale(tau)]
        if polygon_area(tri) <= epsilon and all(contains(tri, p) for p in targets) and \
                all(w == EXTERIOR for w in locate_points(obstacles, tri, coords)):
            return make_ccw(tri)
        tau /= 2
    raise InternalInvariant('no enclosing triangle found')
