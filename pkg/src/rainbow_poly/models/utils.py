from abc import ABC
from functools import cmp_to_key
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Set, Tuple

import networkx as nx

from rainbow_poly.utils.errors import CrossingViolation, InvalidPartition
from rainbow_poly.utils.utils import Point, cross, dot, on_segment, in_segment_interior
from rainbow_poly.utils.utils import orient_value, proper_cross, sign

Edge = Tuple[Point, Point]


def _half(d: Point) -> int:
    return 0 if d.y > 0 or (d.y == 0 and d.x > 0) else 1


def angle_cmp(d1: Point, d2: Point) -> int:
    """counterclockwise order of directions, starting at the positive x axis"""
    h1, h2 = _half(d1), _half(d2)
    if h1 != h2:
        return h1 - h2
    c = cross(d1, d2)
    return -sign(c)


def _key(a: Point, b: Point) -> frozenset:
    return frozenset((a, b))


class PlaneGraph(ABC):
    """
    A class that holds a straight-line plane graph on exact points,
    together with the target points it has to cover

    vertices - ordered unique vertex list
    edges    - set of undirected edges (frozensets of two points)
    targets  - points that must lie on a vertex or an edge
    """
    def __init__(
            self,
            edges: Iterable[Edge] = (),
            vertices: Iterable[Point] = (),
            targets: Iterable[Point] = (),
    ):
        self.vertices: List[Point] = []
        self._vertex_set: Set[Point] = set()
        self.edges: Set[frozenset] = set()
        self.targets: List[Point] = list(targets)
        for v in vertices:
            self.add_vertex(v)
        for a, b in edges:
            self.add_edge(a, b)

    def add_vertex(self, v: Point):
        if v not in self._vertex_set:
            self._vertex_set.add(v)
            self.vertices.append(v)

    def add_edge(self, a: Point, b: Point):
        assert a != b, 'an edge needs two distinct endpoints'
        self.add_vertex(a)
        self.add_vertex(b)
        self.edges.add(_key(a, b))

    def remove_edge(self, a: Point, b: Point):
        self.edges.discard(_key(a, b))

    def has_vertex(self, v: Point) -> bool:
        return v in self._vertex_set

    def edge_list(self) -> List[Edge]:
        out = []
        for e in self.edges:
            a, b = sorted(e)
            out.append((a, b))
        return sorted(out)

    def adjacency(self) -> Dict[Point, List[Point]]:
        adj = {v: [] for v in self.vertices}
        for a, b in self.edge_list():
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def rotation_system(self) -> Dict[Point, List[Point]]:
        """neighbors of every vertex in counterclockwise order"""
        rot = {}
        for v, nbrs in self.adjacency().items():
            rot[v] = sorted(nbrs, key=cmp_to_key(lambda a, b, v=v: angle_cmp(a - v, b - v)))
        return rot

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edge_list())
        return g

    def planarize(self):
        """split every edge at the vertices lying in its relative interior"""
        changed = True
        while changed:
            changed = False
            for a, b in self.edge_list():
                inner = [v for v in self.vertices if in_segment_interior(v, a, b)]
                if inner:
                    d = b - a
                    inner.sort(key=lambda v: dot(v - a, d))
                    self.remove_edge(a, b)
                    chain = [a] + inner + [b]
                    for u, w in zip(chain, chain[1:]):
                        self.add_edge(u, w)
                    changed = True
        return self

    def check_noncrossing(self):
        edges = self.edge_list()
        for (a, b), (c, d) in combinations(edges, 2):
            if proper_cross(a, b, c, d):
                raise CrossingViolation(f'edges {a}-{b} and {c}-{d} cross')
            if {a, b} & {c, d}:
                continue
            # collinear overlap or an endpoint resting on the other edge
            if on_segment(c, a, b) or on_segment(d, a, b) or on_segment(a, c, d) or on_segment(b, c, d):
                raise CrossingViolation(f'edges {a}-{b} and {c}-{d} touch')
        for a, b in edges:
            for v in self.vertices:
                if in_segment_interior(v, a, b):
                    raise CrossingViolation(f'vertex {v} lies inside edge {a}-{b}')

    def uncovered_targets(self) -> List[Point]:
        edges = self.edge_list()
        return [p for p in self.targets
                if not self.has_vertex(p) and not any(on_segment(p, a, b) for a, b in edges)]

    def outer_walk(self) -> List[Point]:
        """
        Closed walk around the outer face, as a vertex sequence (first vertex not repeated).

        The walk starts at the lowest-leftmost vertex and keeps the outer face on its left,
        so every edge of a tree is traversed twice.
        """
        assert self.edges, 'the outer walk needs at least one edge'
        rot = self.rotation_system()
        start = min(self.vertices, key=lambda p: (p.y, p.x))
        first = rot[start][-1]
        walk = [start]
        u, v = start, first
        while True:
            walk.append(v)
            nbrs = rot[v]
            w = nbrs[(nbrs.index(u) - 1) % len(nbrs)]
            u, v = v, w
            if u == start and v == first:
                break
            assert len(walk) <= 4 * len(self.edges) + 2, 'outer walk does not close'
        return walk[:-1]

    def __repr__(self):
        return f'{self.__class__.__name__}(|V|={len(self.vertices)}, |E|={len(self.edges)})'


class CoveringTree(PlaneGraph):
    """
    A noncrossing plane tree covering a set of target points.
    Straight degree-two vertices are suppressed on construction.
    """
    def __init__(
            self,
            edges: Iterable[Edge] = (),
            vertices: Iterable[Point] = (),
            targets: Iterable[Point] = (),
    ):
        super().__init__(edges, vertices, targets)
        self.suppress_straight_vertices()

    def suppress_straight_vertices(self):
        adj = self.adjacency()
        for v in list(self.vertices):
            nbrs = adj[v]
            if len(nbrs) == 2:
                a, b = nbrs
                if cross(a - v, b - v) == 0 and dot(a - v, b - v) < 0:
                    self.remove_edge(a, v)
                    self.remove_edge(v, b)
                    self.add_edge(a, b)
                    adj[a] = [b if w == v else w for w in adj[a]]
                    adj[b] = [a if w == v else w for w in adj[b]]
                    self.vertices.remove(v)
                    self._vertex_set.discard(v)
                    del adj[v]

    def is_tree(self) -> bool:
        if len(self.vertices) == 1 and not self.edges:
            return True
        return nx.is_tree(self.to_networkx())

    def validate(self):
        assert self.is_tree(), 'covering tree must be connected and acyclic'
        self.check_noncrossing()
        missing = self.uncovered_targets()
        assert not missing, f'targets not covered: {missing}'
        return self


class SegmentPartition(ABC):
    """
    A partition of a plane tree's edges into maximal collinear segments

    segments - endpoint pairs
    forks    - (vertex, multiplicity) pairs
    s        - number of segments
    t        - sum of fork multiplicities
    """
    def __init__(
            self,
            segments: Sequence[Edge],
            forks: Sequence[Tuple[Point, int]],
    ):
        self.segments = [tuple(sorted(seg)) for seg in segments]
        self.forks    = sorted(forks)
        self.s        = len(self.segments)
        self.t        = sum(m for _, m in self.forks)

    @property
    def size(self) -> int:
        """number of polygon vertices of a thickening, 2s + t"""
        return 2 * self.s + self.t

    def same_as(self, other: 'SegmentPartition') -> bool:
        return sorted(self.segments) == sorted(other.segments) and self.forks == other.forks

    def __repr__(self):
        return f'SegmentPartition(s={self.s}, t={self.t})'


def compute_forks(segments: Sequence[Edge]) -> List[Tuple[Point, int]]:
    """
    Forks from raw geometry: a segment endpoint lying in the relative interior of
    another segment. Multiplicity 2 if segments end there on both sides of the host.
    """
    sides: Dict[Point, Set[int]] = {}
    for i, (a, b) in enumerate(segments):
        for p in (a, b):
            for j, (c, d) in enumerate(segments):
                if j != i and in_segment_interior(p, c, d):
                    other = b if p == a else a
                    sides.setdefault(p, set()).add(sign(orient_value(c, d, other)))
    return [(p, 2 if len(s) == 2 else 1) for p, s in sides.items()]


def check_segments_noncrossing(segments: Sequence[Edge]):
    for (a, b), (c, d) in combinations(segments, 2):
        if proper_cross(a, b, c, d):
            raise InvalidPartition(f'segments {a}-{b} and {c}-{d} cross')
        if orient_value(a, b, c) == 0 and orient_value(a, b, d) == 0:
            lo, hi = sorted((a, b))
            lo2, hi2 = sorted((c, d))
            if max(lo, lo2) < min(hi, hi2):
                raise InvalidPartition(f'segments {a}-{b} and {c}-{d} overlap')


def partition_tree(tree: PlaneGraph) -> SegmentPartition:
    """
    Maximal collinear segments of a plane tree and its forks

    At every vertex, an incident edge continues straight into the opposite
    collinear edge when there is one; the first such pair in rotation order wins.
    """
    rot = tree.rotation_system()
    through: Dict[Tuple[Point, Point], Point] = {}
    for v, nbrs in rot.items():
        used = set()
        for a, b in combinations(nbrs, 2):
            if a in used or b in used:
                continue
            if cross(a - v, b - v) == 0 and dot(a - v, b - v) < 0:
                through[(a, v)] = b
                through[(b, v)] = a
                used.update((a, b))

    seen = set()
    segments = []
    for a, b in tree.edge_list():
        if _key(a, b) in seen:
            continue
        seen.add(_key(a, b))
        ends = []
        for u, v in ((a, b), (b, a)):
            while (u, v) in through:
                u, v = v, through[(u, v)]
                seen.add(_key(u, v))
            ends.append(v)
        segments.append((ends[1], ends[0]))
    return SegmentPartition(segments, compute_forks(segments))
