from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from rainbow_poly.utils.defaults import CCW, CW, COLLINEAR
from rainbow_poly.utils.defaults import INTERIOR, BOUNDARY, EXTERIOR, LOCATE_CHUNK
from rainbow_poly.utils.errors import DuplicatePoint

Number = Union[int, Fraction, str]


def to_fraction(value: Number) -> Fraction:
    """
    Exact rational from an int, a Fraction or a text token ('3', '-1/2', '0.125')
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError('floats are not accepted as exact coordinates')
    return Fraction(value)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __add__(self, other: 'Point') -> 'Point':
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: 'Point') -> 'Point':
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> 'Point':
        return Point(-self.x, -self.y)

    def scale(self, c: Fraction) -> 'Point':
        return Point(self.x * c, self.y * c)

    def __repr__(self):
        return f'({self.x}, {self.y})'


def point(x: Number, y: Number) -> Point:
    return Point(to_fraction(x), to_fraction(y))


def sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def cross(u: Point, v: Point) -> Fraction:
    return u.x * v.y - u.y * v.x


def dot(u: Point, v: Point) -> Fraction:
    return u.x * v.x + u.y * v.y


def orient_value(a: Point, b: Point, c: Point) -> Fraction:
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def orient(a: Point, b: Point, c: Point) -> str:
    """
    Exact orientation of the triple (a, b, c)

    Returns
    -------
    CCW, CW or COLLINEAR, the sign of (b - a) x (c - a)
    """
    v = orient_value(a, b, c)
    if v > 0:
        return CCW
    if v < 0:
        return CW
    return COLLINEAR


def norm2(u: Point) -> Fraction:
    return u.x * u.x + u.y * u.y


def dist2(a: Point, b: Point) -> Fraction:
    return norm2(a - b)


def linf_normalize(u: Point) -> Point:
    m = max(abs(u.x), abs(u.y))
    assert m != 0, 'cannot normalize the zero vector'
    return u.scale(1 / m)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    if orient_value(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def in_segment_interior(p: Point, a: Point, b: Point) -> bool:
    return p != a and p != b and on_segment(p, a, b)


def proper_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """true iff segments ab and cd meet in a single point interior to both"""
    o1 = sign(orient_value(a, b, c))
    o2 = sign(orient_value(a, b, d))
    o3 = sign(orient_value(c, d, a))
    o4 = sign(orient_value(c, d, b))
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """closed intersection test, touching and overlapping count"""
    if proper_cross(a, b, c, d):
        return True
    return on_segment(c, a, b) or on_segment(d, a, b) or on_segment(a, c, d) or on_segment(b, c, d)


def point_segment_dist2(p: Point, a: Point, b: Point) -> Fraction:
    ab = b - a
    den = norm2(ab)
    if den == 0:
        return dist2(p, a)
    t = dot(p - a, ab) / den
    if t <= 0:
        return dist2(p, a)
    if t >= 1:
        return dist2(p, b)
    foot = a + ab.scale(t)
    return dist2(p, foot)


def line_intersection(a: Point, d: Point, c: Point, e: Point) -> Optional[Tuple[Fraction, Fraction]]:
    """
    Parameters (s, t) with a + s*d = c + t*e, or None for parallel lines
    """
    den = cross(d, e)
    if den == 0:
        return None
    w = c - a
    return cross(w, e) / den, cross(w, d) / den


def edges_of(vertices: Sequence[Point]) -> List[Tuple[Point, Point]]:
    n = len(vertices)
    return [(vertices[i], vertices[(i + 1) % n]) for i in range(n)]


def signed_area2(vertices: Sequence[Point]) -> Fraction:
    return sum((cross(a, b) for a, b in edges_of(vertices)), Fraction(0))


def polygon_area(vertices: Sequence[Point]) -> Fraction:
    return abs(signed_area2(vertices)) / 2


def bounding_box(pts: Iterable[Point]) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    pts = list(pts)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def locate_point(p: Point, poly: Sequence[Point]) -> str:
    """
    Classify p against a simple polygon as INTERIOR, BOUNDARY or EXTERIOR.

    Boundary is decided by an on-segment pass over all edges, the rest by the
    winding number over exact orientations.
    """
    edges = edges_of(poly)
    for a, b in edges:
        if on_segment(p, a, b):
            return BOUNDARY
    winding = 0
    for a, b in edges:
        if a.y <= p.y:
            if b.y > p.y and orient_value(a, b, p) > 0:
                winding += 1
        elif b.y <= p.y and orient_value(a, b, p) < 0:
            winding -= 1
    return INTERIOR if winding != 0 else EXTERIOR


def contains(poly: Sequence[Point], p: Point) -> bool:
    return locate_point(p, poly) != EXTERIOR


# unit roundoff of float64
_UNIT_ROUNDOFF = float(np.finfo(np.float64).eps) / 2
# orientations from converted coordinates are off by at most this many roundoffs
# times the squared coordinate magnitude
_ORIENT_SLACK = 64 * _UNIT_ROUNDOFF
_COMPARE_SLACK = 4 * _UNIT_ROUNDOFF


def as_array(pts: Iterable[Point]) -> np.ndarray:
    """float64 (n, 2) array of the coordinates"""
    return np.array([(float(p.x), float(p.y)) for p in pts], dtype=np.float64).reshape(-1, 2)


def locate_points(
        pts: Sequence[Point],
        poly: Sequence[Point],
        coords: Optional[np.ndarray] = None,
) -> List[str]:
    """
    locate_point for many points at once

    A float64 pass over the winding number settles every point whose coordinate
    comparisons and orientations against the edges are larger than their error
    bound; the remaining points go through the exact test.

    Parameters
    ----------
    pts: points to classify
    poly: simple polygon
    coords: as_array(pts), if already at hand

    Returns
    -------
    INTERIOR, BOUNDARY or EXTERIOR per point
    """
    out = [EXTERIOR] * len(pts)
    if not len(pts):
        return out
    if coords is None:
        coords = as_array(pts)
    corners = as_array(poly)
    ax, ay = corners[:, 0][None, :], corners[:, 1][None, :]
    bx, by = np.roll(corners[:, 0], -1)[None, :], np.roll(corners[:, 1], -1)[None, :]

    magnitude = max(float(np.abs(coords).max()), float(np.abs(corners).max()), 1.0)
    cmp_tol = _COMPARE_SLACK * magnitude
    orient_tol = _ORIENT_SLACK * magnitude * magnitude

    lo, hi = corners.min(axis=0) - cmp_tol, corners.max(axis=0) + cmp_tol
    in_box = np.flatnonzero(np.all((coords >= lo) & (coords <= hi), axis=1))

    for start in range(0, len(in_box), LOCATE_CHUNK):
        idx = in_box[start:start + LOCATE_CHUNK]
        px, py = coords[idx, 0][:, None], coords[idx, 1][:, None]
        o = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        up = (ay <= py) & (by > py)
        down = (ay > py) & (by <= py)
        winding = np.sum(up & (o > 0), axis=1) - np.sum(down & (o < 0), axis=1)
        near = (np.abs(ay - py) <= cmp_tol) | (np.abs(by - py) <= cmp_tol)
        unsure = np.any(near | ((up | down) & (np.abs(o) <= orient_tol)), axis=1)
        for i, w, u in zip(idx.tolist(), winding.tolist(), unsure.tolist()):
            if u:
                out[i] = locate_point(pts[i], poly)
            elif w != 0:
                out[i] = INTERIOR
    return out


def convex_hull(pts: Iterable[Point]) -> List[Point]:
    """
    Convex hull by the monotone chain, counterclockwise, collinear points dropped

    Parameters
    ----------
    pts: at least one point

    Returns
    -------
    hull vertices in CCW order; the two extremes for collinear input
    """
    pts = sorted(set(pts))
    assert len(pts) >= 1, 'convex hull of an empty set'
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orient_value(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        return [pts[0], pts[-1]]
    return hull


def is_simple(vertices: Sequence[Point]) -> bool:
    n = len(vertices)
    if n < 3:
        return False
    for i in range(n):
        if vertices[i] == vertices[(i + 1) % n]:
            return False
    if len(set(vertices)) != n:
        return False
    edges = edges_of(vertices)
    for i in range(n):
        prv, cur, nxt = vertices[i - 1], vertices[i], vertices[(i + 1) % n]
        # adjacent edges folding back onto each other
        if orient_value(prv, cur, nxt) == 0 and dot(prv - cur, nxt - cur) > 0:
            return False
    for i, j in combinations(range(n), 2):
        if j == i + 1 or (i == 0 and j == n - 1):
            continue
        if segments_intersect(*edges[i], *edges[j]):
            return False
    return signed_area2(vertices) != 0


def make_ccw(vertices: Sequence[Point]) -> List[Point]:
    vertices = list(vertices)
    if signed_area2(vertices) < 0:
        vertices.reverse()
    return vertices


def find_collinear_triple(pts: Sequence[Point]) -> Optional[Tuple[int, int, int]]:
    """
    Indices (i, j, k) of some collinear triple, or None.

    One direction table per anchor point, quadratic overall.
    """
    for i, a in enumerate(pts):
        seen = {}
        for j, b in enumerate(pts):
            if j == i:
                continue
            d = b - a
            key = d.y / d.x if d.x != 0 else None
            if key in seen:
                return tuple(sorted((i, seen[key], j)))
            seen[key] = j
    return None


class Shear(NamedTuple):
    """(x, y) -> (x + lam*y, y) followed by (x, y) -> (x, y + mu*x)"""
    lam: Fraction
    mu: Fraction

    @property
    def is_identity(self) -> bool:
        return self.lam == 0 and self.mu == 0

    def apply(self, p: Point) -> Point:
        x = p.x + self.lam * p.y
        return Point(x, p.y + self.mu * x)

    def invert(self, p: Point) -> Point:
        y = p.y - self.mu * p.x
        return Point(p.x - self.lam * y, y)


def _first_separating(values_for, pts: Sequence[Point]) -> Fraction:
    if len({values_for(Fraction(0), p) for p in pts}) == len(pts):
        return Fraction(0)
    m = 1
    while True:
        c = Fraction(1, m)
        if len({values_for(c, p) for p in pts}) == len(pts):
            return c
        m += 1


def shear_normalize(pts: Sequence[Point]) -> Tuple[Shear, List[Point]]:
    """
    Orientation preserving shear giving pairwise distinct x and distinct y.

    The parameters are the first of 0, 1, 1/2, 1/3, ... that work, so the
    result is deterministic.
    """
    if len(set(pts)) != len(pts):
        raise DuplicatePoint('two input points coincide')
    lam = _first_separating(lambda c, p: p.x + c * p.y, pts)
    sheared = [Point(p.x + lam * p.y, p.y) for p in pts]
    mu = _first_separating(lambda c, p: p.y + c * p.x, sheared)
    shear = Shear(lam, mu)
    return shear, [shear.apply(p) for p in pts]
