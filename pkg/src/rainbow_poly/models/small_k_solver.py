import logging
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from rainbow_poly.data.point_set import ColoredPointSet
from rainbow_poly.models.strip_finder import Strip, find_strip
from rainbow_poly.models.thickener import thicken_graph
from rainbow_poly.models.utils import CoveringTree, PlaneGraph
from rainbow_poly.utils.defaults import INTERIOR, RECIPE_HALVINGS, W_OTHER_COLOR
from rainbow_poly.utils.errors import CrossingViolation, DegenerateInput, InternalInvariant
from rainbow_poly.utils.errors import PreconditionViolated, RainbowError, TooFewColors, TooManyColors
from rainbow_poly.utils.utils import Point, contains, convex_hull, cross, dist2, find_collinear_triple
from rainbow_poly.utils.utils import edges_of, in_segment_interior, is_simple, line_intersection, locate_point
from rainbow_poly.utils.utils import make_ccw, on_segment, proper_cross, segments_intersect
from rainbow_poly.verifier.verifier import RainbowCertificate, certify, rb_index_small, uncovered_colors

logger = logging.getLogger(__name__)

ORIGIN = Point(Fraction(0), Fraction(0))
UNIT_X = Point(Fraction(1), Fraction(0))
UNIT_Y = Point(Fraction(0), Fraction(1))


class ExpedientLabeling(NamedTuple):
    """
    Interior points a, b, c of a triangle xyz with
    r = ray(x, a) & ray(y, b), s = ray(y, b) & ray(z, c), t = ray(z, c) & ray(x, a),
    a on xr, b on ys and c on zt
    """
    a: Point
    b: Point
    c: Point
    r: Point
    s: Point
    t: Point

    @property
    def triangle(self) -> List[Point]:
        return [self.r, self.s, self.t]

    @property
    def chosen(self) -> Tuple[Point, Point, Point]:
        return self.a, self.b, self.c


def _meet(p: Point, q: Point, u: Point, v: Point) -> Optional[Point]:
    """intersection of the rays p->q and u->v, provided it lies on the first ray at or beyond q"""
    st = line_intersection(p, q - p, u, v - u)
    if st is None:
        return None
    s, t = st
    if s < 1 or t <= 0:
        return None
    return p + (q - p).scale(s)


def labeling_for(x: Point, y: Point, z: Point, a: Point, b: Point, c: Point) -> Optional[ExpedientLabeling]:
    """the labeling (a, b, c) if it is expedient for the triangle xyz, None otherwise"""
    r = _meet(x, a, y, b)
    s = _meet(y, b, z, c)
    t = _meet(z, c, x, a)
    if r is None or s is None or t is None or len({r, s, t}) < 3:
        return None
    corners = [x, y, z]
    if any(locate_point(p, corners) != INTERIOR for p in (r, s, t)):
        return None
    return ExpedientLabeling(a, b, c, r, s, t)


def expedient_labeling(x: Point, y: Point, z: Point, interior: Sequence[Point]) -> ExpedientLabeling:
    """
    Label three points inside the triangle xyz so that their expedient triangle exists

    Parameters
    ----------
    x, y, z: triangle corners
    interior: three points strictly inside the triangle

    Returns
    -------
    ExpedientLabeling
    """
    interior = list(interior)
    assert len(interior) == 3, 'an expedient labeling needs exactly three points'
    if find_collinear_triple([x, y, z] + interior) is not None:
        raise DegenerateInput('the triangle corners and the three points are not in general position')
    corners = [x, y, z]
    if any(locate_point(p, corners) != INTERIOR for p in interior):
        raise PreconditionViolated('the three points must lie strictly inside the triangle')
    for a, b, c in permutations(interior):
        lab = labeling_for(x, y, z, a, b, c)
        if lab is not None:
            return lab
    raise InternalInvariant(f'no expedient labeling of {interior}')


def _valid_labelings(x: Point, y: Point, z: Point, triple: Sequence[Point]) -> List[ExpedientLabeling]:
    out = []
    for a, b, c in permutations(triple):
        lab = labeling_for(x, y, z, a, b, c)
        if lab is not None:
            out.append(lab)
    return out


def _corner_triangle(S: ColoredPointSet) -> List[Point]:
    hull = convex_hull(S.points)
    if len(hull) != 3:
        raise PreconditionViolated(f'the convex hull has {len(hull)} vertices, a triangle is required')
    for p in hull:
        if len(S.classes[S.color_at(p)]) != 1:
            raise PreconditionViolated(f'hull corner {p} does not have a color of its own')
    return hull


def _shrink(x, y, z, lab: ExpedientLabeling, d: Point, color_of) -> ExpedientLabeling:
    chosen = list(lab.chosen)
    same = [q for q in chosen if color_of(q) == color_of(d)]
    options = same or [lab.c, lab.b, lab.a]
    for old in options:
        triple = [q for q in chosen if q != old] + [d]
        for cand in _valid_labelings(x, y, z, triple):
            if all(contains(lab.triangle, v) for v in cand.triangle):
                return cand
    raise InternalInvariant(f'no nested expedient triangle after adding {d}')


def _interior_in(lab: ExpedientLabeling, pts: Sequence[Point]) -> List[Point]:
    tri = lab.triangle
    return [p for p in pts if p not in lab.chosen and locate_point(p, tri) == INTERIOR]


def empty_expedient_triangle(
        S: ColoredPointSet,
        history: Optional[List[ExpedientLabeling]] = None,
) -> ExpedientLabeling:
    """
    Expedient triangle with no point of S in its interior

    Parameters
    ----------
    S: colored point set whose hull is a triangle with three single-point color classes
    history: if given, receives every intermediate labeling, outermost first

    Returns
    -------
    ExpedientLabeling whose a, b, c have three distinct colors
    """
    x, y, z = _corner_triangle(S)
    corner_colors = {S.color_at(p) for p in (x, y, z)}
    interior = [p for p in S.points if p not in (x, y, z)]
    first_of = {}
    for p in interior:
        c = S.color_at(p)
        if c not in corner_colors and c not in first_of:
            first_of[c] = p
    if len(first_of) < 3:
        raise PreconditionViolated('fewer than three colors strictly inside the triangle')

    lab = expedient_labeling(x, y, z, list(first_of.values())[:3])
    if history is not None:
        history.append(lab)
    for d in interior:
        if d in lab.chosen or S.color_at(d) in corner_colors:
            continue
        if locate_point(d, lab.triangle) == INTERIOR:
            lab = _shrink(x, y, z, lab, d, S.color_at)
            if history is not None:
                history.append(lab)

    left = _interior_in(lab, interior)
    passes = 0
    while left:
        # the single pass relies on nesting; repeat on the rare leftovers
        passes += 1
        if passes > len(interior):
            raise InternalInvariant('expedient triangle does not empty out')
        logger.warning('expedient triangle still holds %d points; shrinking again', len(left))
        lab = _shrink(x, y, z, lab, left[0], S.color_at)
        if history is not None:
            history.append(lab)
        left = _interior_in(lab, interior)
    return lab


def _pinwheel_graph(x: Point, y: Point, z: Point, lab: ExpedientLabeling) -> PlaneGraph:
    """the three rays of the labeling cut at the expedient triangle, plus the triangle itself"""
    graph = PlaneGraph(targets=[x, y, z, lab.a, lab.b, lab.c])
    for corner, far in ((x, (lab.r, lab.t)), (y, (lab.s, lab.r)), (z, (lab.t, lab.s))):
        chain = sorted((corner,) + far, key=lambda p: dist2(p, corner))
        for u, w in zip(chain, chain[1:]):
            graph.add_edge(u, w)
    return graph


def _pinwheel_graphs(S: ColoredPointSet):
    """
    Noncrossing pinwheels of S: first for the empty expedient triangle found by
    shrinking, then for the other labelings of the same points whose triangle is empty
    """
    x, y, z = _corner_triangle(S)
    lab = empty_expedient_triangle(S)
    pool = [q for q in S.points if q not in (x, y, z)]
    others = [o for o in _valid_labelings(x, y, z, lab.chosen) if o != lab and not _interior_in(o, pool)]
    for cand in [lab] + others:
        graph = _pinwheel_graph(x, y, z, cand)
        try:
            graph.check_noncrossing()
        except CrossingViolation as e:
            logger.debug('pinwheel of %s rejected: %s', cand, e)
            continue
        yield graph


def _obstacles(S: ColoredPointSet, graph: PlaneGraph) -> List[Point]:
    selected = set(graph.targets)
    return [p for p in S.points if p not in selected]


def attach_point(graph: PlaneGraph, extra: Point, anchor: Point) -> PlaneGraph:
    """
    Copy of the graph with a new edge from anchor to extra

    anchor must be a vertex of the graph or lie inside one of its edges, in which
    case that edge is split there. extra becomes a target.
    """
    edges = graph.edge_list()
    if graph.has_vertex(extra) or any(on_segment(extra, a, b) for a, b in edges):
        raise CrossingViolation(f'{extra} already lies on the graph')
    for a, b in edges:
        if on_segment(anchor, a, b):
            if any(p != anchor and in_segment_interior(p, anchor, extra) for p in (a, b)):
                raise CrossingViolation(f'{anchor}-{extra} runs along edge {a}-{b}')
        elif proper_cross(anchor, extra, a, b) or segments_intersect(anchor, extra, a, b):
            raise CrossingViolation(f'{anchor}-{extra} meets edge {a}-{b}')

    if not graph.has_vertex(anchor):
        hosts = [(a, b) for a, b in edges if in_segment_interior(anchor, a, b)]
        if not hosts:
            raise PreconditionViolated(f'anchor {anchor} is not on the graph')
        a, b = hosts[0]
        edges.remove((a, b))
        edges += [(a, anchor), (anchor, b)]
    edges.append((anchor, extra))
    return graph.__class__(edges, graph.vertices, list(graph.targets) + [extra])


class _Frame:
    """affine coordinates sending x, y, z to (0, 0), (1, 0), (0, 1)"""
    def __init__(self, x: Point, y: Point, z: Point):
        self.o   = x
        self.u   = y - x
        self.v   = z - x
        self.det = cross(self.u, self.v)
        assert self.det != 0, 'frame points are collinear'

    def to_frame(self, p: Point) -> Point:
        w = p - self.o
        return Point(cross(w, self.v) / self.det, cross(self.u, w) / self.det)

    def from_frame(self, q: Point) -> Point:
        return self.o + self.u.scale(q.x) + self.v.scale(q.y)


def _toward(p: Point, target: Point, tau: Fraction) -> Point:
    return p + (target - p).scale(tau)


def _pseudo_angle(d: Point) -> Fraction:
    """increasing with the counterclockwise angle of d from the positive x-axis, in [0, 4)"""
    r = abs(d.y) / (abs(d.x) + abs(d.y))
    if d.y >= 0:
        return r if d.x >= 0 else 2 - r
    return 2 + r if d.x < 0 else 4 - r


def sees(poly: Sequence[Point], apex: Point, e: Point) -> bool:
    """true iff the segment from apex, a vertex of poly, to e meets the boundary of poly only in apex"""
    for a, b in edges_of(poly):
        if apex in (a, b):
            other = b if a == apex else a
            if on_segment(other, apex, e) or on_segment(e, a, b):
                return False
        elif segments_intersect(apex, e, a, b):
            return False
    return True


def glue_spikes(poly: List[Point], apex: Point, ends: Sequence[Point], tau: Fraction) -> Optional[List[Point]]:
    """
    The counterclockwise polygon with a thin triangle from apex to every point of
    ends, two more vertices per spike

    The ends are taken in angular order from the incoming edge. Spikes before the
    one turn of at least a half-plane are glued along the incoming side, the
    others along the outgoing side. None if two such turns exist.
    """
    i = poly.index(apex)
    prv, nxt = poly[i - 1], poly[(i + 1) % len(poly)]
    start = _pseudo_angle(prv - apex)
    ends = sorted(ends, key=lambda e: (_pseudo_angle(e - apex) - start) % 4)
    rays = [prv] + ends + [nxt]
    wide = [j for j in range(len(rays) - 1) if cross(rays[j] - apex, rays[j + 1] - apex) <= 0]
    if len(wide) > 1:
        return None
    j = wide[0] if wide else 0

    incoming = []
    last = prv
    for e in ends[:j]:
        incoming += [_toward(apex, last, tau), e]
        last = e
    outgoing = []
    after = ends[j:]
    for e, following in zip(after, after[1:] + [nxt]):
        outgoing += [e, _toward(apex, following, tau)]
    return poly[:i] + incoming + [apex] + outgoing + poly[i + 1:]


class _Construction:
    """
    One candidate polygon family, built in the affine frame of three points of S

    polygon(tau) returns frame coordinates or None when the family does not apply;
    tau controls the points taken infinitesimally close to a ray
    """
    name = 'construction'
    uses_tau = True

    def __init__(self, S: ColoredPointSet, x: Point, y: Point, z: Point):
        self.S      = S
        self.frame  = _Frame(x, y, z)
        self.S_F    = S.transformed(self.frame.to_frame)
        self.inner  = [(q, c) for q, c in self.S_F.items() if 0 < q.y < 1]
        self.used   = {S.color_at(x), S.color_at(y), S.color_at(z)}
        self._certified = None
        self._by_distance: Dict[Tuple[Point, int], List[Point]] = {}

    def polygon(self, tau: Fraction) -> Optional[List[Point]]:
        raise NotImplementedError

    @staticmethod
    def proj(q: Point) -> Fraction:
        """where the ray from (0, 1) through q meets the line y = 0"""
        return q.x / (1 - q.y)

    def certify(self, poly: List[Point]) -> RainbowCertificate:
        """certificate against the frame point set, kept for the last polygon asked about"""
        key = tuple(poly)
        if self._certified is None or self._certified[0] != key:
            self._certified = (key, certify(poly, self.S_F))
        return self._certified[1]

    def nearest_seen(self, poly: List[Point], apex: Point, color: int) -> Optional[Point]:
        """closest point of the color that apex sees past the polygon"""
        key = (apex, color)
        if key not in self._by_distance:
            self._by_distance[key] = sorted(self.S_F.points_of(color), key=lambda p: dist2(p, apex))
        return next((e for e in self._by_distance[key] if sees(poly, apex, e)), None)

    def with_spikes(self, poly: List[Point], apex: Point, tau: Fraction) -> Optional[List[Point]]:
        """glue a spike from apex to a point of every color the polygon misses"""
        if not is_simple(poly):
            return poly
        poly = make_ccw(poly)
        cert = self.certify(poly)
        if not cert.rainbow:
            return poly
        ends = []
        for color in uncovered_colors(cert):
            e = self.nearest_seen(poly, apex, color)
            if e is None:
                logger.debug('%r: the apex sees no point of color %d', self, color)
                return None
            ends.append(e)
        return glue_spikes(poly, apex, ends, tau) if ends else poly

    def __repr__(self):
        return f'{self.name}({self.frame.o}, {self.frame.o + self.frame.u}, {self.frame.o + self.frame.v})'


class _Triangle(_Construction):
    name = 'triangle'
    uses_tau = False

    def polygon(self, tau):
        return [ORIGIN, UNIT_X, UNIT_Y]


class _HullQuad(_Construction):
    """both lines carry two points and the strip is empty"""
    name = 'hull_quad'
    uses_tau = False

    def __init__(self, S, x, y, z, w):
        super().__init__(S, x, y, z)
        self.w = self.frame.to_frame(w)

    def polygon(self, tau):
        return convex_hull([ORIGIN, UNIT_X, UNIT_Y, self.w])


class _FirstRay(_Construction):
    """
    Four colors: turn the ray from the apex until the first strip point u and
    either join a two-segment tree or cut a quadrilateral along the ray
    """
    name = 'first_ray'

    def __init__(self, S, x, y, z):
        super().__init__(S, x, y, z)
        cands = [(q, c) for q, c in self.inner if c not in self.used]
        self.u = min(cands, key=lambda qc: self.proj(qc[0]))[0] if cands else None
        self.uses_tau = self.u is not None and self.proj(self.u) >= 0

    def polygon(self, tau):
        if self.u is None:
            return None
        p = Point(self.proj(self.u), Fraction(0))
        if p.x < 0:
            tree = CoveringTree([(p, UNIT_X), (p, UNIT_Y)], targets=[ORIGIN, UNIT_X, UNIT_Y, self.u])
            return thicken_graph(tree, obstacles=_obstacles(self.S_F, tree), expected_size=4)
        if p.x <= 1:
            return [UNIT_X, ORIGIN, UNIT_Y, _toward(p, UNIT_Y, tau)]
        return None


class _Wedge(_Construction):
    """
    Turn the ray from the apex until two consecutive strip points u, v of
    different colors; the wedge between them is empty. Missing colors are
    reached by spikes from the apex.
    """
    name = 'wedge'

    def __init__(self, S, x, y, z):
        super().__init__(S, x, y, z)
        ordered = sorted(self.inner, key=lambda qc: self.proj(qc[0]))
        self.u = self.v = None
        for (q0, c0), (q1, c1) in zip(ordered, ordered[1:]):
            if c0 != c1:
                if c0 not in self.used and c1 not in self.used:
                    self.u, self.v = q0, q1
                break

    def polygon(self, tau):
        if self.u is None:
            return None
        p = Point(self.proj(self.u), Fraction(0))
        q = Point(self.proj(self.v), Fraction(0))
        if p.x < 0 and q.x <= 1:
            base = [UNIT_X, p, UNIT_Y, _toward(q, UNIT_Y, tau)]
        elif p.x < 0:
            base = [p, q, UNIT_Y]
        elif q.x <= 1:
            base = [UNIT_X, ORIGIN, _toward(p, UNIT_Y, tau), UNIT_Y, _toward(q, UNIT_Y, tau)]
        else:
            return None
        return self.with_spikes(base, UNIT_Y, tau)


class _Pinned(_Construction):
    """
    Five colors, the apex line holding the apex and its partner, the base line
    two points of new colors and the open strip a single further color
    """
    name = 'pinned'

    def __init__(self, S, b1, b2, apex, partner):
        super().__init__(S, b1, b2, apex)
        self.partner = self.frame.to_frame(partner)
        self.used.add(S.color_at(partner))
        cands = [(q, c) for q, c in self.inner if c not in self.used]
        self.u = min(cands, key=lambda qc: self.proj(qc[0]))[0] if cands else None

    def polygon(self, tau):
        if self.u is None or self.partner.y != 1 or self.partner.x >= 0:
            return None
        p = Point(self.proj(self.u), Fraction(0))
        if p.x < 0:
            return [UNIT_Y, self.partner, p, UNIT_X, _toward(p, UNIT_Y, tau)]
        if p.x < 1:
            return [UNIT_Y, self.partner, ORIGIN, UNIT_X, _toward(p, UNIT_Y, tau)]
        return None


class _Hexagon(_Construction):
    """
    Pinwheel around an empty expedient triangle inside the triangle of the
    frame points, with spikes from the apex for any color left out
    """
    name = 'hexagon'
    uses_tau = False

    def polygon(self, tau):
        inside = [(q, c) for q, c in self.S_F.items() if q.x >= 0 and q.y >= 0 and q.x + q.y <= 1]
        sub = ColoredPointSet([q for q, _ in inside], [c for _, c in inside], check_general_position=False)
        if sub.k < 6:
            return None
        for graph in _pinwheel_graphs(sub):
            try:
                return self._spiked(graph)
            except RainbowError as e:
                logger.debug('pinwheel rejected: %s', e)
        return None

    def _spiked(self, graph: PlaneGraph) -> List[Point]:
        covered = {self.S_F.color_at(p) for p in graph.targets}
        for color in self.S_F.color_list:
            if color not in covered:
                graph = self._attach_nearest(graph, color)
        size = 6 + 2 * (len(graph.targets) - 6)
        return thicken_graph(graph, obstacles=_obstacles(self.S_F, graph), expected_size=size)

    def _attach_nearest(self, graph: PlaneGraph, color: int) -> PlaneGraph:
        """
        Join the nearest point of the color to a corner of the frame triangle.
        Every point outside the empty expedient triangle sees one of the corners.
        """
        corners = (UNIT_Y, ORIGIN, UNIT_X)
        for e in sorted(self.S_F.points_of(color), key=lambda p: min(dist2(p, c) for c in corners)):
            for anchor in sorted(corners, key=lambda c: dist2(e, c)):
                try:
                    candidate = attach_point(graph, e, anchor)
                    candidate.check_noncrossing()
                except RainbowError:
                    continue
                return candidate
        raise PreconditionViolated(f'no corner reaches color {color}')


def _orders(a: Point, b: Point) -> Tuple[Tuple[Point, Point], Tuple[Point, Point]]:
    return (a, b), (b, a)


def _constructions(S: ColoredPointSet, strip: Strip) -> List[_Construction]:
    x, y, z, w = strip.x, strip.y, strip.z, strip.w
    k = S.k
    out: List[_Construction] = []
    if k == 3:
        return [_Triangle(S, x, y, z)]
    tops = [z] + ([w] if w is not None else [])
    if k == 4:
        if w is not None and strip.case == W_OTHER_COLOR:
            out.append(_HullQuad(S, x, y, z, w))
        for apex in tops:
            for b1, b2 in _orders(x, y):
                out.append(_FirstRay(S, b1, b2, apex))
        return out

    for apex in tops:
        for b1, b2 in _orders(x, y):
            out.append(_Wedge(S, b1, b2, apex))
    if w is not None:
        for apex in (x, y):
            for b1, b2 in _orders(z, w):
                out.append(_Wedge(S, b1, b2, apex))
        if k == 5:
            for apex, partner in ((y, x), (x, y)):
                for b1, b2 in _orders(z, w):
                    out.append(_Pinned(S, b1, b2, apex, partner))
    if k >= 6:
        out.append(_Hexagon(S, x, y, z))
    return out


def _realize(con: _Construction, bound: int) -> Optional[List[Point]]:
    tau = Fraction(1, 4)
    for _ in range(RECIPE_HALVINGS if con.uses_tau else 1):
        try:
            poly = con.polygon(tau)
        except RainbowError as e:
            logger.debug('%r failed: %s', con, e)
            return None
        if poly is None or len(poly) > bound:
            return None
        if is_simple(poly):
            cert = con.certify(poly)
            if cert.perfect and cert.size <= bound:
                return make_ccw([con.frame.from_frame(p) for p in poly])
        tau /= 2
    return None


def solve_small(S: ColoredPointSet, strip: Optional[Strip] = None) -> List[Point]:
    """
    Perfect rainbow polygon with at most 3, 4, 5, 6 or 8 vertices for 3 to 7 colors

    Parameters
    ----------
    S: colored point set in general position with 3 <= k <= 7
    strip: precomputed strip of S; found with find_strip when omitted

    Returns
    -------
    counterclockwise vertex list
    """
    if S.k < 3:
        raise TooFewColors(f'the small-k constructions need at least 3 colors, got {S.k}')
    if S.k > 7:
        raise TooManyColors(f'the small-k constructions handle at most 7 colors, got {S.k}')
    bound = rb_index_small(S.k)
    if strip is None:
        strip = find_strip(S)
    logger.debug('small-k strip %r', strip)

    for con in _constructions(S, strip):
        poly = _realize(con, bound)
        if poly is not None:
            logger.debug('%r gave a %d-gon', con, len(poly))
            return poly

    raise InternalInvariant(f'no small-k construction applied to {S!r} with {strip!r}')


def rainbow_hexagon_in_triangle(S: ColoredPointSet) -> List[Point]:
    """
    Perfect rainbow hexagon for six colors of a set whose hull is a triangle
    with single-point corner colors
    """
    for graph in _pinwheel_graphs(S):
        try:
            return thicken_graph(graph, obstacles=_obstacles(S, graph), expected_size=6)
        except RainbowError as e:
            logger.debug('pinwheel thickening rejected: %s', e)
    raise InternalInvariant('no pinwheel around an empty expedient triangle could be thickened')

