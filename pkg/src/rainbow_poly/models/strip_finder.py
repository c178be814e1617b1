import logging
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, Optional, Tuple

from rainbow_poly.data.point_set import ColoredPointSet
from rainbow_poly.utils.defaults import W_ABSENT, W_SAME_COLOR, W_OTHER_COLOR
from rainbow_poly.utils.errors import DegenerateInput, InternalInvariant, TooFewColors
from rainbow_poly.utils.utils import Point, cross, dot, shear_normalize

logger = logging.getLogger(__name__)


class Strip:
    """
    Two parallel lines: ell1 through x (color i1) and y (color i2),
    ell2 through z (color i3) and possibly one more point w

    case - W_ABSENT, W_SAME_COLOR or W_OTHER_COLOR, according to w
    """
    def __init__(
            self,
            x: Point,
            y: Point,
            z: Point,
            colors: Tuple[int, int, int],
            w: Optional[Point] = None,
            case: str = W_ABSENT,
    ):
        assert x != y, 'ell1 needs two distinct points'
        self.x      = x
        self.y      = y
        self.z      = z
        self.w      = w
        self.colors = tuple(colors)
        self.case   = case

    @property
    def direction(self) -> Point:
        return self.y - self.x

    def height(self, q: Point) -> Fraction:
        """0 on ell1, 1 on ell2, linear in between"""
        d = self.direction
        return cross(d, q - self.x) / cross(d, self.z - self.x)

    def in_closed_strip(self, q: Point) -> bool:
        return 0 <= self.height(q) <= 1

    def in_open_strip(self, q: Point) -> bool:
        return 0 < self.height(q) < 1

    def map_points(self, fn) -> 'Strip':
        return Strip(fn(self.x), fn(self.y), fn(self.z), self.colors,
                     None if self.w is None else fn(self.w), self.case)

    def __repr__(self):
        return f'Strip(x={self.x}, y={self.y}, z={self.z}, w={self.w}, colors={self.colors}, case={self.case})'


def strip_violations(S: ColoredPointSet, strip: Strip) -> List[str]:
    """
    Independent check of the five strip properties by one scan over S

    Returns
    -------
    names of the violated properties; empty when the strip is valid
    """
    i1, i2, i3 = strip.colors
    bad = []
    if len({i1, i2, i3}) != 3:
        bad.append('colors')
    if S.color_at(strip.x) != i1 or S.color_at(strip.y) != i2 or S.color_at(strip.z) != i3:
        bad.append('iii')
    if cross(strip.direction, strip.z - strip.x) == 0:
        return bad + ['parallel']

    closed: Dict[int, List[Point]] = {}
    on_ell2 = []
    for p, c in S.items():
        h = strip.height(p)
        if 0 <= h <= 1:
            closed.setdefault(c, []).append(p)
        if h == 1 and p != strip.z:
            on_ell2.append(p)

    if any(c not in closed for c in S.color_list):
        bad.append('i')
    if closed.get(i1) != [strip.x] or closed.get(i2) != [strip.y]:
        bad.append('ii')
    if len(on_ell2) > 1:
        bad.append('v')
    elif not on_ell2:
        if closed.get(i3) != [strip.z] or strip.case != W_ABSENT:
            bad.append('iv')
    else:
        w = on_ell2[0]
        cw = S.color_at(w)
        if strip.w != w:
            bad.append('v')
        elif cw == i3:
            if sorted(closed[i3]) != sorted([strip.z, w]) or strip.case != W_SAME_COLOR:
                bad.append('v')
        elif cw in (i1, i2) or closed.get(i3) != [strip.z] or strip.case != W_OTHER_COLOR:
            bad.append('v')
    return bad


def _classify_ell2(S: ColoredPointSet, strip: Strip) -> Strip:
    d = strip.direction
    others = [p for p in S.points if p != strip.z and cross(d, p - strip.z) == 0]
    if not others:
        strip.w, strip.case = None, W_ABSENT
    else:
        strip.w = others[0]
        strip.case = W_SAME_COLOR if S.color_at(strip.w) == strip.colors[2] else W_OTHER_COLOR
    return strip


def _cw_direction(d: Point, v: Point) -> Optional[Point]:
    """the one of +v, -v reached first when d turns clockwise; None if v is parallel to d"""
    c = cross(d, v)
    if c == 0:
        return None
    return v if c < 0 else -v


def _earlier(e1: Point, e2: Point) -> int:
    return -1 if cross(e1, e2) < 0 else (1 if cross(e1, e2) > 0 else 0)


class _RotatingLine:
    """
    A line through a pivot turning clockwise, with the pending collinearity
    events of its candidate points ordered by turning angle
    """
    def __init__(self, pivot: Point, candidates: List[Point], d: Point):
        self.pivot = pivot
        self.candidates = candidates
        self.reset(d)

    def reset(self, d: Point):
        events = []
        for q in self.candidates:
            if q == self.pivot:
                continue
            e = _cw_direction(d, q - self.pivot)
            if e is not None:
                events.append((e, q))
        events.sort(key=cmp_to_key(lambda a, b: _earlier(a[0], b[0])))
        events.reverse()
        self.events = events

    def peek(self):
        return self.events[-1] if self.events else None

    def pop(self):
        return self.events.pop()


def sweep_invariant_violations(
        pts: List[Point],
        color_of: Dict[Point, int],
        p1: Point,
        p2: Point,
        d: Point,
        c1: int,
        c3: int,
        s3_low: List[Point],
) -> List[str]:
    """
    The invariants of the rotational sweep for ell1 through p1 and ell2 through
    p2, both with direction d, the strip lying right of ell1 and left of ell2

    tangent1 - no point of color c1 strictly right of ell1
    tangent2 - no point of s3_low strictly left of ell2
    colors   - every color has a point in the closed strip
    open_c3  - no point of color c3 in the open strip
    """
    bad = []
    if any(color_of[q] == c1 and cross(d, q - p1) < 0 for q in pts):
        bad.append('tangent1')
    if any(cross(d, q - p2) > 0 for q in s3_low):
        bad.append('tangent2')
    closed = {color_of[q] for q in pts if cross(d, q - p1) <= 0 <= cross(d, q - p2)}
    if len(closed) != len(set(color_of.values())):
        bad.append('colors')
    if any(color_of[q] == c3 and cross(d, q - p1) < 0 < cross(d, q - p2) for q in pts):
        bad.append('open_c3')
    return bad


def _sweep(S: ColoredPointSet, pts: List[Point], check_invariants: bool = False) -> Strip:
    colors = S.colors
    color_of = dict(zip(pts, colors))
    lowest = {}
    for p, c in zip(pts, colors):
        if c not in lowest or p.y < lowest[c].y:
            lowest[c] = p
    c1 = max(lowest, key=lambda c: lowest[c].y)
    level = lowest[c1].y
    highest_below = {}
    for p, c in zip(pts, colors):
        if c != c1 and p.y < level and (c not in highest_below or p.y > highest_below[c].y):
            highest_below[c] = p
    c3 = min(highest_below, key=lambda c: highest_below[c].y)
    p1, p2 = lowest[c1], highest_below[c3]

    if p1.x < p2.x:
        mirrored = _sweep(S, [Point(-p.x, p.y) for p in pts], check_invariants)
        return mirrored.map_points(lambda p: Point(-p.x, p.y))

    s1 = [p for p in pts if color_of[p] == c1]
    s3_low = [p for p in pts if color_of[p] == c3 and p.y < level]
    s3_low_set = set(s3_low)
    rest = [p for p in pts if color_of[p] != c1 and p not in s3_low_set]

    d = Point(Fraction(1), Fraction(0))
    # side1: strictly right of ell1, side2: strictly left of ell2
    side1 = {q: q.y < p1.y for q in rest}
    side2 = {q: q.y > p2.y for q in rest}
    open_count: Dict[int, int] = {c: 0 for c in S.color_list}
    for q in rest:
        if side1[q] and side2[q]:
            open_count[color_of[q]] += 1
    assert all(open_count[c] >= 1 for c in S.color_list if c not in (c1, c3)), \
        'initial strip misses a color'

    line1 = _RotatingLine(p1, s1 + rest, d)
    line2 = _RotatingLine(p2, s3_low + rest, d)
    rest_set = set(rest)

    for _ in range(4 * len(pts) + 8):
        if check_invariants:
            bad = sweep_invariant_violations(pts, color_of, line1.pivot, line2.pivot, d, c1, c3, s3_low)
            if bad:
                raise InternalInvariant(f'strip sweep broke {bad} at direction {d}')
        f1, f2 = line1.peek(), line2.peek()
        if f1 is None and f2 is None:
            break
        if f2 is None or (f1 is not None and _earlier(f1[0], f2[0]) <= 0):
            e = f1[0]
        else:
            e = f2[0]
        batch = []
        if f1 is not None and cross(f1[0], e) == 0:
            batch.append((1, line1.pop()[1]))
        if f2 is not None and cross(f2[0], e) == 0:
            batch.append((2, line2.pop()[1]))
        d = e
        logger.debug('strip sweep event at direction %s: %s', d, batch)

        before = dict(open_count)
        entering = {c: 0 for c in S.color_list}
        leaving = []
        ell3_hit = None
        pivot_moves = []
        for which, q in batch:
            line = line1 if which == 1 else line2
            lam_pos = dot(q - line.pivot, d) > 0
            if q not in rest_set:
                pivot_moves.append((line, q))
                continue
            was_inside = side1[q] and side2[q]
            if which == 1:
                side1[q] = not lam_pos
            else:
                side2[q] = lam_pos
            now_inside = side1[q] and side2[q]
            c = color_of[q]
            if was_inside and not now_inside:
                open_count[c] -= 1
                leaving.append((which, q))
            elif now_inside and not was_inside:
                open_count[c] += 1
                entering[c] += 1
            if which == 1 and c == c3 and not lam_pos:
                ell3_hit = q

        for which, q in leaving:
            c = color_of[q]
            if c in (c1, c3) or open_count[c] != 0:
                continue
            if before[c] + entering[c] != 1:
                raise DegenerateInput('two points of one color leave the strip together')
            if which == 1:
                return Strip(line1.pivot, q, line2.pivot, (c1, c, c3))
            return Strip(line2.pivot, q, line1.pivot, (c3, c, c1))

        if ell3_hit is not None:
            return _translate_ell2(pts, color_of, line1.pivot, line2.pivot, ell3_hit, d, c1, c3)

        for line, q in pivot_moves:
            line.pivot = q
        for line in {id(l): l for l, _ in pivot_moves}.values():
            line.reset(d)
    raise DegenerateInput('strip sweep did not stop')


def _translate_ell2(pts, color_of, p1, p2, v, d, c1, c3) -> Strip:
    """move ell2 towards ell1 until it reaches the last strip point of some color"""
    far = -cross(d, p2 - p1)
    nearest: Dict[int, Point] = {}
    for q in pts:
        c = color_of[q]
        if c in (c1, c3):
            continue
        h = -cross(d, q - p1)
        if 0 <= h <= far and (c not in nearest or h < -cross(d, nearest[c] - p1)):
            nearest[c] = q
    if not nearest:
        raise InternalInvariant('no color left to pin ell2')
    cu = max(nearest, key=lambda c: -cross(d, nearest[c] - p1))
    return Strip(p1, v, nearest[cu], (c1, c3, cu))


def exhaustive_strip(S: ColoredPointSet) -> Strip:
    """
    Brute-force search over all lines through two differently colored points
    and both sides, cubic in n
    """
    items = S.items()
    for i, (a, ca) in enumerate(items):
        for b, cb in items[i + 1:]:
            if ca == cb:
                continue
            d = b - a
            for side in (1, -1):
                best: Dict[int, Tuple[Fraction, Point]] = {}
                pinned = []
                for q, c in items:
                    h = side * cross(d, q - a)
                    if h <= 0:
                        continue
                    if c in (ca, cb):
                        pinned.append(h)
                    elif c not in best or h < best[c][0]:
                        best[c] = (h, q)
                if len(best) != S.k - 2:
                    continue
                top, z = max(best.values(), key=lambda hv: hv[0])
                if any(h <= top for h in pinned):
                    continue
                strip = _classify_ell2(S, Strip(a, b, z, (ca, cb, S.color_at(z))))
                if not strip_violations(S, strip):
                    return strip
    raise InternalInvariant('no strip found by exhaustive search')


def find_strip(S: ColoredPointSet, check_invariants: bool = False) -> Strip:
    """
    Two parallel lines bounding a strip with a point of every color, two
    colors pinned to single points on ell1 and the third color on ell2

    Parameters
    ----------
    S: colored point set with at least three colors, in general position
    check_invariants: check the sweep invariants at every event, also on when
                      debug logging is enabled

    Returns
    -------
    Strip in the coordinates of S
    """
    if S.k < 3:
        raise TooFewColors(f'a strip needs at least 3 colors, got {S.k}')
    shear, pts = shear_normalize(list(S.points))
    try:
        strip = _sweep(S, pts, check_invariants or logger.isEnabledFor(logging.DEBUG))
        strip = strip.map_points(shear.invert)
        strip = _classify_ell2(S, strip)
        bad = strip_violations(S, strip)
    except DegenerateInput as e:
        bad = [str(e)]
    if bad:
        logger.warning('rotational sweep gave no valid strip (%s); searching exhaustively', bad)
        return exhaustive_strip(S)
    return strip
