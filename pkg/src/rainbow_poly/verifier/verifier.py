from fractions import Fraction
from typing import Dict, List, Sequence

from rainbow_poly.data.point_set import ColoredPointSet
from rainbow_poly.models.utils import SegmentPartition
from rainbow_poly.utils.defaults import EXTERIOR, RB_INDEX_SMALL
from rainbow_poly.utils.errors import BadK, BadN, NotSimple, UncoveredTarget
from rainbow_poly.utils.utils import Point, in_segment_interior, is_simple, locate_points, on_segment


class RainbowCertificate:
    """
    Per-color containment of a polygon over a colored point set

    counts    - color -> number of points of that color in the closed polygon
    perfect   - every color contained exactly once
    rainbow   - every color contained at most once
    size      - number of polygon vertices
    contained - the points of the set in the closed polygon
    """
    def __init__(
            self,
            counts: Dict[int, int],
            size: int,
            contained: Sequence[Point] = (),
    ):
        self.counts    = dict(counts)
        self.size      = size
        self.contained = list(contained)
        self.perfect   = all(c == 1 for c in self.counts.values())
        self.rainbow   = all(c <= 1 for c in self.counts.values())

    def __repr__(self):
        return f'RainbowCertificate(size={self.size}, perfect={self.perfect}, rainbow={self.rainbow})'


class SegmentStats:
    """
    s0, s1, s2 - segments carrying 0, 1 and 2 target points
    s          - number of segments
    t          - sum of fork multiplicities
    """
    def __init__(
            self,
            per_segment: Sequence[int],
            t: int,
    ):
        self.s  = len(per_segment)
        self.s0 = sum(1 for m in per_segment if m == 0)
        self.s1 = sum(1 for m in per_segment if m == 1)
        self.s2 = sum(1 for m in per_segment if m == 2)
        self.t  = t
        self.per_segment = list(per_segment)

    @property
    def size(self) -> int:
        return 2 * self.s + self.t

    def __repr__(self):
        return f'SegmentStats(s={self.s}, t={self.t}, s0={self.s0}, s1={self.s1}, s2={self.s2})'


def certify(poly: Sequence[Point], S: ColoredPointSet) -> RainbowCertificate:
    """
    Count, for every color, the points of S in the closed polygon

    Parameters
    ----------
    poly: polygon vertices in either orientation
    S: colored point set

    Returns
    -------
    RainbowCertificate
    """
    if not is_simple(poly):
        raise NotSimple('the polygon is not simple')
    counts = {c: 0 for c in S.color_list}
    contained = []
    for p, c, where in zip(S.points, S.colors, locate_points(S.points, poly, S.coords)):
        if where != EXTERIOR:
            counts[c] += 1
            contained.append(p)
    return RainbowCertificate(counts, len(poly), contained)


def segment_stats(partition: SegmentPartition, targets: Sequence[Point]) -> SegmentStats:
    """
    Number of targets carried by each segment.

    A target lying on several segments is charged to the one containing it in
    its relative interior, otherwise to the segment of lowest index.
    """
    per_segment = [0] * partition.s
    for p in targets:
        hosts = [i for i, (a, b) in enumerate(partition.segments) if on_segment(p, a, b)]
        if not hosts:
            raise UncoveredTarget(f'target {p} lies on no segment')
        inner = [i for i in hosts if in_segment_interior(p, *partition.segments[i])]
        per_segment[(inner or hosts)[0]] += 1
    return SegmentStats(per_segment, partition.t)


def charging_inequality_holds(stats: SegmentStats) -> bool:
    return stats.s2 <= 8 * stats.s0 + 9 * stats.s1 + 4 * (stats.t + 1)


def lower_bound_tree(n: int) -> Fraction:
    """(20n - 8) / 19, a lower bound on 2s + t for covering trees of a twins set of n points"""
    if n < 4 or n % 2:
        raise BadN(f'the tree bound needs an even n >= 4, got {n}')
    return Fraction(20 * n - 8, 19)


def lower_bound_rainbow(k: int) -> Fraction:
    if k < 5:
        raise BadK(f'the rainbow lower bound needs k >= 5, got {k}')
    return Fraction(40 * ((k - 1) // 2) - 8, 19)


def rb_index_small(k: int) -> int:
    if k not in RB_INDEX_SMALL:
        raise BadK(f'rainbow index known for k in 3..7 only, got {k}')
    return RB_INDEX_SMALL[k]


def upper_bound_rainbow(k: int) -> int:
    if k < 1:
        raise BadK(f'k must be positive, got {k}')
    if k <= 2:
        return 3
    if k in RB_INDEX_SMALL:
        return RB_INDEX_SMALL[k]
    return 10 * (k // 7) + 11


def uncovered_colors(cert: RainbowCertificate) -> List[int]:
    return sorted(c for c, m in cert.counts.items() if m == 0)
