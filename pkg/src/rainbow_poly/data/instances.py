import logging
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from rainbow_poly.data.point_set import ColoredPointSet
from rainbow_poly.utils.defaults import GP_FULL_CHECK_N, GRID_DENSITY, HARD_KINDS, INSTANCE_ATTEMPTS, INSTANCE_KINDS
from rainbow_poly.utils.defaults import RANDOM, RANDOM_BBOX, RANDOM_DENOMINATOR, REDUCTION, REDUCTION_MAX_GRID
from rainbow_poly.utils.defaults import S4, S5, S6, S7, S7_INNER_OFFSET, TWINS, TWINS_EPS
from rainbow_poly.utils.defaults import TWINS_FULL_CHECK_K, TWINS_SAMPLED_QUADRUPLES
from rainbow_poly.utils.errors import BadParams, BadSpec, DuplicatePoint, GeneralPositionViolation
from rainbow_poly.utils.utils import Point, bounding_box, dist2, find_collinear_triple, line_intersection
from rainbow_poly.utils.utils import linf_normalize, point

logger = logging.getLogger(__name__)

Box = Tuple[Fraction, Fraction, Fraction, Fraction]

# corners of the outer triangle and the interior points of the hard sets, in the unit square
_X = point(Fraction(1, 10), Fraction(1, 10))
_Y = point(Fraction(9, 10), Fraction(3, 20))
_Z = point(Fraction(9, 20), Fraction(9, 10))
_W = point(Fraction(1, 2), Fraction(3, 10))
_U = point(Fraction(9, 20), Fraction(11, 20))
_S4_PAIR = (point(Fraction(2, 5), Fraction(7, 20)), point(Fraction(11, 20), Fraction(9, 20)))


class InstanceSpec:
    """
    A record describing one generated instance

    Parameters
    ----------
    kind: one of INSTANCE_KINDS
    k: number of colors (random sets), number of twins (twins sets)
    n: number of points (random sets)
    grid_density: spacing of the dense color class, relative to the unit box
    seed: seed of the perturbation / sampling
    bbox: (xmin, ymin, xmax, ymax) of random sets
    eps: twin distance bound
    inner_offset: S7 offset of the inner triangle from the edge midpoints,
                  relative to the edge length
    """
    def __init__(
            self,
            kind: str,
            k: Optional[int] = None,
            n: Optional[int] = None,
            grid_density: Fraction = GRID_DENSITY,
            seed: int = 42,
            bbox: Box = RANDOM_BBOX,
            eps: Fraction = TWINS_EPS,
            inner_offset: Fraction = S7_INNER_OFFSET,
    ):
        if kind not in INSTANCE_KINDS:
            raise BadSpec(f'unknown instance kind {kind!r}')
        if kind in HARD_KINDS:
            expected = int(kind[1:])
            if k is not None and k != expected:
                raise BadSpec(f'{kind} has {expected} colors, got k={k}')
            k = expected
        if k is None or k < 1:
            raise BadSpec(f'{kind} needs a positive k')
        if kind == RANDOM and (n is None or n < k):
            raise BadSpec(f'random sets need n >= k, got n={n}, k={k}')
        if grid_density <= 0 or grid_density > 1:
            raise BadSpec(f'grid density must lie in (0, 1], got {grid_density}')
        if eps <= 0 or inner_offset <= 0:
            raise BadSpec('eps and inner_offset must be positive')
        if bbox[0] >= bbox[2] or bbox[1] >= bbox[3]:
            raise BadSpec(f'empty bounding box {bbox}')

        self.kind         = kind
        self.k            = k
        self.n            = n
        self.grid_density = Fraction(grid_density)
        self.seed         = seed
        self.bbox         = tuple(Fraction(v) for v in bbox)
        self.eps          = Fraction(eps)
        self.inner_offset = Fraction(inner_offset)

    def as_dict(self) -> Dict[str, object]:
        return {
            'kind': self.kind,
            'k': self.k,
            'n': self.n,
            'grid_density': self.grid_density,
            'seed': self.seed,
            'bbox': self.bbox,
            'eps': self.eps,
            'inner_offset': self.inner_offset,
        }

    def __repr__(self):
        return f'InstanceSpec(kind={self.kind}, k={self.k}, n={self.n}, seed={self.seed})'


def _jitter(rng: np.random.Generator, scale: Fraction) -> Fraction:
    """uniform rational offset in [-scale, scale]"""
    return Fraction(int(rng.integers(-RANDOM_DENOMINATOR, RANDOM_DENOMINATOR + 1)), RANDOM_DENOMINATOR) * scale


def _perturb(rng: np.random.Generator, p: Point, scale: Fraction) -> Point:
    return Point(p.x + _jitter(rng, scale), p.y + _jitter(rng, scale))


def _grid(h: Fraction, box: Box) -> List[Point]:
    xmin, ymin, xmax, ymax = box
    nx = int((xmax - xmin) / h)
    ny = int((ymax - ymin) / h)
    if (nx + 1) * (ny + 1) > REDUCTION_MAX_GRID:
        raise BadParams(f'grid of {(nx + 1) * (ny + 1)} points exceeds {REDUCTION_MAX_GRID}')
    return [Point(xmin + i * h, ymin + j * h) for i in range(nx + 1) for j in range(ny + 1)]


def _assemble(singletons: Sequence[Point], dense: Sequence[Point]) -> ColoredPointSet:
    points = list(singletons) + list(dense)
    colors = list(range(1, len(singletons) + 1)) + [len(singletons) + 1] * len(dense)
    return ColoredPointSet(points, colors)


def _with_dense_class(
        singletons: Sequence[Point],
        h: Fraction,
        box: Box,
        seed: int,
) -> ColoredPointSet:
    """
    Singletons plus one dense class on the grid h*Z^2 inside box, perturbed by at most
    h/5 per coordinate; redrawn until the set is in general position
    """
    grid = _grid(h, box)
    rng = np.random.default_rng(seed)
    for attempt in range(INSTANCE_ATTEMPTS):
        moved = [_perturb(rng, p, h / 20) for p in singletons]
        dense = [_perturb(rng, p, h / 5) for p in grid]
        try:
            return _assemble(moved, dense)
        except (DuplicatePoint, GeneralPositionViolation) as e:
            logger.debug('redrawing perturbation (attempt %d): %s', attempt, e)
    raise BadParams(f'no general-position perturbation in {INSTANCE_ATTEMPTS} attempts')


def _s7_singletons(inner_offset: Fraction) -> List[Point]:
    centroid = (_X + _Y + _Z).scale(Fraction(1, 3))
    inner = []
    for a, b in ((_X, _Y), (_Y, _Z), (_Z, _X)):
        mid = (a + b).scale(Fraction(1, 2))
        edge = b - a
        length = max(abs(edge.x), abs(edge.y))
        inner.append(mid + linf_normalize(centroid - mid).scale(inner_offset * length))
    return [_X, _Y, _Z] + inner


def gen_hard(spec: InstanceSpec) -> ColoredPointSet:
    """
    The small hard instances: S4 (no perfect rainbow triangle), S5, S6 and S7
    (outer triangle xyz, further singleton colors inside it and a dense class)

    Parameters
    ----------
    spec: InstanceSpec of kind S4, S5, S6 or S7

    Returns
    -------
    ColoredPointSet
    """
    if spec.kind not in HARD_KINDS:
        raise BadSpec(f'gen_hard does not build {spec.kind}')
    unit = (Fraction(0), Fraction(0), Fraction(1), Fraction(1))
    if spec.kind == S4:
        rng = np.random.default_rng(spec.seed)
        for _ in range(INSTANCE_ATTEMPTS):
            pts = [_perturb(rng, p, Fraction(1, 100)) for p in (_X, _Y, _Z) + _S4_PAIR]
            try:
                return ColoredPointSet(pts, [1, 2, 3, 4, 4])
            except GeneralPositionViolation:
                continue
        raise BadParams('no general-position S4')
    if spec.kind == S5:
        singletons = [_X, _Y, _Z, _W]
    elif spec.kind == S6:
        singletons = [_X, _Y, _Z, _W, _U]
    else:
        singletons = _s7_singletons(spec.inner_offset)
    return _with_dense_class(singletons, spec.grid_density, unit, spec.seed)


def gen_twins(k: int, eps: Fraction = TWINS_EPS, seed: int = 42) -> List[Point]:
    """
    2k points a_1, b_1, ..., a_k, b_k: a_i on the parabola y = x^2 with
    x_1 = 1, x_(i+1) = 4 x_i + 4, and b_i closer than eps to a_i on a line of
    slope M/i, M = 4 k x_k, above the parabola
    """
    if k < 2:
        raise BadParams(f'twins need k >= 2, got {k}')
    if eps <= 0:
        raise BadParams(f'eps must be positive, got {eps}')
    eps = Fraction(eps)
    xs = [Fraction(1)]
    for _ in range(k - 1):
        xs.append(4 * xs[-1] + 4)
    big = 4 * k * xs[-1]
    rng = np.random.default_rng(seed)
    for _ in range(INSTANCE_ATTEMPTS):
        pts = []
        for i, x in enumerate(xs, start=1):
            a = Point(x, x * x)
            slope = big / i
            # horizontal step in [eps/(4 slope), eps/(2 slope)]
            dx = eps / (2 * slope) * Fraction(RANDOM_DENOMINATOR + int(rng.integers(0, RANDOM_DENOMINATOR + 1)),
                                              2 * RANDOM_DENOMINATOR)
            pts += [a, Point(x + dx, x * x + slope * dx)]
        if find_collinear_triple(pts) is None:
            return pts
    raise BadParams(f'no twins set in general position for k={k}')


def _crosses_left(quad: Sequence[Point]) -> bool:
    c1, c2, c3, c4 = sorted(quad)
    st = line_intersection(c1, c4 - c1, c2, c3 - c2)
    if st is None:
        return False
    return c1.x + st[0] * (c4.x - c1.x) < c1.x


def _distinct_twin_quads(twins, rng: Optional[np.random.Generator]):
    """one point from each of four distinct twins; all of them, or TWINS_SAMPLED_QUADRUPLES samples"""
    if rng is None:
        for group in combinations(twins, 4):
            for picks in product((0, 1), repeat=4):
                yield [pair[side] for pair, side in zip(group, picks)]
        return
    for _ in range(TWINS_SAMPLED_QUADRUPLES):
        group = rng.choice(len(twins), size=4, replace=False)
        yield [twins[int(i)][int(rng.integers(2))] for i in group]


def check_twins(points: Sequence[Point], eps: Fraction = TWINS_EPS, seed: int = 0) -> Dict[str, bool]:
    """
    Checkable properties of a twins set given as a_1, b_1, a_2, b_2, ...

    crossing_left is taken over quadruples with one point from each of four
    distinct twins. A quadruple holding both points of a twin never has it,
    since the near-vertical twin line crosses the other line next to the twin.

    Returns
    -------
    dict with the keys no_three_collinear, twin_distance, disjoint_disks,
    decreasing_slopes and crossing_left (exhaustive for up to
    TWINS_FULL_CHECK_K twins, sampled beyond)
    """
    if len(points) % 2 or len(points) < 4:
        raise BadParams('a twins set has an even number of at least four points')
    eps = Fraction(eps)
    twins = [(points[i], points[i + 1]) for i in range(0, len(points), 2)]
    k = len(twins)
    slopes = [(b.y - a.y) / (b.x - a.x) if b.x != a.x else None for a, b in twins]
    rng = None if k <= TWINS_FULL_CHECK_K else np.random.default_rng(seed)

    return {
        'no_three_collinear': find_collinear_triple(points) is None,
        'twin_distance': all(dist2(a, b) < eps * eps for a, b in twins),
        'disjoint_disks': all(dist2(p[0], q[0]) > 4 * eps * eps for p, q in combinations(twins, 2)),
        'decreasing_slopes': None not in slopes and all(s > 0 for s in slopes) and
                             all(s > t for s, t in zip(slopes, slopes[1:])),
        'crossing_left': all(_crosses_left(q) for q in _distinct_twin_quads(twins, rng)),
    }


def gen_random(
        k: int,
        n: int,
        seed: int = 42,
        bbox: Box = RANDOM_BBOX,
) -> ColoredPointSet:
    """
    n random points with coordinates on the 1/RANDOM_DENOMINATOR grid of bbox;
    colors 1..k are each used at least once; a point of a collinear triple is
    redrawn until none is left
    """
    if not 1 <= k <= n:
        raise BadParams(f'random sets need n >= k >= 1, got n={n}, k={k}')
    xmin, ymin, xmax, ymax = (Fraction(v) for v in bbox)
    if xmin >= xmax or ymin >= ymax:
        raise BadParams(f'empty bounding box {bbox}')
    rng = np.random.default_rng(seed)

    def draw(size):
        u = rng.integers(0, int((xmax - xmin) * RANDOM_DENOMINATOR) + 1, size=size)
        v = rng.integers(0, int((ymax - ymin) * RANDOM_DENOMINATOR) + 1, size=size)
        return [Point(xmin + Fraction(int(a), RANDOM_DENOMINATOR), ymin + Fraction(int(b), RANDOM_DENOMINATOR))
                for a, b in zip(u, v)]

    points = draw(n)
    colors = list(range(1, k + 1)) + [int(c) for c in rng.integers(1, k + 1, size=n - k)]
    order = rng.permutation(n)
    colors = [colors[i] for i in order]

    for _ in range(n * INSTANCE_ATTEMPTS):
        first = {}
        dups = [i for i, p in enumerate(points) if first.setdefault(p, i) != i]
        if dups:
            points[dups[0]] = draw(1)[0]
            continue
        if n > GP_FULL_CHECK_N:
            break
        triple = find_collinear_triple(points)
        if triple is None:
            break
        points[triple[-1]] = draw(1)[0]
    else:
        raise BadParams('could not reach general position')
    return ColoredPointSet(points, colors)


def gen_reduction(
        points: Sequence[Point],
        eps: Fraction,
        seed: int = 42,
        to_unit_square: bool = False,
) -> ColoredPointSet:
    """
    Every point of points gets its own color; one extra dense color lies on the
    grid (side * eps / 16k) Z^2 inside the bounding box of points

    Parameters
    ----------
    points: k points, no three collinear
    eps: area budget of the reduction, in units of the box side
    seed: perturbation seed
    to_unit_square: scale the box to the unit square first
    """
    if eps <= 0:
        raise BadParams(f'eps must be positive, got {eps}')
    points = list(points)
    k = len(points)
    xmin, ymin, xmax, ymax = bounding_box(points)
    side = max(xmax - xmin, ymax - ymin)
    if side == 0:
        raise BadParams('the points span no box')
    if to_unit_square:
        points = [Point((p.x - xmin) / side, (p.y - ymin) / side) for p in points]
        xmin, ymin, xmax, ymax, side = 0, 0, (xmax - xmin) / side, (ymax - ymin) / side, Fraction(1)
    h = side * Fraction(eps) / (16 * k)
    grid = _grid(h, (xmin, ymin, xmax, ymax))
    rng = np.random.default_rng(seed)
    for attempt in range(INSTANCE_ATTEMPTS):
        dense = [_perturb(rng, p, h / 5) for p in grid]
        try:
            return _assemble(points, dense)
        except (DuplicatePoint, GeneralPositionViolation) as e:
            logger.debug('redrawing reduction grid (attempt %d): %s', attempt, e)
    raise BadParams(f'no general-position reduction grid in {INSTANCE_ATTEMPTS} attempts')


def gen_instance(spec: InstanceSpec) -> ColoredPointSet:
    """
    Colored point set for any instance kind

    Twins sets give every twin point a color of its own and add a dense class with
    spacing grid_density in the unit square, so k twins carry 2k + 1 colors.
    """
    if spec.kind in HARD_KINDS:
        return gen_hard(spec)
    if spec.kind == TWINS:
        pts = gen_twins(spec.k, spec.eps, spec.seed)
        return gen_reduction(pts, 16 * len(pts) * spec.grid_density, spec.seed, to_unit_square=True)
    if spec.kind == RANDOM:
        return gen_random(spec.k, spec.n, spec.seed, spec.bbox)
    if spec.kind == REDUCTION:
        # grid spacing grid_density in the unit square
        base = gen_random(spec.k, spec.k, spec.seed, spec.bbox)
        return gen_reduction(base.points, 16 * spec.k * spec.grid_density, spec.seed, to_unit_square=True)
    raise BadSpec(f'unknown instance kind {spec.kind!r}')
