import logging
from fractions import Fraction

import pytest

from rainbow_poly.data.instances import gen_random
from rainbow_poly.data.point_set import ColoredPointSet
from rainbow_poly.models.strip_finder import Strip, exhaustive_strip, find_strip, strip_violations
from rainbow_poly.models.strip_finder import sweep_invariant_violations
from rainbow_poly.utils.defaults import W_ABSENT, W_OTHER_COLOR, W_SAME_COLOR
from rainbow_poly.utils.errors import TooFewColors
from rainbow_poly.utils.utils import point


@pytest.fixture
def small_set():
    pts = [point(0, 0), point(4, 0), point(1, 2), point(2, 5), point(3, 7), point(5, 4)]
    return ColoredPointSet(pts, [1, 2, 3, 1, 2, 3])


def test_strip_violations_accepts_valid_strip(small_set):
    strip = Strip(point(0, 0), point(4, 0), point(1, 2), (1, 2, 3))
    assert strip.height(point(7, 1)) == strip.height(point(-3, 1)) == Fraction(1, 2)
    assert strip_violations(small_set, strip) == []


def test_strip_violations_flags_wrong_labels(small_set):
    wrong_case = Strip(point(0, 0), point(4, 0), point(1, 2), (1, 2, 3), case=W_SAME_COLOR)
    assert 'iv' in strip_violations(small_set, wrong_case)
    swapped = Strip(point(0, 0), point(4, 0), point(1, 2), (2, 1, 3))
    assert 'iii' in strip_violations(small_set, swapped)


def test_find_strip_on_small_set(small_set):
    strip = find_strip(small_set)
    assert strip_violations(small_set, strip) == []
    assert strip.case in (W_ABSENT, W_SAME_COLOR, W_OTHER_COLOR)


def test_find_strip_needs_three_colors():
    S = ColoredPointSet([point(0, 0), point(1, 0), point(0, 1)], [1, 2, 2])
    with pytest.raises(TooFewColors):
        find_strip(S)


@pytest.mark.parametrize('k', range(3, 11))
@pytest.mark.parametrize('seed', range(5))
def test_find_strip_random(k, seed):
    S = gen_random(k, 3 * k + seed, seed=seed)
    strip = find_strip(S)
    assert strip_violations(S, strip) == []
    assert len(set(strip.colors)) == 3


@pytest.mark.parametrize('seed', range(3))
def test_exhaustive_strip_random(seed):
    S = gen_random(4, 12, seed=100 + seed)
    assert strip_violations(S, exhaustive_strip(S)) == []


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(200))
def test_find_strip_sweep(seed):
    k = 3 + seed % 8
    S = gen_random(k, k + seed % 40, seed=seed)
    assert strip_violations(S, find_strip(S)) == []


def test_sweep_invariant_violations():
    p1, p2, inner = point(0, 2), point(0, 0), point(1, 1)
    d = point(1, 0)

    def bad(extra, s3_low=(p2,), middle=inner):
        color_of = {p1: 1, p2: 3, middle: 2, **extra}
        return sweep_invariant_violations(list(color_of), color_of, p1, p2, d, 1, 3, list(s3_low))

    assert bad({}) == []
    assert bad({point(3, 1): 1}) == ['tangent1']
    assert bad({point(4, 1): 3}, s3_low=(p2, point(4, 1))) == ['tangent2', 'open_c3']
    assert bad({}, middle=point(1, 5)) == ['colors']


@pytest.mark.parametrize('k,n,seed', [(3, 12, 1), (4, 30, 2), (5, 40, 3), (6, 60, 4), (7, 99, 39), (7, 139, 14)])
def test_sweep_keeps_its_invariants(k, n, seed):
    S = gen_random(k, n, seed=seed)
    strip = find_strip(S, check_invariants=True)
    assert strip_violations(S, strip) == []


def test_debug_logging_turns_on_invariant_checks(caplog):
    caplog.set_level(logging.DEBUG, logger='rainbow_poly.models.strip_finder')
    S = gen_random(5, 25, seed=12)
    assert strip_violations(S, find_strip(S)) == []
