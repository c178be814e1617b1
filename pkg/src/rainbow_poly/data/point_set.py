import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from rainbow_poly.utils.defaults import GP_FULL_CHECK_N
from rainbow_poly.utils.errors import DuplicatePoint, GeneralPositionViolation
from rainbow_poly.utils.utils import Point, as_array, find_collinear_triple

logger = logging.getLogger(__name__)


class ColoredPointSet:
    """
    A finite planar point set split into nonempty color classes

    Parameters
    ----------
    points: exact points
    colors: one positive integer color per point
    check_general_position: if True, reject coinciding points and collinear triples
                            (exhaustive up to GP_FULL_CHECK_N points)
    """
    def __init__(
            self,
            points: Sequence[Point],
            colors: Sequence[int],
            check_general_position: bool = True,
    ):
        assert len(points) == len(colors), 'points and colors must have equal length'
        assert len(points) > 0, 'a colored point set must not be empty'
        assert all(int(c) == c and c >= 1 for c in colors), 'colors must be positive integers'

        self.points = tuple(points)
        self.colors = tuple(int(c) for c in colors)
        self.n      = len(self.points)

        self.classes: Dict[int, List[int]] = {}
        for i, c in enumerate(self.colors):
            self.classes.setdefault(c, []).append(i)
        self.color_list = sorted(self.classes)
        self.k          = len(self.color_list)

        if check_general_position:
            self.check_general_position()

    def check_general_position(self):
        if len(set(self.points)) != self.n:
            raise DuplicatePoint('two points of the set coincide')
        if self.n > GP_FULL_CHECK_N:
            logger.warning('general position not verified exhaustively for %d points', self.n)
            return
        triple = find_collinear_triple(self.points)
        if triple is not None:
            raise GeneralPositionViolation(triple)

    def points_of(self, color: int) -> List[Point]:
        return [self.points[i] for i in self.classes[color]]

    def color_at(self, p: Point) -> Optional[int]:
        if not hasattr(self, '_index'):
            self._index = {q: c for q, c in zip(self.points, self.colors)}
        return self._index.get(p)

    @property
    def coords(self) -> np.ndarray:
        """float64 coordinates, one row per point"""
        if not hasattr(self, '_coords'):
            self._coords = as_array(self.points)
        return self._coords

    def representatives(self) -> Dict[int, Point]:
        """first point of every color in input order"""
        return {c: self.points[idx[0]] for c, idx in self.classes.items()}

    def items(self) -> List[Tuple[Point, int]]:
        return list(zip(self.points, self.colors))

    def transformed(self, fn) -> 'ColoredPointSet':
        return ColoredPointSet([fn(p) for p in self.points], self.colors, check_general_position=False)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f'ColoredPointSet(n={self.n}, k={self.k})'
