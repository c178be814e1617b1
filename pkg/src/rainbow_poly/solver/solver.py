import logging
import time
from abc import ABC
from fractions import Fraction
from typing import List, Optional

from rainbow_poly.data.point_set import ColoredPointSet
from rainbow_poly.models.covering_forest import general_rainbow_polygon
from rainbow_poly.models.small_k_solver import solve_small
from rainbow_poly.models.thickener import enclose_segment
from rainbow_poly.models.utils import CoveringTree, SegmentPartition
from rainbow_poly.utils.defaults import DEFAULT_EPSILON, RB_INDEX_SMALL
from rainbow_poly.utils.errors import CertificationFailed
from rainbow_poly.utils.utils import Point, make_ccw
from rainbow_poly.verifier.verifier import RainbowCertificate, certify, uncovered_colors, upper_bound_rainbow

logger = logging.getLogger(__name__)


class SolveResult:
    """
    The outcome of a solve

    polygon         - counterclockwise vertex list
    certificate     - per-color counts of the polygon
    tree, partition - covering tree and its segments (general pipeline only)
    size, bound     - number of vertices and the guaranteed upper bound for k
    representatives - the points of S inside the polygon
    pipeline        - 'segment', 'small' or 'general'
    timing          - wall-clock seconds
    """
    def __init__(
            self,
            polygon: List[Point],
            certificate: RainbowCertificate,
            bound: int,
            representatives: List[Point],
            pipeline: str,
            timing: float,
            tree: Optional[CoveringTree] = None,
            partition: Optional[SegmentPartition] = None,
    ):
        self.polygon         = polygon
        self.certificate     = certificate
        self.size            = len(polygon)
        self.bound           = bound
        self.representatives = representatives
        self.pipeline        = pipeline
        self.timing          = timing
        self.tree            = tree
        self.partition       = partition

    def __repr__(self):
        return f'SolveResult(size={self.size}, bound={self.bound}, pipeline={self.pipeline})'


class RainbowSolver(ABC):
    """
    Dispatches a colored point set to the pipeline for its number of colors
    and certifies the polygon before handing it out.
    """
    def __init__(
            self,
            epsilon: Fraction = DEFAULT_EPSILON,
            seed: Optional[int] = None,
    ):
        assert epsilon > 0, 'epsilon must be positive'
        self.epsilon = Fraction(epsilon)
        self.seed    = seed

    def segment_polygon(self, S: ColoredPointSet) -> List[Point]:
        """thin triangle around the first points of at most two colors"""
        reps = [S.points[idx[0]] for _, idx in sorted(S.classes.items())]
        seg = (reps[0], reps[-1])
        obstacles = [p for p in S.points if p not in reps]
        return enclose_segment(seg, reps, self.epsilon, obstacles)

    def small_polygon(self, S: ColoredPointSet) -> List[Point]:
        return solve_small(S)

    def general_polygon(self, S: ColoredPointSet):
        return general_rainbow_polygon(S, self.epsilon, seed=self.seed)

    def check(self, poly: List[Point], S: ColoredPointSet) -> RainbowCertificate:
        cert = certify(poly, S)
        bound = upper_bound_rainbow(S.k)
        if not cert.perfect:
            missing = uncovered_colors(cert)
            raise CertificationFailed(f'polygon is not perfect: counts {cert.counts}, missing colors {missing}')
        if cert.size > bound:
            raise CertificationFailed(f'polygon has {cert.size} vertices, bound is {bound}')
        return cert

    def solve(self, S: ColoredPointSet) -> SolveResult:
        start = time.time()
        tree, partition = None, None
        if S.k <= 2:
            pipeline = 'segment'
            poly = self.segment_polygon(S)
        elif S.k in RB_INDEX_SMALL:
            pipeline = 'small'
            poly = self.small_polygon(S)
        else:
            pipeline = 'general'
            poly, tree, partition = self.general_polygon(S)
        poly = make_ccw(poly)
        logger.debug('%s pipeline produced %d vertices for %r', pipeline, len(poly), S)

        cert = self.check(poly, S)
        return SolveResult(
            polygon=poly,
            certificate=cert,
            bound=upper_bound_rainbow(S.k),
            representatives=cert.contained,
            pipeline=pipeline,
            timing=time.time() - start,
            tree=tree,
            partition=partition,
        )


def solve(S: ColoredPointSet, epsilon: Fraction = DEFAULT_EPSILON, seed: Optional[int] = None) -> SolveResult:
    return RainbowSolver(epsilon, seed).solve(S)
