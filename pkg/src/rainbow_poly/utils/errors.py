from typing import Tuple


class RainbowError(Exception):
    """Base class of every error raised by rainbow_poly."""


class DuplicatePoint(RainbowError):
    pass


class DegenerateInput(RainbowError):
    pass


class GeneralPositionViolation(DegenerateInput):
    def __init__(self, triple: Tuple[int, int, int]):
        self.triple = tuple(triple)
        super().__init__(f'collinear triple of points at indices {self.triple}')


class TooFewColors(RainbowError):
    pass


class TooManyColors(RainbowError):
    pass


class PreconditionViolated(RainbowError):
    pass


class CrossingViolation(RainbowError):
    pass


class InvalidPartition(RainbowError):
    pass


class ObstacleOnTree(RainbowError):
    pass


class NotSimple(RainbowError):
    pass


class UncoveredTarget(RainbowError):
    pass


class BadN(RainbowError):
    pass


class BadK(RainbowError):
    pass


class BadSpec(RainbowError):
    pass


class BadParams(RainbowError):
    pass


class ParseError(RainbowError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f'line {line}: {message}')


class CertificationFailed(RainbowError):
    pass


class InternalInvariant(RainbowError):
    pass
