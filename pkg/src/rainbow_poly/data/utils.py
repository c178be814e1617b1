from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from rainbow_poly.data.point_set import ColoredPointSet
from rainbow_poly.utils.errors import ParseError
from rainbow_poly.utils.utils import Point


def _records(text: str, width: int) -> Iterator[Tuple[int, List[str]]]:
    """
    Non-empty lines of text split into fields, '#' starting a comment

    Parameters
    ----------
    text: file content
    width: number of fields every record must have

    Returns
    -------
    (1-based line number, fields) pairs
    """
    for number, line in enumerate(text.splitlines(), start=1):
        fields = line.split('#', 1)[0].split()
        if not fields:
            continue
        if len(fields) != width:
            raise ParseError(number, f'expected {width} fields, found {len(fields)}')
        yield number, fields


def parse_number(field: str, line: int) -> Fraction:
    """decimal or p/q rational"""
    try:
        return Fraction(field)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line, f'not a rational number: {field!r}')


def parse_input(text: str) -> ColoredPointSet:
    """
    Colored point set from lines '<x> <y> <color>'

    Raises ParseError for malformed or duplicate lines and
    GeneralPositionViolation for collinear triples.
    """
    points, colors, first_line = [], [], {}
    for line, (xs, ys, cs) in _records(text, 3):
        p = Point(parse_number(xs, line), parse_number(ys, line))
        try:
            c = int(cs)
        except ValueError:
            raise ParseError(line, f'color must be an integer: {cs!r}')
        if c < 1:
            raise ParseError(line, f'color must be positive: {c}')
        if p in first_line:
            raise ParseError(line, f'point {p} repeats line {first_line[p]}')
        first_line[p] = line
        points.append(p)
        colors.append(c)
    if not points:
        raise ParseError(0, 'no points')
    return ColoredPointSet(points, colors)


def parse_polygon(text: str) -> List[Point]:
    vertices = [Point(parse_number(xs, line), parse_number(ys, line)) for line, (xs, ys) in _records(text, 2)]
    if len(vertices) < 3:
        raise ParseError(0, f'a polygon needs 3 vertices, found {len(vertices)}')
    return vertices


def parse_tree(text: str) -> List[Tuple[Point, Point]]:
    """edges given as lines 'x1 y1 x2 y2'"""
    edges = []
    for line, fields in _records(text, 4):
        x1, y1, x2, y2 = (parse_number(f, line) for f in fields)
        a, b = Point(x1, y1), Point(x2, y2)
        if a == b:
            raise ParseError(line, 'degenerate edge')
        edges.append((a, b))
    if not edges:
        raise ParseError(0, 'no edges')
    return edges


def format_fraction(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f'{v.numerator}/{v.denominator}'


def format_point(p: Point) -> str:
    return f'{format_fraction(p.x)} {format_fraction(p.y)}'


def format_points(S: ColoredPointSet) -> str:
    """the input format of parse_input"""
    return ''.join(f'{format_point(p)} {c}\n' for p, c in S.items())


def format_polygon(vertices: Sequence[Point]) -> str:
    return ''.join(f'{format_point(p)}\n' for p in vertices)
