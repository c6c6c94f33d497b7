"""Non-public pyrgrow utilities."""

from collections.abc import Iterable, Sequence
from fractions import Fraction

from pyrgrow._exceptions import InputError
from pyrgrow._types import Point, PointLike, RationalLike, Vector


def parse_rational(value: RationalLike) -> Fraction:
    """Return *value* as an exact Fraction.

    Strings are read as ``"p/q"`` or ``"p"``. Floats are rejected so
    that no binary rounding enters a computation.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f'not an exact rational: {value!r}')
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            num, _, den = value.strip().partition('/')
            if '.' in num or '.' in den or 'e' in value.lower():
                raise ValueError(value)
            return Fraction(int(num), int(den) if den else 1)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f'not an exact rational: {value!r}') from exc
    raise InputError(f'not an exact rational: {value!r}')


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def parse_point(coords: PointLike) -> Point:
    if isinstance(coords, (str, bytes)):
        raise InputError(f'not a point: {coords!r}')
    try:
        return tuple(parse_rational(c) for c in coords)
    except TypeError as exc:
        raise InputError(f'not a point: {coords!r}') from exc


def format_point(point: Point) -> list[str]:
    return [format_rational(c) for c in point]


def point_str(point: Point) -> str:
    return '(' + ', '.join(format_rational(c) for c in point) + ')'


# vector arithmetic over tuples of Fractions

def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: Fraction, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def dot(a: Vector, b: Vector) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sq_norm(a: Vector) -> Fraction:
    return dot(a, a)


def sq_dist(a: Point, b: Point) -> Fraction:
    return sq_norm(vsub(a, b))


def lerp(a: Point, b: Point, t: Fraction) -> Point:
    """Return the point ``a + t (b - a)``."""
    return tuple(x + t * (y - x) for x, y in zip(a, b))


def barycenter(points: Sequence[Point]) -> Point:
    n = len(points)
    return tuple(sum(cs, Fraction(0)) / n for cs in zip(*points))


def normalize_direction(a: Vector) -> Vector:
    """Scale *a* so that its largest absolute component is 1."""
    m = max(abs(x) for x in a)
    return tuple(x / m for x in a)


def normalize_functional(a: Vector, b: Fraction) -> tuple[Vector, Fraction]:
    """Scale ``a.x <= b`` by the absolute value of its first nonzero entry."""
    for x in a:
        if x != 0:
            s = abs(x)
            return tuple(y / s for y in a), b / s
    return a, b


def unique_points(points: Iterable[Point]) -> list[Point]:
    # dictionary as an order-preserving set
    return list({p: True for p in points})
