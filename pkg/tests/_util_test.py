from fractions import Fraction

import pytest

from pyrgrow import InputError
from pyrgrow._util import (
    barycenter,
    format_point,
    format_rational,
    lerp,
    parse_point,
    parse_rational,
    unique_points,
)


def test_parse_rational():
    assert parse_rational('3/4') == Fraction(3, 4)
    assert parse_rational(' -2 ') == Fraction(-2)
    assert parse_rational(5) == Fraction(5)
    assert parse_rational(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize(
    'value', [0.5, True, '0.5', '1e3', '1/0', 'x', None],
    ids=['float', 'bool', 'decimal', 'exponent', 'zero-den', 'word', 'none'],
)
def test_parse_rational_rejects(value):
    with pytest.raises(InputError):
        parse_rational(value)


def test_format_rational():
    assert format_rational(Fraction(3, 4)) == '3/4'
    assert format_rational(Fraction(-6, 3)) == '-2'
    assert parse_rational(format_rational(Fraction(-7, 9))) == Fraction(-7, 9)


def test_points():
    assert parse_point(['1/2', 1]) == (Fraction(1, 2), Fraction(1))
    assert format_point((Fraction(1, 2), Fraction(1))) == ['1/2', '1']
    with pytest.raises(InputError):
        parse_point('12')
    with pytest.raises(InputError):
        parse_point(3)


def test_lerp_and_barycenter():
    a = parse_point((0, 0))
    b = parse_point((2, 4))
    assert lerp(a, b, Fraction(1, 4)) == (Fraction(1, 2), Fraction(1))
    assert barycenter([a, b]) == (Fraction(1), Fraction(2))


def test_unique_points():
    pts = [parse_point(p) for p in [(0, 0), (1, 1), (0, 0)]]
    assert unique_points(pts) == [pts[0], pts[1]]
