from fractions import Fraction

import pytest

from pyrgrow.kernel import conv_hull
from pyrgrow.visibility import (
    is_unobstructed,
    sees_single_facet,
    unobstructed_visible_facets,
    visible_boundary,
    visible_facets,
)


def _facet_sets(P, indices):
    return {frozenset(P.vertices[j] for j in P.facets[i].vertices) for i in indices}


@pytest.mark.parametrize(
    'point,count',
    [((2, '1/2'), 1), ((2, 2), 2), (('1/2', '1/2'), 0), ((1, '1/2'), 0), ((2, 1), 1)],
    ids=['beyond-edge', 'beyond-corner', 'interior', 'boundary', 'on-extension'],
)
def test_visible_facets(unit_square, point, count):
    assert len(visible_facets(unit_square, point)) == count


def test_visible_facet_identity(unit_square):
    (index,) = visible_facets(unit_square, (2, '1/2'))
    assert _facet_sets(unit_square, [index]) == {frozenset({(1, 0), (1, 1)})}


def test_sees_single_facet(unit_square, triangle):
    assert sees_single_facet(unit_square, (2, '1/2'))
    assert not sees_single_facet(unit_square, (2, 2))
    assert sees_single_facet(triangle, (1, 1))
    flat = conv_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    # pyramids over a polytope are not stacking steps
    assert not sees_single_facet(flat, (0, 0, 1))


def test_unobstructed(unit_square):
    # the inner square's right edge is hidden behind the outer square
    half = Fraction(1, 2)
    inner = conv_hull([(0, 0), (half, 0), (0, 1), (half, 1)])
    found = unobstructed_visible_facets(inner, (2, '1/2'), inner)
    assert _facet_sets(inner, found) == {frozenset({(half, 0), (half, 1)})}
    assert len(unobstructed_visible_facets(inner, (2, '1/2'), unit_square)) == 0
    (index,) = found
    assert is_unobstructed(inner, index, (Fraction(2), half), inner)


def test_unobstructed_inside_reference(unit_square):
    result = unobstructed_visible_facets(unit_square, ('1/2', '1/2'), unit_square)
    assert list(result) == []


def test_visible_boundary(unit_square):
    faces = visible_boundary(unit_square, (2, 2), unit_square)
    assert {frozenset(f.vertices) for f in faces} == {
        frozenset({(1, 0), (1, 1)}),
        frozenset({(0, 1), (1, 1)}),
    }
