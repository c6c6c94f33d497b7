from fractions import Fraction

import pytest

from pyrgrow import InputError, NotAVeeInstance
from pyrgrow._exceptions import NotTraversing
from pyrgrow.kernel import (
    AffineSubspace,
    Cone,
    DistanceInterval,
    HalfSpace,
    Hyperplane,
    Membership,
    affine_hull,
    cone_cross_section,
    contains,
    conv_hull,
    corner_cone,
    directed_sq_distance,
    hausdorff,
    hausdorff_sq,
    intersect,
    intersect_polytopes,
    is_inside,
    join_along_facet,
    point_polytope_sq_distance,
    section,
)

F = Fraction


def test_conv_hull_square(unit_square):
    P = conv_hull([(0, 0), (1, 0), (0, 1), (1, 1), ('1/2', '1/2'), ('1/2', 0)])
    assert P == unit_square
    assert P.dim == 2
    assert len(P.facets) == 4
    assert P.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert [f.vertices for f in P.facets] == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_conv_hull_lower_dimensional():
    point = conv_hull([(1, 2, 3)])
    assert point.dim == 0
    segment = conv_hull([(0, 0, 0), (1, 1, 1), ('1/2', '1/2', '1/2')])
    assert segment.dim == 1
    assert len(segment.vertices) == 2
    triangle = conv_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert triangle.dim == 2
    assert triangle.ambient_dim == 3
    assert len(triangle.facets) == 3


def test_conv_hull_errors():
    with pytest.raises(InputError):
        conv_hull([])
    with pytest.raises(InputError):
        conv_hull([(0, 0), (1, 0, 0)])
    with pytest.raises(InputError):
        conv_hull([(0.5, 0)])


def test_cube_face_lattice(cube):
    assert len(cube.vertices) == 8
    assert len(cube.facets) == 6
    assert len(cube.edges()) == 12
    assert len(cube.ridges()) == 12
    assert len(cube.codim2_faces()) == 12
    assert all(len(cube.neighbors(i)) == 3 for i in range(8))
    assert cube.is_face([(0, 0, 0), (1, 0, 0)])
    assert not cube.is_face([(0, 0, 0), (1, 1, 0)])
    assert cube.facet_polytope(0).dim == 2


def test_contains(unit_square):
    assert contains(unit_square, ('1/2', '1/2')) == Membership.INTERIOR
    assert contains(unit_square, (1, '1/2')) == Membership.BOUNDARY
    assert contains(unit_square, (2, 0)) == Membership.OUTSIDE
    with pytest.raises(InputError):
        contains(unit_square, (0, 0, 0))
    flat = conv_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert contains(flat, ('1/4', '1/4', 0)) == Membership.INTERIOR
    assert contains(flat, ('1/4', '1/4', 1)) == Membership.OUTSIDE


def test_is_inside(unit_square, big_square, triangle):
    assert is_inside(triangle, unit_square)
    assert is_inside(unit_square, big_square)
    assert not is_inside(big_square, unit_square)
    assert is_inside(unit_square, unit_square)


def test_affine_subspace():
    A = affine_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert A.dim == 2
    assert A.contains((F(5), F(-3), F(0)))
    assert not A.contains((F(0), F(0), F(1)))
    assert A.project((F(1), F(1), F(7))) == (1, 1, 0)
    assert AffineSubspace(('0', '0'), []).dim == 0


def test_intersect(unit_square):
    half = intersect(unit_square, [HalfSpace((1, 0), F(1, 2))])
    assert half.vertices == ((0, 0), (0, 1), (F(1, 2), 0), (F(1, 2), 1))
    assert intersect(unit_square, [HalfSpace((1, 0), F(-1))]) is None
    line = section(unit_square, Hyperplane((1, 1), F(1)))
    assert line.dim == 1
    assert set(line.vertices) == {(0, 1), (1, 0)}


def test_intersect_polytopes(unit_square, triangle):
    shifted = conv_hull([('1/2', 0), ('3/2', 0), ('1/2', 1), ('3/2', 1)])
    both = intersect_polytopes(unit_square, shifted)
    assert both == conv_hull([('1/2', 0), (1, 0), ('1/2', 1), (1, 1)])
    assert intersect_polytopes(triangle, conv_hull([(2, 2), (3, 3), (2, 3)])) is None


def test_distances(unit_square, big_square):
    assert point_polytope_sq_distance((2, 2), unit_square) == 2
    assert point_polytope_sq_distance(('1/2', 3), unit_square) == 4
    assert point_polytope_sq_distance(('1/2', '1/2'), unit_square) == 0
    assert directed_sq_distance(unit_square, big_square) == 0
    assert directed_sq_distance(big_square, unit_square) == 2
    assert hausdorff_sq(unit_square, big_square) == 2
    assert hausdorff_sq(big_square, unit_square) == 2
    with pytest.raises(InputError):
        hausdorff_sq(unit_square, conv_hull([(0, 0, 0)]))


def test_distance_to_edge_interior():
    P = conv_hull([(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2)])
    assert point_polytope_sq_distance((1, -1, 0), P) == 1


def test_hausdorff_interval(unit_square, big_square):
    tol = F(1, 10**6)
    interval = hausdorff(unit_square, big_square, tol)
    assert interval.lo ** 2 <= 2 <= interval.hi ** 2
    assert interval.width <= tol
    exact = hausdorff(unit_square, conv_hull([(0, 0), (3, 0), (0, 1), (3, 1)]))
    assert exact.exact
    assert exact.lo == 2


def test_distance_interval():
    assert DistanceInterval.from_square(F(9, 4), F(1, 100)) == (F(3, 2), F(3, 2))
    interval = DistanceInterval.from_square(F(2), F(1, 100))
    assert interval.lo < interval.hi
    assert interval + DistanceInterval.zero() == interval
    assert str(DistanceInterval.zero()) == '0'
    with pytest.raises(ValueError):
        DistanceInterval.from_square(F(-1), F(1))


def test_corner_cone(unit_square, cube):
    cone = corner_cone(unit_square, (0, 0))
    assert cone.rays == ((0, 1), (1, 0))
    assert cone == Cone((F(0), F(0)), [(0, 5), (3, 0)])
    assert len(corner_cone(cube, (1, 1, 1)).rays) == 3


def test_cone_cross_section(cube):
    cone = corner_cone(cube, (0, 0, 0))
    cut = cone_cross_section(cone, Hyperplane((1, 1, 1), F(1)))
    assert cut == conv_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(NotTraversing):
        cone_cross_section(cone, Hyperplane((1, 0, 0), F(1)))
    with pytest.raises(NotTraversing):
        cone_cross_section(cone, Hyperplane((1, 1, 1), F(-1)))
    with pytest.raises(NotTraversing):
        cone_cross_section(cone, Hyperplane((1, 1, 1), F(0)))


def test_join_along_facet(tetrahedron):
    flat_p = conv_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    flat_q = conv_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    edge = conv_hull([(1, 0, 0), (0, 1, 0)])
    assert join_along_facet(flat_p, flat_q, edge) == tetrahedron
    with pytest.raises(NotAVeeInstance):
        join_along_facet(flat_p, flat_q, conv_hull([(1, 0, 0), (0, 0, 0)]))
    coplanar = conv_hull([(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    with pytest.raises(NotAVeeInstance):
        join_along_facet(flat_p, coplanar, edge)
