from fractions import Fraction

import pytest

from pyrgrow import InputError, NotAVeeInstance, NotNested, UnsupportedDimension
from pyrgrow.extension import StepKind, verify_chain
from pyrgrow.growth import (
    VeeInstance,
    _plan,
    _Slab,
    equalize_dimension,
    grow,
    inscribed_growth,
    transfinite_prefix,
    vee_grow_2d,
    vee_grow_3d,
    vertex_chain,
)
from pyrgrow.kernel import conv_hull, hausdorff_sq
from pyrgrow.util import random_nested_pair


def _check(chain, P, Q):
    assert chain.initial == P
    assert chain.final == Q
    assert verify_chain(chain).valid


@pytest.fixture
def prism_instance():
    P = conv_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    Q = conv_hull([(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)])
    f = conv_hull([(1, 0, 0), (1, 1, 0)])
    return VeeInstance(P, Q, f)


def test_grow_triangle_to_square(triangle, unit_square):
    chain = grow(triangle, unit_square)
    _check(chain, triangle, unit_square)
    assert len(chain) == 1
    assert chain.steps[0].kind == StepKind.STACK


def test_grow_identity(unit_square):
    chain = grow(unit_square, unit_square)
    assert len(chain) == 0
    assert chain.final == unit_square


def test_grow_errors(unit_square, big_square, simplex4):
    with pytest.raises(NotNested):
        grow(big_square, unit_square)
    with pytest.raises(UnsupportedDimension):
        grow(simplex4, conv_hull(simplex4.vertices + ((1, 1, 1, 1),)))


def test_grow_from_point(big_square):
    point = conv_hull([(1, 1)])
    chain = grow(point, big_square)
    _check(chain, point, big_square)
    assert chain.steps[0].kind == StepKind.OVER


def test_equalize_dimension(big_square):
    point = conv_hull([(1, 1)])
    chain, raised = equalize_dimension(point, big_square)
    assert raised.dim == 2
    assert all(step.kind == StepKind.OVER for step in chain.steps)
    assert len(chain) == 2


def test_vertex_chain(triangle, big_square):
    pairs = vertex_chain(triangle, big_square)
    assert pairs[0][0] == triangle
    assert pairs[-1][1] == big_square
    for Q1, Q2 in pairs:
        assert len([x for x in Q2.vertices if not Q1.contains_point(x)]) == 1


def test_inscribed_growth_needs_equal_dimension(triangle):
    segment = conv_hull([(0, 0), (1, 0)])
    with pytest.raises(InputError):
        inscribed_growth(segment, triangle)


def test_vee_grow_2d(triangle):
    inst = VeeInstance(conv_hull([(0, 0), (1, 0)]), conv_hull([(0, 0), (0, 1)]),
                       conv_hull([(0, 0)]))
    assert inst.d == 2
    chain = vee_grow_2d(inst)
    _check(chain, inst.P, triangle)
    assert [step.kind for step in chain.steps] == [StepKind.OVER]


def test_vee_grow_3d_tetrahedron(tetrahedron):
    inst = VeeInstance(conv_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)]),
                       conv_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
                       conv_hull([(1, 0, 0), (0, 1, 0)]))
    chain = vee_grow_3d(inst)
    _check(chain, inst.P, tetrahedron)
    assert len(chain) == 1


def test_vee_grow_3d_prism(prism_instance):
    chain = vee_grow_3d(prism_instance)
    _check(chain, prism_instance.P, prism_instance.joined)
    assert len(chain) == 2
    assert chain.steps[0].kind == StepKind.OVER
    assert chain.steps[1].kind == StepKind.STACK


def test_vee_instance_errors(triangle, unit_square):
    with pytest.raises(NotAVeeInstance):
        VeeInstance(triangle, unit_square, conv_hull([(0, 0), (1, 0)]))


def test_grow_tetrahedron_to_cube(tetrahedron, cube):
    chain = grow(tetrahedron, cube)
    _check(chain, tetrahedron, cube)


@pytest.mark.parametrize('seed', range(8))
def test_grow_random_polygons(seed):
    P, Q = random_nested_pair(2, count=7, seed=seed)
    chain = grow(P, Q)
    _check(chain, P, Q)
    # in the plane every stacking step adds a triangle
    for step in chain.steps:
        if step.kind == StepKind.STACK:
            assert len(step.facet) == 2


@pytest.mark.parametrize('seed', range(8))
def test_grow_random_polytopes_3d(seed):
    P, Q = random_nested_pair(3, count=7, seed=seed)
    _check(grow(P, Q), P, Q)


def test_transfinite_prefix_exact(triangle, unit_square):
    chain, interval = transfinite_prefix(triangle, unit_square, '1/1000000')
    assert chain.final == unit_square
    assert interval.hi == 0


def test_transfinite_prefix_within_tolerance(unit_square):
    tol = Fraction(1, 100)
    slightly = conv_hull([(0, 0), (1, 0), (0, 1), ('1001/1000', '1001/1000')])
    chain, interval = transfinite_prefix(unit_square, slightly, tol)
    assert len(chain) == 0
    assert interval.hi < tol
    assert interval.lo ** 2 <= hausdorff_sq(unit_square, slightly) <= interval.hi ** 2


def test_transfinite_prefix_vee(prism_instance):
    tol = Fraction(1, 1000)
    inst = prism_instance
    chain, interval = transfinite_prefix(inst.P, inst.Q, tol, f=inst.f)
    assert chain.initial == inst.P
    assert chain.final == inst.joined
    assert interval.lo == 0
    assert interval.hi < tol
    assert verify_chain(chain).valid


def test_plan_pencil_turns_about_ridge(unit_square):
    Q2 = conv_hull([(0, 0), (1, 0), (0, 1), (2, 2)])
    slabs = [item for item in _plan(unit_square, Q2) if isinstance(item, _Slab)]
    assert len(slabs) == 1
    pencil = slabs[0].pencil
    assert pencil.flat.dim == 0
    for h in (pencil.start, pencil.second, pencil.hyperplane()):
        assert h.contains(pencil.flat.base)
    assert slabs[0].upper == Q2
