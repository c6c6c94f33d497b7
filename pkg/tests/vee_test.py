from fractions import Fraction
from itertools import islice

import pytest

from pyrgrow.extension import StepKind, verify_chain
from pyrgrow.growth import VeeInstance, extend_vee_3d, vee_grow_3d
from pyrgrow.kernel import conv_hull
from pyrgrow.vee import (
    check_homothety,
    check_star,
    grow_to_R,
    induced_theta,
    main_sequence,
    q1_construction,
    r_construction,
    s_construction,
    s_theta_growth,
)
from pyrgrow.visibility import visible_facets


@pytest.fixture
def wedge():
    # P and Q meet along the segment from (0, 0, 0) to (2, 0, 0)
    P = conv_hull([(0, 0, 0), (2, 0, 0), (1, -1, 0)])
    Q = conv_hull([(0, 0, 0), (2, 0, 0), (1, 0, 1)])
    f = conv_hull([(0, 0, 0), (2, 0, 0)])
    return VeeInstance(P, Q, f)


def test_wedge_instance(wedge):
    assert wedge.d == 3
    assert len(wedge.joined.vertices) == 4


def test_r_construction_single_facet(wedge):
    R = r_construction(wedge.Q, wedge.P, wedge.f, (3, 0, 1))
    assert R == wedge.Q


def test_check_star(wedge):
    result = check_star(wedge.Q, wedge.P, wedge.f, (3, 0, 1))
    assert result
    assert len(result.rho_sigma.sigma) == 1
    assert len(result.rho_sigma.rho) == 1
    assert result.rho_sigma.image <= set(result.rho_sigma.sigma)


def test_s_construction_without_offsets(wedge):
    S = s_construction(wedge.Q, wedge.P, wedge.f, (3, 0, 1), {})
    assert S == wedge.Q


def test_vee_grow_wedge(wedge):
    chain = vee_grow_3d(wedge)
    assert chain.initial == wedge.P
    assert chain.final == wedge.joined


def test_induced_theta_of_unchanged_polytope(wedge):
    star = check_star(wedge.Q, wedge.P, wedge.f, (3, 0, 1))
    theta = induced_theta(wedge.Q, wedge.P, wedge.f, (3, 0, 1), wedge.Q)
    assert set(theta) == set(star.rho_sigma.rho)
    assert all(t == 0 for t in theta.values())


def test_check_homothety(wedge):
    assert check_homothety(wedge, (3, 0, 1), wedge.Q, wedge.Q, 1)
    assert not check_homothety(wedge, (3, 0, 1), wedge.Q, wedge.Q, '1/2')


@pytest.fixture
def grown_wedge(wedge):
    # Q with an extra vertex so that the R-construction has to grow it
    S = conv_hull(wedge.Q.vertices + ((Fraction(9, 4), 0, Fraction(3, 4)),))
    return VeeInstance(wedge.P, S, wedge.f)


def test_r_construction_grows(grown_wedge):
    R = r_construction(grown_wedge.Q, grown_wedge.P, grown_wedge.f, (3, 0, 1))
    assert R == conv_hull([(0, 0, 0), (2, 0, 0), ('7/3', 0, 1), (1, 0, 1)])


def test_grow_to_R(grown_wedge):
    chain = grow_to_R(grown_wedge, (3, 0, 1))
    assert chain.initial == grown_wedge.joined
    assert chain.apexes == [(Fraction(7, 3), 0, 1)]
    assert all(step.kind == StepKind.STACK for step in chain.steps)
    assert verify_chain(chain).valid


def test_q1_construction_after_growth(grown_wedge):
    v = (3, 0, 1)
    Q1, chain = q1_construction(grown_wedge, v)
    assert Q1 == r_construction(grown_wedge.Q, grown_wedge.P, grown_wedge.f, v)
    assert len(chain) == 0
    assert chain.initial == conv_hull(grown_wedge.P.vertices + Q1.vertices)
    rho_sigma = check_star(Q1, grown_wedge.P, grown_wedge.f, v).rho_sigma
    assert rho_sigma.image == set(rho_sigma.sigma)


@pytest.mark.parametrize('v', [(3, 0, 1), (1, 0, 3)])
def test_q1_construction_matched(wedge, v):
    Q1, chain = q1_construction(wedge, v)
    assert Q1 == wedge.Q
    assert len(chain) == 0
    rho_sigma = check_star(Q1, wedge.P, wedge.f, v).rho_sigma
    assert rho_sigma.image == set(rho_sigma.sigma)


def test_q1_construction_two_matched_facets(wedge):
    rho_sigma = check_star(wedge.Q, wedge.P, wedge.f, (1, 0, 3)).rho_sigma
    assert len(rho_sigma.sigma) == 2


def test_s_theta_growth_with_points(wedge):
    v = (3, 0, 1)
    facet = visible_facets(wedge.Q, v)[0]
    chain = s_theta_growth(wedge.Q, wedge.P, wedge.f, v, points={facet: (2, 0, 1)})
    assert chain.apexes == [(2, 0, 1)]
    assert chain.final == conv_hull(wedge.joined.vertices + ((2, 0, 1),))


def test_main_sequence_first_terms(wedge):
    first, second = islice(main_sequence(wedge, (3, 0, 1)), 2)
    assert first.index == 0
    assert first.polytope == wedge.Q
    assert second.index == 1
    assert second.polytope == wedge.Q


def test_extend_vee_slices_visible_facets(wedge):
    v = (Fraction(1), Fraction(0), Fraction(3))
    chain = extend_vee_3d(wedge.P, wedge.Q, wedge.f, v)
    # the slice vertex is where the segment from the origin to v meets
    # the plane of the second visible facet
    assert chain.apexes == [(Fraction(1, 2), 0, Fraction(3, 2)), v]
    assert chain.initial == wedge.joined
    assert chain.final == conv_hull(wedge.joined.vertices + (v,))
    assert verify_chain(chain).valid
