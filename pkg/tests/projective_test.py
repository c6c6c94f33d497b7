from fractions import Fraction
import random

import pytest

from pyrgrow import CrossesInfinity
from pyrgrow._exceptions import (
    DivergenceSuspected,
    InvalidFrame,
    NoSeparatingFunctional,
)
from pyrgrow.extension import GrowthChain, make_step, verify_chain
from pyrgrow.kernel import AffineSubspace, Hyperplane, conv_hull
from pyrgrow.projective import (
    ProjectiveMap,
    PsiFrame,
    map_to_infinity,
    psi_lambda,
    psi_limit_check,
    pushforward,
    pushforward_chain,
)
from pyrgrow.util import random_polytope

F = Fraction


@pytest.fixture
def frame():
    plane = AffineSubspace((F(0), F(0)), [(F(1), F(0)), (F(0), F(1))])
    H = Hyperplane((F(0), F(1)), F(1))
    Hp = Hyperplane((F(0), F(1)), F(0))
    return PsiFrame(plane, H, Hp, (0, 1))


def test_projective_map_basics():
    M = ProjectiveMap([[1, 0, 0], [0, 1, 0], [0, 1, 1]])
    assert M((2, 1)) == (1, F(1, 2))
    assert M.inverse()(M((3, 5))) == (3, 5)
    assert M.exceptional_hyperplane() == Hyperplane((0, 1), -1)
    assert ProjectiveMap([[2, 0], [0, 2]]) == ProjectiveMap.identity(1)
    assert M.power(0) == ProjectiveMap.identity(2)
    assert M.power(-1) == M.inverse()
    assert (M @ M.inverse()) == ProjectiveMap.identity(2)
    with pytest.raises(CrossesInfinity):
        M((0, -1))
    with pytest.raises(ValueError):
        ProjectiveMap([[1, 0], [0, 1], [0, 0]])
    with pytest.raises(ValueError):
        ProjectiveMap([[1, 1], [1, 1]])


def test_affine_map():
    shift = ProjectiveMap.affine([[1, 0], [0, 1]], [1, '1/2'])
    assert shift((0, 0)) == (1, F(1, 2))
    assert shift.exceptional_hyperplane() is None


def test_psi_lambda_example():
    plane = AffineSubspace((F(0), F(0)), [(F(1), F(0)), (F(0), F(1))])
    H = Hyperplane((F(0), F(1)), F(1))
    Hp = Hyperplane((F(0), F(1)), F(0))
    psi = psi_lambda(plane, H, Hp, (0, 1), '1/2')
    assert psi((2, 1)) == (1, 1)
    # the fixed hyperplane stays in place
    assert psi((5, 0)) == (5, 0)


def test_psi_frame_identities(frame):
    rng = random.Random(3)
    for _ in range(100):
        lam = F(rng.randint(1, 20), 20)
        x = F(rng.randint(-50, 50), rng.randint(1, 9))
        M = frame.map(lam)
        assert M((x, F(0))) == (x, 0)
        assert M((x, F(1))) == (lam * x, 1)


def test_psi_group_law(frame):
    assert frame.map(F(1, 2)) @ frame.map(F(1, 3)) == frame.map(F(1, 6))
    assert frame.map(1) == ProjectiveMap.identity(2)
    assert frame.map(F(1, 2)).power(3) == frame.map(F(1, 8))


def test_psi_frame_invalid():
    plane = AffineSubspace((F(0), F(0)), [(F(1), F(0)), (F(0), F(1))])
    H = Hyperplane((F(0), F(1)), F(1))
    Hp = Hyperplane((F(0), F(1)), F(0))
    with pytest.raises(InvalidFrame):
        PsiFrame(plane, H, Hp, (0, 0))
    with pytest.raises(InvalidFrame):
        PsiFrame(plane, H, H, (0, 1))
    with pytest.raises(InvalidFrame):
        PsiFrame(plane, H, Hyperplane((F(1), F(0)), F(5)), (0, 1))
    frame = PsiFrame(plane, H, Hp, (0, 1))
    with pytest.raises(InvalidFrame):
        frame.map(0)
    with pytest.raises(InvalidFrame):
        frame.map(2)


def test_psi_limit_check(frame, restore_config):
    assert psi_limit_check(frame, (2, 1), F(1, 10)) == 5
    with pytest.raises(InvalidFrame):
        psi_limit_check(frame, (1, 0), F(1, 10))
    restore_config.max_power = 2
    with pytest.raises(DivergenceSuspected):
        psi_limit_check(frame, (2, 1), F(1, 10))


def test_map_to_infinity(unit_square):
    edge = conv_hull([(1, 0), (1, 1)])
    M = map_to_infinity(edge, unit_square)
    assert M.denominator((1, F(1, 2))) == 0
    assert M.denominator((0, 0)) > 0
    with pytest.raises(CrossesInfinity):
        pushforward(M, unit_square)
    with pytest.raises(NoSeparatingFunctional):
        map_to_infinity(conv_hull([(0, 0), (1, 1)]), unit_square)


def test_pushforward(unit_square, big_square, triangle):
    double = ProjectiveMap.affine([[2, 0], [0, 2]], [0, 0])
    assert pushforward(double, unit_square) == big_square
    chain = GrowthChain(triangle, [make_step(triangle, (1, 1))])
    image = pushforward_chain(double, chain)
    assert image.final == big_square
    assert verify_chain(image).valid


def test_pushforward_random_polytopes():
    M = ProjectiveMap([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 4]])
    for seed in range(5):
        P = random_polytope(3, 6, seed=seed)
        image = pushforward(M, P)
        assert len(image.vertices) == len(P.vertices)
        assert pushforward(M.inverse(), image) == P
