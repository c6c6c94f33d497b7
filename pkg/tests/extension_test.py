from fractions import Fraction

import pytest

from pyrgrow import InvalidStep
from pyrgrow.extension import (
    GrowthChain,
    PyramidalStep,
    QuasiChain,
    StepKind,
    apply_step,
    classify_step,
    defect,
    make_step,
    verify_chain,
    verify_pyramidal,
    verify_quasi,
    verify_stacked_restricted,
)
from pyrgrow.kernel import conv_hull


@pytest.fixture
def big_triangle():
    return conv_hull([(0, 0), (2, 0), (0, 2)])


@pytest.fixture
def quasi_chain(big_triangle):
    # the second step extends the initial triangle instead of the square
    return QuasiChain.build(big_triangle, [(None, (2, 2)), (big_triangle, (3, 3))])


def test_verify_pyramidal_stack(triangle):
    Q = conv_hull(triangle.vertices + ((1, 1),))
    report = verify_pyramidal(triangle, Q)
    assert report.valid
    assert report
    (step,) = report.steps
    assert step.kind == StepKind.STACK
    # vertices (0, 1) and (1, 0) in lexicographic order
    assert step.facet == (1, 2)


def test_verify_pyramidal_over():
    P = conv_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    Q = conv_hull(P.vertices + ((0, 0, 1),))
    report = verify_pyramidal(P, Q)
    assert report.valid
    assert report.steps[0].kind == StepKind.OVER
    assert report.steps[0].facet is None


@pytest.mark.parametrize(
    'apex,code',
    [((2, 2), 'visible-facets'), (('1/2', '1/2'), 'apex-count')],
    ids=['two-facets', 'inside'],
)
def test_verify_pyramidal_invalid(unit_square, apex, code):
    Q = conv_hull(unit_square.vertices + (apex,))
    report = verify_pyramidal(unit_square, Q)
    assert not report.valid
    assert report.failed_indices == [1]
    assert report.diagnostics[0].code == code


def test_verify_pyramidal_two_new_vertices(triangle, big_square):
    report = verify_pyramidal(triangle, big_square)
    assert report.diagnostics[0].code == 'apex-count'


def test_classify_and_apply(triangle, unit_square):
    assert classify_step(triangle, ('1/4', '1/4')) is None
    assert classify_step(unit_square, (2, 2)) is None
    step = make_step(triangle, (1, 1))
    assert apply_step(triangle, step) == unit_square
    with pytest.raises(InvalidStep):
        make_step(unit_square, (2, 2))
    with pytest.raises(InvalidStep):
        apply_step(triangle, PyramidalStep((1, 1), StepKind.OVER))
    with pytest.raises(InvalidStep):
        apply_step(triangle, PyramidalStep((1, 1), StepKind.STACK, (0, 1)))


def test_verify_chain(triangle, unit_square):
    chain = GrowthChain(triangle, [make_step(triangle, (1, 1))])
    assert chain.final == unit_square
    assert chain.apexes == [(1, 1)]
    assert verify_chain(chain).valid
    wrong_kind = GrowthChain(triangle, [PyramidalStep((1, 1), StepKind.OVER)])
    assert verify_chain(wrong_kind).diagnostics[0].code == 'kind'
    inside = GrowthChain(triangle, [PyramidalStep(('1/4', '1/4'))])
    assert verify_chain(inside).failed_indices == [1]


def test_chain_then(triangle, unit_square):
    first = GrowthChain(triangle, [make_step(triangle, (1, 1))])
    second = GrowthChain(unit_square, [make_step(unit_square, (2, '1/2'))])
    joined = first.then(second)
    assert len(joined) == 2
    assert verify_chain(joined).valid
    with pytest.raises(ValueError):
        second.then(first)


def test_verify_stacked_restricted(triangle):
    keeps = conv_hull(triangle.vertices + ((1, 1),))
    assert verify_stacked_restricted(triangle, keeps).valid
    absorbs = conv_hull(triangle.vertices + ((2, 0),))
    assert verify_pyramidal(triangle, absorbs).valid
    report = verify_stacked_restricted(triangle, absorbs)
    assert not report.valid
    assert report.diagnostics[0].code == 'codim2'


def test_quasi_chain(quasi_chain, big_triangle):
    assert len(quasi_chain) == 2
    assert quasi_chain.initial == big_triangle
    assert quasi_chain.strict_indices() == [2]
    report = verify_quasi(quasi_chain)
    assert report.valid
    assert report.defect is not None


def test_defect(quasi_chain):
    tol = Fraction(1, 1000)
    current = defect(quasi_chain, tol)
    assert current.lo ** 2 <= 8 <= current.hi ** 2
    assert current.width <= tol
    previous = defect(quasi_chain, tol, against='previous')
    assert previous.lo ** 2 <= 2 <= previous.hi ** 2
    with pytest.raises(ValueError):
        defect(quasi_chain, tol, against='next')


def test_from_chain_has_no_defect(triangle):
    chain = GrowthChain(triangle, [make_step(triangle, (1, 1))])
    qc = QuasiChain.from_chain(chain)
    assert qc.strict_indices() == []
    assert defect(qc).exact
    assert verify_quasi(qc).valid


def test_verify_quasi_sandwich(big_triangle, unit_square):
    square = conv_hull([(0, 0), (2, 0), (0, 2), (2, 2)])
    qc = QuasiChain.build(big_triangle, [(None, (2, 2)), (unit_square, (3, '1/2'))])
    report = verify_quasi(qc)
    assert not report.valid
    assert 'sandwich' in {d.code for d in report.diagnostics}
    assert qc.polytopes[1] == square


def test_verify_quasi_index(quasi_chain):
    first, second = quasi_chain.witnesses
    swapped = QuasiChain(quasi_chain.polytopes, [second, first])
    report = verify_quasi(swapped)
    assert not report.valid
    assert [d.code for d in report.diagnostics] == ['index']
    repeated = QuasiChain(quasi_chain.polytopes, [first, first])
    assert not verify_quasi(repeated).valid
