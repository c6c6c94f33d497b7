import io

import pytest

from pyrgrow import util
from pyrgrow.kernel import is_inside


def test_random_polytope():
    P = util.random_polytope(3, 8, seed=7)
    assert P.dim == 3
    assert P == util.random_polytope(3, 8, seed=7)
    assert all(0 <= x <= 1 for v in P.vertices for x in v)


def test_random_nested_pair():
    for seed in range(5):
        P, Q = util.random_nested_pair(2, seed=seed)
        assert is_inside(P, Q)
        assert P.dim == 2


def test_progress_bar():
    out = io.StringIO()
    p = util.ProgressBar(message='Growing', total=4, unit=' vertices', file=out)
    p.update(2)
    assert p.format() == '\rGrowing [###############               ] (2/4 vertices) '
    p.close()
    assert out.getvalue().endswith('\n')


def test_progress_handler_is_silent():
    out = io.StringIO()
    p = util.ProgressHandler(message='Growing', total=2, file=out)
    p.update()
    p.set(status='done')
    p.close()
    assert p.kwargs['count'] == 1
    assert out.getvalue() == ''


def test_progress_bar_without_total():
    out = io.StringIO()
    p = util.ProgressBar(message='Approaching', unit=' terms', file=out)
    p.update()
    p.set(status='close')
    assert p.format() == '\rApproaching (1 terms) close'
    assert out.getvalue().endswith('close')
    with pytest.raises(TypeError):
        p.set(colour='red')
