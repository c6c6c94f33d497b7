from pathlib import Path

import pytest

import pyrgrow
from pyrgrow.kernel import conv_hull


@pytest.fixture(scope='session')
def datadir():
    return Path(__file__).parent / 'data'


@pytest.fixture(scope='session')
def triangle():
    return conv_hull([(0, 0), (1, 0), (0, 1)])


@pytest.fixture(scope='session')
def unit_square():
    return conv_hull([(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.fixture(scope='session')
def big_square():
    return conv_hull([(0, 0), (2, 0), (0, 2), (2, 2)])


@pytest.fixture(scope='session')
def tetrahedron():
    return conv_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


@pytest.fixture(scope='session')
def cube():
    return conv_hull([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])


@pytest.fixture(scope='session')
def simplex4():
    return conv_hull([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0),
                      (0, 0, 1, 0), (0, 0, 0, 1)])


@pytest.fixture
def restore_config():
    saved = pyrgrow.config.as_dict()
    yield pyrgrow.config
    pyrgrow.config.update(saved)
