from fractions import Fraction

import pytest

from pyrgrow import ConfigurationError, config


def test_defaults():
    assert config.epsilon == Fraction(1, 100)
    assert config.tolerance == Fraction(1, 1_000_000)
    assert config.max_halvings == 64


def test_update(restore_config):
    restore_config.update({'epsilon': '1/1000', 'max_power': 8})
    assert config.epsilon == Fraction(1, 1000)
    assert config.max_power == 8


@pytest.mark.parametrize(
    'data',
    [{'epsilon': '-1/2'}, {'epsilon': 'abc'}, {'max_depth': 0},
     {'max_depth': True}, {'unknown': 1}],
    ids=['negative', 'not-rational', 'zero', 'bool', 'unknown'],
)
def test_update_errors(restore_config, data):
    before = config.as_dict()
    with pytest.raises(ConfigurationError):
        restore_config.update({'max_power': 3, **data})
    assert config.as_dict() == before


def test_load(restore_config, tmp_path):
    path = tmp_path / 'pyrgrow.toml'
    path.write_text('[pyrgrow]\ntolerance = "1/1000"\nmax_iterations = 5\n')
    restore_config.load(path)
    assert config.tolerance == Fraction(1, 1000)
    assert config.max_iterations == 5
    top_level = tmp_path / 'top.toml'
    top_level.write_text('max_halvings = 10\n')
    restore_config.load(top_level)
    assert config.max_halvings == 10


def test_load_errors(restore_config, tmp_path):
    with pytest.raises(ConfigurationError):
        restore_config.load(tmp_path / 'missing.toml')
    bad = tmp_path / 'bad.toml'
    bad.write_text('epsilon = \n')
    with pytest.raises(ConfigurationError):
        restore_config.load(bad)
