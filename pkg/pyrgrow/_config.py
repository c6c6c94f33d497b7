"""
Local configuration settings.
"""

from collections.abc import Mapping
from fractions import Fraction
from importlib.resources import as_file, files
from typing import Any
from pathlib import Path

import tomli

from pyrgrow._exceptions import ConfigurationError, InputError
from pyrgrow._types import AnyPath, RationalLike
from pyrgrow._util import parse_rational

# The defaults file ships with the package
with as_file(files('pyrgrow') / 'defaults.toml') as defaults_file:
    DEFAULTS_FILE_PATH = defaults_file

_RATIONAL_KEYS = ('epsilon', 'tolerance')
_INTEGER_KEYS = ('max_halvings', 'max_power', 'max_depth', 'max_iterations')


def _positive_rational(name: str, value: RationalLike) -> Fraction:
    try:
        x = parse_rational(value)
    except InputError as exc:
        raise ConfigurationError(f'{name} must be a rational: {value!r}') from exc
    if x <= 0:
        raise ConfigurationError(f'{name} must be positive: {value!r}')
    return x


def _positive_integer(name: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
        raise ConfigurationError(f'{name} must be a positive integer: {value!r}')
    return value


class GrowthConfig:

    def __init__(self):
        self._epsilon = Fraction(1, 100)
        self._tolerance = Fraction(1, 1_000_000)
        self._max_halvings = 64
        self._max_power = 256
        self._max_depth = 64
        self._max_iterations = 64

    @property
    def epsilon(self) -> Fraction:
        """The default defect budget for quasi-pyramidal growth."""
        return self._epsilon

    @epsilon.setter
    def epsilon(self, value: RationalLike) -> None:
        self._epsilon = _positive_rational('epsilon', value)

    @property
    def tolerance(self) -> Fraction:
        """The default width of distance intervals."""
        return self._tolerance

    @tolerance.setter
    def tolerance(self, value: RationalLike) -> None:
        self._tolerance = _positive_rational('tolerance', value)

    @property
    def max_halvings(self) -> int:
        """How many times a small parameter is halved before giving up."""
        return self._max_halvings

    @max_halvings.setter
    def max_halvings(self, value: int) -> None:
        self._max_halvings = _positive_integer('max_halvings', value)

    @property
    def max_power(self) -> int:
        """The largest power of a contraction that is tried."""
        return self._max_power

    @max_power.setter
    def max_power(self, value: int) -> None:
        self._max_power = _positive_integer('max_power', value)

    @property
    def max_depth(self) -> int:
        """The recursion guard of the three-dimensional construction."""
        return self._max_depth

    @max_depth.setter
    def max_depth(self, value: int) -> None:
        self._max_depth = _positive_integer('max_depth', value)

    @property
    def max_iterations(self) -> int:
        """The largest number of main-sequence terms computed."""
        return self._max_iterations

    @max_iterations.setter
    def max_iterations(self, value: int) -> None:
        self._max_iterations = _positive_integer('max_iterations', value)

    def as_dict(self) -> dict[str, Any]:
        return {key: getattr(self, key) for key in _RATIONAL_KEYS + _INTEGER_KEYS}

    def update(self, data: Mapping[str, Any]) -> None:
        """Update the configuration with items in *data*.

        Unknown keys raise :exc:`ConfigurationError`. Values are
        validated before any of them is assigned, so a failed update
        leaves the configuration unchanged.

        """
        unknown = set(data).difference(_RATIONAL_KEYS + _INTEGER_KEYS)
        if unknown:
            raise ConfigurationError(
                'unknown configuration keys: ' + ', '.join(sorted(unknown))
            )
        checked: dict[str, Any] = {}
        for key, value in data.items():
            if key in _RATIONAL_KEYS:
                checked[key] = _positive_rational(key, value)
            else:
                checked[key] = _positive_integer(key, value)
        for key, value in checked.items():
            setattr(self, key, value)

    def load(self, path: AnyPath) -> None:
        """Load and update with the settings in the TOML file at *path*.

        Settings may be given at the top level or in a ``[pyrgrow]``
        table. For example:

        .. code-block:: toml

           [pyrgrow]
           epsilon = "1/1000"
           max_halvings = 32

        """
        path = Path(path).expanduser()
        try:
            with path.open('rb') as configfile:
                data = tomli.load(configfile)
        except OSError as exc:
            raise ConfigurationError(f'cannot read configuration: {path}') from exc
        except tomli.TOMLDecodeError as exc:
            raise ConfigurationError(f'malformed configuration file: {path}') from exc
        self.update(data.get('pyrgrow', data))


config = GrowthConfig()
config.load(DEFAULTS_FILE_PATH)
