from collections.abc import Sequence
from fractions import Fraction
from typing import Union
from pathlib import Path

# For functions taking a filesystem path as a str or a pathlib.Path
AnyPath = Union[str, Path]

# Anything that converts exactly to a Fraction
RationalLike = Union[Fraction, int, str]

# Points and direction vectors share one representation
Point = tuple[Fraction, ...]
Vector = tuple[Fraction, ...]

# Loosely typed input for points (lists of ints, strings, ...)
PointLike = Sequence[RationalLike]

# Rows of a rational matrix
Rows = list[list[Fraction]]
