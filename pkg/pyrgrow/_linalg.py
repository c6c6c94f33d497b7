"""Exact rational linear algebra on top of sympy matrices.

Matrices are passed around as lists of rows of Fractions; sympy is
only used inside these helpers and every result is converted back.
"""

from collections.abc import Sequence
from fractions import Fraction
from typing import Optional

import sympy

from pyrgrow._types import Rows, Vector


def _matrix(rows: Sequence[Sequence[Fraction]], ncols: int) -> sympy.Matrix:
    flat = [sympy.Rational(x.numerator, x.denominator) for row in rows for x in row]
    return sympy.Matrix(len(rows), ncols, flat)


def _fraction(x: sympy.Basic) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def _rows(m: sympy.Matrix) -> Rows:
    return [[_fraction(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    if not rows:
        return 0
    return _matrix(rows, ncols).rank()


def rref(
    rows: Sequence[Sequence[Fraction]],
    ncols: int,
) -> tuple[Rows, tuple[int, ...]]:
    """Return the nonzero rows of the reduced row echelon form and pivots."""
    if not rows:
        return [], ()
    m, pivots = _matrix(rows, ncols).rref()
    return _rows(m)[:len(pivots)], tuple(pivots)


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Return a basis of ``{x : A x = 0}`` as integer-scaled vectors."""
    if not rows:
        return [
            tuple(Fraction(1 if i == j else 0) for j in range(ncols))
            for i in range(ncols)
        ]
    basis = _matrix(rows, ncols).nullspace()
    return [tuple(_fraction(x) for x in vec) for vec in basis]


def solve(
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    ncols: int,
) -> Optional[Vector]:
    """Return one solution of ``A x = b`` or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    if not rows:
        return (Fraction(0),) * ncols
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return tuple(x)


def inverse(rows: Sequence[Sequence[Fraction]]) -> Optional[Rows]:
    n = len(rows)
    m = _matrix(rows, n)
    if m.det() == 0:
        return None
    return _rows(m.inv())


def determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(rows)
    return _fraction(_matrix(rows, n).det())


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Rows:
    cols = list(zip(*b))
    return [
        [sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols]
        for row in a
    ]


def matvec(a: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> Vector:
    return tuple(sum((y * z for y, z in zip(row, x)), Fraction(0)) for row in a)


def identity(n: int) -> Rows:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
