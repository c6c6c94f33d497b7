"""Pyrgrow utility classes and functions."""
from fractions import Fraction
from typing import Any, Optional, TextIO
import random
import sys

from pyrgrow.kernel import Polytope, conv_hull


class ProgressHandler:
    """Receives progress reports from long constructions.

    :func:`pyrgrow.grow`, :func:`pyrgrow.quasi_grow`,
    :func:`pyrgrow.transfinite_prefix` and :func:`pyrgrow.validate`
    take a handler class, create one instance, report to it and close
    it. This base class only keeps the count; subclass it to display
    progress somewhere.

    The keyword arguments are kept in :attr:`kwargs` and can be changed
    later with :meth:`set`.
    """

    def __init__(
        self,
        *,
        message: str = '',
        count: int = 0,
        total: int = 0,
        unit: str = '',
        status: str = '',
        file: TextIO = sys.stderr,
    ):
        self.file = file
        self.kwargs: dict[str, Any] = {
            'message': message,
            'count': count,
            'total': total,
            'unit': unit,
            'status': status,
        }

    @property
    def count(self) -> int:
        return self.kwargs['count']

    def update(self, n: int = 1) -> None:
        """Advance the count by *n*."""
        self.kwargs['count'] += n
        self.refresh()

    def set(self, **kwargs) -> None:
        """Change reporting parameters such as *status*."""
        unknown = set(kwargs).difference(self.kwargs)
        if unknown:
            raise TypeError(f'unknown progress parameters: {sorted(unknown)}')
        self.kwargs.update(kwargs)
        self.refresh()

    def refresh(self) -> None:
        """Show the current state; the base class shows nothing."""

    def close(self) -> None:
        """Finish reporting."""


class ProgressBar(ProgressHandler):
    """A :class:`ProgressHandler` drawing a text bar on :attr:`file`.

    Example:
        >>> p = ProgressBar(message='Growing', total=4, unit=' vertices')
        >>> p.format()
        '\\rGrowing [                              ] (0/4 vertices) '

    """

    #: The template; ``bar`` and ``counter`` are computed by :meth:`format`.
    FMT = '\r{message}{bar}{counter}{status}'
    WIDTH = 30

    def refresh(self) -> None:
        print('\r\033[K', self.format(), sep='', end='', file=self.file)

    def format(self) -> str:
        """Return the bar for the current count.

        Without a total only the count is shown:

        >>> ProgressBar(count=2, status='checking').format()
        '\\r (2) checking'

        """
        kw = self.kwargs
        count, total, unit = kw['count'], kw['total'], kw['unit']
        if total > 0:
            filled = '#' * (min(count, total) * self.WIDTH // total)
            bar = f' [{filled:<{self.WIDTH}}]'
            counter = f' ({count}/{total}{unit}) '
        else:
            bar = ''
            counter = f' ({count}{unit}) '
        return self.FMT.format(bar=bar, counter=counter, **kw)

    def close(self) -> None:
        # keep the last bar on screen
        print(file=self.file)


def random_polytope(
    dim: int,
    count: int,
    seed: Optional[int] = None,
    denominator: int = 8,
) -> Polytope:
    """Return the hull of *count* random rational points of the unit cube.

    Coordinates are multiples of ``1 / denominator``. The result is
    reproducible for a given *seed*; at least ``dim + 1`` points are
    drawn so the hull is full-dimensional.

    Example:
        >>> P = random_polytope(2, 6, seed=1)
        >>> P.dim
        2

    """
    rng = random.Random(seed)

    def point() -> tuple[Fraction, ...]:
        return tuple(Fraction(rng.randint(0, denominator), denominator)
                     for _ in range(dim))

    while True:
        P = conv_hull(point() for _ in range(max(count, dim + 1)))
        if P.dim == dim:
            return P


def random_nested_pair(
    dim: int,
    count: int = 6,
    seed: Optional[int] = None,
) -> tuple[Polytope, Polytope]:
    """Return random polytopes ``P <= Q`` of dimension *dim*.

    *Q* is a :func:`random_polytope` and *P* is the hull of the
    midpoints between its barycenter and some of its vertices.
    """
    rng = random.Random(seed)
    Q = random_polytope(dim, count, seed=rng.randrange(2 ** 32))
    center = Q.barycenter()
    chosen = rng.sample(Q.vertices, k=min(len(Q.vertices), dim + 1))
    P = conv_hull(
        tuple((c + x) / 2 for c, x in zip(center, v)) for v in chosen
    )
    return P, Q
