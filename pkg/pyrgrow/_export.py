from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union
import logging

from pyrgrow._exceptions import InputError, UnsupportedDimension
from pyrgrow._types import AnyPath
from pyrgrow._util import dot, vsub
from pyrgrow.extension import GrowthChain, QuasiChain
from pyrgrow.kernel import Polytope

logger = logging.getLogger('pyrgrow')

_Exportable = Union[GrowthChain, QuasiChain, Polytope]


def export_off(
    obj: _Exportable,
    destination: AnyPath,
    step: Optional[int] = None,
    digits: int = 6,
) -> list[Path]:
    """Write polytopes of *obj* as OFF meshes and return the paths.

    Coordinates are decimal approximations with *digits* fractional
    digits, so the files are marked ``# approximate``. When *obj* is a
    chain and *step* is ``None``, every intermediate polytope ``i`` is
    written to ``<destination stem>-<i>.off``; otherwise the single
    polytope (or step *step* of the chain) goes to *destination*.

    >>> pyrgrow.export_off(chain, 'growth.off', step=2, digits=4)
    [PosixPath('growth.off')]

    Args:
        obj: a :class:`GrowthChain`, :class:`QuasiChain` or :class:`Polytope`
        destination: path of the file to write
        step: index of the chain polytope to write
        digits: number of fractional digits

    """
    if digits < 0:
        raise InputError(f'digits must be non-negative: {digits}')
    path = Path(destination).expanduser()
    if isinstance(obj, Polytope):
        polytopes: Sequence[Polytope] = [obj]
        step = 0
    else:
        polytopes = obj.polytopes
    if step is not None:
        if not 0 <= step < len(polytopes):
            raise InputError(f'no step {step} in a chain of {len(polytopes) - 1} steps')
        _write(polytopes[step], path, digits)
        return [path]
    paths = []
    for i, P in enumerate(polytopes):
        target = path.with_name(f'{path.stem}-{i}{path.suffix or ".off"}')
        _write(P, target, digits)
        paths.append(target)
    return paths


def _write(P: Polytope, path: Path, digits: int) -> None:
    if P.ambient_dim > 3:
        raise UnsupportedDimension(
            f'cannot export a polytope in dimension {P.ambient_dim}')
    faces = _faces(P)
    edges = len(P.edges()) if P.dim >= 2 else 0
    logger.debug('writing %s: %d vertices, %d faces', path, len(P.vertices), len(faces))
    with path.open('w', encoding='utf-8') as fh:
        print('OFF', file=fh)
        print(f'# approximate: coordinates rounded to {digits} digits', file=fh)
        print(len(P.vertices), len(faces), edges, file=fh)
        for v in P.vertices:
            padded = tuple(v) + (Fraction(0),) * (3 - len(v))
            print(' '.join(_decimal(x, digits) for x in padded), file=fh)
        for face in faces:
            print(len(face), *face, file=fh)


def _faces(P: Polytope) -> list[list[int]]:
    if P.dim < 2:
        return [list(range(len(P.vertices)))]
    if P.dim == 2:
        return [_cycle(P, range(len(P.vertices)))]
    faces = []
    for i, facet in enumerate(P.facets):
        cycle = _cycle(P.facet_polytope(i), facet.vertices)
        if _orientation(P, cycle, facet.normal) < 0:
            cycle.reverse()
        faces.append(cycle)
    return faces


def _cycle(polygon: Polytope, indices: Sequence[int]) -> list[int]:
    """Return *indices* in boundary order of the 2-polytope *polygon*.

    *indices* are the owner's indices of the polygon's vertices; both
    follow the lexicographic vertex order.
    """
    order = [0]
    previous = -1
    while len(order) < len(polygon.vertices):
        nxt = next(j for j in polygon.neighbors(order[-1]) if j != previous)
        previous = order[-1]
        order.append(nxt)
    lookup = sorted(indices)
    return [lookup[i] for i in order]


def _orientation(P: Polytope, cycle: Sequence[int], normal) -> Fraction:
    a, b, c = (P.vertices[i] for i in cycle[:3])
    u, w = vsub(b, a), vsub(c, a)
    cross = (u[1] * w[2] - u[2] * w[1],
             u[2] * w[0] - u[0] * w[2],
             u[0] * w[1] - u[1] * w[0])
    return dot(cross, normal)


def _decimal(x: Fraction, digits: int) -> str:
    scaled = round(x * 10 ** digits)
    sign = '-' if scaled < 0 else ''
    whole, frac = divmod(abs(scaled), 10 ** digits)
    if digits == 0:
        return f'{sign}{whole}'
    return f'{sign}{whole}.{frac:0{digits}d}'


