"""
Facets of a polytope seen from a point.

A facet *s* of ``Pp`` is seen from *v* past a reference polytope
``ref`` when the segments from *v* to the relative interior of *s*
touch ``ref`` only at their endpoints in *s*. This is decided exactly
by testing whether ``conv(s | {v}) & ref == s``.
"""

from collections.abc import Iterator

from pyrgrow._types import Point, PointLike
from pyrgrow._util import parse_point, point_str
from pyrgrow.kernel import Polytope, conv_hull, intersect_polytopes


class VisibleFacetSet:
    """Facets of *target* seen from *viewpoint* past *reference*.

    Iterating yields facet indices of *target*.
    """

    __slots__ = 'viewpoint', 'target', 'reference', 'facets'

    def __init__(
        self,
        viewpoint: Point,
        target: Polytope,
        reference: Polytope,
        facets: tuple[int, ...],
    ):
        self.viewpoint = viewpoint
        self.target = target
        self.reference = reference
        self.facets = facets

    def __repr__(self) -> str:
        return (f'VisibleFacetSet(viewpoint={point_str(self.viewpoint)}, '
                f'facets={self.facets})')

    def __iter__(self) -> Iterator[int]:
        return iter(self.facets)

    def __len__(self) -> int:
        return len(self.facets)

    def __contains__(self, index: object) -> bool:
        return index in self.facets

    def polytopes(self) -> list[Polytope]:
        return [self.target.facet_polytope(i) for i in self.facets]


def visible_facets(P: Polytope, v: PointLike) -> list[int]:
    """Return the indices of the facets of *P* that *v* lies strictly beyond.

    Example:

        >>> square = conv_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
        >>> visible_facets(square, (2, '1/2'))
        [3]

    """
    pt = parse_point(v)
    if P.contains_point(pt):
        return []
    return [i for i, f in enumerate(P.facets) if f.value(pt) > 0]


def is_unobstructed(Pp: Polytope, index: int, v: Point, ref: Polytope) -> bool:
    """Return ``True`` if facet *index* of *Pp* is seen from *v* past *ref*."""
    s = Pp.facet_polytope(index)
    if s.frame.contains(v):
        return False
    cone = conv_hull(s.vertices + (v,))
    cut = intersect_polytopes(cone, ref)
    return cut is not None and cut == s


def unobstructed_visible_facets(
    Pp: Polytope,
    v: PointLike,
    ref: Polytope,
) -> VisibleFacetSet:
    """Return the facets of *Pp* seen from *v* without obstruction by *ref*."""
    pt = parse_point(v)
    if ref.contains_point(pt):
        return VisibleFacetSet(pt, Pp, ref, ())
    facets = tuple(i for i in range(len(Pp.facets))
                   if is_unobstructed(Pp, i, pt, ref))
    return VisibleFacetSet(pt, Pp, ref, facets)


def visible_boundary(Pp: Polytope, v: PointLike, ref: Polytope) -> list[Polytope]:
    """Return the visible part of the boundary of *Pp* as a list of facets."""
    return unobstructed_visible_facets(Pp, v, ref).polytopes()


def sees_single_facet(P: Polytope, v: PointLike) -> bool:
    """Return ``True`` if stacking *v* onto *P* is a pyramidal step."""
    pt = parse_point(v)
    return P.frame.contains(pt) and len(visible_facets(P, v)) == 1
