"""
Exact polytope primitives.

Every quantity in this module is a :class:`fractions.Fraction`; the
only inexact value ever produced is the enclosing interval of a square
root returned by :func:`hausdorff`.

Polytopes are stored with their vertices in lexicographic order and
with facets described relative to their own affine hull, so a triangle
in 3-space has three facets (its edges) and no equation for the plane
it spans among its facets; that equation is available through
:meth:`Polytope.halfspaces`.
"""

from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import NamedTuple, Optional, Union
import enum
import logging

from pyrgrow import _linalg
from pyrgrow._config import config
from pyrgrow._exceptions import InputError, NotAVeeInstance, NotTraversing
from pyrgrow._types import Point, PointLike, Vector
from pyrgrow._util import (
    barycenter,
    dot,
    normalize_direction,
    normalize_functional,
    parse_point,
    point_str,
    sq_dist,
    unique_points,
    vadd,
    vscale,
    vsub,
)

logger = logging.getLogger('pyrgrow')


class Membership(str, enum.Enum):
    """Position of a point relative to a polytope (within its affine hull)."""
    INTERIOR = 'interior'
    BOUNDARY = 'boundary'
    OUTSIDE = 'outside'


class HalfSpace(NamedTuple):
    """The closed half-space ``normal . x <= offset``."""
    normal: Vector
    offset: Fraction

    def value(self, x: Point) -> Fraction:
        """Return ``normal . x - offset``; nonpositive inside."""
        return dot(self.normal, x) - self.offset

    def contains(self, x: Point) -> bool:
        return self.value(x) <= 0

    def boundary(self) -> 'Hyperplane':
        return Hyperplane(self.normal, self.offset)

    def flipped(self) -> 'HalfSpace':
        """Return the opposite closed half-space."""
        return HalfSpace(tuple(-a for a in self.normal), -self.offset)


class Hyperplane(NamedTuple):
    """The hyperplane ``normal . x == offset``."""
    normal: Vector
    offset: Fraction

    def value(self, x: Point) -> Fraction:
        return dot(self.normal, x) - self.offset

    def contains(self, x: Point) -> bool:
        return self.value(x) == 0

    def below(self) -> HalfSpace:
        return HalfSpace(self.normal, self.offset)

    def above(self) -> HalfSpace:
        return HalfSpace(self.normal, self.offset).flipped()


Constraint = Union[HalfSpace, Hyperplane]


class Facet(NamedTuple):
    """A facet given by its supporting half-space and incident vertices.

    The vertex indices refer to the owning polytope's vertex order.
    """
    halfspace: HalfSpace
    vertices: tuple[int, ...]

    @property
    def normal(self) -> Vector:
        return self.halfspace.normal

    @property
    def offset(self) -> Fraction:
        return self.halfspace.offset

    def value(self, x: Point) -> Fraction:
        return self.halfspace.value(x)


class AffineSubspace:
    """An affine subspace ``base + span(directions)``.

    The directions are kept in reduced row echelon form, so the
    coordinates of a point of the subspace are read off at the pivot
    columns of the direction matrix.
    """

    __slots__ = 'base', 'directions', 'pivots'

    def __init__(self, base: Point, directions: Sequence[Vector] = ()):
        self.base = parse_point(base)
        rows, pivots = _linalg.rref([list(d) for d in directions], len(base))
        self.directions: tuple[Vector, ...] = tuple(tuple(r) for r in rows)
        self.pivots: tuple[int, ...] = pivots

    def __repr__(self) -> str:
        return f'AffineSubspace(base={point_str(self.base)}, dim={self.dim})'

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineSubspace):
            return NotImplemented
        return self.directions == other.directions and self.contains(other.base)

    def __hash__(self) -> int:
        return hash(self.directions)

    @property
    def ambient_dim(self) -> int:
        return len(self.base)

    @property
    def dim(self) -> int:
        return len(self.directions)

    def coords(self, x: Point) -> Vector:
        """Return the intrinsic coordinates of *x* (assumed in the subspace)."""
        d = vsub(x, self.base)
        return tuple(d[p] for p in self.pivots)

    def point(self, y: Vector) -> Point:
        """Return the ambient point with intrinsic coordinates *y*."""
        x = self.base
        for c, d in zip(y, self.directions):
            if c:
                x = vadd(x, vscale(c, d))
        return x

    def contains(self, x: Point) -> bool:
        return self.point(self.coords(x)) == tuple(x)

    def scatter(self, c: Vector) -> Vector:
        """Return the ambient covector acting like *c* on intrinsic coordinates."""
        a = [Fraction(0)] * self.ambient_dim
        for ci, p in zip(c, self.pivots):
            a[p] = ci
        return tuple(a)

    def equations(self) -> list[Hyperplane]:
        """Return hyperplanes whose intersection is this subspace."""
        normals = _linalg.nullspace([list(d) for d in self.directions],
                                    self.ambient_dim)
        return [Hyperplane(a, dot(a, self.base)) for a in normals]

    def hyperplane_through(self, points: Sequence[Point]) -> Hyperplane:
        """Return the hyperplane of this subspace spanned by *points*.

        The result is an ambient hyperplane whose normal vanishes on
        the directions orthogonal to the pivots, so it is only
        meaningful for points of the subspace. Raises
        :exc:`ValueError` if the points do not span a hyperplane.
        """
        k = self.dim
        rows = [list(self.coords(p)) + [Fraction(-1)] for p in points]
        basis = _linalg.nullspace(rows, k + 1)
        if len(basis) != 1 or not any(basis[0][:k]):
            raise ValueError('points do not span a hyperplane of the subspace')
        c, b = basis[0][:k], basis[0][k]
        a = self.scatter(c)
        return Hyperplane(a, b + dot(a, self.base))

    def project(self, x: Point) -> Point:
        """Return the orthogonal projection of *x* onto the subspace."""
        if not self.directions:
            return self.base
        gram = [[dot(u, w) for w in self.directions] for u in self.directions]
        d = vsub(x, self.base)
        rhs = [dot(u, d) for u in self.directions]
        t = _linalg.solve(gram, rhs, len(self.directions))
        assert t is not None  # the Gram matrix of a basis is invertible
        y = self.base
        for c, u in zip(t, self.directions):
            y = vadd(y, vscale(c, u))
        return y


def affine_hull(points: Iterable[PointLike]) -> AffineSubspace:
    """Return the affine hull of *points* based at the lex-least point."""
    pts = sorted(unique_points(parse_point(p) for p in points))
    if not pts:
        raise InputError('cannot take the affine hull of no points')
    base = pts[0]
    return AffineSubspace(base, [vsub(p, base) for p in pts[1:]])


class Polytope:
    """A convex polytope given by its vertices and facets.

    Polytopes are normally built with :func:`conv_hull`. Two polytopes
    are equal when they have the same vertex set.

    Attributes:
        vertices: the vertices in lexicographic order
        facets: the facets, relative to the affine hull of the polytope
        frame: the affine hull, based at the first vertex

    """

    __slots__ = 'vertices', 'facets', 'frame', '_cache'

    def __init__(
        self,
        vertices: Sequence[Point],
        facets: Sequence[Facet],
        frame: AffineSubspace,
    ):
        self.vertices: tuple[Point, ...] = tuple(vertices)
        self.facets: tuple[Facet, ...] = tuple(facets)
        self.frame = frame
        self._cache: dict = {}

    def __repr__(self) -> str:
        return (f'Polytope(dim={self.dim}, vertices={len(self.vertices)}, '
                f'facets={len(self.facets)})')

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @property
    def dim(self) -> int:
        return self.frame.dim

    def barycenter(self) -> Point:
        """Return the average of the vertices (a relative interior point)."""
        return barycenter(self.vertices)

    def vertex_index(self, x: Point) -> int:
        """Return the index of vertex *x*; raise :exc:`ValueError` if absent."""
        return self.vertices.index(tuple(x))

    def is_vertex(self, x: Point) -> bool:
        return tuple(x) in self.vertices

    def contains_point(self, x: Point) -> bool:
        """Return ``True`` if *x* is in the closed polytope."""
        return (self.frame.contains(x)
                and all(f.value(x) <= 0 for f in self.facets))

    def halfspaces(self) -> tuple[list[HalfSpace], list[Hyperplane]]:
        """Return an ambient H-description: facet half-spaces and equations."""
        return [f.halfspace for f in self.facets], self.frame.equations()

    def facet_polytope(self, index: int) -> 'Polytope':
        """Return facet *index* as a polytope of its own."""
        key = ('facet', index)
        if key not in self._cache:
            verts = [self.vertices[i] for i in self.facets[index].vertices]
            self._cache[key] = conv_hull(verts)
        return self._cache[key]

    def facet_index(self, vertices: Iterable[Point]) -> Optional[int]:
        """Return the index of the facet with exactly *vertices*, if any."""
        target = {tuple(v) for v in vertices}
        for i, f in enumerate(self.facets):
            if {self.vertices[j] for j in f.vertices} == target:
                return i
        return None

    def facets_containing(self, points: Iterable[Point]) -> list[int]:
        """Return the indices of facets whose hyperplanes contain *points*."""
        pts = list(points)
        return [i for i, f in enumerate(self.facets)
                if all(f.value(x) == 0 for x in pts)]

    def _closure(self, indices: Iterable[int]) -> frozenset[int]:
        # smallest face containing the given vertices
        idx = set(indices)
        result = set(range(len(self.vertices)))
        for f in self.facets:
            if idx.issubset(f.vertices):
                result.intersection_update(f.vertices)
        return frozenset(result)

    def is_face(self, points: Iterable[Point]) -> bool:
        """Return ``True`` if *points* are exactly the vertices of a face."""
        try:
            idx = {self.vertex_index(p) for p in points}
        except ValueError:
            return False
        return bool(idx) and self._closure(idx) == idx

    def edges(self) -> list[tuple[int, int]]:
        """Return the edges as pairs of vertex indices."""
        if 'edges' not in self._cache:
            n = len(self.vertices)
            self._cache['edges'] = [
                (i, j) for i in range(n) for j in range(i + 1, n)
                if self.dim >= 1 and self._closure((i, j)) == {i, j}
            ]
        return self._cache['edges']

    def neighbors(self, index: int) -> list[int]:
        """Return the vertex indices adjacent to vertex *index*."""
        return [j if i == index else i
                for i, j in self.edges() if index in (i, j)]

    def ridges(self) -> list[tuple[int, int]]:
        """Return pairs of facet indices meeting in a face of codimension 2."""
        if 'ridges' not in self._cache:
            result = []
            sets = [set(f.vertices) for f in self.facets]
            for i, a in enumerate(sets):
                for j in range(i + 1, len(sets)):
                    common = a & sets[j]
                    if not common:
                        continue
                    holders = [k for k, c in enumerate(sets) if common <= c]
                    if holders == [i, j]:
                        result.append((i, j))
            self._cache['ridges'] = result
        return self._cache['ridges']

    def faces(self) -> list[frozenset[int]]:
        """Return all nonempty faces as sets of vertex indices.

        The polytope itself is included; faces are sorted by size.
        """
        if 'faces' not in self._cache:
            facet_sets = {frozenset(f.vertices) for f in self.facets}
            found = set(facet_sets)
            frontier = set(facet_sets)
            while frontier:
                new = {a & b for a in frontier for b in facet_sets}
                new = {s for s in new if s} - found
                found |= new
                frontier = new
            found.add(frozenset(range(len(self.vertices))))
            self._cache['faces'] = sorted(found, key=lambda s: (len(s), sorted(s)))
        return self._cache['faces']

    def codim2_faces(self) -> list[frozenset[int]]:
        """Return the faces of dimension ``dim - 2`` as vertex-index sets."""
        sets = [frozenset(self.facets[i].vertices) & frozenset(self.facets[j].vertices)
                for i, j in self.ridges()]
        return sorted(set(sets), key=sorted)

    def face_points(self, face: Iterable[int]) -> list[Point]:
        return [self.vertices[i] for i in sorted(face)]


# Convex hulls ##############################################################

def _plane(ys: Sequence[Vector], k: int) -> tuple[Vector, Fraction]:
    # c.y == b through the given intrinsic points (spanning a hyperplane)
    rows = [list(y) + [Fraction(-1)] for y in ys]
    basis = _linalg.nullspace(rows, k + 1)
    assert len(basis) == 1
    return basis[0][:k], basis[0][k]


def _initial_simplex(ys: Sequence[Vector], k: int) -> list[int]:
    chosen = [0]
    diffs: list[list[Fraction]] = []
    for i in range(1, len(ys)):
        d = list(vsub(ys[i], ys[0]))
        if _linalg.rank(diffs + [d], k) > len(diffs):
            diffs.append(d)
            chosen.append(i)
            if len(chosen) == k + 1:
                break
    return chosen


class _HullFacet:
    __slots__ = 'c', 'b', 'on'

    def __init__(self, c: Vector, b: Fraction, on: set[int]):
        self.c = c
        self.b = b
        self.on = on

    def value(self, y: Vector) -> Fraction:
        return dot(self.c, y) - self.b


def _oriented(c: Vector, b: Fraction, center: Vector) -> tuple[Vector, Fraction]:
    if dot(c, center) > b:
        return tuple(-x for x in c), -b
    return c, b


def _beneath_beyond(ys: Sequence[Vector], k: int) -> list[_HullFacet]:
    """Return the facets of the full-dimensional hull of *ys* in k-space."""
    simplex = _initial_simplex(ys, k)
    center = barycenter([ys[i] for i in simplex])
    facets: list[_HullFacet] = []
    for j in simplex:
        pts = [i for i in simplex if i != j]
        c, b = _oriented(*_plane([ys[i] for i in pts], k), center)
        facets.append(_HullFacet(c, b, set(pts)))

    for p in range(len(ys)):
        if p in simplex:
            continue
        y = ys[p]
        values = [f.value(y) for f in facets]
        visible = [f for f, v in zip(facets, values) if v > 0]
        if not visible:
            for f, v in zip(facets, values):
                if v == 0:
                    f.on.add(p)
            continue
        hidden = [f for f, v in zip(facets, values) if v <= 0]
        new: dict[tuple[Vector, Fraction], _HullFacet] = {}
        for f in visible:
            for g in hidden:
                ridge = f.on & g.on
                if not ridge:
                    continue
                if sum(1 for h in facets if ridge <= h.on) != 2:
                    continue
                if g.value(y) == 0:
                    g.on.add(p)
                    continue
                pts = sorted(ridge) + [p]
                c, b = _oriented(*_plane_from(ys, pts, k), center)
                key = normalize_functional(c, b)
                if key in new:
                    new[key].on.update(pts)
                else:
                    new[key] = _HullFacet(c, b, set(pts))
        facets = hidden + list(new.values())
    return facets


def _plane_from(
    ys: Sequence[Vector],
    indices: Sequence[int],
    k: int,
) -> tuple[Vector, Fraction]:
    # the ridge may carry redundant points; select a spanning subset
    base = ys[indices[-1]]
    chosen = [indices[-1]]
    diffs: list[list[Fraction]] = []
    for i in indices[:-1]:
        d = list(vsub(ys[i], base))
        if _linalg.rank(diffs + [d], k) > len(diffs):
            diffs.append(d)
            chosen.append(i)
            if len(chosen) == k:
                break
    return _plane([ys[i] for i in chosen], k)


def conv_hull(points: Iterable[PointLike]) -> Polytope:
    """Return the convex hull of *points*.

    Arguments:
        points: a nonempty collection of points of one ambient dimension

    Example:

        >>> P = conv_hull([(0, 0), (1, 0), (0, 1), ('1/4', '1/4')])
        >>> len(P.vertices)
        3

    """
    pts = sorted(unique_points(parse_point(p) for p in points))
    if not pts:
        raise InputError('cannot take the convex hull of no points')
    if len({len(p) for p in pts}) != 1:
        raise InputError('points have different ambient dimensions')
    frame = AffineSubspace(pts[0], [vsub(p, pts[0]) for p in pts[1:]])
    k = frame.dim
    if k == 0:
        return Polytope(pts, [], frame)
    ys = [frame.coords(p) for p in pts]
    if k == 1:
        lo = min(range(len(pts)), key=lambda i: ys[i][0])
        hi = max(range(len(pts)), key=lambda i: ys[i][0])
        raw = [
            ((Fraction(-1),), -ys[lo][0], {lo}),
            ((Fraction(1),), ys[hi][0], {hi}),
        ]
    else:
        raw = [(f.c, f.b, f.on) for f in _beneath_beyond(ys, k)]

    # a point is a vertex if the facets through it meet only in it
    vertex_ids = []
    for i in range(len(pts)):
        holders = [on for _, _, on in raw if i in on]
        if holders and set.intersection(*holders) == {i}:
            vertex_ids.append(i)
    vertices = [pts[i] for i in vertex_ids]
    renumber = {old: new for new, old in enumerate(vertex_ids)}
    facets = []
    for c, b, on in raw:
        a = frame.scatter(c)
        hs = HalfSpace(*normalize_functional(a, b + dot(a, frame.base)))
        facets.append(Facet(hs, tuple(sorted(renumber[i] for i in on
                                             if i in renumber))))
    facets.sort(key=lambda f: f.vertices)
    frame = AffineSubspace(vertices[0], frame.directions)
    return Polytope(vertices, facets, frame)


# Containment and intersection ##############################################

def contains(P: Polytope, x: PointLike) -> Membership:
    """Classify *x* against *P*, relative to the affine hull of *P*.

    Example:

        >>> square = conv_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
        >>> contains(square, ('1/2', '1/2'))
        <Membership.INTERIOR: 'interior'>

    """
    pt = parse_point(x)
    if len(pt) != P.ambient_dim:
        raise InputError('ambient dimensions differ')
    if not P.frame.contains(pt):
        return Membership.OUTSIDE
    values = [f.value(pt) for f in P.facets]
    if any(v > 0 for v in values):
        return Membership.OUTSIDE
    if any(v == 0 for v in values):
        return Membership.BOUNDARY
    return Membership.INTERIOR


def is_inside(P: Polytope, Q: Polytope) -> bool:
    """Return ``True`` if *P* is a subset of *Q*."""
    return all(Q.contains_point(v) for v in P.vertices)


def _cut(P: Polytope, con: Constraint) -> list[Point]:
    values = [con.value(x) for x in P.vertices]
    keep_closed = isinstance(con, HalfSpace)
    points = [x for x, v in zip(P.vertices, values)
              if v == 0 or (keep_closed and v < 0)]
    for i, j in P.edges():
        vi, vj = values[i], values[j]
        if (vi < 0 < vj) or (vj < 0 < vi):
            t = vi / (vi - vj)
            xi, xj = P.vertices[i], P.vertices[j]
            points.append(tuple(a + t * (b - a) for a, b in zip(xi, xj)))
    return points


def intersect(P: Polytope, constraints: Iterable[Constraint]) -> Optional[Polytope]:
    """Return the intersection of *P* with half-spaces and hyperplanes.

    ``None`` is returned when the intersection is empty.

    Example:

        >>> square = conv_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
        >>> half = intersect(square, [HalfSpace((1, 0), Fraction(1, 2))])
        >>> [tuple(map(str, v)) for v in half.vertices]
        [('0', '0'), ('0', '1'), ('1/2', '0'), ('1/2', '1')]

    """
    current = P
    for con in constraints:
        con = type(con)(tuple(Fraction(a) for a in con.normal), Fraction(con.offset))
        if isinstance(con, HalfSpace) and all(
            con.value(x) <= 0 for x in current.vertices
        ):
            continue
        points = _cut(current, con)
        if not points:
            return None
        current = conv_hull(points)
    return current


def intersect_polytopes(P: Polytope, Q: Polytope) -> Optional[Polytope]:
    """Return ``P & Q`` or ``None`` if they are disjoint."""
    halfspaces, equations = Q.halfspaces()
    return intersect(P, [*equations, *halfspaces])


def section(P: Polytope, hyperplane: Hyperplane) -> Optional[Polytope]:
    return intersect(P, [hyperplane])


# Distances #################################################################

class DistanceInterval(NamedTuple):
    """Rational bounds ``lo <= d <= hi`` on a real distance *d*."""
    lo: Fraction
    hi: Fraction

    def __add__(self, other):  # type: ignore[override]
        if not isinstance(other, DistanceInterval):
            return NotImplemented
        return DistanceInterval(self.lo + other.lo, self.hi + other.hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @classmethod
    def zero(cls) -> 'DistanceInterval':
        return cls(Fraction(0), Fraction(0))

    @classmethod
    def from_square(cls, square: Fraction, tol: Fraction) -> 'DistanceInterval':
        """Enclose the square root of *square* in an interval of width <= *tol*.

        Perfect squares give a degenerate interval.
        """
        square = Fraction(square)
        if square < 0:
            raise ValueError('negative squared distance')
        num, den = square.numerator, square.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn == num and rd * rd == den:
            root = Fraction(rn, rd)
            return cls(root, root)
        n = ceil(1 / Fraction(tol))
        lo = Fraction(isqrt(floor(square * n * n)), n)
        return cls(lo, lo + Fraction(1, n))

    def __str__(self) -> str:
        if self.exact:
            return str(self.lo)
        return f'[{self.lo}, {self.hi}]'


def point_polytope_sq_distance(x: PointLike, P: Polytope) -> Fraction:
    """Return the exact squared Euclidean distance from *x* to *P*.

    Example:

        >>> square = conv_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
        >>> point_polytope_sq_distance((2, 2), square)
        Fraction(2, 1)

    """
    pt = parse_point(x)
    if P.contains_point(pt):
        return Fraction(0)
    best = min(sq_dist(pt, v) for v in P.vertices)
    for face in P.faces():
        if len(face) < 2:
            continue
        frame = affine_hull(P.face_points(face))
        y = frame.project(pt)
        if P.contains_point(y):
            best = min(best, sq_dist(pt, y))
    return best


def directed_sq_distance(P: Polytope, Q: Polytope) -> Fraction:
    """Return the squared distance from the farthest point of *P* to *Q*."""
    return max(point_polytope_sq_distance(v, Q) for v in P.vertices)


def hausdorff_sq(P: Polytope, Q: Polytope) -> Fraction:
    """Return the exact square of the Hausdorff distance of *P* and *Q*."""
    if P.ambient_dim != Q.ambient_dim:
        raise InputError('ambient dimensions differ')
    return max(directed_sq_distance(P, Q), directed_sq_distance(Q, P))


def hausdorff(
    P: Polytope,
    Q: Polytope,
    tol: Optional[Fraction] = None,
) -> DistanceInterval:
    """Return an interval of width at most *tol* around ``d_H(P, Q)``.

    If *tol* is not given, the configured tolerance is used.
    """
    if tol is None:
        tol = config.tolerance
    return DistanceInterval.from_square(hausdorff_sq(P, Q), tol)


# Cones #####################################################################

class Cone:
    """The pointed cone ``apex + cone(rays)``.

    Rays are stored normalized (largest absolute component 1) and
    sorted, so two cones are equal exactly when they have the same apex
    and the same extreme rays.
    """

    __slots__ = 'apex', 'rays'

    def __init__(self, apex: Point, rays: Iterable[Vector]):
        self.apex = tuple(apex)
        self.rays: tuple[Vector, ...] = tuple(sorted(
            set(normalize_direction(tuple(r)) for r in rays)
        ))

    def __repr__(self) -> str:
        return f'Cone(apex={point_str(self.apex)}, rays={len(self.rays)})'

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return self.apex == other.apex and self.rays == other.rays

    def __hash__(self) -> int:
        return hash((self.apex, self.rays))


def corner_cone(P: Polytope, w: PointLike) -> Cone:
    """Return the cone of *P* at its vertex *w*.

    Example:

        >>> square = conv_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
        >>> corner_cone(square, (0, 0)).rays
        ((Fraction(0, 1), Fraction(1, 1)), (Fraction(1, 1), Fraction(0, 1)))

    """
    pt = parse_point(w)
    i = P.vertex_index(pt)
    return Cone(pt, [vsub(P.vertices[j], pt) for j in P.neighbors(i)])


def cone_cross_section(C: Cone, H: Hyperplane) -> Polytope:
    """Return the bounded section of cone *C* by hyperplane *H*.

    Raises :exc:`NotTraversing` unless *H* crosses every ray of *C* at
    a point other than the apex.
    """
    start = H.value(C.apex)
    if start == 0:
        raise NotTraversing('the apex lies on the hyperplane')
    points = []
    for ray in C.rays:
        slope = dot(H.normal, ray)
        if slope == 0:
            raise NotTraversing(f'ray {point_str(ray)} is parallel to the hyperplane')
        t = -start / slope
        if t <= 0:
            raise NotTraversing(f'ray {point_str(ray)} points away from the hyperplane')
        points.append(vadd(C.apex, vscale(t, ray)))
    return conv_hull(points)


# Joins #####################################################################

def join_along_facet(P: Polytope, Q: Polytope, f: Polytope) -> Polytope:
    """Return ``conv(P | Q)`` for polytopes glued along a common facet *f*.

    Raises :exc:`NotAVeeInstance` if *f* is not a facet of both or if
    the dimensions do not add up.
    """
    if P.ambient_dim != Q.ambient_dim or P.ambient_dim != f.ambient_dim:
        raise NotAVeeInstance('ambient dimensions differ')
    for name, X in (('P', P), ('Q', Q)):
        if X.facet_index(f.vertices) is None:
            raise NotAVeeInstance(f'the gluing polytope is not a facet of {name}')
    joined = conv_hull(P.vertices + Q.vertices)
    expected = P.dim + Q.dim - f.dim
    if joined.dim != expected:
        raise NotAVeeInstance(
            f'the join has dimension {joined.dim}, expected {expected}'
        )
    logger.debug('join along facet: %d vertices', len(joined.vertices))
    return joined

