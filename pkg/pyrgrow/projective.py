"""
Projective transformations of rational points and polytopes.

A :class:`ProjectiveMap` of n-space is an invertible (n+1)x(n+1)
rational matrix acting on homogeneous coordinates ``(x, 1)``. Points
where the last homogeneous coordinate vanishes are sent to infinity.
"""

from collections.abc import Sequence
from fractions import Fraction
from typing import Optional
import logging

from pyrgrow import _linalg
from pyrgrow._config import config
from pyrgrow._exceptions import (
    CrossesInfinity,
    DivergenceSuspected,
    InvalidFrame,
    InvalidStep,
    NoSeparatingFunctional,
    StepInvalidAfterMap,
)
from pyrgrow._types import Point, PointLike, RationalLike, Rows
from pyrgrow._util import (
    barycenter,
    dot,
    parse_point,
    parse_rational,
    point_str,
    sq_dist,
)
from pyrgrow.extension import GrowthChain, make_step
from pyrgrow.kernel import AffineSubspace, Hyperplane, Polytope, conv_hull

logger = logging.getLogger('pyrgrow')


class ProjectiveMap:
    """A projective transformation of rational n-space.

    Example:

        >>> M = ProjectiveMap([[1, 0, 0], [0, 1, 0], [0, 1, 1]])
        >>> M((2, 1))
        (Fraction(1, 1), Fraction(1, 2))

    """

    __slots__ = 'matrix',

    def __init__(self, matrix: Sequence[Sequence[RationalLike]]):
        rows = [[parse_rational(x) for x in row] for row in matrix]
        if not rows or any(len(row) != len(rows) for row in rows):
            raise ValueError('projective maps need a square matrix')
        if _linalg.determinant(rows) == 0:
            raise ValueError('projective maps need an invertible matrix')
        self.matrix: tuple[tuple[Fraction, ...], ...] = tuple(map(tuple, rows))

    def __repr__(self) -> str:
        return f'ProjectiveMap(dim={self.dim})'

    def __eq__(self, other) -> bool:
        # equal up to a nonzero scalar
        if not isinstance(other, ProjectiveMap):
            return NotImplemented
        return _normalized(self.matrix) == _normalized(other.matrix)

    def __hash__(self) -> int:
        return hash(_normalized(self.matrix))

    def __call__(self, x: PointLike) -> Point:
        return self.apply(x)

    def __matmul__(self, other: 'ProjectiveMap') -> 'ProjectiveMap':
        return self.compose(other)

    @classmethod
    def identity(cls, n: int) -> 'ProjectiveMap':
        return cls(_linalg.identity(n + 1))

    @classmethod
    def affine(
        cls,
        linear: Sequence[Sequence[RationalLike]],
        translation: Sequence[RationalLike],
    ) -> 'ProjectiveMap':
        """Return the affine map ``x -> linear @ x + translation``."""
        n = len(translation)
        rows: Rows = [
            [parse_rational(x) for x in row] + [parse_rational(t)]
            for row, t in zip(linear, translation)
        ]
        rows.append([Fraction(0)] * n + [Fraction(1)])
        return cls(rows)

    @property
    def dim(self) -> int:
        return len(self.matrix) - 1

    def denominator(self, x: PointLike) -> Fraction:
        """Return the last homogeneous coordinate of the image of *x*."""
        pt = parse_point(x)
        return dot(self.matrix[-1], pt + (Fraction(1),))

    def exceptional_hyperplane(self) -> Optional[Hyperplane]:
        """Return the hyperplane sent to infinity (``None`` if affine)."""
        *a, c = self.matrix[-1]
        if not any(a):
            return None
        return Hyperplane(tuple(a), -c)

    def apply(self, x: PointLike) -> Point:
        """Return the image of *x*; raise :exc:`CrossesInfinity` at infinity."""
        pt = parse_point(x)
        if len(pt) != self.dim:
            raise ValueError(f'expected a point of dimension {self.dim}')
        h = _linalg.matvec(self.matrix, pt + (Fraction(1),))
        if h[-1] == 0:
            raise CrossesInfinity(f'{point_str(pt)} is sent to infinity')
        return tuple(c / h[-1] for c in h[:-1])

    def inverse(self) -> 'ProjectiveMap':
        inv = _linalg.inverse(self.matrix)
        assert inv is not None
        return ProjectiveMap(inv)

    def compose(self, other: 'ProjectiveMap') -> 'ProjectiveMap':
        """Return the map applying *other* first and then this map."""
        return ProjectiveMap(_linalg.matmul(self.matrix, other.matrix))

    def power(self, k: int) -> 'ProjectiveMap':
        """Return this map composed with itself *k* times."""
        base = self if k >= 0 else self.inverse()
        result = ProjectiveMap.identity(self.dim)
        for _ in range(abs(k)):
            result = base.compose(result)
        return result

    def conjugate(self, other: 'ProjectiveMap') -> 'ProjectiveMap':
        """Return ``other^-1 . self . other``."""
        return other.inverse().compose(self.compose(other))


def _normalized(matrix: Sequence[Sequence[Fraction]]) -> tuple:
    flat = [x for row in matrix for x in row]
    pivot = next(x for x in flat if x != 0)
    return tuple(tuple(x / pivot for x in row) for row in matrix)


def map_to_infinity(f: Polytope, keep: Polytope) -> ProjectiveMap:
    """Return a map sending the affine hull of face *f* of *keep* to infinity.

    The vanishing functional is the sum of the slacks of the facets of
    *keep* through *f*; it is positive at the vertices of *keep* off
    *f*. Raises :exc:`NoSeparatingFunctional` if no such functional is
    found, for instance when *f* is not a proper face of *keep*.
    """
    through = keep.facets_containing(f.vertices)
    if not through:
        raise NoSeparatingFunctional('no facet of the polytope contains the face')
    n = keep.ambient_dim
    lin = [Fraction(0)] * n
    const = Fraction(0)
    for i in through:
        facet = keep.facets[i]
        lin = [x - a for x, a in zip(lin, facet.normal)]
        const += facet.offset
    off = [x for x in keep.vertices if x not in f.vertices]
    if not off or any(dot(lin, x) + const <= 0 for x in off):
        raise NoSeparatingFunctional('the face cannot be moved to infinity')
    c = barycenter(off)
    rows: Rows = []
    for i in range(n):
        row = [Fraction(1 if i == j else 0) for j in range(n)]
        rows.append(row + [-c[i]])
    rows.append(lin + [const])
    logger.debug('map to infinity: center %s', point_str(c))
    return ProjectiveMap(rows)


class PsiFrame:
    """Data for a slab homothety inside the subspace *A*.

    *H* and *Hp* are parallel, distinct hyperplanes of *A* and *w* lies
    on *H*. The maps :meth:`map` fix *Hp* pointwise and act on *H* as
    homotheties centered at *w*.
    """

    __slots__ = 'space', 'H', 'Hp', 'center', '_h'

    def __init__(
        self,
        space: AffineSubspace,
        H: Hyperplane,
        Hp: Hyperplane,
        center: PointLike,
    ):
        w = parse_point(center)
        if not space.contains(w):
            raise InvalidFrame('the center is not in the subspace')
        if not H.contains(w):
            raise InvalidFrame('the center is not on H')
        height = Hp.value(w)
        if height == 0:
            raise InvalidFrame('H and Hp coincide')
        hp = [dot(Hp.normal, d) for d in space.directions]
        hh = [dot(H.normal, d) for d in space.directions]
        if not any(hp) or not any(hh) or _linalg.rank([hp, hh], len(hp)) != 1:
            raise InvalidFrame('H and Hp are not parallel hyperplanes of the subspace')
        self.space = space
        self.H = H
        self.Hp = Hp
        self.center = w
        # affine functional vanishing on Hp and equal to 1 on H
        self._h = (tuple(a / height for a in Hp.normal), -Hp.offset / height)

    def height(self, x: Point) -> Fraction:
        a, b = self._h
        return dot(a, x) + b

    def map(self, lam: RationalLike) -> ProjectiveMap:
        lam = parse_rational(lam)
        if not 0 < lam <= 1:
            raise InvalidFrame(f'the coefficient must lie in (0, 1]: {lam}')
        return _psi_matrix(self._h[0], self._h[1], self.center, lam)


def _psi_matrix(
    alpha: Sequence[Fraction],
    beta: Fraction,
    w: Point,
    lam: Fraction,
) -> ProjectiveMap:
    # I + kappa * (w, 1) (alpha, beta)^T
    kappa = 1 / lam - 1
    col = list(w) + [Fraction(1)]
    row = list(alpha) + [beta]
    n = len(col)
    rows = [
        [Fraction(1 if i == j else 0) + kappa * col[i] * row[j] for j in range(n)]
        for i in range(n)
    ]
    return ProjectiveMap(rows)


def psi_lambda(
    A: AffineSubspace,
    H: Hyperplane,
    Hp: Hyperplane,
    w: PointLike,
    lam: RationalLike,
) -> ProjectiveMap:
    """Return the map fixing *Hp* and contracting *H* toward *w* by *lam*.

    Example:

        >>> plane = AffineSubspace((0, 0), [(1, 0), (0, 1)])
        >>> psi = psi_lambda(plane, Hyperplane((0, 1), 1), Hyperplane((0, 1), 0),
        ...                  (0, 1), '1/2')
        >>> psi((2, 1))
        (Fraction(1, 1), Fraction(1, 1))

    """
    return PsiFrame(A, H, Hp, w).map(lam)


def psi_limit_check(
    frame: PsiFrame,
    z: PointLike,
    tol: RationalLike,
) -> int:
    """Return the least *k* with ``|psi(2**-k)(z) - w| < tol``.

    Raises :exc:`InvalidFrame` if *z* lies on *Hp* (it is then fixed)
    and :exc:`DivergenceSuspected` if no *k* up to the configured cap
    works.
    """
    pt = parse_point(z)
    tol = parse_rational(tol)
    if frame.height(pt) == 0:
        raise InvalidFrame('the point lies on the fixed hyperplane')
    bound = tol * tol
    for k in range(config.max_power + 1):
        image = frame.map(Fraction(1, 2 ** k)).apply(pt)
        if sq_dist(image, frame.center) < bound:
            logger.debug('limit check: k=%d', k)
            return k
    raise DivergenceSuspected(f'no k up to {config.max_power} brings the point '
                              'within tolerance')


def _check_side(M: ProjectiveMap, points: Sequence[Point]) -> None:
    signs = {M.denominator(x) > 0 for x in points}
    if any(M.denominator(x) == 0 for x in points) or len(signs) > 1:
        raise CrossesInfinity('the polytope meets the exceptional hyperplane')


def pushforward(M: ProjectiveMap, P: Polytope) -> Polytope:
    """Return the image of *P* under *M*.

    Example:

        >>> half = ProjectiveMap.affine([['1/2', 0], [0, '1/2']], [0, 0])
        >>> square = conv_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
        >>> pushforward(half, square) == conv_hull([(0, 0), ('1/2', 0),
        ...                                         (0, '1/2'), ('1/2', '1/2')])
        True

    """
    _check_side(M, P.vertices)
    return conv_hull(M.apply(x) for x in P.vertices)


def pushforward_chain(M: ProjectiveMap, chain: GrowthChain) -> GrowthChain:
    """Return the image of *chain* under *M* with every step re-verified."""
    _check_side(M, list(chain.initial.vertices) + chain.apexes)
    current = pushforward(M, chain.initial)
    initial = current
    steps = []
    for i, step in enumerate(chain.steps, 1):
        apex = M.apply(step.apex)
        try:
            image = make_step(current, apex)
        except InvalidStep as exc:
            raise StepInvalidAfterMap(f'step {i} is not pyramidal after the map') \
                from exc
        steps.append(image)
        current = conv_hull(current.vertices + (apex,))
    return GrowthChain(initial, steps)
