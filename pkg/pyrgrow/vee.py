"""
Growth toward an outside point within a ∨-instance.

Throughout this module *P* and *Q* are glued along their common facet
*f*, ``K = P ∨ Q`` is their join, and *v* is a point of the affine
hull of *Q*, on the same side of *f* as *Q* but outside *Q*. The
constructions enlarge the *Q* side toward *v* while keeping every
step pyramidal.
"""

from collections.abc import Iterator, Mapping
from fractions import Fraction
from itertools import combinations, count
from typing import NamedTuple, Optional
import logging

from pyrgrow import _linalg
from pyrgrow._chain import ChainBuilder
from pyrgrow._config import config
from pyrgrow._exceptions import (
    ConstructionError,
    CrossesInfinity,
    ExhaustedError,
    GeometryError,
    InvalidFrame,
    LambdaExhausted,
    NoProgress,
    OffsetExhausted,
    StepInvalidAfterMap,
    ThetaTooLarge,
)
from pyrgrow._types import Point, PointLike, RationalLike
from pyrgrow._util import lerp, parse_point, parse_rational, point_str
from pyrgrow.extension import GrowthChain
from pyrgrow.kernel import (
    HalfSpace,
    Hyperplane,
    Membership,
    Polytope,
    contains,
    conv_hull,
    intersect,
    intersect_polytopes,
    is_inside,
)
from pyrgrow.projective import ProjectiveMap, _psi_matrix, map_to_infinity
from pyrgrow.visibility import unobstructed_visible_facets, visible_facets

logger = logging.getLogger('pyrgrow')


class RhoSigma(NamedTuple):
    """Facet correspondences of a polytope *S* between *Q* and ``conv(Q, v)``.

    *rho* maps visible facets of *S* to visible facets of *P*; *sigma*
    maps visible facets of *P* to visible facets of ``P ∨ S``.
    """
    rho: dict[int, int]
    sigma: dict[int, int]

    @property
    def image(self) -> set[int]:
        return set(self.rho.values())


class StarResult(NamedTuple):
    holds: bool
    rho_sigma: Optional[RhoSigma] = None
    counterexample: Optional[int] = None

    def __bool__(self) -> bool:
        return self.holds


class MainSequenceTerm(NamedTuple):
    """One term of :func:`main_sequence`.

    *chain* leads from the join of the previous term to *joined*, the
    join of *polytope* with *P*. Terms from index 2 on carry the map
    *gamma* relating consecutive terms and its coefficient *lam*.
    """
    index: int
    polytope: Polytope
    joined: Polytope
    chain: GrowthChain
    gamma: Optional[ProjectiveMap] = None
    lam: Optional[Fraction] = None


def _join(P: Polytope, S: Polytope) -> Polytope:
    return conv_hull(P.vertices + S.vertices)


def _trace(K: Polytope, Q: Polytope) -> Polytope:
    # the part of a join lying in the affine hull of Q
    return conv_hull(x for x in K.vertices if Q.frame.contains(x))


# R-construction and (★) ###################################################

def r_construction(Q: Polytope, P: Polytope, f: Polytope, v: PointLike) -> Polytope:
    """Return the largest polytope between *Q* and ``conv(Q, v)`` hidden from *P*.

    ``conv(Q, v)`` is cut by the hyperplanes of the facets of ``P ∨ Q``
    that are visible from *v* and contain both a visible facet *D* of
    *P* and a visible vertex *w* of *Q* off the affine hull of *D*.
    """
    pt = parse_point(v)
    K = _join(P, Q)
    apexed = conv_hull(Q.vertices + (pt,))
    k_visible = [K.facets[i] for i in visible_facets(K, pt)]
    p_visible = [P.facet_polytope(i) for i in unobstructed_visible_facets(P, pt, K)]
    q_points = sorted({Q.vertices[j]
                       for i in visible_facets(Q, pt)
                       for j in Q.facets[i].vertices})
    constraints = []
    for F in k_visible:
        for D in p_visible:
            if not all(F.value(x) == 0 for x in D.vertices):
                continue
            if any(F.value(w) == 0 and not D.frame.contains(w) for w in q_points):
                constraints.append(F.halfspace)
                break
    R = intersect(apexed, constraints)
    assert R is not None  # Q satisfies every constraint
    logger.debug('R-construction: %d cuts, %d vertices',
                 len(constraints), len(R.vertices))
    return R


def check_star(S: Polytope, P: Polytope, f: Polytope, v: PointLike) -> StarResult:
    """Decide whether every visible facet of *S* has a partner facet of *P*.

    A visible facet *s* of *S* is matched with the visible facet *p* of
    *P* whose visible facet ``sigma(p)`` of ``P ∨ S`` contains *s*. If
    some *s* has no partner, the result does not hold and names *s* as
    the counterexample.
    """
    pt = parse_point(v)
    K = _join(P, S)
    k_visible = visible_facets(K, pt)
    sigma: dict[int, int] = {}
    for p in unobstructed_visible_facets(P, pt, K):
        ridge = P.facet_polytope(p).vertices
        holders = [i for i in k_visible
                   if all(K.facets[i].value(x) == 0 for x in ridge)]
        if len(holders) != 1:
            return StarResult(False)
        sigma[p] = holders[0]
    rho: dict[int, int] = {}
    for s in visible_facets(S, pt):
        face = S.facet_polytope(s).vertices
        partners = [p for p, i in sigma.items()
                    if all(K.facets[i].value(x) == 0 for x in face)]
        if not partners:
            return StarResult(False, counterexample=s)
        rho[s] = partners[0]
    return StarResult(True, RhoSigma(rho, sigma))


def _rotation_axis(
    K: Polytope,
    P: Polytope,
    p: int,
    S: Polytope,
    s: int,
    v: Point,
) -> Optional[Hyperplane]:
    # hyperplane through the facet p of P and v, positive on the far side of s
    points = P.facet_polytope(p).vertices + (v,)
    try:
        m = K.frame.hyperplane_through(points)
    except ValueError:
        return None
    for y in S.facet_polytope(s).vertices:
        value = m.value(y)
        if value > 0:
            return m
        if value < 0:
            return Hyperplane(tuple(-a for a in m.normal), -m.offset)
    return None


def s_construction(
    S: Polytope,
    P: Polytope,
    f: Polytope,
    v: PointLike,
    theta: Mapping[int, RationalLike],
) -> Polytope:
    """Return *S* enlarged by rotating the facets matched with its visible facets.

    For each visible facet *s* of *S* with partner ``p = rho(s)``, the
    hyperplane of ``sigma(p)`` is rotated about the affine hull of *p*
    toward *v* by the pencil parameter ``theta[s]`` (missing keys are
    0). Facets ``sigma(p)`` for unmatched *p* stay where they are. The
    result is cut out of ``conv(S, v)``.

    Raises :exc:`GeometryError` if *S* fails (★) and
    :exc:`ThetaTooLarge` if the result does not contain *S* or fails
    (★) itself.
    """
    pt = parse_point(v)
    star = check_star(S, P, f, pt)
    if not star.holds or star.rho_sigma is None:
        raise GeometryError('the polytope does not satisfy (★)')
    K = _join(P, S)
    rho, sigma = star.rho_sigma
    constraints: list[HalfSpace] = []
    for s, p in rho.items():
        F = K.facets[sigma[p]]
        t = parse_rational(theta.get(s, 0))
        m = _rotation_axis(K, P, p, S, s, pt)
        if t == 0 or m is None:
            constraints.append(F.halfspace)
            continue
        constraints.append(HalfSpace(
            tuple(a - t * b for a, b in zip(F.normal, m.normal)),
            F.offset - t * m.offset,
        ))
    for p, i in sigma.items():
        if p not in star.rho_sigma.image:
            constraints.append(K.facets[i].halfspace)
    result = intersect(conv_hull(S.vertices + (pt,)), constraints)
    if result is None or not is_inside(S, result):
        raise ThetaTooLarge('the rotated facets no longer contain the polytope')
    if not check_star(result, P, f, pt).holds:
        raise ThetaTooLarge('the rotated polytope does not satisfy (★)')
    return result


def induced_theta(
    S: Polytope,
    P: Polytope,
    f: Polytope,
    v: PointLike,
    grown: Polytope,
) -> dict[int, Fraction]:
    """Return the least pencil parameters whose rotations contain *grown*.

    *grown* is a polytope with ``S <= grown <= conv(S, v)``; the result
    maps each visible facet of *S* to a parameter for
    :func:`s_construction`.
    """
    pt = parse_point(v)
    star = check_star(S, P, f, pt)
    if not star.holds or star.rho_sigma is None:
        raise GeometryError('the polytope does not satisfy (★)')
    K = _join(P, S)
    rho, sigma = star.rho_sigma
    theta = {}
    for s, p in rho.items():
        F = K.facets[sigma[p]]
        m = _rotation_axis(K, P, p, S, s, pt)
        t = Fraction(0)
        if m is not None:
            for x in grown.vertices:
                if m.value(x) > 0:
                    t = max(t, F.value(x) / m.value(x))
        theta[s] = t
    return theta


# Growth toward R and S ####################################################

def grow_to_R(inst, v: PointLike) -> GrowthChain:
    """Return a chain from ``P ∨ Q`` to ``P ∨ R(Q, P)``.

    The lower-dimensional growth from *Q* to the R-construction is
    computed with :func:`pyrgrow.grow` and each of its apexes is added
    to the join, where it sees a single facet.
    """
    from pyrgrow.growth import grow

    pt = parse_point(v)
    R = r_construction(inst.Q, inst.P, inst.f, pt)
    builder = ChainBuilder(inst.joined)
    if R == inst.Q:
        return builder.chain()
    lower = grow(inst.Q, R, progress_handler=None)
    builder.add_all(lower.apexes)
    builder.expect(_join(inst.P, R), 'growth to the R-construction')
    return builder.chain()


def _offsets(offset: Optional[RationalLike]) -> Iterator[Fraction]:
    if offset is not None:
        yield parse_rational(offset)
        return
    mu = Fraction(1, 2)
    for _ in range(config.max_halvings):
        yield mu
        mu /= 2


def _segments_cross(S: Polytope, points: list[Point]) -> bool:
    for a, b in combinations(points, 2):
        clipped = intersect_polytopes(conv_hull([a, b]), S)
        if clipped is None or contains(S, clipped.barycenter()) != Membership.INTERIOR:
            return False
    return True


def s_theta_growth(
    S: Polytope,
    P: Polytope,
    f: Polytope,
    v: PointLike,
    offset: Optional[RationalLike] = None,
    points: Optional[Mapping[int, PointLike]] = None,
) -> GrowthChain:
    """Return a chain from ``P ∨ S`` enlarging *S* toward *v*.

    Each visible facet of *S* gets a point on the segment from its
    barycenter toward *v*; the points are stacked one at a time and
    the result is grown to its R-construction. The fraction of the
    segment used is halved from 1/2 until every condition verifies,
    unless an *offset* is given. Explicit *points* (keyed by facet
    index of *S*) replace the search.

    Raises :exc:`OffsetExhausted` when no tried placement verifies.
    """
    from pyrgrow.growth import VeeInstance

    pt = parse_point(v)
    if not check_star(S, P, f, pt).holds:
        raise GeometryError('the polytope does not satisfy (★)')
    K = _join(P, S)
    visible = visible_facets(S, pt)
    if not visible:
        return GrowthChain(K)

    def placements() -> Iterator[dict[int, Point]]:
        if points is not None:
            yield {s: parse_point(points[s]) for s in visible}
            return
        for mu in _offsets(offset):
            yield {s: lerp(S.facet_polytope(s).barycenter(), pt, mu) for s in visible}

    for zs in placements():
        chosen = [zs[s] for s in visible]
        if not _segments_cross(S, chosen):
            continue
        try:
            builder = ChainBuilder(K)
            builder.add_all(chosen)
            enlarged = conv_hull(S.vertices + tuple(chosen))
            builder.extend(grow_to_R(VeeInstance(P, enlarged, f), pt))
        except (ConstructionError, GeometryError) as exc:
            logger.debug('S-growth placement rejected: %s', exc)
            continue
        logger.debug('S-growth: %d points, %d steps', len(chosen), len(builder))
        return builder.chain()
    raise OffsetExhausted('no placement of the stacking points verified')


def q1_construction(inst, v: PointLike) -> tuple[Polytope, GrowthChain]:
    """Return ``Q1`` and a chain from ``P ∨ R(Q, P)`` to ``P ∨ Q1``.

    Starting at the R-construction, S-growth is applied until every
    visible facet of *P* is matched with a visible facet of the grown
    polytope. Each round takes the first offset whose growth enlarges
    the set of matched facets; when none does, the first growth that
    keeps property (★) and loses no matched facet is taken instead.

    Raises :exc:`NoProgress` when a round finds neither.
    """
    pt = parse_point(v)
    P, f = inst.P, inst.f
    S = r_construction(inst.Q, P, f, pt)
    builder = ChainBuilder(_join(P, S))
    for _ in range(config.max_iterations):
        star = check_star(S, P, f, pt)
        if not star.holds or star.rho_sigma is None:
            raise NoProgress('the grown polytope lost property (★)')
        image = star.rho_sigma.image
        if len(image) == len(star.rho_sigma.sigma):
            logger.debug('Q1 reached after %d steps', len(builder))
            return S, builder.chain()
        fallback = None
        for mu in _offsets(None):
            try:
                chain = s_theta_growth(S, P, f, pt, offset=mu)
            except (ExhaustedError, ConstructionError, GeometryError):
                continue
            grown = _trace(chain.final, inst.Q)
            after = check_star(grown, P, f, pt)
            if not after.holds or after.rho_sigma is None:
                continue
            if after.rho_sigma.image > image:
                builder.extend(chain)
                S = grown
                break
            if fallback is None and grown != S and after.rho_sigma.image >= image:
                fallback = chain, grown
        else:
            if fallback is None:
                raise NoProgress('no S-growth kept the matched facets')
            logger.debug('S-growth kept %d matched facets', len(image))
            builder.extend(fallback[0])
            S = fallback[1]
    raise NoProgress(f'no bijection after {config.max_iterations} rounds')


# The main sequence ########################################################

def _chart_functional(
    phi: ProjectiveMap,
    P: Polytope,
    Q: Polytope,
    f: Polytope,
) -> tuple[tuple[Fraction, ...], Fraction]:
    # the affine function of the chart that is 0 on P and 1 on Q
    rows, rhs = [], []
    for x in P.vertices:
        rows.append(list(_linalg.matvec(phi.matrix, x + (Fraction(1),))))
        rhs.append(Fraction(0))
    for x in Q.vertices:
        if x in f.vertices:
            continue
        image = _linalg.matvec(phi.matrix, x + (Fraction(1),))
        rows.append(list(image))
        rhs.append(image[-1])
    h = _linalg.solve(rows, rhs, phi.dim + 1)
    if h is None:
        raise InvalidFrame('the two sides do not map to parallel hyperplanes')
    return tuple(h[:-1]), h[-1]


def _psi(phi: ProjectiveMap, inst, v: Point, lam: Fraction) -> ProjectiveMap:
    alpha, beta = _chart_functional(phi, inst.P, inst.Q, inst.f)
    return _psi_matrix(alpha, beta, phi.apply(v), lam)


def _gamma(phi: ProjectiveMap, inst, v: Point, lam: Fraction) -> ProjectiveMap:
    return _psi(phi, inst, v, lam).conjugate(phi)


def _visible_points(X: Polytope, v: Point, f: Polytope) -> set[Point]:
    return {X.vertices[j]
            for i in visible_facets(X, v)
            for j in X.facets[i].vertices} - set(f.vertices)


def check_homothety(
    inst,
    v: PointLike,
    previous: Polytope,
    following: Polytope,
    lam: RationalLike,
) -> bool:
    """Return ``True`` if *following* is the homothetic image of *previous*.

    Both polytopes lie in the affine hull of ``inst.Q``. In the chart
    where ``inst.f`` is at infinity, the visible vertices of *following*
    must be the images of those of *previous* under the homothety of
    coefficient *lam* centered at the image of *v*.
    """
    pt = parse_point(v)
    lam = parse_rational(lam)
    phi = map_to_infinity(inst.f, inst.joined)
    psi = _psi(phi, inst, pt, lam)
    before = {psi.apply(phi.apply(x)) for x in _visible_points(previous, pt, inst.f)}
    after = {phi.apply(x) for x in _visible_points(following, pt, inst.f)}
    return before == after


def _next_term(
    inst,
    v: Point,
    gamma: ProjectiveMap,
    Q: Polytope,
    K: Polytope,
    previous: Optional[GrowthChain],
) -> tuple[Polytope, GrowthChain]:
    following = conv_hull(Q.vertices + tuple(gamma.apply(x) for x in Q.vertices))
    target = _join(inst.P, following)
    if previous is not None:
        try:
            builder = ChainBuilder(K, error=StepInvalidAfterMap)
            builder.add_all((gamma.apply(a) for a in previous.apexes), skip_inside=True)
            builder.expect(target, 'replayed chain')
            return following, builder.chain()
        except (StepInvalidAfterMap, CrossesInfinity) as exc:
            logger.debug('replay failed (%s); fitting S-growth', exc)
    points = {s: gamma.apply(Q.facet_polytope(s).barycenter())
              for s in visible_facets(Q, v)}
    try:
        chain = s_theta_growth(Q, inst.P, inst.f, v, points=points)
    except (ExhaustedError, GeometryError) as exc:
        raise StepInvalidAfterMap('the mapped S-growth does not verify') from exc
    if chain.final != target:
        raise StepInvalidAfterMap('the mapped S-growth misses the next term')
    return following, chain


def main_sequence(
    inst,
    v: PointLike,
    lam: Optional[RationalLike] = None,
) -> Iterator[MainSequenceTerm]:
    """Yield terms ``Q0 = Q, Q1, Q2, ...`` converging to ``conv(Q, v)``.

    ``Q1`` comes from :func:`q1_construction`. From ``Q2`` on, each
    term is ``conv(Qi | gamma(Qi))`` where *gamma* fixes the affine
    hull of *P* and, in the chart sending *f* to infinity, contracts
    the hull of *Q* toward *v* by *lam*. When *lam* is not given, it is
    searched as ``1 - 2**-k``. Each term's chain is verified.

    Raises :exc:`LambdaExhausted` if no coefficient works.
    """
    pt = parse_point(v)
    K = inst.joined
    yield MainSequenceTerm(0, inst.Q, K, GrowthChain(K))

    chain = grow_to_R(inst, pt)
    Q1, rest = q1_construction(inst, pt)
    chain = chain.then(rest)
    K1 = chain.final
    yield MainSequenceTerm(1, Q1, K1, chain)

    phi = map_to_infinity(inst.f, K)
    if lam is not None:
        candidates = [parse_rational(lam)]
    else:
        candidates = [1 - Fraction(1, 2 ** k)
                      for k in range(1, config.max_halvings + 1)]
    for coefficient in candidates:
        try:
            gamma = _gamma(phi, inst, pt, coefficient)
            Q2, chain = _next_term(inst, pt, gamma, Q1, K1, None)
        except (ConstructionError, ExhaustedError, GeometryError) as exc:
            logger.debug('coefficient %s rejected: %s', coefficient, exc)
            continue
        break
    else:
        raise LambdaExhausted('no homothety coefficient verified')
    logger.info('main sequence coefficient %s', coefficient)
    yield MainSequenceTerm(2, Q2, chain.final, chain, gamma, coefficient)

    Q, K = Q2, chain.final
    for index in count(3):
        Q, chain = _next_term(inst, pt, gamma, Q, K, chain)
        K = chain.final
        logger.debug('main sequence term %d: %s', index, point_str(Q.barycenter()))
        yield MainSequenceTerm(index, Q, K, chain, gamma, coefficient)
