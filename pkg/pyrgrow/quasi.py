"""
Quasi-pyramidal growth in dimension 4.

Exact pyramidal chains are not available for 4-dimensional
∨-instances in general. The vertices of the second polytope are added
one level at a time; a level is exact when the new vertex can be
pulled onto a single facet by stacking points toward it, and is
otherwise reached from a witness polytope slightly below the current
one: the target with a small corner around the new vertex cut away.
The Hausdorff defects of these witnesses are budgeted so that the
whole chain stays within a requested epsilon.
"""

from collections.abc import Iterator, Sequence
from fractions import Fraction
from itertools import combinations, islice, permutations
from typing import NamedTuple, Optional
import logging

from pyrgrow._chain import ChainBuilder
from pyrgrow._config import config
from pyrgrow._exceptions import (
    BudgetExhausted,
    ConstructionError,
    CrossesInfinity,
    ExhaustedError,
    GeometryError,
    InputError,
    InvalidStep,
    LiftFailed,
    MuExhausted,
    NotNested,
    NotTraversing,
    SliceFailed,
    StepInvalidAfterMap,
    UnsupportedDimension,
)
from pyrgrow._types import Point, PointLike, RationalLike
from pyrgrow._util import dot, lerp, parse_point, parse_rational, point_str, vsub
from pyrgrow.extension import (
    GrowthChain,
    QuasiChain,
    Witness,
    classify_step,
    defect,
    make_step,
)
from pyrgrow.growth import (
    VeeInstance,
    _plan,
    _Slab,
    _Stack,
    equalize_dimension,
    grow,
    vertex_chain,
)
from pyrgrow.kernel import (
    HalfSpace,
    Hyperplane,
    Polytope,
    cone_cross_section,
    conv_hull,
    corner_cone,
    intersect,
    is_inside,
    point_polytope_sq_distance,
)
from pyrgrow.util import ProgressHandler
from pyrgrow.vee import main_sequence
from pyrgrow.visibility import sees_single_facet, visible_facets

logger = logging.getLogger('pyrgrow')

_Entry = tuple[Optional[Polytope], Point]


class CornerBlowResult(NamedTuple):
    """The polytope *T* reached from *R* by *chain*.

    *T* has the corner cone of the target at the blown vertex. *mu*
    holds the fractions of the cross-section apexes used for each step.
    """
    T: Polytope
    chain: GrowthChain
    mu: tuple[Fraction, ...]


def blow_corner(R: Polytope, S: Polytope, w: PointLike) -> CornerBlowResult:
    """Grow *R* inside *S* until their corner cones at vertex *w* agree.

    The cones are cut by a hyperplane near *w*; the growth between the
    two cross-sections is scaled back toward *w* by a fraction halved
    from 1/2 until each scaled apex is a pyramidal extension that keeps
    every vertex.

    Example:

        >>> R = conv_hull([(0, 0), (1, 0), (0, 1)])
        >>> blow_corner(R, R, (0, 0)).mu
        ()

    """
    pt = parse_point(w)
    cone_r, cone_s = corner_cone(R, pt), corner_cone(S, pt)
    if cone_r == cone_s:
        return CornerBlowResult(R, GrowthChain(R), ())
    if not is_inside(R, S):
        raise NotNested('the polytope is not inside the target')
    normal = [Fraction(0)] * S.ambient_dim
    for i in S.facets_containing([pt]):
        normal = [a - b for a, b in zip(normal, S.facets[i].normal)]
    H = Hyperplane(tuple(normal), dot(normal, pt) + 1)
    try:
        start, end = cone_cross_section(cone_r, H), cone_cross_section(cone_s, H)
    except NotTraversing as exc:
        raise SliceFailed('the corner cones cannot be cut near the vertex') from exc

    builder = ChainBuilder(R, error=SliceFailed)
    mus: list[Fraction] = []
    mu = Fraction(1, 2)
    for zeta in grow(start, end, progress_handler=None).apexes:
        for _ in range(config.max_halvings):
            z = lerp(pt, zeta, mu)
            if S.contains_point(z) and _keeps_vertices(builder.current, z):
                builder.add(z)
                mus.append(mu)
                break
            mu /= 2
        else:
            raise MuExhausted(f'no scaling of {point_str(zeta)} extends the corner')
    if corner_cone(builder.current, pt) != cone_s:
        raise SliceFailed('the corner cones still differ after blowing')
    logger.debug('blew corner %s with fractions %s', point_str(pt), mus)
    return CornerBlowResult(builder.current, builder.chain(), tuple(mus))


def _keeps_vertices(P: Polytope, z: Point) -> bool:
    if classify_step(P, z) is None:
        return False
    grown = conv_hull(P.vertices + (z,))
    return set(grown.vertices) == set(P.vertices) | {z}


def _cut_corner(target: Polytope, v: Point, delta: Fraction) -> Optional[Polytope]:
    a = [Fraction(0)] * target.ambient_dim
    for i in target.facets_containing([v]):
        a = [x + y for x, y in zip(a, target.facets[i].normal)]
    return intersect(target, [HalfSpace(tuple(a), dot(a, v) - delta)])


def _corner_gap(target: Polytope, v: Point) -> Fraction:
    a = [Fraction(0)] * target.ambient_dim
    for i in target.facets_containing([v]):
        a = [x + y for x, y in zip(a, target.facets[i].normal)]
    return min(dot(a, vsub(v, u)) for u in target.vertices if u != v)


def _close_corner(
    P: Polytope,
    Y: Polytope,
    target: Polytope,
    v: Point,
    budget: Fraction,
) -> Optional[Polytope]:
    # the target minus a corner at v, within budget/2 of v and between P and Y
    bound = (budget / 2) ** 2
    delta = _corner_gap(target, v) / 2
    for _ in range(config.max_halvings):
        cut = _cut_corner(target, v, delta)
        if cut is None or point_polytope_sq_distance(v, cut) >= bound:
            delta /= 2
            continue
        if is_inside(cut, Y) and is_inside(P, cut):
            return cut
        return None
    return None


def _pull_candidates(X: Polytope, v: Point, seen: list[int]) -> Iterator[Point]:
    facets = [X.facets[i] for i in seen]
    points = list(X.vertices)
    # edge points where two visible facets are crossed at the same time
    for i, j in X.edges():
        w1, w2 = X.vertices[i], X.vertices[j]
        for g1, g2 in combinations(facets, 2):
            a = g1.value(w1) * g2.value(v) - g2.value(w1) * g1.value(v)
            b = ((g1.value(w2) - g1.value(w1)) * g2.value(v)
                 - (g2.value(w2) - g2.value(w1)) * g1.value(v))
            if b != 0 and 0 < -a / b < 1:
                points.append(lerp(w1, w2, -a / b))
    for y in points:
        values = [g.value(y) for g in facets]
        if max(values) > 0 or values.count(0) != 1:
            continue
        t = min(-c / (g.value(v) - c) for g, c in zip(facets, values) if c < 0)
        yield lerp(y, v, t)


def _pull(K: Polytope, v: Point) -> Optional[list[Point]]:
    """Return stacking apexes after which *v* sees a single facet of *K*.

    Each apex lies on a segment from a boundary point of the current
    polytope toward *v*, stopped where it first meets another visible
    facet, so it sees one facet and the grown polytope stays inside
    ``conv(K | {v})``. Returns ``None`` when no apex reduces the
    number of facets seen from *v*.
    """
    builder = ChainBuilder(K)
    for _ in range(config.max_iterations):
        X = builder.current
        seen = visible_facets(X, v)
        if len(seen) == 1:
            return builder.chain().apexes
        best, fewest = None, len(seen)
        for a in _pull_candidates(X, v, seen):
            if classify_step(X, a) is None:
                continue
            count = len(visible_facets(conv_hull(X.vertices + (a,)), v))
            if count < fewest:
                best, fewest = a, count
        if best is None:
            return None
        builder.add(best)
    return None


def _quasi_level(
    P: Polytope,
    Q: Polytope,
    f: Polytope,
    v: Point,
    budget: Fraction,
    quasi: bool = True,
) -> list[_Entry]:
    # entries from P ∨ Q to conv(P ∨ Q | {v}); only the last may be strict
    inst = VeeInstance(P, Q, f)
    if sees_single_facet(inst.joined, v):
        return [(None, v)]
    pulled = _pull(inst.joined, v)
    if pulled is not None:
        logger.debug('pulled %s onto one facet with %d apexes',
                     point_str(v), len(pulled))
        return [(None, a) for a in pulled] + [(None, v)]
    if not quasi:
        raise LiftFailed(f'{point_str(v)} cannot be pulled onto a single facet')
    try:
        return _close_level(inst, v, budget)
    except (BudgetExhausted, LiftFailed):
        raise
    except (ConstructionError, ExhaustedError, GeometryError) as exc:
        raise LiftFailed(f'no quasi level reaches {point_str(v)}') from exc


def _close_level(inst: VeeInstance, v: Point, budget: Fraction) -> list[_Entry]:
    P, f = inst.P, inst.f
    target = conv_hull(inst.joined.vertices + (v,))
    terms = main_sequence(inst, v)
    next(terms)
    term = next(terms)
    entries: list[_Entry] = [(None, a) for a in term.chain.apexes]
    if any(corner_cone(term.joined, y) != corner_cone(target, y) for y in f.vertices):
        term = next(terms)
        entries.extend((None, a) for a in term.chain.apexes)

    R = term.joined
    blown: list[Point] = []
    for u in P.vertices:
        if u in f.vertices:
            continue
        result = blow_corner(R, target, u)
        blown.extend(result.chain.apexes)
        R = result.T

    for k in range(1, config.max_power + 1):
        term = next(terms)
        entries.extend((None, a) for a in term.chain.apexes)
        gamma = term.gamma
        assert gamma is not None
        power = gamma.power(k)
        try:
            builder = ChainBuilder(term.joined, error=StepInvalidAfterMap)
            builder.add_all((power.apply(z) for z in blown), skip_inside=True)
        except (StepInvalidAfterMap, CrossesInfinity):
            continue
        cut = _close_corner(P, builder.current, target, v, budget)
        if cut is not None:
            entries.extend((None, step.apex) for step in builder.steps)
            entries.append((cut, v))
            logger.debug('quasi level closed at power %d', k)
            return entries
    raise BudgetExhausted(f'no witness within budget {budget} after '
                          f'{config.max_power} terms')


def _advance(current: Polytope, base: Optional[Polytope], apex: Point) -> Witness:
    if base is None:
        base = current
    try:
        step = make_step(base, apex)
    except InvalidStep as exc:
        msg = f'{point_str(apex)} is not pyramidal over its witness'
        raise LiftFailed(msg) from exc
    return Witness(0, base, step)


class _QuasiBuilder:
    __slots__ = 'polytopes', 'witnesses'

    def __init__(self, initial: Polytope):
        self.polytopes = [initial]
        self.witnesses: list[Witness] = []

    @property
    def current(self) -> Polytope:
        return self.polytopes[-1]

    def add(self, base: Optional[Polytope], apex: Point) -> None:
        w = _advance(self.current, base, apex)
        if not is_inside(w.polytope, self.current):
            raise LiftFailed('a witness is not inside the previous polytope')
        self.polytopes.append(conv_hull(w.polytope.vertices + (w.step.apex,)))
        self.witnesses.append(w._replace(index=len(self.polytopes) - 1))

    def chain(self) -> QuasiChain:
        return QuasiChain(self.polytopes, self.witnesses)


def _finish(qc: QuasiChain, eps: Fraction) -> QuasiChain:
    strict = qc.strict_indices()
    if strict:
        report = defect(qc, tol=eps / (4 * len(strict)))
        if report.hi >= eps:
            raise BudgetExhausted(f'the defect {report} is not below {eps}')
    return qc


def _levels(
    P: Polytope,
    f: Polytope,
    order: Sequence[Point],
    budget: Fraction,
    quasi: bool,
) -> _QuasiBuilder:
    builder = _QuasiBuilder(P)
    builder.add(None, order[0])
    T = conv_hull(f.vertices + (order[0],))
    for v in order[1:]:
        for base, apex in _quasi_level(P, T, f, v, budget, quasi=quasi):
            builder.add(base, apex)
        T = conv_hull(T.vertices + (v,))
    return builder


def quasi_vee_grow_4d(
    P: Polytope,
    Q: Polytope,
    f: Polytope,
    eps: RationalLike,
) -> QuasiChain:
    """Return a quasi chain from *P* to ``P ∨ Q`` with defect below *eps*.

    *P* and *Q* must form a 4-dimensional ∨-instance glued along the
    common facet *f*. The vertices of *Q* off *f* are added one at a
    time, the first as a pyramid over *P*. Orders of these vertices
    are tried until every level is exact; if none is, the
    lexicographic order is used and each level that cannot be pulled
    onto a single facet ends with a quasi-pyramidal step whose witness
    is within an equal share of *eps*.

    Raises :exc:`BudgetExhausted` if the certified defect is not below
    *eps* and :exc:`LiftFailed` if a level cannot be constructed.
    """
    eps = parse_rational(eps)
    inst = VeeInstance(P, Q, f)
    if inst.d != 4:
        raise UnsupportedDimension(f'quasi ∨-growth needs dimension 4, not {inst.d}')
    verts = sorted(x for x in Q.vertices if x not in f.vertices)
    budget = eps / (2 * max(len(verts) - 1, 1))
    for order in islice(permutations(verts), config.max_iterations):
        try:
            builder = _levels(P, f, order, budget, quasi=False)
            break
        except LiftFailed as exc:
            logger.debug('no exact levels in order %s: %s',
                         ', '.join(map(point_str, order)), exc)
    else:
        builder = _levels(P, f, verts, budget, quasi=True)
    if builder.current != inst.joined:
        raise LiftFailed('quasi ∨-growth did not reach the joined polytope')
    return _finish(builder.chain(), eps)


def quasi_grow(
    P: Polytope,
    Q: Polytope,
    eps: Optional[RationalLike] = None,
    progress_handler: Optional[type[ProgressHandler]] = ProgressHandler,
) -> QuasiChain:
    """Return a quasi-pyramidal chain from *P* to *Q* with defect below *eps*.

    Up to dimension 3 the chain is the exact chain of :func:`grow`.
    In dimension 4 the growth is planned as for :func:`grow` and each
    slab is solved with :func:`quasi_vee_grow_4d` using an equal share
    of *eps*, which defaults to the configured epsilon.

    Example:

        >>> tri = conv_hull([(0, 0), (1, 0), (0, 1)])
        >>> square = conv_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
        >>> quasi_grow(tri, square).strict_indices()
        []

    """
    eps = config.epsilon if eps is None else parse_rational(eps)
    if P.ambient_dim != Q.ambient_dim:
        raise InputError('ambient dimensions differ')
    if not is_inside(P, Q):
        raise NotNested('the first polytope is not inside the second')
    if Q.dim <= 3:
        return QuasiChain.from_chain(grow(P, Q, progress_handler=progress_handler))
    if Q.dim > 4:
        raise UnsupportedDimension(
            f'quasi growth is not available in dimension {Q.dim}')
    if progress_handler is None:
        progress_handler = ProgressHandler

    raised, current = equalize_dimension(P, Q)
    plans = [(Q1, _plan(Q1, Q2)) for Q1, Q2 in vertex_chain(current, Q)]
    slabs = sum(1 for _, items in plans
                for item in items if not isinstance(item, _Stack))
    share = eps / max(slabs, 1)

    builder = _QuasiBuilder(P)
    for apex in raised.apexes:
        builder.add(None, apex)
    progress = progress_handler(message='Growing', total=len(plans), unit=' vertices')
    try:
        for _, items in plans:
            for item in items:
                if isinstance(item, _Stack):
                    builder.add(None, item.apex)
                    continue
                _lift_slab(builder, item, share)
            progress.update()
    finally:
        progress.close()
    if builder.current != Q:
        raise LiftFailed('quasi growth did not reach the target polytope')
    logger.info('quasi growth: %d steps, %d strict', len(builder.witnesses),
                len(builder.chain().strict_indices()))
    return _finish(builder.chain(), eps)


def _lift_slab(builder: _QuasiBuilder, slab: _Slab, share: Fraction) -> None:
    if builder.current != slab.lower:
        raise LiftFailed('slab does not start at the current polytope')
    local = quasi_vee_grow_4d(slab.A, slab.B, slab.g, share)
    U = slab.lower
    for w in local.witnesses:
        if w.polytope == local.polytopes[w.index - 1]:
            if not builder.current.contains_point(w.step.apex):
                builder.add(None, w.step.apex)
            continue
        builder.add(conv_hull(U.vertices + w.polytope.vertices), w.step.apex)
    if builder.current != slab.upper:
        raise LiftFailed('lifted quasi slab did not reach the next polytope')
