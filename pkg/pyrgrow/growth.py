"""
Exact pyramidal growth between nested polytopes.

The entry point is :func:`grow`, which connects ``P <= Q`` (with
``dim Q <= 3``) by a chain of pyramidal steps. The pipeline first
raises the dimension of *P*, then adds the vertices of *Q* one at a
time and resolves each addition into slabs whose pieces are
∨-instances: two polytopes glued along a common facet.
"""

from fractions import Fraction
from typing import NamedTuple, Optional, Union
import logging

from pyrgrow import _linalg
from pyrgrow._chain import ChainBuilder
from pyrgrow._config import config
from pyrgrow._exceptions import (
    InputError,
    LiftFailed,
    NotAVeeInstance,
    NotNested,
    RecursionBound,
    ToleranceNotReached,
    UnsupportedDimension,
)
from pyrgrow._types import Point
from pyrgrow._util import lerp, parse_rational, point_str, vadd, vscale, vsub
from pyrgrow.extension import GrowthChain
from pyrgrow.kernel import (
    AffineSubspace,
    DistanceInterval,
    HalfSpace,
    Hyperplane,
    Polytope,
    affine_hull,
    conv_hull,
    hausdorff_sq,
    intersect,
    is_inside,
    join_along_facet,
)
from pyrgrow.util import ProgressHandler
from pyrgrow.visibility import sees_single_facet, visible_facets

logger = logging.getLogger('pyrgrow')


class VeeInstance:
    """Polytopes *P* and *Q* glued along their common facet *f*.

    The joined polytope ``conv(P | Q)`` is computed on construction;
    :exc:`NotAVeeInstance` is raised if *f* is not a facet of both or
    if the dimensions do not add up.
    """

    __slots__ = 'P', 'Q', 'f', 'joined'

    def __init__(self, P: Polytope, Q: Polytope, f: Polytope):
        self.joined = join_along_facet(P, Q, f)
        self.P = P
        self.Q = Q
        self.f = f

    def __repr__(self) -> str:
        return f'VeeInstance(d={self.d}, P={self.P!r}, Q={self.Q!r})'

    @property
    def d(self) -> int:
        return self.joined.dim


class PencilParam(NamedTuple):
    """A member of the pencil of hyperplanes through *flat*.

    The member is ``start + t * second``; a *t* of ``None`` stands for
    ``second`` itself.
    """
    flat: AffineSubspace
    start: Hyperplane
    second: Hyperplane
    t: Optional[Fraction]

    def hyperplane(self) -> Hyperplane:
        if self.t is None:
            return self.second
        return Hyperplane(vadd(self.start.normal, vscale(self.t, self.second.normal)),
                          self.start.offset + self.t * self.second.offset)


# Dimension and vertex schedules ###########################################

def equalize_dimension(P: Polytope, Q: Polytope) -> tuple[GrowthChain, Polytope]:
    """Raise the dimension of *P* to that of *Q* by steps over *P*.

    Each apex is the barycenter of *Q*, or the midpoint between it and
    the lex-first vertex of *Q* off the current affine hull when the
    barycenter already lies on it. Returns the chain and its final
    polytope ``P'`` with ``dim P' = dim Q``.
    """
    builder = ChainBuilder(P)
    center = Q.barycenter()
    while builder.current.dim < Q.dim:
        frame = builder.current.frame
        apex = center
        if frame.contains(apex):
            off = next(x for x in Q.vertices if not frame.contains(x))
            apex = lerp(center, off, Fraction(1, 2))
        builder.add(apex)
        logger.debug('raised dimension to %d with %s',
                     builder.current.dim, point_str(apex))
    return builder.chain(), builder.current


def vertex_chain(Q1: Polytope, Q2: Polytope) -> list[tuple[Polytope, Polytope]]:
    """Return consecutive pairs adding the vertices of *Q2* one by one.

    The vertices of *Q2* outside *Q1* are taken in lexicographic order;
    those already covered by earlier additions are skipped.
    """
    pairs = []
    current = Q1
    for x in Q2.vertices:
        if current.contains_point(x):
            continue
        following = conv_hull(current.vertices + (x,))
        pairs.append((current, following))
        current = following
    return pairs


# Slab planning #############################################################

class _Stack(NamedTuple):
    apex: Point


class _Slab(NamedTuple):
    lower: Polytope
    upper: Polytope
    A: Polytope
    B: Polytope
    g: Polytope
    pencil: PencilParam


_PlanItem = Union[_Stack, _Slab]


def _outside(Q1: Polytope, Q2: Polytope) -> list[Point]:
    return [x for x in Q2.vertices if not Q1.contains_point(x)]


def _pick_pair(Q1: Polytope, Q2: Polytope) -> tuple[int, int]:
    # G: a facet of Q1 not on the boundary of Q2; F: a neighbor of G on it
    on_boundary = [bool(Q2.facets_containing(Q1.facet_polytope(i).vertices))
                   for i in range(len(Q1.facets))]
    for i, j in Q1.ridges():
        if not on_boundary[i] and on_boundary[j]:
            return i, j
        if on_boundary[i] and not on_boundary[j]:
            return j, i
    raise LiftFailed('no facet pair to slice along')


def _plan(Q1: Polytope, Q2: Polytope) -> list[_PlanItem]:
    """Return the stacking steps and slabs that lead from *Q1* to *Q2*.

    Both polytopes must have the same dimension and ``Q1 <= Q2``.
    """
    if Q1 == Q2:
        return []
    new = _outside(Q1, Q2)
    if Q1.dim == 1:
        return [_Stack(x) for x in new]
    if len(new) == 1 and sees_single_facet(Q1, new[0]):
        if conv_hull(Q1.vertices + (new[0],)) == Q2:
            return [_Stack(new[0])]
    gi, fi = _pick_pair(Q1, Q2)
    G, F = Q1.facets[gi], Q1.facets[fi]
    ell_g = Hyperplane(G.normal, G.offset)
    ell_f = Hyperplane(F.normal, F.offset)
    # the pencil turns about the ridge shared by G and F
    ridge = sorted(set(G.vertices) & set(F.vertices))
    flat = affine_hull(Q1.vertices[i] for i in ridge)

    events: set[Fraction] = set()
    at_infinity = False
    for x in Q2.vertices:
        lg = ell_g.value(x)
        if lg <= 0:
            continue
        lf = ell_f.value(x)
        if lf == 0:
            at_infinity = True
        else:
            events.add(lg / -lf)
    params: list[Optional[Fraction]] = [Fraction(0), *sorted(events)]
    if at_infinity:
        params.append(None)

    def pencil(t: Optional[Fraction]) -> PencilParam:
        return PencilParam(flat, ell_g, ell_f, t)

    def below(t: Optional[Fraction]) -> Polytope:
        h = pencil(t).hyperplane()
        cut = intersect(Q2, [HalfSpace(h.normal, h.offset)])
        assert cut is not None  # Q1 lies below every member
        return cut

    lower = below(params[0])
    items = _plan(Q1, lower)
    g = intersect(Q2, [ell_g, ell_f])
    if g is None:
        raise LiftFailed('the slicing pencil misses the target')
    for s, t in zip(params, params[1:]):
        hs, ht = pencil(s).hyperplane(), pencil(t).hyperplane()
        delta = intersect(Q2, [HalfSpace(hs.normal, hs.offset).flipped(),
                               HalfSpace(ht.normal, ht.offset)])
        if delta is None:
            raise LiftFailed('empty slab')
        A = intersect(delta, [hs])
        B = intersect(delta, [ht])
        if A is None or B is None:
            raise LiftFailed('a slab wall is empty')
        upper = below(t)
        items.append(_Slab(lower, upper, A, B, g, pencil(t)))
        lower = upper
    logger.debug('planned %d slabs between polytopes with %d and %d vertices',
                 len(params) - 1, len(Q1.vertices), len(Q2.vertices))
    return items


def _run_plan(Q1: Polytope, items: list[_PlanItem]) -> GrowthChain:
    builder = ChainBuilder(Q1)
    for item in items:
        if isinstance(item, _Stack):
            builder.add(item.apex)
            continue
        if builder.current != item.lower:
            raise LiftFailed('slab does not start at the current polytope')
        try:
            inst = VeeInstance(item.A, item.B, item.g)
        except NotAVeeInstance as exc:
            raise LiftFailed('a slab is not a ∨-instance') from exc
        local = solve_vee_instance(inst)
        builder.add_all(local.apexes, skip_inside=True)
        builder.expect(item.upper, 'slab lifting')
    return builder.chain()


def inscribed_growth(Q1: Polytope, Q2: Polytope) -> GrowthChain:
    """Return a chain from *Q1* to *Q2* where *Q2* adds one vertex.

    The polytopes must have equal dimension, at most 3. The growth is
    resolved into stacking steps and slabs between members of a pencil
    of hyperplanes; each slab is solved as a ∨-instance and lifted.
    """
    if Q1.dim != Q2.dim:
        raise InputError('inscribed growth needs polytopes of equal dimension')
    if Q2.dim > 3:
        raise UnsupportedDimension(
            f'exact growth is not available in dimension {Q2.dim}')
    return _run_plan(Q1, _plan(Q1, Q2))


# ∨-instances ###############################################################

def solve_vee_instance(inst: VeeInstance) -> GrowthChain:
    """Return a chain from ``inst.P`` to ``inst.joined``."""
    if inst.d == 2:
        return vee_grow_2d(inst)
    if inst.d == 3:
        return vee_grow_3d(inst)
    raise UnsupportedDimension(f'no exact ∨-solver in dimension {inst.d}')


def _off_facet(inst: VeeInstance) -> list[Point]:
    return [x for x in inst.Q.vertices if x not in inst.f.vertices]


def vee_grow_2d(inst: VeeInstance) -> GrowthChain:
    """Two segments sharing an endpoint: one step over the free endpoint."""
    builder = ChainBuilder(inst.P)
    builder.add_all(_off_facet(inst))
    builder.expect(inst.joined, '2-dimensional ∨-growth')
    return builder.chain()


def vee_grow_3d(inst: VeeInstance) -> GrowthChain:
    """Two polygons sharing an edge.

    The vertices of ``inst.Q`` off the edge are added in lexicographic
    order; the first is a pyramid over ``inst.P`` and each later one is
    placed by :func:`extend_vee_3d`.
    """
    verts = sorted(_off_facet(inst))
    builder = ChainBuilder(inst.P)
    builder.add(verts[0])
    T = conv_hull(inst.f.vertices + (verts[0],))
    for v in verts[1:]:
        builder.extend(extend_vee_3d(inst.P, T, inst.f, v))
        T = conv_hull(T.vertices + (v,))
    builder.expect(inst.joined, '3-dimensional ∨-growth')
    return builder.chain()


def extend_vee_3d(
    P: Polytope,
    Q: Polytope,
    f: Polytope,
    v: Point,
    depth: int = 0,
) -> GrowthChain:
    """Return a chain from ``P ∨ Q`` to ``P ∨ conv(Q | {v})``.

    *P* and *Q* are polygons glued along the edge *f* and *v* lies in
    the plane of *Q*, on the side of *f* where *Q* is, but outside *Q*.
    """
    from pyrgrow import vee

    if depth > config.max_depth:
        raise RecursionBound(f'∨-extension nested deeper than {config.max_depth}')
    inst = VeeInstance(P, Q, f)
    target = conv_hull(inst.joined.vertices + (v,))
    builder = ChainBuilder(inst.joined)
    if sees_single_facet(builder.current, v):
        builder.add(v)
        return builder.chain()

    builder.extend(vee.grow_to_R(inst, v))
    if builder.current == target:
        return builder.chain()
    if not sees_single_facet(builder.current, v):
        _, chain = vee.q1_construction(inst, v)
        builder.extend(chain)
    if not sees_single_facet(builder.current, v):
        _slice_visible(builder, target, v, depth)
    builder.add(v)
    builder.expect(target, '∨-extension')
    logger.debug('extended ∨-instance by %s in %d steps', point_str(v), len(builder))
    return builder.chain()


def _facet_path(K: Polytope, indices: list[int]) -> list[int]:
    # order facets so that consecutive ones share a ridge
    chosen = set(indices)
    adjacent: dict[int, list[int]] = {i: [] for i in indices}
    for i, j in K.ridges():
        if i in chosen and j in chosen:
            adjacent[i].append(j)
            adjacent[j].append(i)
    ends = [i for i in indices if len(adjacent[i]) == 1]
    if len(indices) == 1:
        return list(indices)
    if len(ends) != 2 or any(len(a) > 2 for a in adjacent.values()):
        raise LiftFailed('the visible facets do not form a path')

    def points(i: int) -> list[Point]:
        return [K.vertices[j] for j in K.facets[i].vertices]

    path = [min(ends, key=points)]
    while len(path) < len(indices):
        following = [j for j in adjacent[path[-1]] if j not in path]
        if not following:
            raise LiftFailed('the visible facets do not form a path')
        path.append(following[0])
    return path


def _slice_visible(
    builder: ChainBuilder,
    target: Polytope,
    v: Point,
    depth: int,
) -> None:
    # cut the target by the hyperplanes of the visible facets and fill
    # in the pieces from one end of the path to the other
    K = builder.current
    order = _facet_path(K, visible_facets(K, v))
    halfspaces = [K.facets[i].halfspace for i in order]

    def partial(i: int) -> Polytope:
        cut = intersect(target, halfspaces[i:])
        assert cut is not None
        return cut

    for i in range(len(order) - 1):
        upper = partial(i + 1)
        A = intersect(upper, [halfspaces[i].boundary()])
        delta = intersect(upper, [halfspaces[i].flipped()])
        if A is None or delta is None:
            raise LiftFailed('empty slice')
        B = intersect(delta, [halfspaces[i + 1].boundary()])
        g = intersect(A, [halfspaces[i + 1].boundary()])
        if B is None or g is None:
            raise LiftFailed('empty slice wall')
        local = split_vee_3d(A, B, g, depth + 1)
        builder.add_all(local.apexes, skip_inside=True)
        builder.expect(upper, 'slice lifting')


def _cycle(A: Polytope, g: Polytope) -> list[Point]:
    # vertices of polygon A from one endpoint of g around to the other
    start, end = sorted(g.vertices)
    path = [start]
    previous = end
    while path[-1] != end:
        i = A.vertex_index(path[-1])
        nxt = [A.vertices[j] for j in A.neighbors(i) if A.vertices[j] != previous]
        previous = path[-1]
        path.append(nxt[0])
    return path


def _supports(B: Polytope, line: Hyperplane) -> bool:
    values = [line.value(x) for x in B.vertices]
    return all(x >= 0 for x in values) or all(x <= 0 for x in values)


def split_vee_3d(A: Polytope, B: Polytope, g: Polytope, depth: int = 0) -> GrowthChain:
    """Return a chain from *A* to ``A ∨ B`` for polygons sharing edge *g*.

    A line through the middle of *A* meets the line of *g* at a point
    (or is parallel to it); the first vertex of *B* is one whose line
    to that point supports *B*, and the remaining vertices of *B* are
    added with :func:`extend_vee_3d`.
    """
    if depth > config.max_depth:
        raise RecursionBound(f'∨-splitting nested deeper than {config.max_depth}')
    inst = VeeInstance(A, B, g)
    zs = _cycle(A, g)
    k = len(zs)
    half = k // 2
    if k % 2:
        base, direction = zs[half], vsub(zs[half + 1], zs[half - 1])
    else:
        base, direction = zs[half - 1], vsub(zs[half], zs[half - 1])
    g0, g1 = sorted(g.vertices)
    along = vsub(g1, g0)
    columns = [[d, -a] for d, a in zip(direction, along)]
    omega: Optional[Point] = None
    if _linalg.rank(columns, 2) == 2:
        st = _linalg.solve(columns, list(vsub(g0, base)), 2)
        assert st is not None  # coplanar lines that are not parallel meet
        omega = vadd(base, vscale(st[0], direction))

    candidates = [y for y in B.vertices if y not in g.vertices]
    chosen: Optional[Point] = None
    if omega is None:
        line_g = B.frame.hyperplane_through([g0, g1])
        chosen = max(candidates, key=lambda y: (abs(line_g.value(y)), [-c for c in y]))
    else:
        for y in candidates:
            if y == omega:
                continue
            if _supports(B, B.frame.hyperplane_through([omega, y])):
                chosen = y
                break
    if chosen is None:
        raise LiftFailed('no vertex of the second polygon supports the split')

    builder = ChainBuilder(A)
    builder.add(chosen)
    current = conv_hull(g.vertices + (chosen,))
    for w in candidates:
        if w == chosen or current.contains_point(w):
            continue
        builder.extend(extend_vee_3d(A, current, g, w, depth + 1))
        current = conv_hull(current.vertices + (w,))
    builder.expect(inst.joined, '∨-splitting')
    return builder.chain()


# Top level #################################################################

def grow(
    P: Polytope,
    Q: Polytope,
    progress_handler: Optional[type[ProgressHandler]] = ProgressHandler,
) -> GrowthChain:
    """Return a pyramidal chain from *P* to *Q*.

    Arguments:
        P: the starting polytope
        Q: a polytope of dimension at most 3 containing *P*
        progress_handler: a :class:`pyrgrow.util.ProgressHandler`
            subclass notified once per added vertex; ``None`` disables
            progress reporting

    Raises :exc:`NotNested` if *P* is not inside *Q* and
    :exc:`UnsupportedDimension` if *Q* has dimension above 3.

    Example:

        >>> tri = conv_hull([(0, 0), (1, 0), (0, 1)])
        >>> square = conv_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
        >>> chain = grow(tri, square)
        >>> chain.final == square
        True

    """
    if P.ambient_dim != Q.ambient_dim:
        raise InputError('ambient dimensions differ')
    if not is_inside(P, Q):
        raise NotNested('the first polytope is not inside the second')
    if Q.dim > 3:
        raise UnsupportedDimension(
            f'exact growth is not available in dimension {Q.dim}')
    if progress_handler is None:
        progress_handler = ProgressHandler

    builder = ChainBuilder(P)
    raised, current = equalize_dimension(P, Q)
    builder.extend(raised)
    pairs = vertex_chain(current, Q)
    progress = progress_handler(message='Growing', total=len(pairs), unit=' vertices')
    try:
        for Q1, Q2 in pairs:
            builder.extend(inscribed_growth(Q1, Q2))
            progress.update()
    finally:
        progress.close()
    builder.expect(Q, 'growth')
    logger.info('grew polytope with %d vertices to one with %d in %d steps',
                len(P.vertices), len(Q.vertices), len(builder))
    return builder.chain()


def _enclose(square: Fraction, tol: Fraction) -> DistanceInterval:
    # an interval around sqrt(square) whose upper end stays below tol
    width = tol
    for _ in range(config.max_halvings):
        interval = DistanceInterval.from_square(square, width)
        if interval.hi < tol:
            return interval
        width /= 2
    raise ToleranceNotReached('could not certify the distance below the tolerance')


def transfinite_prefix(
    P: Polytope,
    Q: Polytope,
    tol: Union[Fraction, str, int],
    f: Optional[Polytope] = None,
    progress_handler: Optional[type[ProgressHandler]] = ProgressHandler,
) -> tuple[GrowthChain, DistanceInterval]:
    """Return a finite chain from *P* ending within *tol* of the target.

    Without *f*, the target is *Q* and the chain is exact unless *P* is
    already within *tol*. With *f*, the target is ``P ∨ Q`` glued along
    *f*; the last vertex of *Q* is approached through the main sequence
    of the ∨-instance, stopping at the first term within *tol*.

    Returns the chain and an interval for the Hausdorff distance
    between its final polytope and the target.
    """
    tol = parse_rational(tol)
    if progress_handler is None:
        progress_handler = ProgressHandler
    if f is None:
        if hausdorff_sq(P, Q) < tol * tol:
            return GrowthChain(P), _enclose(hausdorff_sq(P, Q), tol)
        return grow(P, Q, progress_handler=progress_handler), DistanceInterval.zero()

    inst = VeeInstance(P, Q, f)
    if inst.d > 3:
        raise UnsupportedDimension(f'no exact ∨-solver in dimension {inst.d}')
    verts = sorted(_off_facet(inst))
    builder = ChainBuilder(P)
    builder.add(verts[0])
    T = conv_hull(f.vertices + (verts[0],))
    for v in verts[1:-1]:
        builder.extend(extend_vee_3d(P, T, f, v))
        T = conv_hull(T.vertices + (v,))
    if len(verts) > 1:
        last = verts[-1]
        level = VeeInstance(P, T, f)
        if sees_single_facet(level.joined, last):
            builder.add(last)
        else:
            progress = progress_handler(message='Approaching', unit=' terms')
            try:
                builder.extend(_approach(level, last, inst.joined, tol, progress))
            finally:
                progress.close()
    square = hausdorff_sq(builder.current, inst.joined)
    return builder.chain(), _enclose(square, tol)


def _approach(
    inst: VeeInstance,
    v: Point,
    target: Polytope,
    tol: Fraction,
    progress: ProgressHandler,
) -> GrowthChain:
    from pyrgrow.vee import main_sequence

    builder = ChainBuilder(inst.joined)
    bound = tol * tol
    for term in main_sequence(inst, v):
        if term.index > config.max_iterations:
            break
        builder.extend(term.chain)
        square = hausdorff_sq(builder.current, target)
        progress.set(status=f'd^2 = {float(square):.3g}')
        progress.update()
        if square < bound:
            logger.info('main sequence within tolerance after %d terms', term.index)
            return builder.chain()
    raise ToleranceNotReached(
        f'the main sequence did not come within {tol} in {config.max_iterations} terms'
    )
