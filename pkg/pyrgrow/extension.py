"""
Pyramidal steps, growth chains and quasi chains, with their verifier.

A polytope *Q* is a pyramidal extension of *P* when ``Q = conv(P | {v})``
for one new point *v* and either *v* lies off the affine hull of *P*
(*Q* is a pyramid over *P*) or *v* lies beyond exactly one facet of *P*
(a pyramid is stacked onto that facet).

The verification functions here only rely on :mod:`pyrgrow.kernel`
and :mod:`pyrgrow.visibility`; they never call a construction.
"""

from collections.abc import Iterable, Iterator, Sequence
from fractions import Fraction
from typing import NamedTuple, Optional
import enum
import logging

from pyrgrow._config import config
from pyrgrow._exceptions import InvalidStep
from pyrgrow._types import Point, PointLike
from pyrgrow._util import parse_point, point_str
from pyrgrow.kernel import (
    DistanceInterval,
    Polytope,
    conv_hull,
    hausdorff,
    is_inside,
)
from pyrgrow.visibility import visible_facets

logger = logging.getLogger('pyrgrow')


class StepKind(str, enum.Enum):
    STACK = 'stack'
    OVER = 'over'


class PyramidalStep:
    """A pyramidal step adding *apex* to a polytope.

    For :attr:`StepKind.STACK` steps, *facet* holds the vertex indices
    (in the pre-polytope's vertex order) of the facet the pyramid is
    stacked onto; pyramids over the polytope have no facet.
    """

    __slots__ = 'apex', 'kind', 'facet'

    def __init__(
        self,
        apex: PointLike,
        kind: StepKind = StepKind.STACK,
        facet: Optional[Sequence[int]] = None,
    ):
        self.apex: Point = parse_point(apex)
        self.kind = StepKind(kind)
        self.facet = tuple(facet) if facet is not None else None

    def __repr__(self) -> str:
        return (f'PyramidalStep({point_str(self.apex)}, {self.kind.value!r}, '
                f'facet={self.facet})')

    def __eq__(self, other) -> bool:
        if not isinstance(other, PyramidalStep):
            return NotImplemented
        return (self.apex, self.kind, self.facet) == (other.apex, other.kind,
                                                      other.facet)

    def __hash__(self) -> int:
        return hash((self.apex, self.kind, self.facet))


def classify_step(P: Polytope, apex: PointLike) -> Optional[PyramidalStep]:
    """Return the step adding *apex* to *P*, or ``None`` if it is not pyramidal."""
    v = parse_point(apex)
    if P.contains_point(v):
        return None
    if not P.frame.contains(v):
        return PyramidalStep(v, StepKind.OVER)
    visible = visible_facets(P, v)
    if len(visible) != 1:
        return None
    return PyramidalStep(v, StepKind.STACK, P.facets[visible[0]].vertices)


def make_step(P: Polytope, apex: PointLike) -> PyramidalStep:
    """Return the pyramidal step adding *apex* to *P*.

    Raises :exc:`InvalidStep` if adding *apex* is not pyramidal.
    """
    step = classify_step(P, apex)
    if step is None:
        raise InvalidStep(f'adding {point_str(parse_point(apex))} is not pyramidal')
    return step


def apply_step(P: Polytope, step: PyramidalStep) -> Polytope:
    """Return ``conv(P | {step.apex})`` after checking the step.

    Raises :exc:`InvalidStep` if the step is not a pyramidal extension
    of *P* or if its recorded kind or facet disagree with *P*.
    """
    expected = make_step(P, step.apex)
    if step.kind != expected.kind:
        raise InvalidStep(f'step is {expected.kind.value}, '
                          f'recorded as {step.kind.value}')
    if step.facet is not None and step.facet != expected.facet:
        raise InvalidStep(f'apex sees facet {expected.facet}, '
                          f'recorded as {step.facet}')
    return conv_hull(P.vertices + (step.apex,))


# Chains ####################################################################

class GrowthChain:
    """A sequence of pyramidal steps starting at *initial*.

    The intermediate polytopes are recomputed from the apexes on first
    access; the chain itself does not verify its steps, see
    :func:`verify_chain`.
    """

    __slots__ = 'initial', 'steps', '_polytopes'

    def __init__(self, initial: Polytope, steps: Iterable[PyramidalStep] = ()):
        self.initial = initial
        self.steps: tuple[PyramidalStep, ...] = tuple(steps)
        self._polytopes: Optional[tuple[Polytope, ...]] = None

    def __repr__(self) -> str:
        return f'GrowthChain(initial={self.initial!r}, steps={len(self.steps)})'

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[PyramidalStep]:
        return iter(self.steps)

    @property
    def polytopes(self) -> tuple[Polytope, ...]:
        """The polytopes ``P0, P1, ..., Pn`` of the chain."""
        if self._polytopes is None:
            current = self.initial
            result = [current]
            for step in self.steps:
                current = conv_hull(current.vertices + (step.apex,))
                result.append(current)
            self._polytopes = tuple(result)
        return self._polytopes

    @property
    def final(self) -> Polytope:
        return self.polytopes[-1]

    @property
    def apexes(self) -> list[Point]:
        return [step.apex for step in self.steps]

    def then(self, other: 'GrowthChain') -> 'GrowthChain':
        """Return this chain followed by *other*, which must start at our end."""
        if other.initial != self.final:
            raise ValueError('chains do not connect')
        chain = GrowthChain(self.initial, self.steps + other.steps)
        if self._polytopes is not None and other._polytopes is not None:
            chain._polytopes = self._polytopes + other._polytopes[1:]
        return chain


class Witness(NamedTuple):
    """The polytope a quasi chain extends to reach its *index*-th member."""
    index: int
    polytope: Polytope
    step: PyramidalStep


class QuasiChain:
    """A quasi-pyramidal chain ``P0 <= P1 <= ... <= Pn``.

    Each ``Pi`` is a pyramidal extension of its witness ``P'i``, which
    lies between ``P0`` and ``P(i-1)``. Indices whose witness equals the
    previous polytope are ordinary pyramidal steps.
    """

    __slots__ = 'polytopes', 'witnesses'

    def __init__(self, polytopes: Sequence[Polytope], witnesses: Sequence[Witness]):
        self.polytopes: tuple[Polytope, ...] = tuple(polytopes)
        self.witnesses: tuple[Witness, ...] = tuple(witnesses)

    def __repr__(self) -> str:
        return (f'QuasiChain(length={len(self.witnesses)}, '
                f'strict={len(self.strict_indices())})')

    def __len__(self) -> int:
        return len(self.witnesses)

    @classmethod
    def from_chain(cls, chain: GrowthChain) -> 'QuasiChain':
        """Repackage a growth chain with each witness its predecessor."""
        polytopes = chain.polytopes
        witnesses = [Witness(i, polytopes[i - 1], step)
                     for i, step in enumerate(chain.steps, 1)]
        return cls(polytopes, witnesses)

    @classmethod
    def build(
        cls,
        initial: Polytope,
        entries: Iterable[tuple[Optional[Polytope], PointLike]],
    ) -> 'QuasiChain':
        """Build a chain from ``(witness, apex)`` pairs.

        A witness of ``None`` means the previous polytope. Raises
        :exc:`InvalidStep` if some apex is not a pyramidal extension of
        its witness.
        """
        polytopes = [initial]
        witnesses = []
        for base, apex in entries:
            if base is None:
                base = polytopes[-1]
            step = make_step(base, apex)
            polytopes.append(conv_hull(base.vertices + (step.apex,)))
            witnesses.append(Witness(len(polytopes) - 1, base, step))
        return cls(polytopes, witnesses)

    @property
    def initial(self) -> Polytope:
        return self.polytopes[0]

    @property
    def final(self) -> Polytope:
        return self.polytopes[-1]

    def strict_indices(self) -> list[int]:
        """Return the indices whose witness is strictly below the predecessor."""
        return [w.index for w in self.witnesses
                if w.polytope != self.polytopes[w.index - 1]]

    def defect(self, tol: Optional[Fraction] = None) -> DistanceInterval:
        return defect(self, tol)


# Verification ##############################################################

class StepDiagnostic(NamedTuple):
    index: int
    code: str
    message: str


class VerificationReport:
    """The outcome of a verification.

    A report is truthy when it is valid. Failures are listed in
    :attr:`diagnostics` with the index of the offending step.
    """

    __slots__ = 'diagnostics', 'final', 'steps', 'defect'

    def __init__(
        self,
        diagnostics: Sequence[StepDiagnostic] = (),
        final: Optional[Polytope] = None,
        steps: Sequence[Optional[PyramidalStep]] = (),
        defect: Optional[DistanceInterval] = None,
    ):
        self.diagnostics = tuple(diagnostics)
        self.final = final
        self.steps = tuple(steps)
        self.defect = defect

    def __repr__(self) -> str:
        status = 'valid' if self.valid else 'invalid'
        return f'VerificationReport({status}, diagnostics={len(self.diagnostics)})'

    def __bool__(self) -> bool:
        return self.valid

    @property
    def valid(self) -> bool:
        return not self.diagnostics

    @property
    def failed_indices(self) -> list[int]:
        return sorted({d.index for d in self.diagnostics})


def _pyramidal_diagnostics(
    P: Polytope,
    Q: Polytope,
    index: int,
) -> tuple[list[StepDiagnostic], Optional[PyramidalStep]]:
    diags: list[StepDiagnostic] = []
    if P.ambient_dim != Q.ambient_dim:
        return [StepDiagnostic(index, 'dimension', 'ambient dimensions differ')], None
    new = [v for v in Q.vertices if not P.is_vertex(v)]
    if len(new) != 1:
        diags.append(StepDiagnostic(
            index, 'apex-count', f'{len(new)} new vertices, expected 1'))
        return diags, None
    v = new[0]
    if P.contains_point(v):
        diags.append(StepDiagnostic(index, 'apex-inside', 'the apex lies in P'))
        return diags, None
    if conv_hull(P.vertices + (v,)) != Q:
        diags.append(StepDiagnostic(
            index, 'hull', 'Q is not the convex hull of P and the apex'))
        return diags, None
    if not P.frame.contains(v):
        return diags, PyramidalStep(v, StepKind.OVER)
    visible = visible_facets(P, v)
    if len(visible) != 1:
        diags.append(StepDiagnostic(
            index, 'visible-facets',
            f'the apex sees {len(visible)} facets, expected 1'))
        return diags, None
    return diags, PyramidalStep(v, StepKind.STACK, P.facets[visible[0]].vertices)


def verify_pyramidal(P: Polytope, Q: Polytope) -> VerificationReport:
    """Check that *Q* is a pyramidal extension of *P*.

    Example:

        >>> P = conv_hull([(0, 0), (1, 0), (0, 1)])
        >>> Q = conv_hull(P.vertices + ((2, 2),))
        >>> verify_pyramidal(P, Q).valid
        True

    """
    diags, step = _pyramidal_diagnostics(P, Q, 1)
    return VerificationReport(diags, Q, [step])


def verify_chain(chain: GrowthChain) -> VerificationReport:
    """Check every step of *chain*, including the recorded kinds and facets."""
    diags: list[StepDiagnostic] = []
    steps: list[Optional[PyramidalStep]] = []
    polytopes = chain.polytopes
    for i, recorded in enumerate(chain.steps, 1):
        found, step = _pyramidal_diagnostics(polytopes[i - 1], polytopes[i], i)
        if not found and step is not None:
            if step.apex != recorded.apex:
                found.append(StepDiagnostic(i, 'apex', 'the recorded apex is '
                                            'not the new vertex'))
            elif step.kind != recorded.kind:
                found.append(StepDiagnostic(
                    i, 'kind', f'step is {step.kind.value}, '
                    f'recorded as {recorded.kind.value}'))
            elif recorded.facet is not None and recorded.facet != step.facet:
                found.append(StepDiagnostic(
                    i, 'facet', f'apex sees facet {step.facet}, '
                    f'recorded as {recorded.facet}'))
        diags.extend(found)
        steps.append(step)
    if diags:
        logger.info('chain verification failed at steps %s',
                    sorted({d.index for d in diags}))
    return VerificationReport(diags, chain.final, steps)


def verify_quasi(
    qc: QuasiChain,
    tol: Optional[Fraction] = None,
    against: str = 'current',
) -> VerificationReport:
    """Check the invariants of a quasi chain and compute its defect."""
    diags: list[StepDiagnostic] = []
    steps: list[Optional[PyramidalStep]] = []
    P = qc.polytopes
    if len(P) != len(qc.witnesses) + 1:
        diags.append(StepDiagnostic(0, 'length', 'one witness per step expected'))
        return VerificationReport(diags, qc.final)
    if [w.index for w in qc.witnesses] != list(range(1, len(P))):
        diags.append(StepDiagnostic(0, 'index', 'witness indices are not 1, ..., n'))
        return VerificationReport(diags, qc.final)
    for w in qc.witnesses:
        i = w.index
        prev, base, cur = P[i - 1], w.polytope, P[i]
        if not is_inside(prev, cur):
            diags.append(StepDiagnostic(i, 'monotone', 'P(i-1) is not inside Pi'))
        if not (is_inside(P[0], base) and is_inside(base, prev)):
            diags.append(StepDiagnostic(
                i, 'sandwich', "the witness is not between P0 and P(i-1)"))
        found, step = _pyramidal_diagnostics(base, cur, i)
        if not found and step is not None and step.apex != w.step.apex:
            found.append(StepDiagnostic(i, 'apex', 'the recorded apex is '
                                        'not the new vertex'))
        diags.extend(found)
        steps.append(step)
        if i == 1 and base != prev:
            diags.append(StepDiagnostic(1, 'first', 'the first step is not pyramidal'))
    if diags:
        return VerificationReport(diags, qc.final, steps)
    return VerificationReport(diags, qc.final, steps, defect(qc, tol, against))


def defect(
    qc: QuasiChain,
    tol: Optional[Fraction] = None,
    against: str = 'current',
) -> DistanceInterval:
    """Return the defect of *qc* as an interval of width at most *tol*.

    The defect sums the Hausdorff distances between each strict witness
    and the polytope it extends to (``against='current'``) or the
    polytope it lies in (``against='previous'``). Ordinary pyramidal
    steps contribute nothing.
    """
    if against not in ('current', 'previous'):
        raise ValueError(f'invalid value for against: {against!r}')
    if tol is None:
        tol = config.tolerance
    strict = qc.strict_indices()
    total = DistanceInterval.zero()
    if not strict:
        return total
    share = Fraction(tol) / len(strict)
    witnesses = {w.index: w for w in qc.witnesses}
    for i in strict:
        other = qc.polytopes[i] if against == 'current' else qc.polytopes[i - 1]
        total = total + hausdorff(witnesses[i].polytope, other, share)
    return total


def verify_stacked_restricted(P: Polytope, Q: Polytope) -> VerificationReport:
    """Check a pyramidal extension that keeps every codimension-2 face of *P*."""
    report = verify_pyramidal(P, Q)
    if not report.valid or report.steps[0] is None:
        return report
    step = report.steps[0]
    if step.kind == StepKind.OVER:
        return report
    diags = []
    for face in P.codim2_faces():
        if not Q.is_face(P.face_points(face)):
            diags.append(StepDiagnostic(
                1, 'codim2', f'face with vertices {sorted(face)} disappears'))
    return VerificationReport(diags, Q, report.steps)
