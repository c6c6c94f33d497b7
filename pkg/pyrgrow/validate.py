"""Certificate validation.

This module is for checking whether a growth certificate describes a
valid pyramidal or quasi-pyramidal chain, according to a series of
checks. Those checks are:

====  ==========================================================
Code  Message
====  ==========================================================
E101  Polytope is malformed.
E102  Ambient dimensions do not match.
E201  Step is not a pyramidal extension.
E202  Recorded facet does not match the visible facet.
E203  Recorded kind does not match the step.
E301  Witness is not between the initial and previous polytopes.
E302  Witness step is not a pyramidal extension.
E303  Chain is not monotone.
E304  First quasi step is not pyramidal.
W401  Stacking removes a face of codimension 2.
W402  Defect is not below the recorded epsilon.
====  ==========================================================

"""

from collections.abc import Callable, Sequence
from fractions import Fraction
from typing import Any, Optional, Union

from pyrgrow._exceptions import CertificateError, InputError
from pyrgrow._util import format_point, parse_point, parse_rational
from pyrgrow.certificate import (
    Certificate,
    certificate_kind,
    polytope_from_dict,
    step_from_dict,
)
from pyrgrow.extension import (
    PyramidalStep,
    StepKind,
    classify_step,
    defect,
    QuasiChain,
    Witness,
    verify_stacked_restricted,
)
from pyrgrow.kernel import Polytope, conv_hull, is_inside
from pyrgrow.util import ProgressHandler


class _Replay:
    """A certificate with its polytopes recomputed.

    ``polytopes`` is empty when the initial polytope is unusable;
    ``witnesses`` maps strict indices to their witness polytopes.
    """

    def __init__(self, cert: Certificate):
        self.cert = cert
        self.kind = certificate_kind(dict(cert))
        self.malformed: dict[str, str] = {}
        self.initial: Optional[Polytope] = None
        self.steps: list[PyramidalStep] = []
        self.witnesses: dict[int, Polytope] = {}
        self.polytopes: list[Polytope] = []
        self._replay()

    def _polytope(self, label: str, data: Any) -> Optional[Polytope]:
        try:
            P = polytope_from_dict(data)
            raw = {parse_point(v) for v in data['vertices']}
        except (CertificateError, InputError, KeyError, TypeError) as exc:
            self.malformed[label] = str(exc)
            return None
        if raw != set(P.vertices) or len(raw) != len(data['vertices']):
            self.malformed[label] = 'the listed points are not the vertices'
            return None
        return P

    def _replay(self) -> None:
        self.initial = self._polytope('initial', self.cert.get('initial'))
        try:
            self.steps = [step_from_dict(s) for s in self.cert.get('steps', [])]
        except CertificateError as exc:
            self.malformed['steps'] = str(exc)
            return
        for record in self.cert.get('witnesses', []):  # type: ignore[attr-defined]
            try:
                i = int(record['index'])
                step = step_from_dict(record['step'])
            except (KeyError, TypeError, ValueError, CertificateError) as exc:
                self.malformed['witness'] = str(exc)
                continue
            W = self._polytope(f'witness {i}', record.get('polytope'))
            if W is not None and 1 <= i <= len(self.steps):
                self.witnesses[i] = W
                self.steps[i - 1] = step
        if self.initial is None or self.mismatched():
            return
        current = self.initial
        self.polytopes = [current]
        for i, step in enumerate(self.steps, 1):
            base = self.witnesses.get(i, current)
            current = conv_hull(base.vertices + (step.apex,))
            self.polytopes.append(current)

    def mismatched(self) -> dict[str, str]:
        if self.initial is None:
            return {}
        n = self.initial.ambient_dim
        result = {}
        for i, step in enumerate(self.steps, 1):
            if len(step.apex) != n:
                result[f'step {i}'] = (
                    f'apex has dimension {len(step.apex)}, expected {n}')
        for i, W in self.witnesses.items():
            if W.ambient_dim != n:
                result[f'witness {i}'] = f'dimension {W.ambient_dim}, expected {n}'
        return result

    def base(self, i: int) -> Polytope:
        return self.witnesses.get(i, self.polytopes[i - 1])

    def plain_indices(self) -> list[int]:
        return [i for i in range(1, len(self.polytopes)) if i not in self.witnesses]

    def quasi_chain(self) -> QuasiChain:
        witnesses = [Witness(i, self.base(i), step)
                     for i, step in enumerate(self.steps, 1)]
        return QuasiChain(self.polytopes, witnesses)


_Result = dict[str, dict]
_CheckFunction = Callable[[_Replay], _Result]
_Report = dict[str, dict[str, Union[str, _Result]]]


def _malformed_polytope(replay: _Replay) -> _Result:
    """Polytope is malformed"""
    return {label: {'detail': msg} for label, msg in replay.malformed.items()}


def _dimension_mismatch(replay: _Replay) -> _Result:
    """Ambient dimensions do not match"""
    return {label: {'detail': msg} for label, msg in replay.mismatched().items()}


def _not_pyramidal(replay: _Replay) -> _Result:
    """Step is not a pyramidal extension"""
    return {f'step {i}': {'apex': format_point(replay.steps[i - 1].apex)}
            for i in replay.plain_indices()
            if classify_step(replay.polytopes[i - 1], replay.steps[i - 1].apex) is None}


def _found_and_recorded(replay: _Replay, i: int):
    recorded = replay.steps[i - 1]
    return classify_step(replay.base(i), recorded.apex), recorded


def _facet_mismatch(replay: _Replay) -> _Result:
    """Recorded facet does not match the visible facet"""
    result = {}
    for i in range(1, len(replay.polytopes)):
        found, recorded = _found_and_recorded(replay, i)
        if (found is not None and found.kind == StepKind.STACK
                and recorded.facet is not None and recorded.facet != found.facet):
            result[f'step {i}'] = {'recorded': recorded.facet, 'found': found.facet}
    return result


def _kind_mismatch(replay: _Replay) -> _Result:
    """Recorded kind does not match the step"""
    result = {}
    for i in range(1, len(replay.polytopes)):
        found, recorded = _found_and_recorded(replay, i)
        if found is not None and found.kind != recorded.kind:
            result[f'step {i}'] = {'recorded': recorded.kind.value,
                                   'found': found.kind.value}
    return result


def _not_sandwiched(replay: _Replay) -> _Result:
    """Witness is not between the initial and previous polytopes"""
    P = replay.polytopes
    return {f'witness {i}': {}
            for i, W in replay.witnesses.items()
            if i < len(P) and not (is_inside(P[0], W) and is_inside(W, P[i - 1]))}


def _witness_not_pyramidal(replay: _Replay) -> _Result:
    """Witness step is not a pyramidal extension"""
    return {f'witness {i}': {'apex': format_point(replay.steps[i - 1].apex)}
            for i, W in replay.witnesses.items()
            if i < len(replay.polytopes)
            and classify_step(W, replay.steps[i - 1].apex) is None}


def _not_monotone(replay: _Replay) -> _Result:
    """Chain is not monotone"""
    P = replay.polytopes
    return {f'step {i}': {} for i in range(1, len(P)) if not is_inside(P[i - 1], P[i])}


def _first_not_pyramidal(replay: _Replay) -> _Result:
    """First quasi step is not pyramidal"""
    if 1 in replay.witnesses and replay.polytopes \
            and replay.witnesses[1] != replay.polytopes[0]:
        return {'witness 1': {}}
    return {}


def _absorbed_face(replay: _Replay) -> _Result:
    """Stacking removes a face of codimension 2"""
    result = {}
    for i in range(1, len(replay.polytopes)):
        base = replay.base(i)
        if classify_step(base, replay.steps[i - 1].apex) is None:
            continue
        report = verify_stacked_restricted(base, replay.polytopes[i])
        if not report.valid:
            result[f'step {i}'] = {'detail': report.diagnostics[0].message}
    return result


def _defect_exceeds_epsilon(replay: _Replay) -> _Result:
    """Defect is not below the recorded epsilon"""
    eps_value = replay.cert.get('epsilon')
    if replay.kind != 'quasi' or eps_value is None or not replay.polytopes:
        return {}
    eps: Fraction = parse_rational(eps_value)  # type: ignore[arg-type]
    strict = len(replay.witnesses) or 1
    interval = defect(replay.quasi_chain(), tol=eps / (4 * strict))
    if interval.hi >= eps:
        return {'defect': {'lo': str(interval.lo), 'hi': str(interval.hi),
                           'epsilon': str(eps)}}
    return {}


_codes: dict[str, _CheckFunction] = {
    # 100 - polytopes
    'E101': _malformed_polytope,
    'E102': _dimension_mismatch,
    # 200 - steps
    'E201': _not_pyramidal,
    'E202': _facet_mismatch,
    'E203': _kind_mismatch,
    # 300 - quasi chains
    'E301': _not_sandwiched,
    'E302': _witness_not_pyramidal,
    'E303': _not_monotone,
    'E304': _first_not_pyramidal,
    # 400 - warnings
    'W401': _absorbed_face,
    'W402': _defect_exceeds_epsilon,
}

# checks that need the recomputed polytopes
_REPLAYED = {'E201', 'E202', 'E203', 'E301', 'E302', 'E303', 'E304', 'W401', 'W402'}


def _select_checks(select: Sequence[str]) -> list[tuple[str, _CheckFunction]]:
    wanted = set(select)
    return [(code, check) for code, check in _codes.items()
            if code in wanted or code[0] in wanted]


def validate(
    cert: Certificate,
    select: Sequence[str] = ('E', 'W'),
    progress_handler: Optional[type[ProgressHandler]] = ProgressHandler,
) -> _Report:
    """Replay *cert* and return a report of the selected checks.

    *select* holds check codes (such as ``E201``) or whole categories
    (``E`` for errors, ``W`` for warnings). Every selected code appears
    in the report with its message and a possibly empty mapping of
    items, keyed by labels such as ``'step 3'`` or ``'witness 2'``.
    Checks on steps report no items when the initial polytope could
    not be read.

    Example:

        >>> from pyrgrow import certificate
        >>> report = validate(certificate.load('chain.json'), select=['E'])
        >>> failures(report)
        []

    """
    replay = _Replay(cert)
    checks = _select_checks(select)
    progress = (progress_handler or ProgressHandler)(
        message='Validate', total=len(checks)
    )
    report: _Report = {}
    try:
        for code, check in checks:
            progress.set(status=code)
            skipped = code in _REPLAYED and not replay.polytopes
            report[code] = {
                'message': check.__doc__ or '',
                'items': {} if skipped else check(replay),
            }
            progress.update()
    finally:
        progress.close()
    return report


def failures(report: _Report) -> list[str]:
    """Return the codes of *report* that have items."""
    return [code for code, result in report.items() if result['items']]
