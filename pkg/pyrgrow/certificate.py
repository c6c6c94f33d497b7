"""
Reading and writing growth certificates.

Certificates are JSON documents recording the initial polytope and the
apex of every step; intermediate polytopes are recomputed when a
certificate is read. All rationals are strings such as ``"3/4"``.

A chain certificate looks like this:

.. code-block:: json

   {"version": "1", "kind": "chain",
    "initial": {"ambient_dim": 2, "vertices": [["0", "0"], ["1", "0"]]},
    "steps": [{"kind": "over", "apex": ["0", "1"]}]}

Quasi certificates (``"kind": "quasi"``) add a ``"witnesses"`` list
with the index, witness polytope and step of every strict index, and
optionally the ``"epsilon"`` budget and a ``"defect"`` report.
"""

from typing import Any, Literal, Optional, TypedDict, Union
import json
from pathlib import Path

from pyrgrow._exceptions import CertificateError, InputError
from pyrgrow._types import AnyPath
from pyrgrow._util import format_point, format_rational, parse_point, parse_rational
from pyrgrow.extension import (
    GrowthChain,
    PyramidalStep,
    QuasiChain,
    StepKind,
    Witness,
)
from pyrgrow.kernel import DistanceInterval, Polytope, conv_hull

VERSION = '1'


class PolytopeDict(TypedDict):
    ambient_dim: int
    vertices: list[list[str]]


class _StepBase(TypedDict):
    kind: str
    apex: list[str]


class StepDict(_StepBase, total=False):
    facet: list[int]


class ChainCertificate(TypedDict):
    version: str
    kind: Literal['chain']
    initial: PolytopeDict
    steps: list[StepDict]


class WitnessDict(TypedDict):
    index: int
    polytope: PolytopeDict
    step: StepDict


class DefectReport(TypedDict):
    defect_lo: str
    defect_hi: str
    epsilon: str


class _QuasiBase(TypedDict):
    version: str
    kind: Literal['quasi']
    initial: PolytopeDict
    steps: list[StepDict]
    witnesses: list[WitnessDict]


class QuasiCertificate(_QuasiBase, total=False):
    epsilon: str
    defect: DefectReport


Certificate = Union[ChainCertificate, QuasiCertificate]


# Conversion ################################################################

def polytope_to_dict(P: Polytope) -> PolytopeDict:
    return {
        'ambient_dim': P.ambient_dim,
        'vertices': [format_point(v) for v in P.vertices],
    }


def polytope_from_dict(data: PolytopeDict) -> Polytope:
    """Return the polytope described by *data*.

    Raises :exc:`CertificateError` if the data is malformed or the
    vertices do not have the recorded ambient dimension.
    """
    try:
        n = data['ambient_dim']
        vertices = [parse_point(v) for v in data['vertices']]
    except (KeyError, TypeError, InputError) as exc:
        raise CertificateError(f'invalid polytope: {exc}') from exc
    if not vertices or any(len(v) != n for v in vertices):
        raise CertificateError(f'vertices do not have dimension {n}')
    return conv_hull(vertices)


def step_to_dict(step: PyramidalStep) -> StepDict:
    data: StepDict = {'kind': step.kind.value, 'apex': format_point(step.apex)}
    if step.facet is not None:
        data['facet'] = list(step.facet)
    return data


def step_from_dict(data: StepDict) -> PyramidalStep:
    try:
        facet = data.get('facet')
        return PyramidalStep(data['apex'], StepKind(data['kind']),
                             None if facet is None else [int(i) for i in facet])
    except (KeyError, TypeError, ValueError, InputError) as exc:
        raise CertificateError(f'invalid step: {exc}') from exc


def chain_to_dict(chain: GrowthChain) -> ChainCertificate:
    return {
        'version': VERSION,
        'kind': 'chain',
        'initial': polytope_to_dict(chain.initial),
        'steps': [step_to_dict(s) for s in chain.steps],
    }


def chain_from_dict(data: ChainCertificate) -> GrowthChain:
    try:
        steps = data['steps']
        initial = data['initial']
    except (KeyError, TypeError) as exc:
        raise CertificateError(f'invalid chain certificate: {exc}') from exc
    return GrowthChain(polytope_from_dict(initial), [step_from_dict(s) for s in steps])


def defect_report(interval: DistanceInterval, epsilon) -> DefectReport:
    return {
        'defect_lo': format_rational(interval.lo),
        'defect_hi': format_rational(interval.hi),
        'epsilon': format_rational(parse_rational(epsilon)),
    }


def quasi_to_dict(
    qc: QuasiChain,
    epsilon=None,
    defect: Optional[DistanceInterval] = None,
) -> QuasiCertificate:
    strict = set(qc.strict_indices())
    data: QuasiCertificate = {
        'version': VERSION,
        'kind': 'quasi',
        'initial': polytope_to_dict(qc.initial),
        'steps': [step_to_dict(w.step) for w in qc.witnesses],
        'witnesses': [
            {'index': w.index,
             'polytope': polytope_to_dict(w.polytope),
             'step': step_to_dict(w.step)}
            for w in qc.witnesses if w.index in strict
        ],
    }
    if epsilon is not None:
        data['epsilon'] = format_rational(parse_rational(epsilon))
        if defect is not None:
            data['defect'] = defect_report(defect, epsilon)
    return data


def quasi_from_dict(data: QuasiCertificate) -> QuasiChain:
    """Return the quasi chain recorded in *data*.

    Indices without a witness record extend the previous polytope; a
    witness record's step replaces the plain step at its index. The
    chain is rebuilt without verification.
    """
    try:
        steps = [step_from_dict(s) for s in data['steps']]
        records = data.get('witnesses', [])
        witnessed = {int(w['index']): w for w in records}
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f'invalid quasi certificate: {exc}') from exc
    if any(not 1 <= i <= len(steps) for i in witnessed):
        raise CertificateError('witness index out of range')
    polytopes = [polytope_from_dict(data['initial'])]
    witnesses = []
    for i, step in enumerate(steps, 1):
        base = polytopes[-1]
        if i in witnessed:
            base = polytope_from_dict(witnessed[i]['polytope'])
            step = step_from_dict(witnessed[i]['step'])
        if len(step.apex) != base.ambient_dim:
            raise CertificateError(f'step {i} has the wrong dimension')
        polytopes.append(conv_hull(base.vertices + (step.apex,)))
        witnesses.append(Witness(i, base, step))
    return QuasiChain(polytopes, witnesses)


# Files #####################################################################

def certificate_kind(data: dict[str, Any]) -> str:
    """Return ``'chain'`` or ``'quasi'`` for certificate *data*."""
    kind = data.get('kind')
    if kind is None:
        kind = 'quasi' if 'witnesses' in data else 'chain'
    if kind not in ('chain', 'quasi'):
        raise CertificateError(f'unknown certificate kind: {kind!r}')
    return kind


def load(source: AnyPath) -> Certificate:
    """Read the certificate in *source* and return it as a dictionary.

    Raises :exc:`CertificateError` if the file cannot be read or is not
    a certificate.
    """
    path = Path(source).expanduser()
    try:
        with path.open(encoding='utf-8') as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CertificateError(f'could not read certificate {path}') from exc
    if not isinstance(data, dict) or 'initial' not in data or 'steps' not in data:
        raise CertificateError(f'{path} is not a certificate')
    data['kind'] = certificate_kind(data)
    data.setdefault('version', VERSION)
    return data  # type: ignore[return-value]


def load_polytope(source: AnyPath) -> Polytope:
    """Read a polytope JSON file, as used for command line input."""
    path = Path(source).expanduser()
    try:
        with path.open(encoding='utf-8') as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CertificateError(f'could not read polytope {path}') from exc
    return polytope_from_dict(data)


def to_dict(obj: Union[GrowthChain, QuasiChain, Polytope]) -> dict:
    if isinstance(obj, GrowthChain):
        return dict(chain_to_dict(obj))
    if isinstance(obj, QuasiChain):
        return dict(quasi_to_dict(obj))
    if isinstance(obj, Polytope):
        return dict(polytope_to_dict(obj))
    raise TypeError(f'cannot serialize {type(obj).__name__}')


def dumps(obj: Union[GrowthChain, QuasiChain, Polytope, dict]) -> str:
    data = obj if isinstance(obj, dict) else to_dict(obj)
    return json.dumps(data, indent=2)


def dump(
    obj: Union[GrowthChain, QuasiChain, Polytope, dict],
    destination: AnyPath,
) -> None:
    """Write *obj* (a chain, quasi chain, polytope or dictionary) as JSON."""
    path = Path(destination).expanduser()
    with path.open('w', encoding='utf-8') as fh:
        fh.write(dumps(obj))
        fh.write('\n')


def from_dict(data: Certificate) -> Union[GrowthChain, QuasiChain]:
    if certificate_kind(dict(data)) == 'quasi':
        return quasi_from_dict(data)  # type: ignore[arg-type]
    return chain_from_dict(data)  # type: ignore[arg-type]
