import sys
import argparse
from pathlib import Path
from typing import Any, Optional
import json
import logging
import re

import pyrgrow
from pyrgrow import certificate
from pyrgrow._export import export_off
from pyrgrow._util import format_rational
from pyrgrow.extension import QuasiChain, verify_quasi
from pyrgrow.growth import grow, transfinite_prefix
from pyrgrow.kernel import DistanceInterval, hausdorff
from pyrgrow.quasi import quasi_grow
from pyrgrow.util import ProgressBar, ProgressHandler, random_nested_pair
from pyrgrow.validate import failures, validate

logger = logging.getLogger('pyrgrow')

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFICATION = 2
EXIT_EXHAUSTED = 3


class VerificationFailed(pyrgrow.Error):
    """Raised by the ``verify`` command when a certificate fails a check."""

    def __init__(self, message: str, steps: list[int]):
        super().__init__(message)
        self.steps = steps


def _progress() -> type[ProgressHandler]:
    return ProgressBar if sys.stderr.isatty() else ProgressHandler


def _interval(interval: DistanceInterval) -> dict[str, str]:
    return {'lo': format_rational(interval.lo), 'hi': format_rational(interval.hi)}


def _emit(data: Any, args) -> None:
    if args.output_file:
        certificate.dump(data, args.output_file)
    else:
        print(certificate.dumps(data))


def _grow(args):
    P = certificate.load_polytope(args.P)
    Q = certificate.load_polytope(args.Q)
    chain = grow(P, Q, progress_handler=_progress())
    _emit(chain, args)


def _quasi_grow(args):
    P = certificate.load_polytope(args.P)
    Q = certificate.load_polytope(args.Q)
    eps = pyrgrow.config.epsilon
    qc = quasi_grow(P, Q, eps, progress_handler=_progress())
    strict = len(qc.strict_indices()) or 1
    interval = qc.defect(tol=eps / (4 * strict))
    _emit(certificate.quasi_to_dict(qc, epsilon=eps, defect=interval), args)


def _step_indices(report, codes: list[str]) -> list[int]:
    indices = set()
    for code in codes:
        for label in report[code]['items']:
            match = re.search(r'\d+$', label)
            if match:
                indices.add(int(match.group()))
    return sorted(indices)


def _verify(args):
    cert = certificate.load(args.FILE)
    selectseq = [check.strip() for check in args.select.split(',')]
    report = validate(cert, select=selectseq, progress_handler=_progress())
    failed = failures(report)
    print(f'{str(args.FILE):<20}', 'failed' if failed else 'passed', sep='')
    report = {code: report[code] for code in failed}
    if args.output_file:
        Path(args.output_file).write_text(json.dumps(report, indent=2) + '\n')
    else:
        for code, check in report.items():
            print(f'  {code}: {check["message"]}')
            for label, context in check['items'].items():
                print(f'    {label}: {context}' if context else f'    {label}')

    errors = [code for code in failed if code.startswith('E')]
    if errors:
        raise VerificationFailed(
            'certificate failed checks ' + ', '.join(errors),
            _step_indices(report, errors),
        )
    chain = certificate.from_dict(cert)
    if isinstance(chain, QuasiChain):
        result = verify_quasi(chain, pyrgrow.config.tolerance, args.defect_against)
        if result.defect is not None:
            print(f'  defect ({args.defect_against}): {result.defect}')


def _hausdorff(args):
    P = certificate.load_polytope(args.P)
    Q = certificate.load_polytope(args.Q)
    interval = hausdorff(P, Q, pyrgrow.config.tolerance)
    print(json.dumps(_interval(interval)))


def _transfinite(args):
    P = certificate.load_polytope(args.P)
    Q = certificate.load_polytope(args.Q)
    f = certificate.load_polytope(args.facet) if args.facet else None
    chain, interval = transfinite_prefix(
        P, Q, pyrgrow.config.tolerance, f=f, progress_handler=_progress()
    )
    data = certificate.chain_to_dict(chain)
    _emit({**data, 'distance': _interval(interval)}, args)


def _export_off(args):
    chain = certificate.from_dict(certificate.load(args.FILE))
    for path in export_off(chain, args.destination, step=args.step, digits=args.digits):
        print(path)


def _random_pair(args):
    P, Q = random_nested_pair(args.dim, count=args.count, seed=args.seed)
    certificate.dump(P, args.P)
    certificate.dump(Q, args.Q)


def _path_type(arg):
    return Path(arg)


def _file_path_type(arg):
    path = Path(arg)
    if not path.is_file():
        raise argparse.ArgumentTypeError(f'cannot find file: {arg}')
    return path


common = argparse.ArgumentParser(add_help=False)
common.add_argument(
    '--config', type=_file_path_type, metavar='FILE',
    help='TOML file with configuration settings'
)
common.add_argument(
    '--epsilon', metavar='RATIONAL', help='defect budget (e.g., 1/100)'
)
common.add_argument(
    '--tol', metavar='RATIONAL', help='width of distance intervals (e.g., 1/1000000)'
)
common.add_argument(
    '--max-halvings', type=int, metavar='N',
    help='how often a small parameter is halved before giving up'
)

parser = argparse.ArgumentParser(
    prog='python3 -m pyrgrow',
    description='Build and verify pyramidal growth chains of polytopes.',
)
parser.add_argument(
    '-V', '--version', action='version', version=f'pyrgrow {pyrgrow.__version__}'
)
parser.add_argument(
    '-v', '--verbose', action='count', dest='verbosity', default=0,
    help='increase verbosity (can repeat: -vv, -vvv)'
)
parser.set_defaults(func=lambda _: parser.print_help())
sub_parsers = parser.add_subparsers(title='subcommands')


def _add_pair(subparser):
    subparser.add_argument('P', type=_file_path_type, help='polytope JSON file')
    subparser.add_argument('Q', type=_file_path_type, help='polytope JSON file')


def _add_output(subparser):
    subparser.add_argument(
        '-o', '--output-file', type=_path_type, metavar='FILE',
        help='write the certificate to FILE instead of standard output'
    )


parser_grow = sub_parsers.add_parser(
    'grow', parents=[common],
    description='Build an exact pyramidal chain from P to Q (dimension 3 or less).',
    help='build a pyramidal chain',
)
_add_pair(parser_grow)
_add_output(parser_grow)
parser_grow.set_defaults(func=_grow)


parser_quasi = sub_parsers.add_parser(
    'quasi-grow', parents=[common],
    description='Build a quasi-pyramidal chain from P to Q with a small defect.',
    help='build a quasi-pyramidal chain',
)
_add_pair(parser_quasi)
_add_output(parser_quasi)
parser_quasi.set_defaults(func=_quasi_grow)


parser_verify = sub_parsers.add_parser(
    'verify', parents=[common],
    description='Replay and check a chain or quasi-chain certificate.',
    help='verify a certificate',
)
parser_verify.add_argument(
    'FILE', type=_file_path_type, help='certificate JSON file to verify'
)
parser_verify.add_argument(
    '--select', metavar='CHECKS', default='E,W',
    help='comma-separated list of checks to run (default: E,W)'
)
parser_verify.add_argument(
    '--defect-against', choices=('current', 'previous'), default='current',
    help='measure witnesses against the current or previous polytope'
)
parser_verify.add_argument(
    '--output-file', metavar='FILE',
    help='write report to a JSON file'
)
parser_verify.set_defaults(func=_verify)


parser_hausdorff = sub_parsers.add_parser(
    'hausdorff', parents=[common],
    description='Print an interval around the Hausdorff distance of P and Q.',
    help='bound a Hausdorff distance',
)
_add_pair(parser_hausdorff)
parser_hausdorff.set_defaults(func=_hausdorff)


parser_transfinite = sub_parsers.add_parser(
    'transfinite', parents=[common],
    description='Build a finite chain from P ending within the tolerance of Q.',
    help='approximate a limit of pyramidal growth',
)
_add_pair(parser_transfinite)
parser_transfinite.add_argument(
    '--facet', type=_file_path_type, metavar='FILE',
    help='common facet; the target is then P and Q glued along it'
)
_add_output(parser_transfinite)
parser_transfinite.set_defaults(func=_transfinite)


parser_export = sub_parsers.add_parser(
    'export-off', parents=[common],
    description='Write approximate OFF meshes of the polytopes of a certificate.',
    help='export OFF meshes',
)
parser_export.add_argument(
    'FILE', type=_file_path_type, help='certificate JSON file'
)
parser_export.add_argument(
    'destination', type=_path_type, help='OFF file (numbered when --step is absent)'
)
parser_export.add_argument(
    '--step', type=int, metavar='I', help='only write polytope I of the chain'
)
parser_export.add_argument(
    '--digits', type=int, default=6, metavar='N',
    help='fractional digits of the coordinates (default: 6)'
)
parser_export.set_defaults(func=_export_off)


parser_random = sub_parsers.add_parser(
    'random-pair', parents=[common],
    description='Write a random nested pair of rational polytopes.',
    help='generate a test instance',
)
parser_random.add_argument('dim', type=int, help='dimension of the polytopes')
parser_random.add_argument(
    'P', type=_path_type, help='output file of the inner polytope'
)
parser_random.add_argument(
    'Q', type=_path_type, help='output file of the outer polytope'
)
parser_random.add_argument(
    '--count', type=int, default=6, help='number of random points (default: 6)'
)
parser_random.add_argument('--seed', type=int, help='random seed')
parser_random.set_defaults(func=_random_pair)


def _configure(args) -> None:
    if getattr(args, 'config', None):
        pyrgrow.config.load(args.config)
    overrides: dict[str, Any] = {}
    if getattr(args, 'epsilon', None) is not None:
        overrides['epsilon'] = args.epsilon
    if getattr(args, 'tol', None) is not None:
        overrides['tolerance'] = args.tol
    if getattr(args, 'max_halvings', None) is not None:
        overrides['max_halvings'] = args.max_halvings
    pyrgrow.config.update(overrides)


def _exit_status(exc: pyrgrow.Error) -> int:
    if isinstance(exc, pyrgrow.ExhaustedError):
        return EXIT_EXHAUSTED
    if isinstance(exc, (VerificationFailed, pyrgrow.ConstructionError)):
        return EXIT_VERIFICATION
    return EXIT_INPUT


def main(argv: Optional[list[str]] = None) -> int:
    """Run the command line interface and return the exit status."""
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.ERROR - (min(args.verbosity, 3) * 10),
        format='pyrgrow: %(levelname)s: %(message)s',
    )

    try:
        _configure(args)
        args.func(args)
    except pyrgrow.Error as exc:
        status = _exit_status(exc)
        error = {'error': type(exc).__name__, 'message': str(exc), 'status': status}
        if isinstance(exc, VerificationFailed):
            error['steps'] = exc.steps
        logger.debug('exiting with status %d', status, exc_info=True)
        print(json.dumps(error), file=sys.stderr)
        return status
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
