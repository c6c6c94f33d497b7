import json

import pytest

from pyrgrow import CertificateError, certificate
from pyrgrow.extension import GrowthChain, QuasiChain, make_step
from pyrgrow.kernel import conv_hull


def test_chain_roundtrip(triangle, unit_square, tmp_path):
    chain = GrowthChain(triangle, [make_step(triangle, (1, 1))])
    path = tmp_path / 'chain.json'
    certificate.dump(chain, path)
    data = certificate.load(path)
    assert data['kind'] == 'chain'
    assert data['steps'] == [{'kind': 'stack', 'apex': ['1', '1'], 'facet': [1, 2]}]
    restored = certificate.from_dict(data)
    assert restored.final == unit_square


def test_quasi_roundtrip(tmp_path):
    big = conv_hull([(0, 0), (2, 0), (0, 2)])
    qc = QuasiChain.build(big, [(None, (2, 2)), (big, (3, 3))])
    data = certificate.quasi_to_dict(qc, epsilon='1/10')
    assert [w['index'] for w in data['witnesses']] == [2]
    assert data['epsilon'] == '1/10'
    path = tmp_path / 'quasi.json'
    certificate.dump(data, path)
    restored = certificate.from_dict(certificate.load(path))
    assert isinstance(restored, QuasiChain)
    assert restored.polytopes == qc.polytopes
    assert restored.strict_indices() == [2]


def test_polytope_dict(unit_square):
    data = certificate.polytope_to_dict(unit_square)
    assert data == {'ambient_dim': 2,
                    'vertices': [['0', '0'], ['0', '1'], ['1', '0'], ['1', '1']]}
    assert certificate.polytope_from_dict(data) == unit_square
    with pytest.raises(CertificateError):
        certificate.polytope_from_dict({'ambient_dim': 3, 'vertices': [['0', '0']]})
    with pytest.raises(CertificateError):
        certificate.polytope_from_dict({'vertices': [['0', '0']]})


def test_load_polytope(datadir, big_square):
    assert certificate.load_polytope(datadir / 'big-square.json') == big_square


@pytest.mark.parametrize(
    'content',
    ['not json', '[1, 2]', '{"initial": {}}',
     '{"kind": "other", "initial": {}, "steps": []}'],
    ids=['syntax', 'list', 'no-steps', 'kind'],
)
def test_load_errors(tmp_path, content):
    path = tmp_path / 'bad.json'
    path.write_text(content)
    with pytest.raises(CertificateError):
        certificate.load(path)


def test_load_missing_file(tmp_path):
    with pytest.raises(CertificateError):
        certificate.load(tmp_path / 'missing.json')


def test_witness_index_out_of_range(datadir):
    data = json.loads((datadir / 'W402-0.json').read_text())
    data['witnesses'][0]['index'] = 5
    with pytest.raises(CertificateError):
        certificate.from_dict(data)
