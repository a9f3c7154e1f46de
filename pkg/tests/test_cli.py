import json

import pytest

from k3python.algebra import rational
from k3python.cli import main


def run(tmp_path, *args):
    out = str(tmp_path / 'report.json')
    status = main(list(args) + ['--out', out])
    with open(out) as fd:
        return status, json.load(fd)


def test_invariants_from_roots(tmp_path):
    status, report = run(tmp_path, 'invariants', '--roots', '0,1,2,3,4,5')
    assert status == 0
    assert report['status'] == 'PASSED'
    assert report['data']['curve'][-1] == '1'
    assert set(report['data']['invariants']) == {'I2', 'I4', 'I6', 'I10'}


def test_invariants_from_sextic(tmp_path):
    status, report = run(tmp_path, 'invariants', '--sextic', '1,0,0,0,0,0,1')
    assert status == 0
    assert report['data']['invariants']['I10'] == '-46656'


def test_lattice_roots(tmp_path):
    status, report = run(tmp_path, 'lattice', '--name', 'E8', '--roots')
    assert status == 0
    assert report['data']['roots'] == {'exact': '240'}
    assert report['data']['disc'] == {'exact': '1'}
    assert report['data']['signature'] == [{'exact': '8'}, {'exact': '0'},
                                           {'exact': '0'}]


def test_lattice_naruki(tmp_path):
    status, report = run(tmp_path, 'lattice', '--name', 'Naruki')
    assert status == 0
    assert len(report['data']['classes']) == 24


def test_build(tmp_path):
    status, report = run(tmp_path, 'build', '--ic', '24,12,6,4')
    assert status == 0
    assert report['sections']['shioda_inose'][0]['status'] == 'PASSED'


def test_invalid_input():
    assert main(['invariants', '--sextic', '1,2,x']) == 2
    assert main(['invariants', '--roots', '1,2,3']) == 2
    assert main(['build', '--ic', '1,2,3,0']) == 2
    assert main(['lattice', '--name', 'F4']) == 2


def test_parse_errors():
    assert main(['frobnicate']) == 2
    assert main(['invariants', '--roots', '0,1,2,3,4,5',
                 '--precision', '10']) == 2


def test_json_on_stdout(capsys):
    assert main(['lattice', '--name', 'A2']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['command'] == 'k3python lattice --name A2'
    assert report['data']['disc'] == {'exact': '3'}


@pytest.mark.slow
def test_verify(tmp_path):
    status, report = run(tmp_path, 'verify', '--seed', '1')
    assert status == 0, report.get('failures')
    assert list(report['sections']) == ['invariants', 'kummer', 'elliptic',
                                        'lattices', 'shioda_inose']


def test_unicode_minus(tmp_path):
    status, report = run(tmp_path, 'invariants', '--sextic',
                         '0,−274,225,−85,15,−1,0')
    assert status == 0
    assert len(report['data']['invariants']) == 4
    assert report['data']['curve'][1] == '-274'


def test_normalization_from_config(tmp_path):
    config = tmp_path / 'normalization.yaml'
    config.write_text('normalization:\n    I2: 2\n    I10: 3\n')
    status, plain = run(tmp_path, 'invariants', '--roots', '0,1,2,3,4,5')
    assert status == 0
    status, scaled = run(tmp_path, 'invariants', '--roots', '0,1,2,3,4,5',
                         '--config', str(config))
    assert status == 0
    assert scaled['settings']['normalization']['I2'] == {'exact': '2'}
    before = dict((k, rational(v))
                  for k, v in plain['data']['invariants'].items())
    after = dict((k, rational(v))
                 for k, v in scaled['data']['invariants'].items())
    assert after['I2'] == 2 * before['I2']
    assert after['I4'] == before['I4']
    assert after['I6'] == before['I6']
    assert after['I10'] == 3 * before['I10']


def test_unwritable_log_file(tmp_path):
    log_file = str(tmp_path / 'missing' / 'k3python.log')
    assert main(['--log-file', log_file, 'lattice', '--name', 'A2']) == 2
