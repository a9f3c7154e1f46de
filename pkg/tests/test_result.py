import json

import mpmath
import sympy

from k3python.result import CheckResult, Report, json_value


def test_check_result():
    result = CheckResult('identity')
    assert result.status == 'UNKNOWN'
    assert not result
    assert result.check(True, 'ok', 'ko')
    assert result and result.msg == 'ok'
    result.check(False, 'ok', 'ko')
    assert result.failed and result.msg == 'ko'
    result.set_status('SKIP', 'nothing to do')
    assert result
    assert str(result) == 'identity:SKIP:nothing to do'


def test_json_values():
    x = sympy.Symbol('x')
    assert json_value(sympy.Rational(-3, 2)) == {'exact': '-3/2'}
    assert json_value(7) == {'exact': '7'}
    assert json_value(sympy.Poly(x ** 2 + 3, x)) == ['3', '0', '1']
    assert json_value(x + 1) == 'x + 1'
    assert json_value(True) is True
    with mpmath.workdps(30):
        value = json_value(mpmath.mpf(1) / 3)
    assert value == {'approx': '0.33333', 'digits': 30}
    assert json_value({'a': [1, None]}) == {'a': [{'exact': '1'}, None]}


def test_report():
    report = Report('k3python test', {'seed': 0})
    report.add('algebra', CheckResult('one', 'PASSED'))
    report.run('algebra', 'two', lambda: [CheckResult('two', 'PASSED'),
                                          CheckResult('three', 'PROBLEM')])
    assert report.failed
    assert report.select(['PROBLEM']) == ['algebra/three']
    data = json.loads(report.to_json())
    assert data['status'] == 'FAILED'
    assert [r['name'] for r in data['sections']['algebra']] == [
        'one', 'two', 'three']
    assert 'algebra' in report.summary()


def test_report_crash():
    def broken():
        raise ValueError('no luck')

    report = Report()
    outcome = report.run('section', 'broken', broken)
    assert outcome[0].status == 'CRASH'
    assert 'ValueError: no luck' in outcome[0].msg
    assert report.select(['CRASH']) == ['section/broken']
