############################################################################
#                                                                          #
#                                RESULT.PY                                 #
#                                                                          #
#              Copyright (C) 2026 The k3python developers                  #
#                                                                          #
# This program is free software: you can redistribute it and/or modify     #
# it under the terms of the GNU General Public License as published by     #
# the Free Software Foundation, either version 3 of the License, or        #
# (at your option) any later version.                                      #
#                                                                          #
# This program is distributed in the hope that it will be useful,          #
# but WITHOUT ANY WARRANTY; without even the implied warranty of           #
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the            #
# GNU General Public License for more details.                             #
#                                                                          #
# You should have received a copy of the GNU General Public License        #
# along with this program.  If not, see <http://www.gnu.org/licenses/>     #
#                                                                          #
############################################################################

"""Check results and reports.

Each verification produces a CheckResult holding a status, a one-line
message and named witnesses (the objects and residuals backing the
status). Results are grouped by section into a Report which serializes to
a single JSON document.

Every number stored in a witness is tagged, either exact::

    {"exact": "-1/12"}

or approximate with the number of significant digits it was computed
with::

    {"approx": "3.2e-58", "digits": 60}
"""

from collections import OrderedDict
import json
import logging
import time
import traceback

import mpmath
import sympy

from k3python.algebra import format_rational, is_rational

logger = logging.getLogger('k3python.result')

# The following lists regroup the status in different categories.
FAIL = ['FAILED', 'PROBLEM']
CRASH = ['CRASH']
SKIP = ['SKIP']
PASS = ['PASSED']
FAIL_OR_CRASH = FAIL + CRASH + ['UNKNOWN']


class CheckResult(object):
    """Hold the result of one check.

    :var name: check name
    :var status: check status (a key of CheckResult.STATUS)
    :var msg: a short message
    :var witnesses: ordered mapping of named witnesses
    :var elapsed: time spent in the check, in seconds (None if not timed)
    """

    # to each status a boolean is associated indicating if the status
    # correspond to a failure
    STATUS = {'PASSED': False,
              'SKIP': False,
              'FAILED': True,
              'PROBLEM': True,
              'UNKNOWN': True,
              'CRASH': True}

    def __init__(self, name, status='UNKNOWN', msg=''):
        """Create a new check result.

        :param name: the check name
        :type name: str
        """
        self.name = name
        self.status = 'UNKNOWN'
        self.msg = ''
        self.witnesses = OrderedDict()
        self.elapsed = None
        self.set_status(status, msg)

    def set_status(self, status, msg=""):
        """Update status.

        :param status: a valid status string
        :type status: str
        :param msg: a one-line description associated with the status
        :type msg: str
        """
        assert status in self.STATUS, 'invalid status %s' % status
        self.status = status
        self.msg = msg

    def check(self, condition, msg_ok='', msg_failed=''):
        """Set status to PASSED or FAILED according to condition.

        :return: condition
        :rtype: bool
        """
        if condition:
            self.set_status('PASSED', msg_ok)
        else:
            self.set_status('FAILED', msg_failed)
        return bool(condition)

    def add_witness(self, key, value):
        """Record a witness; values are converted by json_value."""
        self.witnesses[key] = json_value(value)
        return self

    @property
    def failed(self):
        return self.STATUS[self.status]

    def __bool__(self):
        return not self.failed

    def as_dict(self, timings=False):
        result = OrderedDict()
        result['name'] = self.name
        result['status'] = self.status
        if self.msg:
            result['msg'] = self.msg
        if self.witnesses:
            result['witnesses'] = self.witnesses
        if timings and self.elapsed is not None:
            result['elapsed'] = round(self.elapsed, 3)
        return result

    def __str__(self):
        return '%s:%s:%s' % (self.name, self.status, self.msg)

    def __repr__(self):
        return 'CheckResult(%r, %r)' % (self.name, self.status)


def exact_value(value):
    """Tag an exact rational.

    :rtype: dict
    """
    return OrderedDict([('exact', format_rational(value))])


def approx_value(value, digits):
    """Tag a floating point value computed with digits significant digits.

    :rtype: dict
    """
    if isinstance(value, mpmath.mpc) and value.imag != 0:
        text = '%s%+si' % (mpmath.nstr(value.real, 5),
                           mpmath.nstr(value.imag, 5))
    else:
        text = mpmath.nstr(mpmath.re(value), 5)
    return OrderedDict([('approx', text), ('digits', digits)])


def json_value(value):
    """Convert a witness to JSON compatible data.

    Rationals become exact tags, univariate polynomials coefficient lists
    (lowest degree first) and multivariate polynomials lists of
    ``[exponents, coefficient]`` terms.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return exact_value(value)
    if isinstance(value, (mpmath.mpf, mpmath.mpc, float)):
        return approx_value(value, mpmath.mp.dps)
    if isinstance(value, sympy.Poly):
        if value.is_univariate:
            return [format_rational(c)
                    for c in reversed(value.all_coeffs())]
        return [[list(monom), format_rational(coeff)]
                for monom, coeff in value.terms()]
    if is_rational(value):
        return exact_value(value)
    if isinstance(value, sympy.Basic):
        return str(value)
    if isinstance(value, dict):
        return OrderedDict((str(k), json_value(v)) for k, v in value.items())
    if hasattr(value, 'as_dict'):
        return json_value(value.as_dict())
    if isinstance(value, (list, tuple)):
        return [json_value(v) for v in value]
    return str(value)


class Report(object):
    """A complete verification report.

    Results are grouped in sections (one per module) kept in insertion
    order so that two runs with the same input and seed produce the same
    document.
    """

    def __init__(self, command=None, settings=None):
        """Report constructor.

        :param command: the command that produced the report
        :type command: str | None
        :param settings: the run settings recorded in the report header
        :type settings: dict | None
        """
        self.command = command
        self.settings = settings or OrderedDict()
        self.sections = OrderedDict()
        self.data = OrderedDict()

    def add(self, section, result):
        """Add a CheckResult to a section.

        :return: result
        """
        self.sections.setdefault(section, []).append(result)
        if result.failed:
            logger.error('%s/%s %s %s', section, result.name, result.status,
                         result.msg)
        else:
            logger.info('%s/%s %s', section, result.name, result.status)
        return result

    def extend(self, section, results):
        for result in results:
            self.add(section, result)

    def run(self, section, name, function, *args, **kwargs):
        """Run a check function and record its result.

        The function returns either a CheckResult or a list of them. An
        exception is recorded as a CRASH result.
        """
        start = time.time()
        try:
            outcome = function(*args, **kwargs)
        except Exception as e:
            logger.debug(traceback.format_exc())
            outcome = CheckResult(name, 'CRASH', '%s: %s'
                                  % (e.__class__.__name__, e))
        elapsed = time.time() - start
        if isinstance(outcome, CheckResult):
            outcome = [outcome]
        for result in outcome:
            if result.elapsed is None:
                result.elapsed = elapsed
            self.add(section, result)
        return outcome

    def set_data(self, key, value):
        """Record a computed value (not a check) in the report."""
        self.data[key] = json_value(value)

    def results(self):
        for section, results in self.sections.items():
            for result in results:
                yield section, result

    def select(self, kind=None):
        """Retrieve the list of checks that match a given list of status.

        :param kind: None or a list of status. If None the complete list of
            check names will be returned
        :type kind: list[str] | None

        :return: a list of "section/name" strings
        :rtype: list[str]
        """
        return ['%s/%s' % (section, result.name)
                for section, result in self.results()
                if kind is None or result.status in kind]

    @property
    def failed(self):
        return any(result.failed for _, result in self.results())

    def as_dict(self, timings=False):
        result = OrderedDict()
        result['command'] = self.command
        result['settings'] = json_value(self.settings)
        if self.data:
            result['data'] = self.data
        result['status'] = 'FAILED' if self.failed else 'PASSED'
        result['sections'] = OrderedDict(
            (section, [r.as_dict(timings) for r in results])
            for section, results in self.sections.items())
        failures = self.select(FAIL_OR_CRASH)
        if failures:
            result['failures'] = failures
        return result

    def to_json(self, timings=False):
        return json.dumps(self.as_dict(timings), indent=2) + '\n'

    def dump(self, filename, timings=False):
        """Write the JSON document to filename."""
        with open(filename, 'w') as fd:
            fd.write(self.to_json(timings))

    def summary(self):
        """Return a plain text summary.

        :rtype: str
        """
        lines = []
        for section, result in self.results():
            line = '%-14s %-40s %s' % (section, result.name, result.status)
            if result.msg:
                line += ' ' + result.msg
            lines.append(line)
        counts = OrderedDict()
        for _, result in self.results():
            counts[result.status] = counts.get(result.status, 0) + 1
        lines.append(', '.join('%s: %d' % (k, v) for k, v in counts.items()))
        return '\n'.join(lines)
