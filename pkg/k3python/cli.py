############################################################################
#                                                                          #
#                                  CLI.PY                                  #
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

"""Command line front end.

Sextics are given lowest degree first: ``--sextic "f0,f1,...,f6"``
describes y^2 = f0 + f1 x + ... + f6 x^6. A curve with rational
Weierstrass points can instead be given by ``--roots "r1,...,r6"`` (use
``inf`` for a root at infinity) and ``--f6``. Rationals are written
``p/q``.

Every command builds a report: a JSON document (written to ``--out``, or
to the standard output when no file is given) holding each check with its
status and witnesses. The exit status is 0 when all checks pass, 1 when a
check fails and 2 on invalid input.

The number of workers of the parallel loops is read from the
K3PYTHON_JOBS environment variable (0 for one per CPU, default 1).
"""

from collections import OrderedDict
import logging
import sys

from k3python import __version__
from k3python.algebra import AlgebraError, format_rational, rational
from k3python.elliptic import (EllipticSurfaceError, classify_all_fibers,
                               fiber_summary, shioda_tate)
from k3python.invariants import (GenusTwoCurve, IgusaClebsch, InvariantsError,
                                 absolute_invariants, default_normalization,
                                 ic_from_coeffs, ic_from_roots, mobius_check,
                                 oracle_check)
from k3python.kummer import (KummerError, build_kummer,
                             completed_square_identity, nodes_and_tropes,
                             verify_configuration)
from k3python.lattices import (LatticeError, count_roots,
                               disc_and_signature, lattice_data_suite,
                               named_lattice, naruki_classes, verify_alpha,
                               x_diagram_classes)
from k3python.main import Main, MainError
from k3python.mainloop import MainLoopError, default_parallelism
from k3python.result import CheckResult, Report
from k3python.shioda_inose import (ShiodaInoseError, all_checks,
                                   kummer_side_verification,
                                   random_pair_checks, refiber_e8e7,
                                   sextic_correspondence, shioda_tate_check,
                                   surfaces_from_ic, symbolic_pair,
                                   verify_quotient_identity, x)
from k3python.yaml_utils import YamlError, load_settings

logger = logging.getLogger('k3python.cli')

COMMANDS = ('invariants', 'kummer', 'build', 'classify', 'lattice', 'verify')
LEVELS = ('fast', 'full', 'kummer')
MIN_PRECISION = 30

# Errors caused by invalid input
INPUT_ERRORS = (AlgebraError, InvariantsError, KummerError,
                EllipticSurfaceError, LatticeError, ShiodaInoseError,
                YamlError, MainLoopError, ValueError)


def _precision(value):
    digits = int(value)
    if digits < MIN_PRECISION:
        raise ValueError('precision must be at least %d digits'
                         % MIN_PRECISION)
    return digits


def _split(text):
    return [v.strip().replace('−', '-') for v in text.split(',')
            if v.strip()]


def add_input_arguments(parser, ic=True):
    group = parser.add_argument_group('curve')
    group.add_argument('--sextic', metavar='F0,...,F6',
                       help='coefficients of f, lowest degree first')
    group.add_argument('--roots', metavar='R1,...,R6',
                       help='the six roots of f (inf for infinity)')
    group.add_argument('--f6', default='1',
                       help='leading coefficient used with --roots '
                       '(default 1)')
    if ic:
        group.add_argument('--ic', metavar='I2,I4,I6,I10',
                           help='Igusa-Clebsch invariants instead of a '
                           'curve')


def add_common_arguments(parser):
    parser.add_argument('--out', metavar='FILE',
                        help='write the JSON report to FILE')
    parser.add_argument('--precision', type=_precision, default=None,
                        help='working precision of the numeric checks in '
                        'decimal digits (at least %d)' % MIN_PRECISION)
    parser.add_argument('--seed', type=int, default=None,
                        help='seed of the random samples')
    parser.add_argument('--config', metavar='FILE', action='append',
                        default=[],
                        help='YAML file updating the default settings '
                        '(can be repeated)')
    parser.add_argument('--timings', action='store_true', default=False,
                        help='record the time spent in each check')


def build_parser(main):
    parser = main.argument_parser
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    sub = subparsers.add_parser('invariants',
                                help='Igusa-Clebsch invariants of a curve')
    add_input_arguments(sub, ic=False)
    add_common_arguments(sub)

    sub = subparsers.add_parser('kummer',
                                help='Kummer quartic, nodes and tropes')
    add_input_arguments(sub, ic=False)
    add_common_arguments(sub)

    sub = subparsers.add_parser('build',
                                help='the surfaces X and Y of a curve')
    add_input_arguments(sub)
    add_common_arguments(sub)

    sub = subparsers.add_parser('classify',
                                help='singular fibers of X and Y')
    add_input_arguments(sub)
    add_common_arguments(sub)

    sub = subparsers.add_parser('lattice', help='lattice data')
    sub.add_argument('--name', required=True,
                     help='A(n), D(n), E6, E7, E8, U, Nikulin, Kummer, '
                     'Lambda166, Naruki or X-diagram')
    sub.add_argument('--scale', default=None,
                     help='multiply the form by a rational')
    sub.add_argument('--roots', '--roots-count', dest='roots_count',
                     action='store_true', default=False,
                     help='count the roots (definite lattices)')
    add_common_arguments(sub)

    sub = subparsers.add_parser('verify', help='run the verification suite')
    sub.add_argument('--level', choices=LEVELS, default='fast',
                     help='fast: exact identities and lattices; full: '
                     'adds the sampled checks; kummer: adds the Kummer '
                     'side sampling (slow)')
    add_input_arguments(sub, ic=False)
    add_common_arguments(sub)
    return parser


def read_curve(options, required=True):
    """Return the GenusTwoCurve given on the command line, or None."""
    if options.sextic and options.roots:
        raise ValueError('--sextic and --roots are exclusive')
    if options.sextic:
        values = _split(options.sextic)
        if len(values) > 7:
            raise ValueError('at most seven coefficients expected')
        return GenusTwoCurve.from_coefficients(values)
    if options.roots:
        values = _split(options.roots)
        if len(values) != 6:
            raise ValueError('six roots expected, got %d' % len(values))
        roots = [None if v.lower() in ('inf', 'infinity') else rational(v)
                 for v in values]
        return GenusTwoCurve.from_roots(roots, rational(options.f6))
    if required:
        raise ValueError('a curve is required (--sextic or --roots)')
    return None


def read_invariants(options, settings):
    """Return (curve or None, invariants) from the command line.

    Invariants computed from a curve use the normalization of the settings;
    invariants given with --ic are taken as they are.
    """
    if getattr(options, 'ic', None):
        if options.sextic or options.roots:
            raise ValueError('--ic excludes --sextic and --roots')
        return None, IgusaClebsch.from_strings(options.ic.replace(
            '−', '-'))
    curve = read_curve(options)
    return curve, ic_from_coeffs(curve, default_normalization(settings))


def read_settings(options):
    """Load the settings for the command line options."""
    level = getattr(options, 'level', 'fast')
    settings = load_settings(level, options.config)
    if options.precision is not None:
        settings['precision'] = options.precision
    if options.seed is not None:
        settings['seed'] = options.seed
    if settings.get('precision', 60) < MIN_PRECISION:
        raise ValueError('precision must be at least %d digits'
                         % MIN_PRECISION)
    return settings


def run_invariants(report, options, settings, parallelism):
    curve = read_curve(options)
    normalization = default_normalization(settings)
    ic = ic_from_coeffs(curve, normalization)
    report.set_data('curve', [format_rational(c)
                              for c in curve.coefficients()])
    report.set_data('invariants', ic.as_dict())
    if ic.I10 != 0:
        report.set_data('absolute_invariants',
                        list(absolute_invariants(ic)))
    if curve.roots is not None:
        result = CheckResult('roots and coefficients agree')
        from_roots = ic_from_roots(curve.leading, curve.roots,
                                   normalization)
        result.check(from_roots == ic, str(ic),
                     'roots give %s' % (from_roots,))
        report.add('invariants', result)


def run_kummer(report, options, settings, parallelism):
    curve = read_curve(options)
    quartic = build_kummer(curve)
    report.set_data('K2', quartic.K2)
    report.set_data('K1', quartic.K1)
    report.set_data('K0', quartic.K0)
    if curve.roots is None:
        report.run('kummer', 'completed square', completed_square_identity,
                   quartic)
        return
    nodes, tropes = nodes_and_tropes(curve)
    report.set_data('nodes', OrderedDict((n.label, list(n.coordinates))
                                         for n in nodes))
    report.set_data('tropes', OrderedDict((tr.label, tr.form)
                                          for tr in tropes))
    report.run('kummer', 'configuration', verify_configuration, quartic,
               nodes, tropes, parallelism)


def run_build(report, options, settings, parallelism):
    curve, ic = read_invariants(options, settings)
    pair = surfaces_from_ic(ic)
    report.set_data('invariants', ic.as_dict())
    report.set_data('surfaces', pair.as_dict())
    report.set_data('refibered', refiber_e8e7(pair.X, x).as_dict())
    report.set_data('g', sextic_correspondence(ic))
    report.run('shioda_inose', 'quotient identity', verify_quotient_identity,
               pair)


def run_classify(report, options, settings, parallelism):
    curve, ic = read_invariants(options, settings)
    pair = surfaces_from_ic(ic)
    fibers = OrderedDict()
    for name, surface in (('X', pair.X), ('Y', pair.Y),
                          ('refibered X', refiber_e8e7(pair.X, x))):
        fibers[name] = classify_all_fibers(surface, parallelism)
        rho, disc = shioda_tate(fibers[name])
        report.set_data(name, OrderedDict([
            ('fibers', fibers[name]),
            ('summary', fiber_summary(fibers[name])),
            ('rho', rho), ('trivial_disc', disc)]))
    report.run('elliptic', 'Shioda-Tate', shioda_tate_check, fibers['X'],
               fibers['Y'])


def run_lattice(report, options, settings, parallelism):
    key = options.name.strip().lower().replace('_', '-')
    if key == 'naruki':
        classes, results = naruki_classes()
        report.set_data('classes', OrderedDict(
            (name, str(c)) for name, c in classes.items()))
        report.extend('lattices', results)
        report.run('lattices', 'alpha', verify_alpha)
        return
    if key in ('x-diagram', 'xdiagram'):
        lattice, results = x_diagram_classes()
        report.set_data('lattice', lattice)
        report.extend('lattices', results)
        return
    lattice = named_lattice(options.name, options.scale)
    disc, sign = disc_and_signature(lattice)
    report.set_data('name', lattice.name)
    report.set_data('rank', lattice.rank)
    report.set_data('disc', disc)
    report.set_data('signature', list(sign))
    report.set_data('gram', lattice)
    if options.roots_count:
        report.set_data('roots', count_roots(lattice, parallelism))


def run_verify(report, options, settings, parallelism):
    seed = settings.get('seed', 0)
    height = settings.get('height', 10)
    normalization = default_normalization(settings)
    curve = read_curve(options, required=False)
    if curve is None:
        curve = GenusTwoCurve.from_roots(settings.get('reference_roots',
                                                      list(range(6))))
    report.set_data('curve', [format_rational(c)
                              for c in curve.coefficients()])

    report.run('invariants', 'oracle', oracle_check,
               settings.get('oracle_trials', 20), seed, height, normalization)
    report.run('invariants', 'Moebius invariance', mobius_check,
               settings.get('mobius_trials', 20), seed, height, normalization)

    if curve.roots is not None and None not in curve.roots:
        quartic = build_kummer(curve)
        nodes, tropes = nodes_and_tropes(curve)
        report.run('kummer', 'configuration', verify_configuration, quartic,
                   nodes, tropes, parallelism)

    report.run('elliptic', 'random invariants', random_pair_checks,
               settings.get('ic_trials', 20), seed, height, parallelism)

    report.run('lattices', 'data', lattice_data_suite, parallelism)
    report.run('lattices', 'Naruki', lambda: naruki_classes()[1])
    report.run('lattices', 'alpha', verify_alpha)
    report.run('lattices', 'X-diagram', lambda: x_diagram_classes()[1])

    report.run('shioda_inose', 'symbolic quotient identity',
               lambda: verify_quotient_identity(symbolic_pair()))
    report.run('shioda_inose', 'curve', lambda: all_checks(
        curve, settings, parallelism)[1])

    if options.level == 'kummer':
        kummer = settings.get('kummer', {})
        report.run('shioda_inose', 'Kummer side', kummer_side_verification,
                   curve, kummer.get('digits', 80),
                   kummer.get('samples', 100),
                   kummer.get('coordinate_height', 20),
                   kummer.get('residual_exponent', 30), seed, parallelism,
                   normalization)


RUNNERS = {'invariants': run_invariants,
           'kummer': run_kummer,
           'build': run_build,
           'classify': run_classify,
           'lattice': run_lattice,
           'verify': run_verify}


def main(args=None):
    """Run the command line.

    :param args: command line arguments, default sys.argv[1:]
    :return: the exit status
    :rtype: int
    """
    m = Main(name='k3python', description=__doc__)
    parser = build_parser(m)
    try:
        options = m.parse_args(args)
    except SystemExit as e:
        m.close()
        return e.code
    except MainError as e:
        logger.error('%s', e)
        m.close()
        return 2
    try:
        try:
            settings = read_settings(options)
            parallelism = default_parallelism()
        except INPUT_ERRORS as e:
            parser.print_usage(sys.stderr)
            logger.error('%s', e)
            return 2

        recorded = OrderedDict((k, v) for k, v in settings.items()
                               if k != 'case_level')
        report = Report(' '.join(['k3python'] + list(
            args if args is not None else sys.argv[1:])), recorded)
        try:
            RUNNERS[options.command](report, options, settings, parallelism)
        except INPUT_ERRORS as e:
            parser.print_usage(sys.stderr)
            logger.error('%s', e)
            return 2

        if options.out:
            report.dump(options.out, options.timings)
            print(report.summary())
        else:
            sys.stdout.write(report.to_json(options.timings))
            logger.info('summary:\n%s', report.summary())
        return 1 if report.failed else 0
    finally:
        m.close()
