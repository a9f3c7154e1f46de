############################################################################
#                                                                          #
#                              INVARIANTS.PY                               #
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

"""Igusa-Clebsch invariants of binary sextics.

A genus two curve is given by y^2 = f(x) with deg f in {5, 6}. Its
invariants (I2, I4, I6, I10) have weights (2, 4, 6, 10) and are defined
from the roots of f, seen as six points of the projective line (a quintic
has a root at infinity). Writing (ij) for the difference of roots i and j:

* I2 = c2 f6^2 sum over the 15 ways to pair the roots of (12)^2 (34)^2 (56)^2
* I4 = c4 f6^4 sum over the 10 splits in two triples of
  (12)^2 (23)^2 (31)^2 (45)^2 (56)^2 (64)^2
* I6 = c6 f6^6 sum over the 10 splits and the 6 bijections between the two
  triples of (12)^2 (23)^2 (31)^2 (45)^2 (56)^2 (64)^2 (14)^2 (25)^2 (36)^2
* I10 = c10 f6^10 product over all pairs of (ij)^2

The constants c_d come from the ``normalization`` section of the
settings and default to 1. In terms of the coefficients, I2, I4 and I6
are obtained once by interpolation from the root formulas; I10 is the
discriminant of the sextic (f5^2 times the discriminant of a quintic).
"""

from collections import namedtuple
from functools import reduce
import itertools
import logging
import math
import random

import sympy

from k3python.algebra import (AlgebraError, coefficients, discriminant,
                              format_rational, rational, solve_linear,
                              upoly)
from k3python.decorators import memoize
from k3python.result import CheckResult

logger = logging.getLogger('k3python.invariants')

WEIGHTS = (2, 4, 6, 10)

# Constants (c2, c4, c6, c10) used when no settings are given; the packaged
# configuration has the same values
UNIT_NORMALIZATION = (sympy.Integer(1), ) * 4

# Seed and height of the rational-rooted sextics used to interpolate the
# coefficient formulas
INTERPOLATION_SEED = 20060101
INTERPOLATION_HEIGHT = 7
INTERPOLATION_EXTRA_SAMPLES = 8


class InvariantsError(Exception):
    pass


class IgusaClebsch(namedtuple('IgusaClebsch', ['I2', 'I4', 'I6', 'I10'])):
    """The weighted tuple (I2, I4, I6, I10) of exact rationals.

    Tuple equality is exact equality; use ic_weighted_equal to compare
    curves.
    """

    __slots__ = ()

    def __new__(cls, I2, I4, I6, I10):
        return super(IgusaClebsch, cls).__new__(
            cls, *[rational(v) if not isinstance(v, sympy.Basic) else v
                   for v in (I2, I4, I6, I10)])

    @classmethod
    def from_strings(cls, text):
        """Parse "I2,I4,I6,I10".

        :type text: str
        :rtype: IgusaClebsch
        """
        values = [v for v in text.split(',') if v.strip()]
        if len(values) != 4:
            raise InvariantsError('expected 4 invariants, got %d'
                                  % len(values))
        return cls(*[rational(v) for v in values])

    @classmethod
    def symbolic(cls):
        """Return the invariants as indeterminates I2, I4, I6, I10."""
        return cls(*sympy.symbols('I2 I4 I6 I10'))

    def scaled(self, r):
        """Return (r^2 I2, r^4 I4, r^6 I6, r^10 I10)."""
        return IgusaClebsch(*[r ** d * v for d, v in zip(WEIGHTS, self)])

    def as_dict(self):
        return dict((name, format_rational(value))
                    for name, value in zip(self._fields, self))

    def __str__(self):
        return '(%s)' % ', '.join(format_rational(v) for v in self)


def default_normalization(settings=None):
    """Return the constants (c2, c4, c6, c10) of a settings dict.

    :param settings: settings as returned by load_settings, or None for
        UNIT_NORMALIZATION
    :rtype: tuple
    """
    if settings is None:
        return UNIT_NORMALIZATION
    section = settings.get('normalization') or {}
    return tuple(rational(str(section.get('I%d' % d, 1))) for d in WEIGHTS)


class GenusTwoCurve(object):
    """The curve y^2 = f(x).

    :ivar f: the polynomial f in x (degree 5 or 6)
    :ivar roots: None, or the six roots of f as exact rationals with None
        standing for the root at infinity of a quintic
    """

    x = sympy.Symbol('x')

    def __init__(self, f, roots=None):
        if f.degree() not in (5, 6):
            raise InvariantsError('sextic expected, got degree %d'
                                  % f.degree())
        self.f = f
        self.roots = roots
        if roots is not None:
            self.__check_roots()

    def __check_roots(self):
        if len(self.roots) != 6:
            raise InvariantsError('six roots expected, got %d'
                                  % len(self.roots))
        finite = [r for r in self.roots if r is not None]
        if len(finite) != self.f.degree():
            raise InvariantsError('roots do not match the degree of f')
        product = upoly([self.f.LC()], self.x)
        for r in finite:
            product = product * upoly([-r, 1], self.x)
        if product != self.f:
            raise InvariantsError('f is not f6 times the product of the '
                                  'given roots')

    @classmethod
    def from_coefficients(cls, values):
        """Build the curve from f0..f6 (lowest degree first).

        :param values: up to seven rationals or strings
        :rtype: GenusTwoCurve
        """
        return cls(upoly([rational(v) for v in values], cls.x))

    @classmethod
    def from_roots(cls, roots, f6=1):
        """Build f = f6 prod(x - r) from six roots.

        A None root stands for infinity: f then has degree 5 and leading
        coefficient f6.
        """
        f6 = rational(f6)
        if f6 == 0:
            raise InvariantsError('leading coefficient must be nonzero')
        roots = [None if r is None else rational(r) for r in roots]
        f = upoly([f6], cls.x)
        for r in roots:
            if r is not None:
                f = f * upoly([-r, 1], cls.x)
        return cls(f, roots)

    @property
    def degree(self):
        return self.f.degree()

    @property
    def leading(self):
        return self.f.LC()

    def coefficients(self):
        """Return [f0, ..., f6] (f6 = 0 for a quintic)."""
        values = coefficients(self.f)
        return values + [sympy.Integer(0)] * (7 - len(values))

    def has_distinct_roots(self):
        if self.roots is None:
            return discriminant(self.f) != 0
        return len(set(self.roots)) == 6

    def __repr__(self):
        return 'GenusTwoCurve(%s)' % self.f.as_expr()


def _difference(r, s):
    """Return the determinant of the homogeneous roots r and s."""
    if r is None and s is None:
        raise InvariantsError('two roots at infinity')
    if r is None:
        return sympy.Integer(-1)
    if s is None:
        return sympy.Integer(1)
    return r - s


def _pairings(indices):
    """Yield the perfect matchings of indices."""
    if not indices:
        yield ()
        return
    first = indices[0]
    for k in range(1, len(indices)):
        rest = indices[1:k] + indices[k + 1:]
        for matching in _pairings(rest):
            yield ((first, indices[k]), ) + matching


def _triple_splits():
    """Yield the 10 splits of range(6) in two triples."""
    for triple in itertools.combinations(range(1, 6), 2):
        first = (0, ) + triple
        yield first, tuple(i for i in range(6) if i not in first)


def root_sums(roots):
    """Return the four unnormalized root sums (without f6 powers).

    :param roots: six exact rationals, None for a root at infinity
    :rtype: tuple
    """
    d2 = {}
    for i, j in itertools.combinations(range(6), 2):
        d2[(i, j)] = d2[(j, i)] = _difference(roots[i], roots[j]) ** 2

    def triangle(t):
        return d2[(t[0], t[1])] * d2[(t[1], t[2])] * d2[(t[2], t[0])]

    s2 = sum(d2[a] * d2[b] * d2[c] for a, b, c in _pairings(tuple(range(6))))
    s4 = 0
    s6 = 0
    for first, second in _triple_splits():
        t = triangle(first) * triangle(second)
        s4 += t
        for image in itertools.permutations(second):
            s6 += t * reduce(lambda acc, k: acc * d2[(first[k], image[k])],
                             range(3), 1)
    s10 = reduce(lambda acc, pair: acc * d2[pair],
                 itertools.combinations(range(6), 2), 1)
    return (sympy.sympify(s2), sympy.sympify(s4), sympy.sympify(s6),
            sympy.sympify(s10))


def ic_from_roots(f6, roots, normalization=None):
    """Return the invariants of f6 * prod(x - r) from its roots.

    :param f6: leading coefficient (f5 for a quintic)
    :param roots: six rationals; None stands for a root at infinity
    :param normalization: constants (c2, c4, c6, c10), default
        UNIT_NORMALIZATION
    :rtype: IgusaClebsch
    """
    if len(roots) != 6:
        raise InvariantsError('six roots expected, got %d' % len(roots))
    f6 = rational(f6)
    if f6 == 0:
        raise InvariantsError('leading coefficient must be nonzero')
    roots = [None if r is None else rational(r) for r in roots]
    if normalization is None:
        normalization = default_normalization()
    sums = root_sums(roots)
    return IgusaClebsch(*[c * f6 ** d * s for c, d, s
                          in zip(normalization, WEIGHTS, sums)])


def isobaric_monomials(d):
    """Return the exponent vectors e of f0..f6 with sum(e) = d and
    sum(i * e_i) = 3 d, sorted.

    :rtype: list[tuple]
    """
    result = []

    def extend(prefix, degree_left, weight_left):
        i = len(prefix)
        if i == 6:
            if weight_left == 6 * degree_left:
                result.append(prefix + (degree_left, ))
            return
        for e in range(degree_left + 1):
            if i * e > weight_left:
                break
            extend(prefix + (e, ), degree_left - e, weight_left - i * e)

    extend((), d, 3 * d)
    return sorted(result)


def _monomial_value(exponents, coeffs):
    value = sympy.Integer(1)
    for e, c in zip(exponents, coeffs):
        if e:
            value *= c ** e
    return value


@memoize
def interpolated_formula(d):
    """Return I_d (d in 2, 4, 6) as a polynomial in f0..f6.

    The formula is the unnormalized root sum, solved for once from
    rational-rooted sextics and cached.

    :return: list of (exponents, coefficient) with nonzero coefficients
    :rtype: list
    """
    if d not in (2, 4, 6):
        raise InvariantsError('no interpolated formula for I%d' % d)
    index = WEIGHTS.index(d)
    monomials = isobaric_monomials(d)
    rng = random.Random(INTERPOLATION_SEED + d)
    samples = len(monomials) + INTERPOLATION_EXTRA_SAMPLES
    rows = []
    rhs = []
    x = GenusTwoCurve.x
    for attempt in range(3):
        while len(rows) < samples:
            roots = [sympy.Integer(rng.randint(-INTERPOLATION_HEIGHT,
                                               INTERPOLATION_HEIGHT))
                     for _ in range(6)]
            f6 = sympy.Integer(rng.choice([-3, -2, -1, 1, 2, 3]))
            f = upoly([f6], x)
            for r in roots:
                f = f * upoly([-r, 1], x)
            coeffs = coefficients(f)
            rows.append([_monomial_value(m, coeffs) for m in monomials])
            rhs.append(f6 ** d * root_sums(roots)[index])
        try:
            solution = solve_linear(rows, rhs)
            break
        except AlgebraError as e:
            logger.debug('interpolation of I%d: %s, adding samples', d, e)
            samples += len(monomials)
    else:
        raise InvariantsError('cannot interpolate I%d' % d)
    logger.debug('I%d: %d monomials, %d nonzero', d, len(monomials),
                 sum(1 for c in solution if c != 0))
    return [(m, c) for m, c in zip(monomials, solution) if c != 0]


def invariant_polynomial(d):
    """Return the unnormalized I_d as a sympy expression in f0..f6.

    I10 is given by its discriminant expression.
    """
    f = sympy.symbols('f0:7')
    if d == 10:
        x = GenusTwoCurve.x
        sextic = sympy.Poly(sum(f[i] * x ** i for i in range(7)), x)
        return sympy.expand(sextic.discriminant())
    return sum(c * _monomial_value(m, f) for m, c in interpolated_formula(d))


def _i10_from_coeffs(f):
    if f.degree() == 6:
        return discriminant(f)
    return f.LC() ** 2 * discriminant(f)


def ic_from_coeffs(f, normalization=None):
    """Return the invariants of the sextic f from its coefficients.

    :param f: polynomial of degree 5 or 6, or a GenusTwoCurve
    :param normalization: constants (c2, c4, c6, c10), default
        UNIT_NORMALIZATION
    :rtype: IgusaClebsch
    """
    if isinstance(f, GenusTwoCurve):
        f = f.f
    if f.is_zero or f.degree() not in (5, 6):
        raise InvariantsError('sextic expected, got degree %s' % f.degree())
    if normalization is None:
        normalization = default_normalization()
    coeffs = coefficients(f)
    coeffs = coeffs + [sympy.Integer(0)] * (7 - len(coeffs))
    values = [sum(c * _monomial_value(m, coeffs)
                  for m, c in interpolated_formula(d)) for d in (2, 4, 6)]
    values.append(_i10_from_coeffs(f))
    return IgusaClebsch(*[c * v for c, v in zip(normalization, values)])


def _rational_root(value, n):
    """Return the positive rational n-th root of value > 0, or None."""
    value = rational(value)
    if value <= 0:
        return None
    num, exact_num = sympy.integer_nthroot(value.p, n)
    den, exact_den = sympy.integer_nthroot(value.q, n)
    if exact_num and exact_den:
        return sympy.Rational(num, den)
    return None


def weighted_scale(a, b):
    """Return r in Q* with b_d = r^d a_d for all d, or None.

    Since all weights are even, r is only defined up to sign; the positive
    value is returned. If all entries vanish, 1 is returned.
    """
    ratios = {}
    for d, u, v in zip(WEIGHTS, a, b):
        if (u == 0) != (v == 0):
            return None
        if u != 0:
            ratios[d] = rational(v) / rational(u)
    if not ratios:
        return sympy.Integer(1)
    weights = sorted(ratios)
    g = reduce(math.gcd, weights)
    # r^g as a product of the ratios (Bezout combination of the weights)
    s = sympy.Integer(1)
    acc = 0
    for d in weights:
        if acc == 0:
            acc = d
            s = ratios[d]
            continue
        u, v, common = sympy.gcdex(acc, d)
        s = s ** int(u) * ratios[d] ** int(v)
        acc = int(common)
    r = _rational_root(s, g)
    if r is None:
        return None
    for d, ratio in ratios.items():
        if r ** d != ratio:
            return None
    return r


def ic_weighted_equal(a, b):
    """Return True iff b_d = r^d a_d for d in (2, 4, 6, 10), for some
    nonzero rational r.

    :type a: IgusaClebsch
    :type b: IgusaClebsch
    :rtype: bool
    """
    return weighted_scale(a, b) is not None


def absolute_invariants(ic):
    """Return (I2^5/I10, I2^3 I4/I10, I2^2 I6/I10).

    :raise InvariantsError: if I10 vanishes
    """
    if ic.I10 == 0:
        raise InvariantsError('singular curve: I10 vanishes')
    return (ic.I2 ** 5 / ic.I10, ic.I2 ** 3 * ic.I4 / ic.I10,
            ic.I2 ** 2 * ic.I6 / ic.I10)


def mobius_transform(curve, alpha, beta, gamma, delta):
    """Return the curve with sextic (gamma x + delta)^6 f((alpha x + beta) /
    (gamma x + delta)).

    The invariants of the result are those of curve multiplied by
    det^(3d), det = alpha delta - beta gamma. Known roots are transported.

    :type curve: GenusTwoCurve
    :rtype: GenusTwoCurve
    """
    alpha, beta, gamma, delta = [rational(v)
                                 for v in (alpha, beta, gamma, delta)]
    det = alpha * delta - beta * gamma
    if det == 0:
        raise InvariantsError('singular transformation')
    x = GenusTwoCurve.x
    num = upoly([beta, alpha], x)
    den = upoly([delta, gamma], x)
    g = upoly([0], x)
    for i, c in enumerate(curve.coefficients()):
        if c != 0:
            g = g + num ** i * den ** (6 - i) * c
    roots = None
    if curve.roots is not None:
        roots = []
        for theta in curve.roots:
            # solve (alpha x + beta) / (gamma x + delta) = theta
            if theta is None:
                roots.append(None if gamma == 0 else -delta / gamma)
            elif alpha - gamma * theta == 0:
                roots.append(None)
            else:
                roots.append((delta * theta - beta) / (alpha - gamma * theta))
    return GenusTwoCurve(g, roots)


def twist(curve, c):
    """Return the curve y^2 = c^2 f(x), isomorphic to curve."""
    c = rational(c)
    roots = None if curve.roots is None else list(curve.roots)
    return GenusTwoCurve(curve.f * c ** 2, roots)


def random_rooted_curve(rng, height=10, distinct=True):
    """Return a curve with six random rational roots of bounded height.

    :param rng: a random.Random instance
    :rtype: GenusTwoCurve
    """
    while True:
        roots = [sympy.Rational(rng.randint(-height, height),
                                rng.randint(1, height)) for _ in range(6)]
        if not distinct or len(set(roots)) == 6:
            break
    f6 = sympy.Rational(rng.choice([-1, 1]) * rng.randint(1, height),
                        rng.randint(1, height))
    return GenusTwoCurve.from_roots(roots, f6)


def random_invariants(rng, height=10):
    """Return random rational invariants with I10 != 0.

    :rtype: IgusaClebsch
    """
    def value(nonzero=False):
        while True:
            v = sympy.Rational(rng.randint(-height, height),
                               rng.randint(1, height))
            if v != 0 or not nonzero:
                return v
    return IgusaClebsch(value(), value(), value(), value(nonzero=True))


def oracle_check(trials=20, seed=0, height=10, normalization=None):
    """Compare ic_from_coeffs with ic_from_roots on random rational-rooted
    sextics, and I10 with c10 times the discriminant.

    :param normalization: constants (c2, c4, c6, c10), default
        UNIT_NORMALIZATION
    :return: list of CheckResult
    """
    if normalization is None:
        normalization = default_normalization()
    rng = random.Random(seed)
    mismatches = []
    discriminants = []
    for _ in range(trials):
        curve = random_rooted_curve(rng, height, distinct=False)
        from_roots = ic_from_roots(curve.leading, curve.roots, normalization)
        from_coeffs = ic_from_coeffs(curve, normalization)
        if from_roots != from_coeffs:
            mismatches.append({'f': str(curve.f.as_expr()),
                               'roots': str(from_roots),
                               'coefficients': str(from_coeffs)})
        if from_coeffs.I10 != normalization[3] * discriminant(
                curve.f):
            discriminants.append(str(curve.f.as_expr()))

    result = CheckResult('coefficient formulas')
    result.check(not mismatches, '%d sextics' % trials,
                 '%d mismatches' % len(mismatches))
    if mismatches:
        result.add_witness('failures', mismatches)
    second = CheckResult('I10 is the discriminant')
    second.check(not discriminants, '%d sextics' % trials,
                 '%d mismatches' % len(discriminants))
    if discriminants:
        second.add_witness('failures', discriminants)
    return [result, second]


def mobius_check(trials=20, seed=0, height=10, normalization=None):
    """Check the weighted invariance under random Moebius substitutions.

    :rtype: CheckResult
    """
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        curve = random_rooted_curve(rng, height)
        while True:
            matrix = [rng.randint(-height, height) for _ in range(4)]
            det = matrix[0] * matrix[3] - matrix[1] * matrix[2]
            if det != 0:
                break
        image = mobius_transform(curve, *matrix)
        a = ic_from_coeffs(curve, normalization)
        b = ic_from_coeffs(image, normalization)
        expected = a.scaled(sympy.Integer(det) ** 3)
        if b != expected or not ic_weighted_equal(a, b):
            bad.append({'f': str(curve.f.as_expr()), 'matrix': matrix})
    result = CheckResult('Moebius invariance')
    result.check(not bad, '%d substitutions' % trials,
                 '%d failures' % len(bad))
    if bad:
        result.add_witness('failures', bad)
    return result
