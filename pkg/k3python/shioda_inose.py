############################################################################
#                                                                          #
#                             SHIODA_INOSE.PY                              #
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

"""The E8 + E7 surface of a genus two curve and its Kummer quotient.

For a curve with invariants (I2, I4, I6, I10) the surface

    X: y^2 = x^3 - t^3 (I4 t / 12 + 1) x
             + t^5 (I10 t^2 / 4 + (I2 I4 - 3 I6) / 108 t + I2 / 24)

has fibers II* at infinity and III* at 0. Fibered over the x/t^2-line it
acquires a 2-torsion section; translation by it is a Nikulin involution
and the quotient is

    Y: y^2 = x^3 - 2 q(t) x^2 + (q(t)^2 + I10 (t - I2 / 24)) x
    q(t) = t^3 - I4 t / 12 + (I2 I4 - 3 I6) / 108

the Kummer surface of the Jacobian of the curve. This module builds both
surfaces and verifies the identities linking them, the involution, the
sextic g(x) = q(x)^2 + I10 (x - I2 / 24) and, by sampling points of the
Kummer quartic, the Weierstrass equation of Y in the coordinates given by
plane curves through the nodes.
"""

from collections import OrderedDict, namedtuple
import logging
import math
import random

import mpmath
import sympy
from sympy import QQ

from k3python.algebra import (AlgebraError, coefficients, discriminant,
                              evaluate, is_rational, mpoly, nullspace,
                              numeric_function, rational, resultant,
                              solve_linear, squarefree_part, upoly)
from k3python.elliptic import (INFINITY, E8E7Parameters, EllipticSurfaceError,
                               WeierstrassSurface, classify_all_fibers,
                               duplication, fiber_summary, isogeny_maps,
                               refiber_e8e7, shioda_tate, t, two_isogeny)
from k3python.invariants import (IgusaClebsch, absolute_invariants,
                                 default_normalization, ic_from_coeffs,
                                 ic_weighted_equal, random_invariants, twist,
                                 weighted_scale)
from k3python.kummer import (PLANE, build_kummer, nodes_and_tropes,
                             random_point, z1, z2, z3)
from k3python.logging_util import RAW
from k3python.mainloop import parallel_map
from k3python.result import CheckResult

logger = logging.getLogger('k3python.shioda_inose')

x, y = sympy.symbols('x y')


class ShiodaInoseError(Exception):
    pass


def parameters_from_ic(ic):
    """Return (a, a', b, b', b'') = (-I4/12, -1, (I2 I4 - 3 I6)/108, I2/24,
    I10/4).

    :rtype: E8E7Parameters
    """
    I2, I4, I6, I10 = ic
    return E8E7Parameters(-I4 / sympy.Integer(12), sympy.Integer(-1),
                          (I2 * I4 - 3 * I6) / sympy.Integer(108),
                          I2 / sympy.Integer(24), I10 / sympy.Integer(4))


def cubic_q(ic, var=t):
    """Return q = var^3 - I4/12 var + (I2 I4 - 3 I6)/108 as an expression."""
    I2, I4, I6, _ = ic
    return (var ** 3 - I4 / sympy.Integer(12) * var
            + (I2 * I4 - 3 * I6) / sympy.Integer(108))


def sextic_g(ic, var=x):
    """Return q(var)^2 + I10 (var - I2/24) as an expression."""
    return sympy.expand(cubic_q(ic, var) ** 2
                        + ic.I10 * (var - ic.I2 / sympy.Integer(24)))


class SurfacePair(object):
    """The surfaces X (E8 + E7 fibers) and Y (I5* fiber) of a curve.

    :ivar ic: source invariants (rational or symbolic)
    :ivar parameters: (a, a', b, b', b'') used for X; they default to the
        values read off the invariants and may be overridden
    :ivar X: WeierstrassSurface over t built from the parameters
    :ivar Y: WeierstrassSurface over t built from the invariants
    """

    def __init__(self, ic, parameters=None):
        self.ic = ic
        if parameters is None:
            parameters = parameters_from_ic(ic)
        self.parameters = parameters
        self.X = parameters.surface(t)
        self.Y = WeierstrassSurface(-2 * cubic_q(ic), sextic_g(ic, t), 0, 2, t)

    def with_parameters(self, **changes):
        """Return a pair with some parameters replaced (a, a1, b, b1,
        b2)."""
        return SurfacePair(self.ic, self.parameters._replace(**changes))

    def as_dict(self):
        return OrderedDict([('ic', [str(v) for v in self.ic]),
                            ('parameters', OrderedDict(
                                (k, str(v)) for k, v in
                                self.parameters.as_dict().items())),
                            ('X', self.X.as_dict()),
                            ('Y', self.Y.as_dict())])


def surfaces_from_ic(ic, parameters=None):
    """Build the pair (X, Y) of an invariant tuple.

    :type ic: IgusaClebsch
    :rtype: SurfacePair
    :raise ShiodaInoseError: if I10 = 0
    """
    if ic.I10 == 0:
        raise ShiodaInoseError('singular curve: I10 vanishes')
    return SurfacePair(ic, parameters)


def _difference(p, q, var):
    return sympy.expand(p.as_expr().subs(p.gens[0], var)
                        - q.as_expr().subs(q.gens[0], var))


def verify_quotient_identity(pair):
    """Check that refibering X over the x-line and dividing by the
    2-torsion section gives Y, with the base exchanged.

    :rtype: CheckResult (true when the identity holds); the witness
        ``differences`` holds Y's coefficients minus the computed ones
    """
    result = CheckResult('quotient identity')
    try:
        refibered = refiber_e8e7(pair.X, x)
    except EllipticSurfaceError as e:
        result.set_status('FAILED', str(e))
        return result
    quotient = two_isogeny(refibered)
    differences = OrderedDict(
        (name, _difference(a, b, x)) for name, a, b in
        zip(('a2', 'a4', 'a6'), pair.Y.coefficients, quotient.coefficients))
    ok = all(d == 0 for d in differences.values())
    result.check(ok, 'Y is the 2-isogenous surface of the refibered X',
                 'coefficient mismatch')
    result.add_witness('differences', differences)
    result.differences = differences
    return result


class InvolutionMap(object):
    """A rational map (x, y, t) -> (X, Y, T).

    :ivar components: the three rational expressions in x, y, t
    """

    GENS = (x, y, t)

    def __init__(self, components):
        self.components = tuple(sympy.sympify(c) for c in components)
        self.__numeric = None

    def apply(self, point):
        """Evaluate at a point (exact rationals or mpmath numbers)."""
        values = dict(zip(self.GENS, point))
        if all(is_rational(v) for v in point):
            return tuple(sympy.sympify(c).subs(values) for c in
                         self.components)
        if self.__numeric is None:
            self.__numeric = [sympy.lambdify(self.GENS, c, modules='mpmath')
                              for c in self.components]
        return tuple(f(*point) for f in self.__numeric)

    def compose(self, other):
        """Return self o other."""
        mapping = dict(zip(self.GENS, other.components))
        return InvolutionMap([sympy.cancel(sympy.together(
            c.subs(mapping, simultaneous=True))) for c in self.components])

    def pullback(self, expr):
        """Return expr(self(x, y, t))."""
        return sympy.sympify(expr).subs(dict(zip(self.GENS, self.components)),
                                        simultaneous=True)

    def is_identity(self):
        return all(sympy.cancel(c - g) == 0
                   for c, g in zip(self.components, self.GENS))

    def __repr__(self):
        return 'InvolutionMap(%s)' % ', '.join(str(c)
                                               for c in self.components)


def nikulin_involution(pair):
    """Return the translation by the 2-torsion section of the refibered X.

    With s = (a' x + b' t^2) / (b'' t^4) the map is
    (x, y, t) -> (x s^2, -y s^3, t s).

    :rtype: InvolutionMap
    """
    p = pair.parameters
    s = (p.a1 * x + p.b1 * t ** 2) / (p.b2 * t ** 4)
    return InvolutionMap([x * s ** 2, -y * s ** 3, t * s])


def _numeric_sample(surface, rng, height):
    """Return a numeric point (x, y, t) of the surface."""
    while True:
        tv = mpmath.mpf(rng.randint(-height, height)) / rng.randint(1, height)
        xv = mpmath.mpf(rng.randint(-height, height)) / rng.randint(1, height)
        if tv == 0:
            continue
        rhs = xv ** 3 + sum(mpmath.polyval(
            [mpmath.mpf(c.p) / c.q for c in a.all_coeffs()], tv) * xv ** e
            for a, e in zip(surface.coefficients, (2, 1, 0)))
        return (xv, mpmath.sqrt(mpmath.mpc(rhs)), tv)


def nikulin_involution_check(pair, samples=0, digits=60, residual_exponent=40,
                             seed=0, height=10):
    """Check the Nikulin involution of X.

    Exactly: the map preserves X (the pulled back equation vanishes modulo
    the equation of X), it is an involution, and it acts on the fibers of
    the x/t^2-line as translation by the 2-torsion section. With samples >
    0 the preservation is also checked at numeric points.

    :rtype: list[CheckResult]
    """
    if pair.parameters.b2 == 0:
        raise ShiodaInoseError('singular curve: I10 vanishes')
    sigma = nikulin_involution(pair)
    equation = pair.X.equation(x, y)
    results = []

    result = CheckResult('involution preserves X')
    num, _ = sympy.fraction(sympy.together(sigma.pullback(equation)))
    remainder = sympy.expand(sympy.prem(sympy.expand(num), equation, y))
    result.check(remainder == 0, 'pulled back equation vanishes on X',
                 'pulled back equation does not vanish on X')
    if remainder != 0:
        result.add_witness('residual', remainder)
    results.append(result)

    result = CheckResult('involution squares to identity')
    result.check(sigma.compose(sigma).is_identity(), 'sigma o sigma = id',
                 'sigma o sigma is not the identity')
    results.append(result)

    result = CheckResult('translation by 2-torsion')
    p = pair.parameters
    # coordinates of the fibration over the x/t^2-line
    fiber_x = x / t ** 2
    fiber_t = p.b2 * t
    fiber_y = y * p.b2 / t ** 2
    B = p.b2 * (p.a1 * fiber_x + p.b1)
    translated = [fiber_x, B / fiber_t, -B * fiber_y / fiber_t ** 2]
    pulled = [sigma.pullback(c) for c in (fiber_x, fiber_t, fiber_y)]
    differences = [sympy.cancel(sympy.together(a - b))
                   for a, b in zip(pulled, translated)]
    result.check(all(d == 0 for d in differences),
                 'sigma is translation by (0, 0) on the x-line fibration',
                 'sigma differs from the translation')
    result.add_witness('t_component', sigma.components[2])
    results.append(result)

    if samples:
        rng = random.Random(seed)
        with mpmath.workdps(digits):
            worst = mpmath.mpf(0)
            F = sympy.lambdify((x, y, t), equation, modules='mpmath')
            for _ in range(samples):
                point = _numeric_sample(pair.X, rng, height)
                image = sigma.apply(point)
                scale = max(abs(image[1]) ** 2, abs(image[0]) ** 3, 1)
                worst = max(worst, abs(F(*image)) / scale)
            result = CheckResult('sampled involution')
            result.check(worst < mpmath.mpf(10) ** -residual_exponent,
                         '%d points' % samples,
                         'residual above 1e-%d' % residual_exponent)
            result.add_witness('max_residual', worst)
            results.append(result)
    return results


def fixed_point_check(pair, trials=20, seed=0, height=10):
    """Check on random fibers of the x/t^2-line that the involution has no
    fixed points, and that the fibers carrying fixed points lie over the
    roots of the sextic g.

    On the fiber over c, y^2 = T^3 + A(c) T^2 + B(c) T, a fixed point of
    T -> B/T, Y -> -B Y / T^2 is a common root of T^2 + A T + B and
    T^2 - B; their resultant is -B (A^2 - 4 B) = -B(c) g(c).
    """
    result = CheckResult('fixed points')
    if not all(is_rational(v) for v in pair.ic):
        result.set_status('SKIP', 'symbolic invariants')
        return result
    p = pair.parameters
    T = sympy.Symbol('T')
    g = upoly(coefficients(sympy.Poly(sextic_g(pair.ic, x), x)), x)
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        c = sympy.Rational(rng.randint(-height, height),
                           rng.randint(1, height))
        A = c ** 3 + p.a * c + p.b
        B = p.b2 * (p.a1 * c + p.b1)
        res = resultant(upoly([B, A, 1], T), upoly([-B, 0, 1], T))
        if res != -B * g.eval(c):
            bad.append({'c': c, 'resultant': res})
        elif res == 0:
            logger.debug('fiber %s carries a fixed point', c)
    result.check(not bad, 'fixed points only over B(c) g(c) = 0',
                 '%d fibers disagree' % len(bad))
    if bad:
        result.add_witness('failures', bad)
    return result


def twist_invariance_check(curve, c, normalization=None):
    """Check that the quadratic twist y^2 = c^2 f(x) gives isomorphic
    surfaces.

    The invariants scale by r^d; X for the scaled invariants is X(r^4 t)
    with (x, y) scaled by r^-3 and Y is Y(t / r^2) with (x, y) scaled by
    r^3.
    """
    result = CheckResult('twist invariance')
    ic = ic_from_coeffs(curve, normalization)
    ic_twisted = ic_from_coeffs(twist(curve, c), normalization)
    r = weighted_scale(ic, ic_twisted)
    if r is None:
        result.set_status('FAILED', 'invariants are not weighted equal')
        return result
    base = surfaces_from_ic(ic)
    twisted = surfaces_from_ic(ic_twisted)
    mismatches = []
    for name, a, b, i in zip(('a2', 'a4', 'a6'), base.X.coefficients,
                             twisted.X.coefficients, (2, 4, 6)):
        if sympy.expand(b.as_expr() * r ** (3 * i)
                        - a.as_expr().subs(t, r ** 4 * t)) != 0:
            mismatches.append('X.' + name)
    for name, a, b, i in zip(('a2', 'a4', 'a6'), base.Y.coefficients,
                             twisted.Y.coefficients, (2, 4, 6)):
        if sympy.expand(b.as_expr()
                        - r ** (3 * i) * a.as_expr().subs(t, t / r ** 2)) != 0:
            mismatches.append('Y.' + name)
    result.check(not mismatches, 'surfaces are isomorphic (r = %s)' % r,
                 'coefficient mismatch')
    result.add_witness('r', r)
    if mismatches:
        result.add_witness('mismatches', mismatches)
    return result


def sextic_correspondence(curve):
    """Return the sextic g(x) = q(x)^2 + I10 (x - I2/24) of a curve.

    :param curve: a GenusTwoCurve or an IgusaClebsch tuple
    :rtype: sympy.Poly
    :raise ShiodaInoseError: if I10 = 0
    """
    ic = curve if isinstance(curve, IgusaClebsch) else ic_from_coeffs(curve)
    if ic.I10 == 0:
        raise ShiodaInoseError('singular curve: I10 vanishes')
    expr = sextic_g(ic, x)
    if expr.free_symbols - {x}:
        return sympy.Poly(expr, x)
    return sympy.Poly(expr, x, domain=QQ)


def igusa_quartic_check(g):
    """Check that the roots of g satisfy sigma1 = 0 and sigma2^2 =
    4 sigma4."""
    result = CheckResult('Igusa quartic')
    cs = [g.coeff_monomial(x ** k) for k in range(7)]
    sigma1 = -cs[5]
    sigma2, sigma4 = cs[4], cs[2]
    quartic = sympy.expand(sigma2 ** 2 - 4 * sigma4)
    result.check(g.LC() == 1 and sympy.expand(sigma1) == 0 and quartic == 0,
                 'sigma1 = 0 and sigma2^2 = 4 sigma4',
                 'roots of g off the Igusa quartic')
    result.add_witness('sigma1', sigma1)
    result.add_witness('sigma2^2 - 4 sigma4', quartic)
    return result


def i2_places_check(pair, fibers=None):
    """Compare the roots of g with the finite I2 places of Y."""
    result = CheckResult('g locates the I2 fibers')
    if fibers is None:
        fibers = classify_all_fibers(pair.Y)
    product = upoly([1], x)
    count = 0
    for fiber in fibers:
        if fiber.kind == 'I2' and not fiber.at_infinity:
            product = product * upoly(coefficients(fiber.place), x)
            count += fiber.count
    g = sextic_correspondence(pair.ic)
    ok = (count == 6 and (squarefree_part(g).monic() - product).is_zero)
    result.check(ok, 'six I2 fibers over the roots of g',
                 'I2 places differ from the roots of g')
    result.add_witness('i2_count', count)
    return result


EXPECTED_X_FIBERS = {'II*': 1, 'III*': 1, 'I1': 5}
EXPECTED_Y_FIBERS = {'I5*': 1, 'I2': 6, 'I1': 1}
EXPECTED_REFIBERED = {'I10*': 1, 'I2': 1, 'I1': 6}


def fiber_configuration_check(name, surface, expected, parallelism=None):
    """Classify the fibers of a surface and compare with a summary."""
    result = CheckResult('%s fibers' % name)
    fibers = classify_all_fibers(surface, parallelism)
    summary = fiber_summary(fibers)
    result.check(summary == expected, ', '.join(
        '%d %s' % (v, k) for k, v in sorted(summary.items())),
        'unexpected configuration')
    result.add_witness('fibers', fibers)
    result.add_witness('summary', summary)
    result.fibers = fibers
    return result


# Kummer side: plane curves through the projected nodes q_ij. Each entry
# maps the node label to the multiplicity of the curve there.
E_CURVES = OrderedDict([
    (1, {'p12': 1, 'p46': 1}),
    (2, {'p12': 1, 'p13': 1, 'p24': 1, 'p46': 1, 'p56': 1}),
    (3, {'p12': 2, 'p13': 1, 'p24': 1, 'p36': 1, 'p45': 1, 'p46': 1,
         'p56': 1}),
    (4, {'p12': 2, 'p13': 2, 'p46': 2, 'p24': 1, 'p25': 1, 'p36': 1,
         'p45': 1, 'p56': 1}),
    (5, {'p12': 3, 'p13': 2, 'p46': 2, 'p56': 2, 'p24': 1, 'p25': 1,
         'p34': 1, 'p36': 1, 'p45': 1}),
])

# quintics in the class of the fiber F
PENCIL = {'p12': 3, 'p13': 2, 'p46': 2, 'p56': 2, 'p24': 1, 'p25': 1,
          'p36': 1, 'p45': 1}

# random points drawn per requested Kummer sample before giving up
MAX_ATTEMPTS_PER_SAMPLE = 50


def plane_monomials(degree):
    return [(a, b, degree - a - b) for a in range(degree, -1, -1)
            for b in range(degree - a, -1, -1)]


def _falling(n, k):
    value = 1
    for i in range(k):
        value *= n - i
    return value


def multiplicity_conditions(degree, point, multiplicity):
    """Return the linear conditions on the coefficients of a plane curve
    of the given degree to have the given multiplicity at point: all
    partial derivatives of order multiplicity - 1 vanish there."""
    monomials = plane_monomials(degree)
    rows = []
    for order in plane_monomials(multiplicity - 1):
        row = []
        for exponents in monomials:
            if any(e < o for e, o in zip(exponents, order)):
                row.append(0)
                continue
            value = sympy.Integer(1)
            for e, o, p in zip(exponents, order, point):
                value *= _falling(e, o) * rational(p) ** (e - o)
            row.append(value)
        rows.append(row)
    return rows


def plane_curve_space(degree, conditions, points):
    """Return a basis of the plane curves of a degree with prescribed
    multiplicities.

    :param conditions: {node label: multiplicity}
    :param points: {node label: (z1, z2, z3)}
    :rtype: list[sympy.Poly]
    """
    rows = []
    for label, multiplicity in sorted(conditions.items()):
        rows.extend(multiplicity_conditions(degree, points[label],
                                            multiplicity))
    monomials = plane_monomials(degree)
    basis = nullspace(rows, len(monomials))
    return [mpoly(sum(c * z1 ** a * z2 ** b * z3 ** e
                      for c, (a, b, e) in zip(vector, monomials)), PLANE)
            for vector in basis]


def _on_line(poly, line):
    """Return the polynomial restricted to the line z3 = -(rest of line)."""
    rest = line - mpoly(z3, PLANE)
    return sympy.Poly(poly.as_expr().subs(z3, -rest.as_expr()), z1, z2)


def zero_section_conic(pencil, lines):
    """Return (s1, q1): the member of the pencil divisible by the product
    of the lines, and the cofactor.

    :raise ShiodaInoseError: if no unique such member exists
    """
    rows = []
    for line in lines:
        restricted = [_on_line(p, line) for p in pencil]
        monomials = set()
        for r in restricted:
            monomials |= set(r.monoms())
        for m in sorted(monomials):
            rows.append([r.coeff_monomial(m) for r in restricted])
    kernel = nullspace(rows, len(pencil))
    if len(kernel) != 1:
        raise ShiodaInoseError('pencil member through the lines has '
                               'dimension %d' % len(kernel))
    s1 = sum((c * p for c, p in zip(kernel[0], pencil) if c != 0),
             mpoly(0, PLANE))
    product = mpoly(1, PLANE)
    for line in lines:
        product = product * line
    q1, remainder = s1.div(product)
    if not remainder.is_zero:
        raise ShiodaInoseError('pencil member is not divisible by the lines')
    return s1, q1


KummerCurves = namedtuple('KummerCurves', ['e', 'pencil', 's1', 'q1', 's',
                                           'tropes'])


def kummer_plane_curves(curve):
    """Compute the plane curves e1..e5, the pencil and q1 of a curve.

    :rtype: KummerCurves
    :raise ShiodaInoseError: if a linear system has an unexpected
        dimension
    """
    nodes, tropes = nodes_and_tropes(curve)
    points = dict((n.label, n.coordinates[:3]) for n in nodes)
    lines = [mpoly(tr.form.as_expr(), PLANE) for tr in tropes[:6]]
    e = OrderedDict()
    for degree, conditions in E_CURVES.items():
        space = plane_curve_space(degree, conditions, points)
        if len(space) != 1:
            raise ShiodaInoseError('e%d: solution space of dimension %d '
                                   '(degenerate root configuration)'
                                   % (degree, len(space)))
        e[degree] = space[0]
    pencil = plane_curve_space(5, PENCIL, points)
    if len(pencil) != 2:
        raise ShiodaInoseError('quintic pencil of dimension %d' % len(pencil))
    s1, q1 = zero_section_conic(pencil, [lines[0], lines[1], lines[5]])
    # a second member of the pencil
    s = next(p for p in pencil if not (p * s1.LC() - s1 * p.LC()).is_zero)
    return KummerCurves(e, pencil, s1, q1, s, lines)


def _shift(coeffs, h):
    """Return the coefficients of p(v - h) (lowest degree first)."""
    result = [sympy.Integer(0)] * len(coeffs)
    for k, c in enumerate(coeffs):
        for j in range(k + 1):
            result[j] += c * math.comb(k, j) * (-h) ** (k - j)
    return result


def _weierstrass_row(X, u, W2):
    """Return the row of kappa W^2 / x + 2 x Q(u) - P(u) = x^2 and its
    right hand side."""
    return ([W2 / X] + [2 * X * u ** k for k in range(4)]
            + [-u ** k for k in range(7)], X ** 2)


def _least_squares_residual(rows, rhs, digits):
    """Return the residual of the least squares solution of an
    inconsistent rational system."""
    with mpmath.workdps(digits):
        matrix = mpmath.matrix([[mpmath.mpf(v.p) / v.q for v in row]
                                for row in rows])
        vector = mpmath.matrix([mpmath.mpf(v.p) / v.q for v in rhs])
        _, residual = mpmath.qr_solve(matrix, vector)
    return residual


def kummer_side_verification(curve, digits=80, samples=100, height=20,
                             residual_exponent=30, seed=0, parallelism=None,
                             normalization=None):
    """Recover the Weierstrass equation of Y from the Kummer quartic.

    The functions x = e1 e2 e3 e4 e5 T5 / (s1^3 T4), u = s / s1 and
    W = e1 e2 e3 e4 e5 (K2 z4 + K1/2) / (T1^5 T2^3 T4^2 T6^4 q1^2) are
    considered on the quartic. Up to scaling, Y's equation reads
    kappa W^2 / x + 2 x Q(u) - P(u) = x^2 with Q cubic and P of degree 6.
    On the quartic (K2 z4 + K1/2)^2 = K1^2/4 - K2 K0, so x, u and W^2 take
    rational values at integer points (z1:z2:z3): the twelve unknown
    coefficients are solved for exactly on 'samples' such points and the
    relation is checked exactly on as many other points. It is then
    checked numerically, with z4 computed at 'digits' digits, on real
    points of the quartic. The normalized q and r of the solution give
    invariants whose absolute invariants are compared with those of the
    curve.

    :param samples: number of points of the fit (at least 12)
    :param height: bound of the coordinates of the sampled points
    :param normalization: constants (c2, c4, c6, c10) of the invariants
        of the curve
    :return: list of CheckResult
    :raise ShiodaInoseError: if too few usable points are found
    """
    if samples < 12:
        raise ShiodaInoseError('at least 12 samples are needed, got %d'
                               % samples)
    results = []
    curves = kummer_plane_curves(curve)
    lines = curves.tropes

    result = CheckResult('plane curves e1..e5')
    degrees = [p.total_degree() for p in curves.e.values()]
    result.check(degrees == [1, 2, 3, 4, 5],
                 'one curve of each degree 1..5', 'degrees %s' % degrees)
    result.add_witness('curves', [str(p.as_expr()) for p in curves.e.values()])
    results.append(result)

    result = CheckResult('quintic pencil')
    result.check(len(curves.pencil) == 2 and curves.q1.total_degree() == 2,
                 'dimension 2, s1 = q1 T1 T2 T6', 'unexpected pencil')
    result.add_witness('q1', str(curves.q1.as_expr()))
    results.append(result)

    product_e = mpoly(1, PLANE)
    for p in curves.e.values():
        product_e = product_e * p
    T1, T2, T3, T4, T5, T6 = lines
    x_num = product_e * T5
    x_den = curves.s1 ** 3 * T4
    y_den = T1 ** 5 * T2 ** 3 * T4 ** 2 * T6 ** 4 * curves.q1 ** 2
    result = CheckResult('function degrees')
    degrees = [x_num.total_degree(), x_den.total_degree(),
               product_e.total_degree() + 3, y_den.total_degree()]
    result.check(degrees == [16, 16, 18, 18], 'x: 16/16, y: 18/18',
                 'degrees %s' % degrees)
    result.add_witness('degrees', degrees)
    results.append(result)

    quartic = build_kummer(curve)
    rng = random.Random(seed)
    polys = [mpoly(p.as_expr(), PLANE) for p in
             (x_num, x_den, product_e, y_den, curves.s, curves.s1,
              quartic.branch_discriminant())]

    def exact_sample(plane):
        xn, xd, pe, yd, s, s1, branch = [evaluate(p, plane) for p in polys]
        if xn == 0 or xd == 0 or yd == 0 or s1 == 0:
            return None
        return _weierstrass_row(xn / xd, s / s1, pe ** 2 * branch / yd ** 2)

    rows, rhs = [], []
    attempts = 0
    while len(rows) < 2 * samples:
        if attempts > MAX_ATTEMPTS_PER_SAMPLE * samples:
            raise ShiodaInoseError('only %d usable points of the plane in %d '
                                   'attempts' % (len(rows), attempts))
        batch = [tuple(sympy.Integer(rng.randint(-height, height))
                       for _ in range(3))
                 for _ in range(2 * samples - len(rows))]
        attempts += len(batch)
        for sample in parallel_map(exact_sample, batch, parallelism):
            if sample is not None:
                rows.append(sample[0])
                rhs.append(sample[1])
    logger.info('solving the Weierstrass relation on %d of %d points',
                samples, len(rows))

    result = CheckResult('Weierstrass equation on the Kummer')
    result.add_witness('samples', len(rows))
    try:
        solution = solve_linear(rows[:samples], rhs[:samples])
    except AlgebraError as e:
        result.set_status('FAILED', str(e))
        result.add_witness('least_squares_residual', _least_squares_residual(
            rows[:samples], rhs[:samples], digits))
        results.append(result)
        return results
    held_out = sum(1 for row, value in zip(rows[samples:], rhs[samples:])
                   if sum(c * r for c, r in zip(solution, row)) != value)
    result.check(held_out == 0, 'exact on %d held-out points' % samples,
                 '%d of %d held-out points fail' % (held_out, samples))
    result.add_witness('kappa', solution[0])
    results.append(result)

    results.append(_numeric_relation_check(quartic, polys[:6], solution,
                                           digits, samples, height,
                                           residual_exponent, rng))
    results.append(_compare_invariants(curve, solution[1:5], solution[5:],
                                       normalization))
    return results


def _numeric_relation_check(quartic, polys, solution, digits, samples,
                            height, residual_exponent, rng):
    """Evaluate the solved relation, W included, at real points of the
    quartic."""
    result = CheckResult('Weierstrass equation at points of the quartic')
    with mpmath.workdps(digits):
        functions = [numeric_function(p, PLANE) for p in polys]
        _, K2, K1, _ = quartic.numeric()
        fitted = [mpmath.mpf(v.p) / v.q for v in solution]
        worst = mpmath.mpf(0)
        count = attempts = 0
        while count < samples:
            attempts += 1
            if attempts > MAX_ATTEMPTS_PER_SAMPLE * samples:
                raise ShiodaInoseError('only %d usable points of the quartic'
                                       ' in %d attempts'
                                       % (count, attempts - 1))
            point = random_point(quartic, rng, height)
            if mpmath.im(point[3]) != 0:
                continue
            point = point[:3] + (mpmath.re(point[3]), )
            xn, xd, pe, yd, s, s1 = [f(*point[:3]) for f in functions]
            X = xn / xd
            u = s / s1
            if abs(X) < mpmath.mpf(10) ** -10 or abs(u) > 10 ** 6:
                continue
            W = pe * (K2(*point) * point[3] + K1(*point) / 2) / yd
            row, value = _weierstrass_row(X, u, W ** 2)
            terms = [c * r for c, r in zip(fitted, row)]
            scale = max(abs(value), max(abs(v) for v in terms))
            worst = max(worst, abs(sum(terms) - value) / scale)
            count += 1
            logger.log(RAW, '.')
        logger.log(RAW, '\n')
    result.check(worst < mpmath.mpf(10) ** -residual_exponent,
                 'residual below 1e-%d on %d points' % (residual_exponent,
                                                        samples),
                 'residual above 1e-%d' % residual_exponent)
    result.add_witness('max_residual', worst)
    return result


def _compare_invariants(curve, q_fit, p_fit, normalization=None):
    """Normalize the solved Q, P and compare absolute invariants."""
    result = CheckResult('recovered invariants')
    q_squared = [sympy.Integer(0)] * 7
    for i, a in enumerate(q_fit):
        for j, b in enumerate(q_fit):
            q_squared[i + j] += a * b
    remainder = [p - q for p, q in zip(p_fit, q_squared)]
    if any(v != 0 for v in remainder[2:]):
        result.set_status('FAILED', 'P - Q^2 is not linear')
        result.add_witness('remainder', remainder)
        return result
    c3 = q_fit[3]
    if c3 == 0:
        result.set_status('FAILED', 'Q is not cubic')
        return result
    h = q_fit[2] / (3 * c3)
    q_shift = [v / c3 for v in _shift(q_fit, h)]
    r0, r1 = [v / c3 ** 2 for v in _shift(remainder[:2], h)]
    if r1 == 0:
        result.set_status('FAILED', 'the recovered I10 vanishes')
        return result
    fitted_I2 = -24 * r0 / r1
    fitted_I4 = -12 * q_shift[1]
    fitted = IgusaClebsch(fitted_I2, fitted_I4,
                          (fitted_I2 * fitted_I4 - 108 * q_shift[0]) / 3, r1)

    expected = absolute_invariants(ic_from_coeffs(curve, normalization))
    found = absolute_invariants(fitted)
    if found == expected:
        result.set_status('PASSED', 'absolute invariants agree')
    else:
        result.set_status('PROBLEM', 'absolute invariants differ: the '
                          'normalization constants need adjusting')
    result.add_witness('fitted_invariants', list(fitted))
    result.add_witness('absolute_expected', list(expected))
    result.add_witness('absolute_found', list(found))
    return result


def _kind_at(fibers, place):
    """Return the type of the fiber at a place given by its coefficients
    (or INFINITY), None when there is no singular fiber there."""
    for fiber in fibers:
        if fiber.at_infinity:
            if place == INFINITY:
                return fiber.kind
        elif place != INFINITY and coefficients(fiber.place) == place:
            return fiber.kind
    return None


def pair_configuration(ic):
    """Classify the fibers of X and Y for an invariant tuple.

    X must have II* at infinity, III* at t = 0 and five I1; Y must have
    I5* at infinity, six I2 over the roots of g and one I1.

    :type ic: IgusaClebsch
    :return: (summary of X, summary of Y, list of disagreements), the
        summaries being None when a classification fails
    """
    pair = surfaces_from_ic(ic)
    problems = []
    if not verify_quotient_identity(pair):
        problems.append('quotient identity')
    try:
        x_fibers = classify_all_fibers(pair.X)
        y_fibers = classify_all_fibers(pair.Y)
    except EllipticSurfaceError as e:
        return None, None, problems + [str(e)]
    x_summary = fiber_summary(x_fibers)
    y_summary = fiber_summary(y_fibers)
    if x_summary != EXPECTED_X_FIBERS:
        problems.append('X fibers')
    if _kind_at(x_fibers, INFINITY) != 'II*':
        problems.append('X: no II* at infinity')
    if _kind_at(x_fibers, [0, 1]) != 'III*':
        problems.append('X: no III* at t = 0')
    if y_summary != EXPECTED_Y_FIBERS:
        problems.append('Y fibers')
    if _kind_at(y_fibers, INFINITY) != 'I5*':
        problems.append('Y: no I5* at infinity')
    if not i2_places_check(pair, y_fibers):
        problems.append('Y: I2 places differ from the roots of g')
    return x_summary, y_summary, problems


def random_pair_checks(trials, seed=0, height=10, parallelism=None):
    """Check the quotient identity and the fiber configurations of X and Y
    on random rational invariants.

    Tuples whose sextic g has a repeated root are degenerate: they are
    recorded in the 'degenerate' witness and replaced by new ones.
    """
    rng = random.Random(seed)
    tuples = []
    degenerate = []
    draws = 0
    while len(tuples) < trials and draws < MAX_ATTEMPTS_PER_SAMPLE * trials:
        draws += 1
        ic = random_invariants(rng, height)
        if discriminant(sextic_correspondence(ic)) == 0:
            degenerate.append(str(ic))
        else:
            tuples.append(ic)

    outcome = parallel_map(pair_configuration, tuples, parallelism)
    result = CheckResult('random invariants')
    bad = [OrderedDict([('ic', str(ic)), ('X', x_summary),
                        ('Y', y_summary), ('problems', problems)])
           for ic, (x_summary, y_summary, problems) in zip(tuples, outcome)
           if problems]
    if len(tuples) < trials:
        result.set_status('FAILED', 'only %d nondegenerate tuples in %d '
                          'draws' % (len(tuples), draws))
    else:
        result.check(not bad, '%d tuples' % trials,
                     '%d tuples fail' % len(bad))
    if degenerate:
        result.add_witness('degenerate', degenerate)
    if bad:
        result.add_witness('failures', bad)
    return result


def weighted_invariance_check(ic, r):
    """Check that scaled invariants give weighted equal tuples."""
    result = CheckResult('weighted equality')
    result.check(ic_weighted_equal(ic, ic.scaled(r)), 'r = %s' % r,
                 'scaled invariants are not weighted equal')
    return result


def refibered_configuration(pair, parallelism=None):
    """Classify the fibers of X refibered over the x-line."""
    return fiber_configuration_check('refibered X', refiber_e8e7(pair.X, x),
                                     EXPECTED_REFIBERED, parallelism)


def symbolic_pair():
    """Return the pair for indeterminate invariants."""
    return surfaces_from_ic(IgusaClebsch.symbolic())


def all_checks(curve, settings, parallelism=None):
    """Run the exact checks on the pair of a curve.

    :param settings: dict with samples, precision, residual_exponent,
        seed, height, ic_trials, normalization
    :return: (pair, list of CheckResult)
    """
    normalization = default_normalization(settings)
    ic = ic_from_coeffs(curve, normalization)
    pair = surfaces_from_ic(ic)
    results = [verify_quotient_identity(pair)]
    x_check = fiber_configuration_check('X', pair.X, EXPECTED_X_FIBERS,
                                        parallelism)
    results.append(x_check)
    y_check = fiber_configuration_check('Y', pair.Y, EXPECTED_Y_FIBERS,
                                        parallelism)
    results.append(y_check)
    results.append(refibered_configuration(pair, parallelism))
    results.append(shioda_tate_check(x_check.fibers, y_check.fibers))
    results.extend(nikulin_involution_check(
        pair, settings.get('samples', 0), settings.get('precision', 60),
        settings.get('residual_exponent', 40), settings.get('seed', 0),
        settings.get('height', 10)))
    results.append(isogeny_check(
        pair, 10, settings.get('precision', 60),
        settings.get('residual_exponent', 40), settings.get('seed', 0),
        settings.get('height', 10)))
    results.append(fixed_point_check(pair, settings.get('ic_trials', 20),
                                     settings.get('seed', 0),
                                     settings.get('height', 10)))
    results.append(twist_invariance_check(curve, 3, normalization))
    g = sextic_correspondence(ic)
    results.append(igusa_quartic_check(g))
    results.append(i2_places_check(pair, y_check.fibers))
    return pair, results


def isogeny_check(pair, samples=10, digits=60, residual_exponent=40, seed=0,
                  height=10):
    """Check on sampled fibers of the refibered X that the 2-isogeny lands
    on the quotient and that the dual composed with it is doubling.

    :rtype: CheckResult
    """
    refibered = refiber_e8e7(pair.X, x)
    quotient = two_isogeny(refibered)
    rng = random.Random(seed)
    worst = mpmath.mpf(0)
    with mpmath.workdps(digits):
        for _ in range(samples):
            c = sympy.Rational(rng.randint(-height, height),
                               rng.randint(1, height))
            cv = mpmath.mpf(c.p) / c.q
            phi, dual = isogeny_maps(refibered, cv)
            a2, a4, _ = [mpmath.mpf(v.p) / v.q for v in
                         (p.eval(c) for p in refibered.coefficients)]
            b2, b4, _ = [mpmath.mpf(v.p) / v.q for v in
                         (p.eval(c) for p in quotient.coefficients)]
            xv = mpmath.mpf(rng.randint(1, height)) / rng.randint(1, height)
            yv = mpmath.sqrt(mpmath.mpc(xv ** 3 + a2 * xv ** 2 + a4 * xv))
            X, Y = phi((xv, yv))
            on_quotient = abs(Y ** 2 - (X ** 3 + b2 * X ** 2 + b4 * X))
            doubled = duplication(refibered, cv, (xv, yv))
            back = dual((X, Y))
            scale = max(abs(doubled[0]), abs(doubled[1]), 1)
            # the dual may differ from doubling by the sign of y
            gap = min(abs(back[0] - doubled[0]) + abs(back[1] - doubled[1]),
                      abs(back[0] - doubled[0]) + abs(back[1] + doubled[1]))
            worst = max(worst, on_quotient / max(abs(X) ** 3, 1),
                        gap / scale)
    result = CheckResult('2-isogeny and dual')
    result.check(worst < mpmath.mpf(10) ** -residual_exponent,
                 '%d fibers' % samples,
                 'residual above 1e-%d' % residual_exponent)
    result.add_witness('max_residual', worst)
    return result


def shioda_tate_check(x_fibers, y_fibers):
    """Compare the Shioda-Tate data of X and Y with the lattices they
    should span.

    X: rank 17 and trivial lattice discriminant 2. Y: the fiber components
    contribute 15 and the trivial lattice discriminant is 4 * 2^6 before
    the 2-torsion section, which divides it by 2^2.
    """
    result = CheckResult('Shioda-Tate')
    x_rho, x_disc = shioda_tate(x_fibers)
    y_rho, y_disc = shioda_tate(y_fibers)
    y_components = y_rho - 2
    result.check((x_rho, x_disc, y_components, y_disc)
                 == (17, 2, 15, 4 * 2 ** 6),
                 'X: rho 17, disc 2; Y: 15 components, disc 4 * 2^6',
                 'unexpected Shioda-Tate data')
    result.add_witness('X', {'rho': x_rho, 'disc': x_disc})
    result.add_witness('Y', {'components': y_components,
                             'trivial_disc': y_disc,
                             'with_torsion': y_disc / sympy.Integer(4)})
    return result
