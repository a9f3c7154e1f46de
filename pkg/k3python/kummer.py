############################################################################
#                                                                          #
#                                KUMMER.PY                                 #
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

"""The singular Kummer quartic of a genus two curve.

For y^2 = f(x) = f0 + f1 x + ... + f6 x^6 the quartic surface of P^3 is

    K = K2 z4^2 + K1 z4 + K0

with K2 = z2^2 - 4 z1 z3 and K1, K0 of degrees 3 and 4 in z1, z2, z3 with
coefficients linear and quadratic in the f_i. When the six roots theta_i
of f are rational, the 16 nodes and 16 tropes are rational:

* nodes p0 = (0:0:0:1) and p_ij = (1 : theta_i + theta_j : theta_i theta_j
  : beta0(i, j)), beta0(i, j) = -h0 - h2 theta_i theta_j
  - h4 (theta_i theta_j)^2 where f = (x - theta_i)(x - theta_j) h(x);
* tropes T_i: theta_i^2 z1 - theta_i z2 + z3 = 0 and, for each split of the
  roots in {i, j, k} (with i = 1) and {l, m, n}, T_ijk:
  f6 (g2 h0 + g0 h2) z1 + f6 (g0 + h0) z2 + f6 (g1 + h1) z3 + z4 = 0 with
  G = (x - theta_i)(x - theta_j)(x - theta_k) and H the complementary
  cubic.
"""

from collections import namedtuple
import itertools
import logging

import mpmath
import sympy

from k3python.algebra import (coefficients, is_rational, mpoly,
                              numeric_function, rational, square_root,
                              substitute, upoly)
from k3python.invariants import GenusTwoCurve
from k3python.mainloop import parallel_map
from k3python.result import CheckResult

logger = logging.getLogger('k3python.kummer')

z1, z2, z3, z4 = Z = sympy.symbols('z1 z2 z3 z4')
PLANE = (z1, z2, z3)


class KummerError(Exception):
    pass


Node = namedtuple('Node', ['label', 'coordinates'])
Node.__doc__ = """A node of the quartic: label p0 or p_ij, projective point."""

Trope = namedtuple('Trope', ['label', 'form', 'subset'])
Trope.__doc__ = """A trope plane.

:ivar form: linear form in z1..z4
:ivar subset: (i, ) for T_i, the 3-subset containing 1 for T_ijk
"""


def _coefficient_symbols():
    return sympy.symbols('f0:7')


def kummer_expressions(f):
    """Return (K2, K1, K0) as sympy expressions.

    :param f: the seven coefficients f0..f6 (numbers or symbols)
    """
    f0, f1, f2, f3, f4, f5, f6 = f
    k2 = z2 ** 2 - 4 * z1 * z3
    k1 = (-4 * z1 ** 3 * f0 - 2 * z1 ** 2 * z2 * f1 - 4 * z1 ** 2 * z3 * f2
          - 2 * z1 * z2 * z3 * f3 - 4 * z1 * z3 ** 2 * f4
          - 2 * z2 * z3 ** 2 * f5 - 4 * z3 ** 3 * f6)
    k0 = (-4 * z1 ** 4 * f0 * f2 + z1 ** 4 * f1 ** 2
          - 4 * z1 ** 3 * z2 * f0 * f3 - 2 * z1 ** 3 * z3 * f1 * f3
          - 4 * z1 ** 2 * z2 ** 2 * f0 * f4
          + 4 * z1 ** 2 * z2 * z3 * f0 * f5 - 4 * z1 ** 2 * z2 * z3 * f1 * f4
          - 4 * z1 ** 2 * z3 ** 2 * f0 * f6 + 2 * z1 ** 2 * z3 ** 2 * f1 * f5
          - 4 * z1 ** 2 * z3 ** 2 * f2 * f4 + z1 ** 2 * z3 ** 2 * f3 ** 2
          - 4 * z1 * z2 ** 3 * f0 * f5 + 8 * z1 * z2 ** 2 * z3 * f0 * f6
          - 4 * z1 * z2 ** 2 * z3 * f1 * f5 + 4 * z1 * z2 * z3 ** 2 * f1 * f6
          - 4 * z1 * z2 * z3 ** 2 * f2 * f5 - 2 * z1 * z3 ** 3 * f3 * f5
          - 4 * z2 ** 4 * f0 * f6 - 4 * z2 ** 3 * z3 * f1 * f6
          - 4 * z2 ** 2 * z3 ** 2 * f2 * f6 - 4 * z2 * z3 ** 3 * f3 * f6
          - 4 * z3 ** 4 * f4 * f6 + z3 ** 4 * f5 ** 2)
    return k2, k1, k0


class KummerQuartic(object):
    """The quartic K2 z4^2 + K1 z4 + K0.

    :ivar K2: Poly in z1, z2, z3 of degree 2
    :ivar K1: Poly of degree 3
    :ivar K0: Poly of degree 4
    :ivar curve: the source curve (None for symbolic coefficients)
    """

    def __init__(self, K2, K1, K0, curve=None):
        self.K2 = K2
        self.K1 = K1
        self.K0 = K0
        self.curve = curve
        self.__numeric = None

    @property
    def domain(self):
        return self.K0.domain

    def quartic(self):
        """Return K as a Poly in z1..z4."""
        return mpoly(self.K2.as_expr() * z4 ** 2 + self.K1.as_expr() * z4
                     + self.K0.as_expr(), Z, self.domain)

    def branch_discriminant(self):
        """Return K1^2/4 - K0 K2, whose zero set is the branch curve of
        the projection from p0."""
        return self.K1 ** 2 * sympy.Rational(1, 4) - self.K0 * self.K2

    def completed_square(self):
        """Return K2 z4 + K1/2 as a Poly in z1..z4."""
        return mpoly(self.K2.as_expr() * z4 + self.K1.as_expr() / 2, Z,
                     self.domain)

    def evaluate(self, point):
        """Evaluate K at a point (exact or mpmath).

        :type point: tuple
        """
        if all(is_rational(v) for v in point):
            return self.quartic().eval(dict(zip(Z, point)))
        return self.numeric()[0](*point)

    def gradient(self, point):
        """Return the four partial derivatives of K at point."""
        K = self.quartic()
        if all(is_rational(v) for v in point):
            values = dict(zip(Z, [rational(v) for v in point]))
            return [K.diff(v).eval(values) for v in Z]
        return [numeric_function(K.diff(v), Z)(*point) for v in Z]

    def numeric(self):
        """Return mpmath functions evaluating (K, K2, K1, K0) on z1..z4."""
        if self.__numeric is None:
            self.__numeric = (numeric_function(self.quartic(), Z),
                              numeric_function(self.K2.as_expr(), Z),
                              numeric_function(self.K1.as_expr(), Z),
                              numeric_function(self.K0.as_expr(), Z))
        return self.__numeric

    def __repr__(self):
        return 'KummerQuartic(%s)' % self.curve


def build_kummer(curve):
    """Build the Kummer quartic of a curve.

    :param curve: a GenusTwoCurve, or seven coefficients f0..f6 that may
        be sympy symbols (use 'symbolic' for the generic quartic)
    :rtype: KummerQuartic
    """
    if curve == 'symbolic':
        curve = _coefficient_symbols()
    if isinstance(curve, GenusTwoCurve):
        f = curve.coefficients()
        domain = sympy.QQ
    else:
        f = [sympy.sympify(c) for c in curve]
        if len(f) != 7:
            raise KummerError('seven coefficients expected')
        domain = None if any(c.free_symbols for c in f) else sympy.QQ
        curve = None
    k2, k1, k0 = kummer_expressions(f)
    return KummerQuartic(mpoly(k2, PLANE, domain), mpoly(k1, PLANE, domain),
                         mpoly(k0, PLANE, domain), curve)


def _cofactor(curve, indices):
    """Return f divided by prod(x - theta_i) for i in indices."""
    x = GenusTwoCurve.x
    divisor = upoly([1], x)
    for i in indices:
        divisor = divisor * upoly([-curve.roots[i], 1], x)
    quotient, remainder = curve.f.div(divisor)
    if not remainder.is_zero:
        raise KummerError('inconsistent roots')
    return quotient


def _padded(p, n):
    values = coefficients(p)
    return values + [sympy.Integer(0)] * (n - len(values))


def _check_roots(curve):
    if curve.roots is None or any(r is None for r in curve.roots):
        raise KummerError('nodal model requires six finite rational '
                          'Weierstrass points')
    if len(set(curve.roots)) != 6:
        raise KummerError('nodal model requires distinct Weierstrass points')


def node_label(i, j):
    return 'p%d%d' % (i + 1, j + 1)


def trope_label(subset):
    return 'T' + ''.join('%d' % (i + 1) for i in subset)


def nodes_and_tropes(curve):
    """Return the 16 nodes and the 16 tropes of the quartic of curve.

    :param curve: a curve with six distinct rational roots
    :type curve: GenusTwoCurve
    :return: (nodes, tropes); nodes are p0 then p_ij in lexicographic
        order, tropes T_1..T_6 then T_1jk
    :raise KummerError: if the roots are not distinct rationals
    """
    _check_roots(curve)
    theta = curve.roots
    f6 = curve.leading
    one, zero = sympy.Integer(1), sympy.Integer(0)

    nodes = [Node('p0', (zero, zero, zero, one))]
    for i, j in itertools.combinations(range(6), 2):
        h = _padded(_cofactor(curve, (i, j)), 5)
        product = theta[i] * theta[j]
        beta0 = -h[0] - h[2] * product - h[4] * product ** 2
        nodes.append(Node(node_label(i, j),
                          (one, theta[i] + theta[j], product, beta0)))

    tropes = []
    for i in range(6):
        form = mpoly(theta[i] ** 2 * z1 - theta[i] * z2 + z3, Z)
        tropes.append(Trope(trope_label((i, )), form, (i, )))
    x = GenusTwoCurve.x
    for j, k in itertools.combinations(range(1, 6), 2):
        first = (0, j, k)
        second = tuple(n for n in range(6) if n not in first)
        g = upoly([1], x)
        h = upoly([1], x)
        for n in first:
            g = g * upoly([-theta[n], 1], x)
        for n in second:
            h = h * upoly([-theta[n], 1], x)
        g, h = _padded(g, 4), _padded(h, 4)
        form = mpoly(f6 * (g[2] * h[0] + g[0] * h[2]) * z1
                     + f6 * (g[0] + h[0]) * z2
                     + f6 * (g[1] + h[1]) * z3 + z4, Z)
        tropes.append(Trope(trope_label(first), form, first))
    return nodes, tropes


def expected_incidence(node, trope):
    """Return True if node lies on trope according to the labels.

    T_i contains p0 and the p_ij; T_ijk contains the p_ab with {a, b}
    inside {i, j, k} or inside its complement.
    """
    if node.label == 'p0':
        return len(trope.subset) == 1
    pair = set(int(c) - 1 for c in node.label[1:])
    subset = set(trope.subset)
    if len(subset) == 1:
        return subset <= pair
    return pair <= subset or not (pair & subset)


def _restriction(quartic, trope):
    """Restrict K to the plane of trope by eliminating one variable."""
    K = quartic.quartic()
    form = trope.form
    if form.degree(z4) == 1:
        # z4 = -(rest of the form)
        rest = form - mpoly(z4, Z)
        return substitute(K, {z4: -rest.as_expr()}, gens=PLANE)
    # T_i: z3 = -theta^2 z1 + theta z2
    rest = form - mpoly(z3, Z)
    return substitute(K, {z3: -rest.as_expr()}, gens=(z1, z2, z4))


def _check_node(quartic, node):
    value = quartic.evaluate(node.coordinates)
    grad = quartic.gradient(node.coordinates)
    return node.label, value, grad


def _check_trope(quartic, trope):
    restricted = _restriction(quartic, trope)
    if restricted.is_zero:
        return trope.label, None, restricted
    return trope.label, square_root(restricted), restricted


def verify_configuration(quartic, nodes, tropes, parallelism=None):
    """Verify the (16, 6) configuration.

    :return: CheckResults for: nodes are singular points, trope sections
        are squares, incidences (6 nodes per trope and 6 tropes per node,
        matching the labels), the product identity
        K1^2/4 - K0 K2 = c T1 ... T6 and the completed square identity.
    :rtype: list[CheckResult]
    """
    results = []

    # nodes
    result = CheckResult('nodes are singular')
    bad = []
    for label, value, grad in parallel_map(
            lambda n: _check_node(quartic, n), nodes, parallelism):
        if value != 0 or any(g != 0 for g in grad):
            bad.append({'node': label, 'value': value, 'gradient': grad})
    result.check(not bad and len(nodes) == 16,
                 '%d nodes' % len(nodes), '%d bad nodes' % len(bad))
    if bad:
        result.add_witness('failures', bad)
    results.append(result)

    # tropes
    result = CheckResult('trope sections are squares')
    bad = []
    scalars = []
    for label, root, restricted in parallel_map(
            lambda t: _check_trope(quartic, t), tropes, parallelism):
        if root is None:
            bad.append({'trope': label, 'restriction': restricted})
        else:
            scalars.append({'trope': label, 'scalar': root[0],
                            'conic': root[1]})
    result.check(not bad and len(tropes) == 16,
                 '%d tropes' % len(tropes), '%d bad tropes' % len(bad))
    result.add_witness('squares', scalars)
    if bad:
        result.add_witness('failures', bad)
    results.append(result)

    # incidence
    result = CheckResult('incidence 16_6')
    matrix = [[int(t.form.eval(dict(zip(Z, n.coordinates))) == 0)
               for t in tropes] for n in nodes]
    rows = [sum(row) for row in matrix]
    cols = [sum(matrix[i][j] for i in range(len(nodes)))
            for j in range(len(tropes))]
    mismatches = [(n.label, t.label) for i, n in enumerate(nodes)
                  for j, t in enumerate(tropes)
                  if bool(matrix[i][j]) != expected_incidence(n, t)]
    result.check(all(r == 6 for r in rows) and all(c == 6 for c in cols)
                 and not mismatches,
                 'every trope has 6 nodes, every node is on 6 tropes',
                 'incidence mismatch')
    result.add_witness('row_sums', rows)
    result.add_witness('column_sums', cols)
    if mismatches:
        result.add_witness('label_mismatches', mismatches)
    results.append(result)

    results.append(trope_product_identity(quartic, tropes))
    results.append(completed_square_identity(quartic))
    return results


def trope_product_identity(quartic, tropes):
    """Check K1^2/4 - K0 K2 = c T1 T2 T3 T4 T5 T6 and measure c."""
    result = CheckResult('trope product identity')
    lhs = quartic.branch_discriminant()
    product = mpoly(1, PLANE)
    for trope in tropes[:6]:
        product = product * mpoly(trope.form.as_expr(), PLANE)
    c = lhs.LC() / product.LC()
    difference = lhs - product * c
    result.check(difference.is_zero, 'c = %s' % c,
                 'K1^2/4 - K0 K2 is not a multiple of T1...T6')
    result.add_witness('c', c)
    if quartic.curve is not None:
        result.add_witness('c_over_f6_squared', c / quartic.curve.leading ** 2)
    if not difference.is_zero:
        result.add_witness('residual', difference)
    return result


def completed_square_identity(quartic):
    """Check (K2 z4 + K1/2)^2 - (K1^2/4 - K0 K2) = K2 K."""
    result = CheckResult('completed square')
    lhs = (quartic.completed_square() ** 2
           - mpoly(quartic.branch_discriminant().as_expr(), Z, quartic.domain))
    rhs = mpoly(quartic.K2.as_expr(), Z, quartic.domain) * quartic.quartic()
    difference = lhs - rhs
    result.check(difference.is_zero, msg_failed='identity does not hold')
    if not difference.is_zero:
        result.add_witness('residual', difference)
    return result


def projection_involution(quartic, point):
    """Exchange the two sheets of the projection from p0.

    (z1, z2, z3, z4) is sent to (z1, z2, z3, -z4 - K1/K2).

    :param point: a point of the quartic, exact or mpmath
    :raise KummerError: if K2 vanishes at the point, or if an exact point
        is not on the quartic
    """
    z = tuple(point)
    if all(is_rational(v) for v in z):
        z = tuple(rational(v) for v in z)
        values = dict(zip(PLANE, z[:3]))
        k2 = quartic.K2.eval(values)
        if k2 == 0:
            raise KummerError('point on branch locus of projection')
        if quartic.evaluate(z) != 0:
            raise KummerError('point is not on the quartic')
        k1 = quartic.K1.eval(values)
        return z[:3] + (-z[3] - k1 / k2, )
    _, K2, K1, _ = quartic.numeric()
    k2 = K2(*z)
    if k2 == 0:
        raise KummerError('point on branch locus of projection')
    return z[:3] + (-z[3] - K1(*z) / k2, )


def random_point(quartic, rng, height=20, min_branch=None):
    """Return a numeric point of the quartic.

    (z1:z2:z3) is random rational with numerators and denominators bounded
    by height; z4 is a root of the quadratic in z4, computed at the current
    mpmath precision. Points where K2 is small are rejected.

    :param rng: a random.Random instance
    :return: (z1, z2, z3, z4) with mpmath entries
    """
    if min_branch is None:
        min_branch = mpmath.mpf(10) ** -3
    _, K2, K1, K0 = quartic.numeric()
    while True:
        plane = [mpmath.mpf(rng.randint(-height, height))
                 / rng.randint(1, height) for _ in range(3)]
        point = plane + [0]
        k2 = K2(*point)
        if abs(k2) < min_branch:
            continue
        k1 = K1(*point)
        k0 = K0(*point)
        root = mpmath.sqrt(mpmath.mpc(k1 ** 2 - 4 * k2 * k0))
        return tuple(plane) + ((-k1 + root) / (2 * k2), )
