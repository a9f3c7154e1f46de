############################################################################
#                                                                          #
#                               ELLIPTIC.PY                                #
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

"""Elliptic surfaces in Weierstrass form over the projective line.

A surface is y^2 = x^3 + a2(t) x^2 + a4(t) x + a6(t) with polynomial
coefficients in the base parameter. Singular fibers are classified by
Tate's algorithm in its characteristic 0 form: at a place v the type only
depends on the valuations of c4, c6 and the discriminant of a minimal
model, so places of degree > 1 are handled without leaving the rationals.
"""

from collections import namedtuple
import logging
import math

import mpmath
import sympy
from sympy import Poly, QQ

from k3python.algebra import (coefficients, is_rational, rational,
                              rational_roots, squarefree_factor, substitute,
                              upoly)
from k3python.mainloop import parallel_map

logger = logging.getLogger('k3python.elliptic')

t = sympy.Symbol('t')

INFINITY = 'inf'

# valuation of the zero polynomial
INFINITE_VALUATION = 10 ** 9

# Kodaira fiber type -> (components, simple components, Euler number,
# root lattice); the I_n and I*_n families are computed in fiber_data
FIBER_TABLE = {
    'I0': (1, 1, 0, ''),
    'II': (1, 1, 2, ''),
    'III': (2, 2, 3, 'A1'),
    'IV': (3, 3, 4, 'A2'),
    'IV*': (7, 3, 8, 'E6'),
    'III*': (8, 2, 9, 'E7'),
    'II*': (9, 1, 10, 'E8'),
}

# additive potentially good reduction: valuation of the discriminant of a
# minimal model -> type
ADDITIVE_TYPES = {2: 'II', 3: 'III', 4: 'IV', 6: 'I0*', 8: 'IV*',
                  9: 'III*', 10: 'II*'}


class EllipticSurfaceError(Exception):
    pass


def fiber_data(kind):
    """Return (m, m1, euler, lattice) for a Kodaira type.

    >>> fiber_data('I3*')
    (8, 4, 9, 'D7')

    :param kind: 'I0', 'I<n>', 'I<n>*', 'II', 'III', 'IV', 'II*', 'III*'
        or 'IV*'
    :rtype: tuple
    """
    if kind in FIBER_TABLE:
        return FIBER_TABLE[kind]
    if kind.startswith('I') and kind.endswith('*') and kind[1:-1].isdigit():
        n = int(kind[1:-1])
        return (n + 5, 4, n + 6, 'D%d' % (n + 4))
    if kind.startswith('I') and kind[1:].isdigit():
        n = int(kind[1:])
        return (n, n, n, 'A%d' % (n - 1) if n >= 2 else '')
    raise EllipticSurfaceError('unknown fiber type %s' % kind)


class KodairaFiber(namedtuple('KodairaFiber',
                              ['place', 'kind', 'count', 'shifts',
                               'valuations'])):
    """A singular fiber type at a place of the base.

    :ivar place: monic squarefree polynomial in the base parameter, or
        INFINITY
    :ivar kind: Kodaira type ('I5*', 'II', ...)
    :ivar count: number of geometric fibers at the place (its degree)
    :ivar shifts: number of minimalization steps done at the place
    :ivar valuations: (v(c4), v(c6), v(disc)) of the minimal model
    """

    __slots__ = ()

    @property
    def components(self):
        return fiber_data(self.kind)[0]

    @property
    def simple_components(self):
        return fiber_data(self.kind)[1]

    @property
    def euler(self):
        return fiber_data(self.kind)[2]

    @property
    def lattice(self):
        return fiber_data(self.kind)[3]

    @property
    def at_infinity(self):
        return self.place == INFINITY

    def place_str(self):
        if self.at_infinity:
            return INFINITY
        return str(self.place.as_expr())

    def as_dict(self):
        return {'place': self.place_str(),
                'place_coefficients': None if self.at_infinity else
                [str(c) for c in coefficients(self.place)],
                'type': self.kind,
                'count': self.count,
                'm': self.components,
                'm1': self.simple_components,
                'euler': self.euler,
                'lattice': self.lattice}

    def __str__(self):
        return '%s at %s' % (self.kind, self.place_str())


class WeierstrassSurface(object):
    """The surface y^2 = x^3 + a2 x^2 + a4 x + a6 over a line.

    :ivar a2, a4, a6: polynomials in the base parameter (sympy Poly, over QQ
        or over a domain of symbolic parameters)
    :ivar chi: integer n such that deg a_i <= n i
    :ivar var: base parameter
    """

    def __init__(self, a2, a4, a6, chi=None, var=t, name=None):
        self.var = var
        self.a2, self.a4, self.a6 = [self.__as_poly(a) for a in (a2, a4, a6)]
        self.name = name
        minimal_chi = self.minimal_chi()
        if chi is None:
            chi = minimal_chi
        elif chi < minimal_chi:
            raise EllipticSurfaceError('chi=%d too small for the coefficient '
                                       'degrees (needs %d)'
                                       % (chi, minimal_chi))
        self.chi = chi

    def __as_poly(self, a):
        if isinstance(a, Poly):
            if a.gens != (self.var, ):
                a = Poly(a.as_expr(), self.var)
            return a
        if isinstance(a, (list, tuple)):
            return upoly(a, self.var)
        expr = sympy.sympify(a)
        domain = QQ if not (expr.free_symbols - {self.var}) else None
        if domain is None:
            return Poly(expr, self.var)
        return Poly(expr, self.var, domain=domain)

    @property
    def coefficients(self):
        return (self.a2, self.a4, self.a6)

    def minimal_chi(self):
        """Return max(1, ceil(deg a_i / i))."""
        chi = 1
        for i, a in zip((2, 4, 6), self.coefficients):
            if not a.is_zero:
                chi = max(chi, int(math.ceil(a.degree() / float(i))))
        return chi

    @property
    def is_k3(self):
        return self.chi == 2

    @property
    def is_exact(self):
        """True if all coefficients are rational."""
        return all(a.domain in (QQ, sympy.ZZ) for a in self.coefficients)

    def equation(self, x=None, y=None):
        """Return y^2 - (x^3 + a2 x^2 + a4 x + a6) as an expression."""
        x = x if x is not None else sympy.Symbol('x')
        y = y if y is not None else sympy.Symbol('y')
        return y ** 2 - (x ** 3 + self.a2.as_expr() * x ** 2
                         + self.a4.as_expr() * x + self.a6.as_expr())

    def c4(self):
        return self.a2 ** 2 * 16 - self.a4 * 48

    def c6(self):
        return (self.a2 ** 3 * -64 + self.a2 * self.a4 * 288
                - self.a6 * 864)

    def rescale(self, u):
        """Return the model obtained by (x, y) -> (u^2 x, u^3 y)."""
        u = rational(u)
        return WeierstrassSurface(self.a2 * (1 / u ** 2),
                                  self.a4 * (1 / u ** 4),
                                  self.a6 * (1 / u ** 6), self.chi, self.var,
                                  self.name)

    def at_infinity(self):
        """Return the model in u = 1/t: a_i(u) = u^(i chi) a_i(1/u)."""
        u = self.var
        result = []
        for i, a in zip((2, 4, 6), self.coefficients):
            values = coefficients(a) if not a.is_zero else []
            values = values + [0] * (i * self.chi + 1 - len(values))
            result.append(upoly(list(reversed(values)), u,
                                domain=a.domain))
        return WeierstrassSurface(result[0], result[1], result[2], self.chi,
                                  self.var)

    def as_dict(self):
        return {'var': str(self.var),
                'a2': [str(c) for c in coefficients(self.a2)],
                'a4': [str(c) for c in coefficients(self.a4)],
                'a6': [str(c) for c in coefficients(self.a6)],
                'chi': self.chi}

    def __eq__(self, other):
        return (isinstance(other, WeierstrassSurface)
                and self.var == other.var
                and all((a - b).is_zero for a, b in
                        zip(self.coefficients, other.coefficients)))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(str(a.as_expr()) for a in self.coefficients))

    def __repr__(self):
        return 'WeierstrassSurface(y^2 = %s)' % (
            -self.equation() + sympy.Symbol('y') ** 2)


def surface_discriminant(s):
    """Return the discriminant 16 (-4 a2^3 a6 + a2^2 a4^2 + 18 a2 a4 a6
    - 4 a4^3 - 27 a6^2) of the surface.

    :raise EllipticSurfaceError: if the discriminant vanishes identically
    """
    a2, a4, a6 = s.coefficients
    delta = (a2 ** 3 * a6 * -4 + a2 ** 2 * a4 ** 2 + a2 * a4 * a6 * 18
             - a4 ** 3 * 4 - a6 ** 2 * 27) * 16
    if delta.is_zero:
        raise EllipticSurfaceError('non-reduced fibration')
    return delta


def discriminant_oracle(s):
    """Return 16 times the discriminant of the cubic in x, computed by a
    resultant."""
    x = sympy.Symbol('x_')
    cubic = Poly(x ** 3 + s.a2.as_expr() * x ** 2 + s.a4.as_expr() * x
                 + s.a6.as_expr(), x)
    return Poly(16 * cubic.discriminant(), s.var)


def valuation(p, place):
    """Return the largest k such that place^k divides p.

    :param p: polynomial in the base parameter
    :param place: monic polynomial
    :rtype: int
    """
    if p.is_zero:
        return INFINITE_VALUATION
    k = 0
    while True:
        quotient, remainder = p.div(place)
        if not remainder.is_zero:
            return k
        p = quotient
        k += 1


def _classify_valuations(v4, v6, vd):
    """Return the Kodaira type of a minimal model from valuations."""
    if vd == 0:
        return 'I0'
    if v4 == 0:
        return 'I%d' % vd
    if 3 * v4 < vd and vd > 6:
        return 'I%d*' % (vd - 6)
    if vd in ADDITIVE_TYPES:
        return ADDITIVE_TYPES[vd]
    raise EllipticSurfaceError('unexpected valuations v(c4)=%s v(c6)=%s '
                               'v(disc)=%s' % (v4, v6, vd))


def _local_type(s, place):
    c4, c6 = s.c4(), s.c6()
    delta = surface_discriminant(s)
    v4, v6, vd = [valuation(p, place) for p in (c4, c6, delta)]
    shifts = 0
    while v4 >= 4 and v6 >= 6 and vd >= 12:
        v4 = v4 - 4 if v4 < INFINITE_VALUATION else v4
        v6 = v6 - 6 if v6 < INFINITE_VALUATION else v6
        vd -= 12
        shifts += 1
    return _classify_valuations(v4, v6, vd), shifts, (v4, v6, vd)


def _check_exact(s):
    if not s.is_exact:
        raise EllipticSurfaceError('fiber classification needs rational '
                                   'coefficients')


def kodaira_type_at(s, place):
    """Classify the fiber at a place.

    :param s: surface with rational coefficients
    :type s: WeierstrassSurface
    :param place: INFINITY (or None), a rational number a (the place t = a)
        or a monic polynomial in the base parameter whose roots all carry
        the same valuations
    :rtype: KodairaFiber
    """
    _check_exact(s)
    if place is None or place == INFINITY:
        kind, shifts, vals = _local_type(s.at_infinity(), upoly([0, 1], s.var))
        return KodairaFiber(INFINITY, kind, 1, shifts, vals)
    if is_rational(place):
        place = upoly([-rational(place), 1], s.var)
    if not isinstance(place, Poly) or place.degree() < 1:
        raise EllipticSurfaceError('invalid place %r' % (place, ))
    place = place.monic()
    kind, shifts, vals = _local_type(s, place)
    return KodairaFiber(place, kind, place.degree(), shifts, vals)


def _split(pieces, other):
    """Refine coprime pieces with the squarefree factors of other."""
    if other.is_zero or other.degree() < 1:
        return pieces
    _, factors = squarefree_factor(other)
    for factor, _ in factors:
        refined = []
        for piece in pieces:
            g = piece.gcd(factor)
            if g.degree() < 1 or g.degree() == piece.degree():
                refined.append(piece)
            else:
                refined.extend([g.monic(), piece.quo(g).monic()])
        pieces = refined
    return pieces


def singular_places(s):
    """Return the finite places carrying singular fibers.

    The squarefree factors of the discriminant are refined so that the
    valuations of c4 and c6 are constant on each piece, then rational roots
    are split off as places of degree 1.

    :rtype: list[sympy.Poly]
    """
    _check_exact(s)
    delta = surface_discriminant(s)
    if delta.degree() < 1:
        return []
    _, factors = squarefree_factor(delta)
    pieces = [factor for factor, _ in factors]
    pieces = _split(_split(pieces, s.c4()), s.c6())
    places = []
    for piece in pieces:
        rest = piece
        for root in sorted(rational_roots(piece)):
            linear = upoly([-root, 1], s.var)
            places.append(linear)
            rest = rest.quo(linear)
        if rest.degree() >= 1:
            places.append(rest.monic())
    places.sort(key=lambda p: (p.degree(), [sympy.Rational(c) for c in
                                            coefficients(p)]))
    return places


def classify_all_fibers(s, parallelism=None):
    """Classify all singular fibers, including the fiber at infinity.

    The fiber at infinity is always reported (as I0 when smooth). The
    Euler numbers are checked: sum(count * euler) = 12 * chi where chi is
    reduced by one for each minimalization step.

    :rtype: list[KodairaFiber]
    :raise EllipticSurfaceError: if the Euler numbers do not add up
    """
    places = singular_places(s) + [INFINITY]
    fibers = parallel_map(lambda p: kodaira_type_at(s, p), places,
                          parallelism)
    euler = sum(f.count * f.euler for f in fibers)
    chi = s.chi - sum(f.count * f.shifts for f in fibers)
    logger.debug('%s: %s', s, ', '.join(str(f) for f in fibers))
    if euler != 12 * chi:
        raise EllipticSurfaceError('Euler numbers add up to %d, expected %d'
                                   % (euler, 12 * chi))
    return fibers


def euler_sum(fibers):
    return sum(f.count * f.euler for f in fibers)


def fiber_summary(fibers):
    """Return {type: number of geometric fibers}, smooth fibers excluded."""
    summary = {}
    for f in fibers:
        if f.kind != 'I0':
            summary[f.kind] = summary.get(f.kind, 0) + f.count
    return summary


def shioda_tate(fibers, mw_rank=0):
    """Return (rho, trivial lattice discriminant).

    rho = r + 2 + sum(m_v - 1) and the discriminant of the trivial lattice
    is the product of the numbers of simple components m1_v. Torsion
    sections are not accounted for.

    :rtype: (int, int)
    """
    rho = mw_rank + 2
    disc = 1
    for f in fibers:
        rho += f.count * (f.components - 1)
        disc *= f.simple_components ** f.count
    return rho, disc


def two_isogeny(s):
    """Return the quotient of s by the 2-torsion section (0, 0).

    y^2 = x^3 + a x^2 + b x is sent to Y^2 = X^3 - 2a X^2 + (a^2 - 4b) X.

    :raise EllipticSurfaceError: if a6 is not zero
    """
    if not s.a6.is_zero:
        raise EllipticSurfaceError('no rational 2-torsion at origin')
    return WeierstrassSurface(s.a2 * -2, s.a2 ** 2 - s.a4 * 4, s.a6, s.chi,
                              s.var)


def _fiber_coefficients(s, value):
    if is_rational(value):
        value = rational(value)
        return [a.eval(value) for a in s.coefficients]
    return [mpmath.polyval([mpmath.mpf(c.p) / c.q if is_rational(c) else c
                            for c in a.all_coeffs()], value)
            for a in s.coefficients]


def isogeny_maps(s, value):
    """Return the 2-isogeny and its dual on the fiber over value.

    :param s: surface with a6 = 0
    :param value: value of the base parameter (exact or mpmath)
    :return: (phi, dual), functions of a point (x, y)
    """
    if not s.a6.is_zero:
        raise EllipticSurfaceError('no rational 2-torsion at origin')
    a, b, _ = _fiber_coefficients(s, value)

    def phi(point):
        x, y = point
        return (y ** 2 / x ** 2, y * (b - x ** 2) / x ** 2)

    def dual(point):
        X, Y = point
        return (Y ** 2 / (4 * X ** 2),
                Y * (a ** 2 - 4 * b - X ** 2) / (8 * X ** 2))

    return phi, dual


def duplication(s, value, point):
    """Return 2 P on the fiber over value (tangent line construction)."""
    a2, a4, _ = _fiber_coefficients(s, value)
    x, y = point
    slope = (3 * x ** 2 + 2 * a2 * x + a4) / (2 * y)
    x2 = slope ** 2 - a2 - 2 * x
    return (x2, slope * (x - x2) - y)


class E8E7Parameters(namedtuple('E8E7Parameters',
                                ['a', 'a1', 'b', 'b1', 'b2'])):
    """Parameters of y^2 = x^3 + t^3 (a t + a') x + t^5 (b'' t^2 + b t + b').

    The fields a1, b1 and b2 stand for a', b' and b''.
    """

    __slots__ = ()

    def surface(self, var=t):
        """Return the surface with these parameters (fibers E8 at infinity
        and E7 at 0)."""
        a4 = self.a * var ** 4 + self.a1 * var ** 3
        a6 = self.b2 * var ** 7 + self.b * var ** 6 + self.b1 * var ** 5
        return WeierstrassSurface(0, a4, a6, 2, var)

    def as_dict(self):
        return {"a": self.a, "a'": self.a1, "b": self.b, "b'": self.b1,
                "b''": self.b2}


def e8e7_parameters(s):
    """Read (a, a', b, b', b'') off a surface of the E8 + E7 shape.

    :raise EllipticSurfaceError: on a shape mismatch or if b'' = 0
    """
    v = s.var
    if not s.a2.is_zero:
        raise EllipticSurfaceError('shape mismatch: a2 must vanish')
    for a, allowed, name in ((s.a4, (3, 4), 'a4'), (s.a6, (5, 6, 7), 'a6')):
        for (k, ), c in a.terms():
            if k not in allowed and c != 0:
                raise EllipticSurfaceError('shape mismatch: %s has a term '
                                           'of degree %d' % (name, k))
    values = [s.a4.coeff_monomial(v ** 4), s.a4.coeff_monomial(v ** 3),
              s.a6.coeff_monomial(v ** 6), s.a6.coeff_monomial(v ** 5),
              s.a6.coeff_monomial(v ** 7)]
    params = E8E7Parameters(*values)
    if params.b2 == 0:
        raise EllipticSurfaceError("b'' must be nonzero")
    return params


def refiber_e8e7(s, x=None):
    """Return the elliptic fibration of s over the x-line.

    The change of variables (x, y, t) = (x' t'^2 / b''^2, y' t'^2 / b''^3,
    t' / b'') turns s into y'^2 = t'^3 + (x'^3 + a x' + b) t'^2
    + b'' (a' x' + b') t', an elliptic surface in (t', y') over the x'-line.
    The substitution identity is verified exactly before returning.

    :return: the surface over the x-line (fiber coordinate t)
    :raise EllipticSurfaceError: on a shape mismatch, b'' = 0 or if the
        identity does not hold
    """
    params = e8e7_parameters(s)
    if x is None:
        x = sympy.Symbol('x')
    A = x ** 3 + params.a * x + params.b
    B = params.b2 * (params.a1 * x + params.b1)
    result = WeierstrassSurface(A, B, 0, 2, x)
    if not substitution_identity(s, params, x):
        raise EllipticSurfaceError('substitution identity does not hold')
    return result


def substitution_identity(s, params, x):
    """Check b''^6 F(x t^2/b''^2, y t^2/b''^3, t/b'') = t^4 G(x, y, t)
    with F the equation of s and G the one of the x-line model.

    :rtype: bool
    """
    y = sympy.Symbol('y')
    tt = s.var
    F = Poly(s.equation(x, y), x, y, tt)
    b2 = params.b2
    num, den = substitute(F, {x: (x * tt ** 2, b2 ** 2),
                              y: (y * tt ** 2, b2 ** 3),
                              tt: (tt, b2)}, gens=(x, y, tt), domain=None)
    G = (y ** 2 - tt ** 3 - (x ** 3 + params.a * x + params.b) * tt ** 2
         - b2 * (params.a1 * x + params.b1) * tt)
    lhs = sympy.expand(num.as_expr() * b2 ** 6)
    rhs = sympy.expand(den.as_expr() * tt ** 4 * G)
    return sympy.expand(lhs - rhs) == 0
