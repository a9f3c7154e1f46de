############################################################################
#                                                                          #
#                                ALGEBRA.PY                                #
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

"""Exact rational and polynomial algebra.

The rational numbers are sympy ``Rational`` values and polynomials are
sympy ``Poly`` objects over ``QQ`` (univariate or multivariate; symbolic
coefficient domains are accepted where noted). Floating point work is done
with mpmath complex numbers at a working precision carrying a guard margin
of GUARD_DIGITS decimal digits over the requested precision.

Serialized forms:

* rationals: ``"p/q"`` in lowest terms, ``"p"`` when q = 1
* univariate polynomials: coefficient lists, lowest degree first
"""

from fractions import Fraction
import logging

import mpmath
from mpmath.libmp.libhyper import NoConvergence
import sympy
from sympy import QQ, Poly
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger('k3python.algebra')

GUARD_DIGITS = 10

# polyroots attempts: the iteration cap and extra precision are doubled
# after each failure
ROOT_MAXSTEPS = 200
ROOT_ATTEMPTS = 4


class AlgebraError(Exception):
    """Error in an algebraic operation.

    :ivar partial: partial results computed before the failure, if any
    """

    def __init__(self, msg, partial=None):
        Exception.__init__(self, msg)
        self.partial = partial


def is_rational(value):
    """Return True if value is an exact rational number.

    :rtype: bool
    """
    if isinstance(value, bool):
        return False
    if isinstance(value, (int, Fraction, sympy.Rational)):
        return True
    return isinstance(value, QQ.dtype)


def rational(value):
    """Convert value to a sympy Rational.

    Strings are parsed as ``"p/q"``, ``"p"`` or a terminating decimal.

    >>> rational('-6/4')
    -3/2
    >>> rational(Fraction(2, 4))
    1/2

    :raise AlgebraError: if value is not an exact rational
    :rtype: sympy.Rational
    """
    if isinstance(value, sympy.Rational):
        return value
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, QQ.dtype):
        return QQ.to_sympy(value)
    if isinstance(value, str):
        text = value.strip().replace('−', '-')
        try:
            result = sympy.Rational(text)
        except (TypeError, ValueError):
            raise AlgebraError('not a rational number: %r' % value)
        return result
    if isinstance(value, int) and not isinstance(value, bool):
        return sympy.Integer(value)
    raise AlgebraError('not a rational number: %r' % (value, ))


def format_rational(value):
    """Return the canonical string form of a rational.

    >>> format_rational(rational('10/5'))
    '2'
    >>> format_rational(rational('-6/4'))
    '-3/2'

    :rtype: str
    """
    q = rational(value)
    if q.q == 1:
        return '%d' % q.p
    return '%d/%d' % (q.p, q.q)


def upoly(coefficients, var='x', domain=QQ):
    """Build a univariate polynomial from its coefficients.

    :param coefficients: coefficients, lowest degree first. Strings are
        parsed with rational().
    :type coefficients: list
    :param var: variable name or symbol
    :param domain: coefficient domain, None to let sympy choose one
        (needed for symbolic coefficients)
    :rtype: sympy.Poly
    """
    if isinstance(var, str):
        var = sympy.Symbol(var)
    coeffs = [rational(c) if isinstance(c, str) else sympy.sympify(c)
              for c in coefficients]
    if not coeffs:
        coeffs = [sympy.Integer(0)]
    if domain is None:
        return Poly(list(reversed(coeffs)), var)
    return Poly(list(reversed(coeffs)), var, domain=domain)


def coefficients(p):
    """Return the coefficients of a univariate polynomial, lowest first.

    :rtype: list
    """
    if p.is_zero:
        return [sympy.Integer(0)]
    return list(reversed(p.all_coeffs()))


def mpoly(expr, gens, domain=QQ):
    """Build a multivariate polynomial in the given generators.

    :rtype: sympy.Poly
    """
    if domain is None:
        return Poly(expr, *gens)
    return Poly(expr, *gens, domain=domain)


def _check_nonzero(*polys):
    for p in polys:
        if p.is_zero:
            raise AlgebraError('zero input')


def _to_field(p):
    if p.domain.is_Field:
        return p
    return p.to_field()


def squarefree_factor(p):
    """Return the squarefree decomposition of p.

    :param p: a nonzero univariate polynomial
    :type p: sympy.Poly

    :return: a pair (scalar, factors) where factors is a list of
        (monic squarefree polynomial, multiplicity) with pairwise coprime
        polynomials, such that p = scalar * prod(f ** m). Factors are
        sorted by degree then multiplicity.
    :rtype: (sympy.Rational, list[(sympy.Poly, int)])
    :raise AlgebraError: zero polynomial
    """
    _check_nonzero(p)
    p = _to_field(p)
    scalar, factors = p.sqf_list()
    result = []
    for factor, mult in factors:
        lc = factor.LC()
        if lc != 1:
            scalar = scalar * lc ** mult
            factor = factor.monic()
        result.append((factor, mult))
    result.sort(key=lambda fm: (fm[0].degree(), fm[1],
                                [str(c) for c in fm[0].all_coeffs()]))
    return sympy.sympify(scalar), result


def squarefree_part(p):
    """Return the monic squarefree part of p (product of its factors).

    :rtype: sympy.Poly
    """
    _, factors = squarefree_factor(p)
    result = Poly(1, *p.gens, domain=_to_field(p).domain)
    for factor, _ in factors:
        result = result * factor
    return result


def resultant(p, q):
    """Return the Sylvester resultant of p and q.

    Res(p, q) = lc(p) ** deg(q) * prod(q(a) for a root of p).

    :raise AlgebraError: zero input or different variables
    """
    _check_nonzero(p, q)
    if p.gens != q.gens:
        raise AlgebraError('variable mismatch: %s vs %s' % (p.gens, q.gens))
    return sympy.sympify(p.resultant(q))


def discriminant(p):
    """Return the discriminant of p.

    disc(p) = (-1) ** (n (n - 1) / 2) * Res(p, p') / lc(p) with n = deg p.

    :raise AlgebraError: if deg p < 2
    """
    if p.is_zero or p.degree() < 2:
        raise AlgebraError('discriminant needs degree >= 2')
    return sympy.sympify(p.discriminant())


def rational_roots(p):
    """Return the rational roots of p with their multiplicities.

    :rtype: dict
    """
    _check_nonzero(p)
    return _to_field(p).ground_roots()


def _polyroots(factor, digits):
    coeffs = [mpmath.mpf(sympy.Rational(c).p) / sympy.Rational(c).q
              for c in factor.all_coeffs()]
    maxsteps = ROOT_MAXSTEPS
    extraprec = 2 * mpmath.mp.prec
    for attempt in range(ROOT_ATTEMPTS):
        try:
            return mpmath.polyroots(coeffs, maxsteps=maxsteps,
                                    extraprec=extraprec)
        except NoConvergence:
            logger.debug('polyroots did not converge (degree %d, '
                         'maxsteps %d), retry', factor.degree(), maxsteps)
            maxsteps *= 2
            extraprec *= 2
    raise NoConvergence('no convergence after %d attempts' % ROOT_ATTEMPTS)


def complex_roots(p, digits):
    """Return the complex roots of p, repeated according to multiplicity.

    The squarefree factors of p are solved separately so that repeated
    roots are recovered exactly. Roots are mpmath mpc values computed with
    digits + GUARD_DIGITS digits, sorted by real then imaginary part.

    :param p: univariate polynomial of degree >= 1 with rational
        coefficients
    :param digits: requested precision in decimal digits
    :type digits: int
    :rtype: list[mpmath.mpc]
    :raise AlgebraError: on non convergence; the roots found so far are
        in the partial attribute
    """
    _check_nonzero(p)
    if p.degree() < 1:
        raise AlgebraError('constant polynomial has no roots')
    _, factors = squarefree_factor(p)
    roots = []
    with mpmath.workdps(digits + GUARD_DIGITS):
        for factor, mult in factors:
            if factor.degree() == 1:
                value = -sympy.Rational(factor.all_coeffs()[1])
                found = [mpmath.mpc(mpmath.mpf(value.p) / value.q)]
            else:
                try:
                    found = [mpmath.mpc(r)
                             for r in _polyroots(factor, digits)]
                except NoConvergence as e:
                    raise AlgebraError(str(e), partial=list(roots))
            for r in found:
                roots.extend([r] * mult)
        roots.sort(key=lambda z: (z.real, z.imag))
    return roots


def evaluate(p, values):
    """Evaluate a polynomial.

    :param p: polynomial
    :type p: sympy.Poly
    :param values: one value per generator, in generator order. Exact
        rationals give an exact result; mpmath values give an mpmath
        value.
    :type values: list
    """
    if all(is_rational(v) for v in values):
        return sympy.sympify(p.eval(dict(zip(p.gens, [rational(v)
                                                      for v in values]))))
    return numeric_function(p)(*values)


def numeric_function(p, gens=None):
    """Compile a polynomial or expression into an mpmath function.

    :param p: a Poly or a sympy expression
    :param gens: argument order (default: the Poly generators)
    :rtype: callable
    """
    if isinstance(p, Poly):
        expr = p.as_expr()
        if gens is None:
            gens = p.gens
    else:
        expr = p
    return sympy.lambdify(gens, expr, modules='mpmath')


def substitute(target, bindings, gens=None, domain=QQ):
    """Substitute variables of a polynomial.

    :param target: the polynomial
    :type target: sympy.Poly
    :param bindings: map from a variable (symbol or name) to a polynomial,
        an expression or a (numerator, denominator) pair. Variables not
        bound are passed through; the substitution is simultaneous.
    :type bindings: dict
    :param gens: generators of the result. By default the unbound
        generators of target followed by the new variables sorted by name.
    :param domain: coefficient domain of the result
    :return: the substituted polynomial, or a (numerator, denominator) pair
        of coprime polynomials if a binding is a rational function.
    :raise AlgebraError: if a bound variable is not a generator of target
    """
    by_name = dict((str(g), g) for g in target.gens)
    mapping = {}
    fractional = False
    for var, value in bindings.items():
        name = str(var)
        if name not in by_name:
            raise AlgebraError('arity mismatch: %s is not a variable of the '
                               'target (%s)' % (name, ', '.join(by_name)))
        if isinstance(value, tuple):
            num, den = [v.as_expr() if isinstance(v, Poly)
                        else sympy.sympify(v) for v in value]
            value = num / den
            fractional = True
        elif isinstance(value, Poly):
            value = value.as_expr()
        else:
            value = sympy.sympify(value)
        mapping[by_name[name]] = value

    result = target.as_expr().subs(mapping, simultaneous=True)

    if gens is None:
        kept = [g for g in target.gens if g not in mapping]
        new = set()
        for value in mapping.values():
            new |= value.free_symbols
        gens = kept + sorted(new - set(kept), key=str)
    gens = list(gens)

    def to_poly(expr):
        if not gens:
            return sympy.sympify(expr)
        return mpoly(sympy.expand(expr), gens, domain)

    if fractional:
        num, den = sympy.fraction(sympy.cancel(sympy.together(result)))
        return to_poly(num), to_poly(den)
    return to_poly(result)


def square_root(p):
    """Extract a polynomial square root up to a scalar.

    :param p: nonzero polynomial (uni or multivariate)
    :type p: sympy.Poly
    :return: None if p is not a scalar times a square, otherwise a pair
        (scalar, root) with p = scalar * root ** 2 exactly
    :rtype: (sympy.Rational, sympy.Poly) | None
    """
    _check_nonzero(p)
    scalar, factors = _to_field(p).sqf_list()
    root = Poly(1, *p.gens, domain=_to_field(p).domain)
    for factor, mult in factors:
        if mult % 2 != 0:
            return None
        root = root * factor ** (mult // 2)
    scalar = sympy.sympify(scalar)
    if (root ** 2) * scalar != _to_field(p):
        raise AlgebraError('inconsistent square root extraction')
    return scalar, root


def _domain_matrix(rows, ncols):
    return DomainMatrix([[QQ.from_sympy(rational(v)) for v in row]
                         for row in rows], (len(rows), ncols), QQ)


def rref(rows):
    """Row reduce a rational matrix.

    :param rows: list of rows (lists of rationals)
    :return: (reduced rows as lists of Rational, pivot columns)
    """
    if not rows:
        return [], ()
    ncols = len(rows[0])
    reduced, pivots = _domain_matrix(rows, ncols).rref()
    matrix = reduced.to_Matrix()
    return ([[matrix[i, j] for j in range(matrix.cols)]
             for i in range(matrix.rows)], tuple(pivots))


def nullspace(rows, ncols=None):
    """Return a basis of the right kernel of a rational matrix.

    :param rows: list of rows
    :param ncols: number of columns (needed when rows is empty)
    :rtype: list[list[sympy.Rational]]
    :raise AlgebraError: if rows is empty and ncols is not given
    """
    if not rows:
        if ncols is None:
            raise AlgebraError('empty matrix: the number of columns is '
                               'needed')
        return [[sympy.Integer(int(i == j)) for j in range(ncols)]
                for i in range(ncols)]
    if ncols is None:
        ncols = len(rows[0])
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vector = [sympy.Integer(0)] * ncols
        vector[f] = sympy.Integer(1)
        for r, c in enumerate(pivots):
            vector[c] = -reduced[r][f]
        basis.append(vector)
    return basis


def solve_linear(rows, rhs):
    """Solve the linear system rows * x = rhs exactly.

    :return: the unique solution
    :rtype: list[sympy.Rational]
    :raise AlgebraError: if the system is inconsistent or underdetermined
    """
    if not rows:
        raise AlgebraError('empty linear system')
    ncols = len(rows[0])
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        raise AlgebraError('inconsistent linear system')
    if len(pivots) != ncols:
        raise AlgebraError('underdetermined linear system (rank %d, %d '
                           'unknowns)' % (len(pivots), ncols))
    return [reduced[i][ncols] for i in range(ncols)]
