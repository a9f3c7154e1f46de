############################################################################
#                                                                          #
#                               LATTICES.PY                                #
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

"""Integral lattices given by Gram matrices.

Lattices are stored as exact symmetric Gram matrices over the rationals
together with basis labels and, for sublattices and overlattices of a
fixed ambient space, the coordinates of the basis vectors in the ambient
basis.

Besides the classical root lattices this module builds the three lattices
of the Kummer construction:

* the Nikulin lattice: eight (-2)-vectors v_i and (v_1 + ... + v_8)/2;
* the Kummer lattice: sixteen disjoint (-2)-classes glued by the half sums
  over the 32 words of the Reed-Muller code R(1, 4);
* Lambda(16, 6): the classes L, E0, E_ij of a hyperplane section and of
  the sixteen nodes, extended by the sixteen half-integral trope conics
  C0, C_1j and C_jk.
"""

from collections import OrderedDict
from fractions import Fraction
import itertools
import logging
import math
import re

import sympy
from sympy import QQ
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.matrices import DomainMatrix

from k3python.algebra import rational, rref
from k3python.decorators import memoize
from k3python.mainloop import parallel_map
from k3python.result import CheckResult

logger = logging.getLogger('k3python.lattices')


class LatticeError(Exception):
    pass


def _fraction(value):
    value = rational(value)
    return Fraction(int(value.p), int(value.q))


class GramLattice(object):
    """A lattice with an exact symmetric Gram matrix.

    :ivar gram: tuple of rows of sympy Rational
    :ivar labels: basis labels
    :ivar basis: coordinates of the basis vectors in an ambient space, or
        None
    :ivar name: optional display name
    """

    def __init__(self, gram, labels=None, basis=None, name=None):
        rows = [[rational(v) for v in row] for row in gram]
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise LatticeError('Gram matrix is not square')
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError('Gram matrix is not symmetric at '
                                       '(%d, %d)' % (i, j))
        self.gram = tuple(tuple(row) for row in rows)
        if labels is None:
            labels = ['b%d' % (i + 1) for i in range(n)]
        if len(labels) != n:
            raise LatticeError('%d labels for rank %d' % (len(labels), n))
        self.labels = list(labels)
        self.basis = (None if basis is None else
                      [tuple(rational(v) for v in vector)
                       for vector in basis])
        self.name = name

    @property
    def rank(self):
        return len(self.gram)

    @property
    def is_integral(self):
        return all(v.q == 1 for row in self.gram for v in row)

    @property
    def is_even(self):
        return (self.is_integral
                and all(self.gram[i][i] % 2 == 0 for i in range(self.rank)))

    def matrix(self):
        return sympy.Matrix(self.gram)

    def pairing(self, u, v):
        """Return u.v for coordinate vectors in the lattice basis."""
        return sum((rational(a) * self.gram[i][j] * rational(b)
                    for i, a in enumerate(u) if a != 0
                    for j, b in enumerate(v) if b != 0), sympy.Integer(0))

    def norm(self, v):
        return self.pairing(v, v)

    def scaled(self, alpha):
        """Return the lattice with the form multiplied by alpha."""
        alpha = rational(alpha)
        return GramLattice([[alpha * v for v in row] for row in self.gram],
                           self.labels, self.basis,
                           '%s(%s)' % (self.name or 'L', alpha))

    def transformed(self, change):
        """Return the Gram matrix in the basis given by the columns of
        change (U^T G U)."""
        u = sympy.Matrix(change)
        return GramLattice((u.T * self.matrix() * u).tolist(), name=self.name)

    def as_dict(self):
        return OrderedDict([('name', self.name),
                            ('labels', self.labels),
                            ('gram', [[str(v) for v in row]
                                      for row in self.gram])])

    def __eq__(self, other):
        return isinstance(other, GramLattice) and self.gram == other.gram

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return 'GramLattice(%s, rank %d)' % (self.name, self.rank)


def dynkin_gram(n, edges, norm=2):
    """Return the Gram matrix of a simply laced diagram.

    :param n: number of nodes
    :param edges: pairs of adjacent nodes
    :param norm: norm of the nodes; adjacent nodes pair to -norm/2
    """
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = norm
    for i, j in edges:
        gram[i][j] = gram[j][i] = -sympy.Rational(norm, 2)
    return gram


def _chain(n):
    return [(i, i + 1) for i in range(n - 1)]


def root_lattice_edges(kind, n):
    """Return the edges of the Dynkin diagram A_n, D_n or E_n."""
    if kind == 'A':
        if n < 1:
            raise LatticeError('A(n) requires n >= 1')
        return _chain(n)
    if kind == 'D':
        if n < 4:
            raise LatticeError('D(n) requires n >= 4')
        return _chain(n - 1) + [(n - 3, n - 1)]
    if kind == 'E':
        # chain of n - 1 nodes, the last node attached to the trivalent one
        centers = {6: 2, 7: 3, 8: 4}
        if n not in centers:
            raise LatticeError('E(n) requires n in 6, 7, 8')
        return _chain(n - 1) + [(centers[n], n - 1)]
    raise LatticeError('unknown root system %s' % kind)


# ambient basis of Lambda(16, 6): hyperplane class, node classes
PAIRS = list(itertools.combinations(range(1, 7), 2))
AMBIENT_LABELS = ['L', 'E0'] + ['E%d%d' % p for p in PAIRS]


def _ambient_index(label):
    return AMBIENT_LABELS.index(label)


def ambient_lattice():
    """Return the lattice with basis L, E0, E_ij: L^2 = 4, E^2 = -2."""
    gram = dynkin_gram(len(AMBIENT_LABELS), [], -2)
    gram[0][0] = 4
    return GramLattice(gram, AMBIENT_LABELS, name='ambient')


class DivisorClass(object):
    """A rational divisor class in the span of L, E0 and the E_ij.

    Classes support addition, subtraction, multiplication by rationals
    and the intersection product ``*`` between two classes.
    """

    GRAM_DIAGONAL = tuple([4] + [-2] * (len(AMBIENT_LABELS) - 1))

    def __init__(self, coordinates, label=None):
        coordinates = tuple(rational(v) for v in coordinates)
        if len(coordinates) != len(AMBIENT_LABELS):
            raise LatticeError('a divisor class has %d coordinates'
                               % len(AMBIENT_LABELS))
        self.coordinates = coordinates
        self.label = label

    @classmethod
    def from_terms(cls, terms, label=None):
        """Build a class from {basis label: coefficient}.

        >>> str(DivisorClass.from_terms({'L': 1, 'E0': -1}))
        'L - E0'
        """
        coordinates = [0] * len(AMBIENT_LABELS)
        for key, value in terms.items():
            coordinates[_ambient_index(key)] += rational(value)
        return cls(coordinates, label)

    def named(self, label):
        return DivisorClass(self.coordinates, label)

    def __add__(self, other):
        return DivisorClass([a + b for a, b in
                             zip(self.coordinates, other.coordinates)])

    def __sub__(self, other):
        return DivisorClass([a - b for a, b in
                             zip(self.coordinates, other.coordinates)])

    def __neg__(self):
        return DivisorClass([-a for a in self.coordinates])

    def __rmul__(self, scalar):
        scalar = rational(scalar)
        return DivisorClass([scalar * a for a in self.coordinates])

    def __mul__(self, other):
        if not isinstance(other, DivisorClass):
            return other * self
        return sum(d * a * b for d, a, b in
                   zip(self.GRAM_DIAGONAL, self.coordinates,
                       other.coordinates))

    def __truediv__(self, scalar):
        return (1 / rational(scalar)) * self

    @property
    def norm(self):
        return self * self

    def __eq__(self, other):
        return (isinstance(other, DivisorClass)
                and self.coordinates == other.coordinates)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.coordinates)

    def __str__(self):
        text = ''
        for label, value in zip(AMBIENT_LABELS, self.coordinates):
            if value == 0:
                continue
            term = label if abs(value) == 1 else '%s*%s' % (abs(value), label)
            if not text:
                text = term if value > 0 else '-' + term
            else:
                text += (' + ' if value > 0 else ' - ') + term
        return text or '0'

    def __repr__(self):
        return 'DivisorClass(%s)' % (self.label or str(self))

    def as_dict(self):
        return OrderedDict([('label', self.label), ('class', str(self))])


def E(i, j=None):
    """Return the class E0 (E()) or E_ij of an exceptional curve."""
    if i == 0 and j is None:
        return DivisorClass.from_terms({'E0': 1}, 'E0')
    i, j = sorted((i, j))
    return DivisorClass.from_terms({'E%d%d' % (i, j): 1}, 'E%d%d' % (i, j))


L = DivisorClass.from_terms({'L': 1}, 'L')
E0 = E(0)


def trope_class(subset):
    """Return the class of the conic cut by a trope plane.

    :param subset: (j, ) for the trope T_j through p0 (C0 is (1, )), or a
        3-subset for T_ijk (equivalent to its complement)
    :rtype: DivisorClass
    """
    subset = tuple(sorted(subset))
    if len(subset) == 1:
        j = subset[0]
        total = L - E0
        for k in range(1, 7):
            if k != j:
                total = total - E(j, k)
        label = 'C0' if j == 1 else 'C1%d' % j
        return (total / 2).named(label)
    if len(subset) != 3:
        raise LatticeError('invalid trope subset %r' % (subset, ))
    if 1 not in subset:
        subset = tuple(k for k in range(1, 7) if k not in subset)
    other = [k for k in range(1, 7) if k not in subset]
    total = L
    for part in (subset, other):
        for i, j in itertools.combinations(part, 2):
            total = total - E(i, j)
    return (total / 2).named('C%d%d' % subset[1:])


def trope_classes():
    """Return the sixteen trope classes C0, C12..C16, C23..C56."""
    return ([trope_class((j, )) for j in range(1, 7)]
            + [trope_class((1, j, k))
               for j, k in itertools.combinations(range(2, 7), 2)])


def alpha_isometry(divisor):
    """Apply the involution induced by the exchange of sheets of the
    projection from p0: L -> 3L - 4E0, E0 -> 2L - 3E0, E_ij fixed."""
    coordinates = list(divisor.coordinates)
    l, e0 = coordinates[0], coordinates[1]
    coordinates[0] = 3 * l + 2 * e0
    coordinates[1] = -4 * l - 3 * e0
    return DivisorClass(coordinates)


def alpha_matrix():
    """Return the matrix of alpha_isometry (columns are images)."""
    columns = []
    for i in range(len(AMBIENT_LABELS)):
        unit = [0] * len(AMBIENT_LABELS)
        unit[i] = 1
        columns.append(alpha_isometry(DivisorClass(unit)).coordinates)
    return sympy.Matrix(columns).T


def signature(gram):
    """Return (r+, r-, r0) by exact congruence diagonalization.

    A zero diagonal is fixed by adding to the row and column a row and
    column with a nonzero pairing.
    """
    a = [[_fraction(v) for v in row] for row in gram]
    n = len(a)
    positive = negative = 0
    active = list(range(n))
    while active:
        pivot = next((i for i in active if a[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in active for j in active
                         if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/column i += row/column j
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            pivot = i
        d = a[pivot][pivot]
        if d > 0:
            positive += 1
        else:
            negative += 1
        active.remove(pivot)
        for i in active:
            factor = a[i][pivot] / d
            if factor == 0:
                continue
            for k in active:
                a[i][k] -= factor * a[pivot][k]
        for i in active:
            a[i][pivot] = a[pivot][i] = Fraction(0)
    return positive, negative, n - positive - negative


def disc_and_signature(lattice):
    """Return (|det|, (r+, r-, r0)).

    :type lattice: GramLattice
    """
    if lattice.rank == 0:
        return sympy.Integer(1), (0, 0, 0)
    det = DomainMatrix([[QQ.from_sympy(v) for v in row]
                        for row in lattice.gram],
                       (lattice.rank, lattice.rank), QQ).det()
    return abs(QQ.to_sympy(det)), signature(lattice.gram)


def _ldl(gram):
    """Return (d, u) with Q(x) = sum d_i (x_i + sum_{j>i} u_ij x_j)^2."""
    n = len(gram)
    a = [[_fraction(v) for v in row] for row in gram]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise LatticeError('root enumeration requires definite lattice')
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                a[j][k] -= u[i][j] * u[i][k] * d[i]
                a[k][j] = a[j][k]
    return d, u


def _interval(center, budget, weight):
    """Integers x with weight (x - center)^2 <= budget."""
    radius = math.sqrt(float(budget / weight))
    lo = int(math.floor(float(center) - radius)) - 1
    hi = int(math.ceil(float(center) + radius)) + 1
    return [x for x in range(lo, hi + 1)
            if weight * (x - center) ** 2 <= budget]


def _enumerate(d, u, level, prefix, budget):
    """Yield (vector, remaining budget) below a fixed prefix of trailing
    coordinates."""
    n = len(d)
    center = -sum(u[level][j] * prefix[j - level - 1]
                  for j in range(level + 1, n))
    for x in _interval(center, budget, d[level]):
        left = budget - d[level] * (x - center) ** 2
        if level == 0:
            yield (x, ) + prefix, left
        else:
            for item in _enumerate(d, u, level - 1, (x, ) + prefix, left):
                yield item


def short_vectors(gram, bound, parallelism=None):
    """Return all nonzero x with 0 < x^T G x <= bound for G positive
    definite, as (vector, norm) pairs.

    The enumeration follows Fincke and Pohst and is split over the values
    of the last coordinate.
    """
    d, u = _ldl(gram)
    n = len(d)
    bound = _fraction(bound)
    top = _interval(Fraction(0), bound, d[n - 1])

    def branch(x):
        left = bound - d[n - 1] * x ** 2
        if n == 1:
            return [((x, ), bound - left)]
        return [(v, bound - rest)
                for v, rest in _enumerate(d, u, n - 2, (x, ), left)]

    vectors = []
    for part in parallel_map(branch, top, parallelism):
        vectors.extend((v, norm) for v, norm in part if any(v))
    return vectors


def count_roots(lattice, parallelism=None):
    """Return the number of roots: vectors of norm 2 (positive definite)
    or -2 (negative definite).

    :raise LatticeError: if the lattice is not definite
    """
    positive, negative, zero = signature(lattice.gram)
    if zero or (positive and negative):
        raise LatticeError('root enumeration requires definite lattice')
    gram = lattice.gram
    if negative:
        gram = [[-v for v in row] for row in gram]
    vectors = short_vectors(gram, 2, parallelism)
    count = sum(1 for _, norm in vectors if norm == 2)
    logger.debug('%s: %d roots', lattice.name, count)
    return count


def _common_denominator(vectors):
    den = 1
    for vector in vectors:
        for v in vector:
            den = sympy.ilcm(den, rational(v).q)
    return den


def integral_span(vectors):
    """Return a basis of the abelian group generated by rational vectors.

    The vectors are projected on the pivot coordinates of their span, an
    injective map on the span, where the Hermite normal form of the
    (full row rank) generator matrix gives the basis.

    :rtype: list[tuple[sympy.Rational]]
    """
    vectors = [[rational(v) for v in vector] for vector in vectors]
    if not vectors:
        return []
    reduced, pivots = rref(vectors)
    reduced = reduced[:len(pivots)]
    den = _common_denominator([[row[p] for p in pivots]
                               for row in vectors])
    columns = sympy.Matrix([[int(vector[p] * den) for p in pivots]
                            for vector in vectors]).T
    hnf = hermite_normal_form(columns)
    basis = []
    for j in range(hnf.cols):
        column = [sympy.Rational(hnf[i, j], den) for i in range(hnf.rows)]
        if not any(column):
            continue
        lifted = [sum(column[r] * reduced[r][c] for r in range(len(pivots)))
                  for c in range(len(vectors[0]))]
        basis.append(tuple(lifted))
    if len(basis) != len(pivots):
        raise LatticeError('unexpected Hermite normal form shape')
    return basis


def _gram_of(gram, vectors):
    n = len(gram)
    return [[sum(u[i] * gram[i][j] * v[j] for i in range(n) if u[i] != 0
                 for j in range(n) if v[j] != 0)
             for v in vectors] for u in vectors]


def span_lattice(vectors, ambient, labels=None, name=None):
    """Return the lattice generated by vectors of an ambient space.

    :param vectors: coordinate vectors in the ambient basis (or
        DivisorClass objects)
    :param ambient: GramLattice of the ambient space
    """
    vectors = [v.coordinates if isinstance(v, DivisorClass) else v
               for v in vectors]
    basis = integral_span(vectors)
    if labels is not None and len(labels) != len(basis):
        labels = None
    return GramLattice(_gram_of(ambient.gram, basis), labels, basis, name)


def overlattice(base, generators, name=None):
    """Extend a lattice by rational vectors.

    :param base: the lattice
    :param generators: vectors with rational coordinates in the basis of
        base
    :return: the lattice generated by base and the generators, with basis
        coordinates given in the basis of base
    :raise LatticeError: if a generator has a non-integral pairing with
        the base or another generator, or an odd norm when base is even
    """
    generators = [[rational(v) for v in g] for g in generators]
    n = base.rank
    units = [[int(i == j) for j in range(n)] for i in range(n)]
    for k, g in enumerate(generators):
        for i, e in enumerate(units):
            value = base.pairing(g, e)
            if value.q != 1:
                raise LatticeError('non-integral pairing %s between '
                                   'generator %d and %s'
                                   % (value, k, base.labels[i]))
        for l, h in enumerate(generators[:k + 1]):
            value = base.pairing(g, h)
            if value.q != 1:
                raise LatticeError('non-integral pairing %s between '
                                   'generators %d and %d' % (value, k, l))
        if base.is_even and base.norm(g) % 2 != 0:
            raise LatticeError('generator %d has odd norm %s'
                               % (k, base.norm(g)))
    basis = integral_span(units + generators)
    result = GramLattice(_gram_of(base.gram, basis), basis=basis,
                         name=name or base.name)
    if base.basis is not None:
        result.basis = [tuple(sum(c * b[k] for c, b in zip(vector,
                                                             base.basis))
                              for k in range(len(base.basis[0])))
                        for vector in basis]
    return result


def overlattice_index(base, extended):
    """Return [extended : base] from the discriminants."""
    ratio = disc_and_signature(base)[0] / disc_and_signature(extended)[0]
    index = sympy.sqrt(ratio)
    if not index.is_Integer:
        raise LatticeError('discriminant ratio %s is not a square' % ratio)
    return int(index)


def scale_and_sum(lattices, scalars=None):
    """Return the orthogonal sum of the lattices, each scaled.

    :param lattices: list of GramLattice
    :param scalars: list of scaling factors (default 1)
    """
    if scalars is None:
        scalars = [1] * len(lattices)
    if len(scalars) != len(lattices):
        raise LatticeError('%d scalars for %d lattices'
                           % (len(scalars), len(lattices)))
    n = sum(lat.rank for lat in lattices)
    gram = [[0] * n for _ in range(n)]
    labels = []
    names = []
    offset = 0
    for lat, alpha in zip(lattices, scalars):
        alpha = rational(alpha)
        for i in range(lat.rank):
            for j in range(lat.rank):
                gram[offset + i][offset + j] = alpha * lat.gram[i][j]
        labels.extend('%s.%s' % (lat.name, label) for label in lat.labels)
        names.append(lat.name if alpha == 1 else '%s(%s)' % (lat.name, alpha))
        offset += lat.rank
    return GramLattice(gram, labels, name='+'.join(names))


def reed_muller_codewords():
    """Return the 32 words of R(1, 4) as subsets of {0, ..., 15}.

    Point i of F_2^4 is the vector of the binary digits of i. The words are
    the supports of the affine functions a.x + b: the empty set, the whole
    set and the 30 affine hyperplanes.

    :rtype: list[frozenset]
    """
    words = []
    for a in range(16):
        for b in (0, 1):
            words.append(frozenset(
                x for x in range(16)
                if (bin(a & x).count('1') + b) % 2 == 1))
    return sorted(set(words), key=lambda w: (len(w), sorted(w)))


NAME_RE = re.compile(r'^([ADE])\(?(\d+)\)?$')


def named_lattice(name, scale=None):
    """Return a named lattice.

    :param name: A(n), D(n), E6, E7, E8 (positive definite), U, Nikulin,
        Kummer (negative definite) or Lambda166 (hyperbolic); the
        parentheses of A(n) and D(n) are optional
    :param scale: optional rational scaling factor
    :rtype: GramLattice
    :raise LatticeError: on unknown names or invalid parameters
    """
    lattice = _named_lattice(name.strip())
    if scale is not None and rational(scale) != 1:
        lattice = lattice.scaled(scale)
    return lattice


@memoize
def _named_lattice(name):
    match = NAME_RE.match(name)
    if match:
        kind, n = match.group(1), int(match.group(2))
        return GramLattice(dynkin_gram(n, root_lattice_edges(kind, n)),
                           name='%s%d' % (kind, n))
    key = name.lower()
    if key == 'u':
        return GramLattice([[0, 1], [1, 0]], ['e', 'f'], name='U')
    if key == 'nikulin':
        base = GramLattice(dynkin_gram(8, [], -2),
                           ['v%d' % i for i in range(1, 9)], name='Nikulin')
        return overlattice(base, [[sympy.Rational(1, 2)] * 8])
    if key == 'kummer':
        base = GramLattice(dynkin_gram(16, [], -2),
                           ['f%d' % i for i in range(1, 17)], name='Kummer')
        glue = [[sympy.Rational(int(i in word), 2) for i in range(16)]
                for word in reed_muller_codewords() if word]
        return overlattice(base, glue)
    if key in ('lambda166', 'lambda(16,6)'):
        ambient = ambient_lattice()
        ambient.basis = [tuple(int(i == j) for j in range(ambient.rank))
                         for i in range(ambient.rank)]
        return overlattice(ambient, [c.coordinates for c in trope_classes()],
                           name='Lambda166')
    raise LatticeError('unknown lattice %s' % name)


def lambda166():
    return named_lattice('Lambda166')


def contains(lattice, divisor):
    """Return True if divisor lies in a lattice whose basis is given in
    ambient coordinates."""
    if lattice.basis is None:
        raise LatticeError('lattice has no ambient basis')
    matrix = sympy.Matrix(lattice.basis).T
    vector = sympy.Matrix(divisor.coordinates)
    try:
        solution = matrix.solve(vector)
    except ValueError:
        return False
    return all(v.is_Integer for v in solution)


def _pairs_mismatch(classes, expected):
    """Compare the Gram matrix of classes with an expected one."""
    labels = list(classes.keys())
    mismatches = []
    for i, a in enumerate(labels):
        for j, b in enumerate(labels[i:], i):
            value = classes[a] * classes[b]
            if value != expected[i][j]:
                mismatches.append([a, b, value, expected[i][j]])
    return mismatches


# names of the diagram curves Q1..Q12 of the D9 + 6 A1 fibration
NARUKI_NAMES = ['C23', 'alpha(C23)', 'E23', 'C12', 'E26', 'C16', 'E16', 'C0',
                'E14', 'E15', 'C14', 'C15']

# Q13..Q24: the I2 fibers f6 + e6, f1 + e1, ..., f5 + e5
NARUKI_FIBER_ORDER = [6, 1, 2, 3, 4, 5]

NARUKI_D9_EDGES = [(1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8),
                   (8, 9), (8, 10)]
NARUKI_D9_MULTIPLICITIES = [1, 1, 2, 2, 2, 2, 2, 2, 1, 1]

# E8 copy of the image of S, N1, ..., N6, N0, listed along the chain with
# the last class attached to the fifth one
NARUKI_E8_COPY = ['C12', 'E26', 'C16', 'E16', 'C0', 'E14', 'C14', 'E15']


def _lincomb(terms):
    total = DivisorClass([0] * len(AMBIENT_LABELS))
    for coefficient, divisor in terms:
        total = total + coefficient * divisor
    return total


def _es(*pairs):
    return [(1, E(i, j)) for i, j in pairs]


def naruki_e_classes():
    """Return {i: e_i} for i = 1..6."""
    h = L - E0
    e = OrderedDict()
    e[1] = h - _lincomb(_es((1, 2), (4, 6)))
    e[2] = 2 * h - _lincomb(_es((1, 2), (1, 3), (2, 4), (4, 6), (5, 6)))
    e[3] = (3 * h - 2 * E(1, 2)
            - _lincomb(_es((1, 3), (2, 4), (3, 6), (4, 5), (4, 6), (5, 6))))
    e[4] = (4 * h - 2 * _lincomb(_es((1, 2), (1, 3), (4, 6)))
            - _lincomb(_es((2, 4), (2, 5), (3, 6), (4, 5), (5, 6))))
    e[5] = (5 * h - 3 * E(1, 2) - 2 * _lincomb(_es((1, 3), (4, 6), (5, 6)))
            - _lincomb(_es((2, 4), (2, 5), (3, 4), (3, 6), (4, 5))))
    e[6] = E(3, 5)
    for i in e:
        e[i] = e[i].named('e%d' % i)
    return e


def naruki_f_classes():
    """Return {i: f_i} for i = 1..5 as displayed (f6 = F - e6)."""
    h = L - E0
    f = OrderedDict()
    f[1] = (4 * h - 2 * _lincomb(_es((1, 2), (1, 3), (5, 6)))
            - _lincomb(_es((2, 4), (2, 5), (3, 6), (4, 5), (4, 6))))
    f[2] = (3 * h - 2 * E(1, 2)
            - _lincomb(_es((1, 3), (2, 5), (3, 6), (4, 5), (4, 6), (5, 6))))
    f[3] = 2 * h - _lincomb(_es((1, 2), (1, 3), (2, 5), (4, 6), (5, 6)))
    f[4] = h - _lincomb(_es((1, 2), (5, 6)))
    f[5] = E(3, 4)
    for i in f:
        f[i] = f[i].named('f%d' % i)
    return f


def naruki_fiber():
    """Return the fiber class F of the D9 + 6 A1 fibration."""
    h = L - E0
    return (5 * h - 3 * E(1, 2) - 2 * _lincomb(_es((1, 3), (4, 6), (5, 6)))
            - _lincomb(_es((2, 4), (2, 5), (3, 6), (4, 5)))).named('F')


@memoize
def naruki_identification():
    """Return the ordered mapping Q1..Q24 -> DivisorClass."""
    c23 = trope_class((1, 2, 3))
    named = {'C23': c23,
             'alpha(C23)': (c23 + L - 2 * E0).named('alpha(C23)'),
             'C12': trope_class((2, )), 'C16': trope_class((6, )),
             'C0': trope_class((1, )), 'C14': trope_class((4, )),
             'C15': trope_class((5, ))}
    for i, j in PAIRS:
        named['E%d%d' % (i, j)] = E(i, j)
    classes = OrderedDict()
    for k, name in enumerate(NARUKI_NAMES, 1):
        classes['Q%d' % k] = named[name].named(name)
    e = naruki_e_classes()
    fiber = naruki_fiber()
    for k, i in enumerate(NARUKI_FIBER_ORDER):
        classes['Q%d' % (13 + 2 * k)] = (fiber - e[i]).named('f%d' % i)
        classes['Q%d' % (14 + 2 * k)] = e[i]
    return classes


def naruki_expected_gram():
    """Return the Gram matrix of Q1..Q24 read off the fibration diagram."""
    n = 24
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = -2
    edges = list(NARUKI_D9_EDGES)
    edges += [(11, 9), (12, 10)]
    for k in range(6):
        f, e = 13 + 2 * k, 14 + 2 * k
        edges += [(11, f), (12, e)]
        gram[f - 1][e - 1] = gram[e - 1][f - 1] = 2
    for i, j in edges:
        gram[i - 1][j - 1] = gram[j - 1][i - 1] = 1
    return gram


def _result_with_mismatches(name, mismatches, msg_ok):
    result = CheckResult(name)
    result.check(not mismatches, msg_ok, '%d mismatches' % len(mismatches))
    if mismatches:
        result.add_witness('mismatches', mismatches)
    return result


def verify_naruki(classes=None):
    """Verify the identification of the fibration diagram with classes of
    Lambda(16, 6).

    :rtype: list[CheckResult]
    """
    if classes is None:
        classes = naruki_identification()
    by_name = dict((c.label, c) for c in classes.values())
    fiber = naruki_fiber()
    e = naruki_e_classes()
    f_display = naruki_f_classes()
    results = []

    mismatches = [[label, c.norm] for label, c in classes.items()
                  if c.norm != -2]
    if fiber.norm != 0:
        mismatches.append(['F', fiber.norm])
    results.append(_result_with_mismatches(
        'norms', mismatches, 'all classes have norm -2 and F^2 = 0'))

    results.append(_result_with_mismatches(
        'diagram', _pairs_mismatch(classes, naruki_expected_gram()),
        'Gram matrix matches the D9 + 6 A1 diagram'))

    mismatches = []
    for i in range(1, 7):
        f = by_name['f%d' % i]
        if e[i] + f != fiber:
            mismatches.append(['e%d + f%d' % (i, i), str(e[i] + f)])
        if i in f_display and f_display[i] != f:
            mismatches.append(['f%d' % i, str(f_display[i])])
        if e[i] * f != 2:
            mismatches.append(['e%d.f%d' % (i, i), e[i] * f])
    results.append(_result_with_mismatches(
        'fiber pairs', mismatches, 'e_i + f_i = F and e_i.f_i = 2'))

    components = _lincomb(zip(NARUKI_D9_MULTIPLICITIES,
                              [classes['Q%d' % k] for k in range(1, 11)]))
    result = CheckResult('fiber class')
    result.check(components == fiber, 'D9 fiber equals F',
                 'D9 fiber differs from F')
    result.add_witness('difference', str(components - fiber))
    results.append(result)

    copy = [by_name[name] for name in NARUKI_E8_COPY]
    expected = dynkin_gram(8, _chain(7) + [(4, 7)], -2)
    gram = [[a * b for b in copy] for a in copy]
    mismatches = [[NARUKI_E8_COPY[i], NARUKI_E8_COPY[j], gram[i][j],
                   expected[i][j]]
                  for i in range(8) for j in range(i, 8)
                  if gram[i][j] != expected[i][j]]
    results.append(_result_with_mismatches('E8 copy', mismatches,
                                           'Gram matrix is E8(-1)'))

    octet = [classes['Q%d' % k] for k in (14, 16, 18, 20, 22, 24, 1, 2)]
    mismatches = []
    for i, a in enumerate(octet):
        for b in octet[i:]:
            value = a * b
            if value != (-2 if a is b else 0):
                mismatches.append([a.label, b.label, value])
        for b in copy:
            if a * b != 0:
                mismatches.append([a.label, b.label, a * b])
    results.append(_result_with_mismatches(
        'orthogonal octet', mismatches,
        'eight orthogonal roots orthogonal to the E8 copy'))

    results.append(verify_alpha())

    lattice = lambda166()
    outside = [label for label, c in classes.items()
               if not contains(lattice, c)]
    results.append(_result_with_mismatches(
        'Lambda166 membership', outside, 'all classes lie in Lambda(16,6)'))

    results.extend(trivial_lattice_checks(classes))
    return results


def verify_alpha():
    """Check that alpha is an involutive isometry preserving Lambda(16,6)
    and sending C23 to C23 + L - 2E0."""
    result = CheckResult('alpha isometry')
    a = alpha_matrix()
    gram = ambient_lattice().matrix()
    lattice = lambda166()
    preserved = all(contains(lattice, alpha_isometry(DivisorClass(b)))
                    for b in lattice.basis)
    c23 = trope_class((1, 2, 3))
    image = alpha_isometry(c23) == c23 + L - 2 * E0
    isometry = a.T * gram * a == gram
    involution = a * a == sympy.eye(a.rows)
    result.check(isometry and involution and preserved and image,
                 'involutive isometry of Lambda(16,6)',
                 'alpha is not an involutive isometry of Lambda(16,6)')
    result.add_witness('isometry', isometry)
    result.add_witness('involution', involution)
    result.add_witness('preserves_lattice', preserved)
    result.add_witness('alpha_C23', image)
    return result


def trivial_lattice_checks(classes):
    """Discriminant of the trivial lattice of the D9 + 6 A1 fibration,
    without and with the 2-torsion section."""
    fiber = naruki_fiber()
    # O, F, the D9 components not meeting O, the e_i
    generators = ([classes['Q11'], fiber]
                  + [classes['Q%d' % k] for k in (1, 2, 3, 4, 5, 6, 7, 8, 10)]
                  + [classes['Q%d' % k] for k in range(14, 25, 2)])
    gram = [[a * b for b in generators] for a in generators]
    trivial = GramLattice(gram, name='trivial')
    disc, sig = disc_and_signature(trivial)
    results = []
    result = CheckResult('trivial lattice')
    result.check(disc == 4 * 2 ** 6 and sig == (1, 16, 0),
                 'discriminant 4 * 2^6', 'discriminant %s' % disc)
    result.add_witness('discriminant', disc)
    result.add_witness('signature', list(sig))
    results.append(result)

    extended = span_lattice(generators + [classes['Q12']], ambient_lattice(),
                            name='trivial+T')
    disc, sig = disc_and_signature(extended)
    result = CheckResult('trivial lattice with torsion')
    result.check(disc == 2 ** 6 and sig == (1, 16, 0),
                 'discriminant 2^6', 'discriminant %s' % disc)
    result.add_witness('discriminant', disc)
    results.append(result)
    return results


def naruki_classes():
    """Return (Q label -> DivisorClass, verification results)."""
    classes = naruki_identification()
    return classes, verify_naruki(classes)


# smooth rational curves of the E8 + E7 surface
X_CURVES = (['R%d' % i for i in range(9)] + ['S']
            + ['N%d' % i for i in range(8)] + ['A'])

X_EDGES = [('R0', 'R3'), ('R3', 'R2'), ('R2', 'R1'), ('R1', 'A'),
           ('R3', 'R4'), ('R4', 'R5'), ('R5', 'R6'), ('R6', 'R7'),
           ('R7', 'R8'), ('R8', 'S'), ('S', 'N1'), ('N1', 'N2'),
           ('N2', 'N3'), ('N3', 'N4'), ('N4', 'N0'), ('N4', 'N5'),
           ('N5', 'N6'), ('N6', 'N7')]

# A and N7 meet with multiplicity 2
X_DOUBLE_EDGES = [('A', 'N7')]

X_E8_FIBER = {'R8': 1, 'R7': 2, 'R6': 3, 'R5': 4, 'R4': 5, 'R3': 6, 'R2': 4,
              'R1': 2, 'R0': 3}
X_E7_FIBER = {'N7': 1, 'N6': 2, 'N5': 3, 'N4': 4, 'N3': 3, 'N2': 2, 'N1': 1,
              'N0': 2}
X_D14_FIBER = dict([('R0', 1), ('R2', 1), ('N0', 1), ('N5', 1)]
                   + [(c, 2) for c in ['R3', 'R4', 'R5', 'R6', 'R7', 'R8',
                                       'S', 'N1', 'N2', 'N3', 'N4']])
X_I2_FIBER = {'A': 1, 'N7': 1}

# the Nikulin involution on the curves
X_REFLECTION = dict([('R0', 'N0'), ('R2', 'N5'), ('R1', 'N6'), ('A', 'N7'),
                     ('R3', 'N4'), ('R4', 'N3'), ('R5', 'N2'), ('R6', 'N1'),
                     ('R7', 'S'), ('R8', 'R8')])
for _key, _value in list(X_REFLECTION.items()):
    X_REFLECTION[_value] = _key

X_BASIS = (['S'] + ['R%d' % i for i in range(9)] + ['N0']
           + ['N%d' % i for i in range(2, 8)])

X_E8_COPIES = (['S', 'N1', 'N2', 'N3', 'N4', 'N0', 'N5', 'N6'],
               ['R7', 'R6', 'R5', 'R4', 'R3', 'R0', 'R2', 'R1'])


def x_diagram_lattice():
    """Return the (degenerate) intersection form on the 19 curves."""
    index = dict((c, i) for i, c in enumerate(X_CURVES))
    gram = dynkin_gram(len(X_CURVES), [], -2)
    for a, b in X_EDGES:
        gram[index[a]][index[b]] = gram[index[b]][index[a]] = 1
    for a, b in X_DOUBLE_EDGES:
        gram[index[a]][index[b]] = gram[index[b]][index[a]] = 2
    return GramLattice(gram, X_CURVES, name='X-curves')


def _vector(terms):
    return [terms.get(c, 0) for c in X_CURVES]


def _in_radical(lattice, vector):
    return all(lattice.pairing(vector, unit) == 0
               for unit in ([int(i == j) for j in range(lattice.rank)]
                            for i in range(lattice.rank)))


def x_diagram_classes():
    """Verify the curve configuration of the E8 + E7 surface.

    :return: (curve lattice, list of CheckResult)
    """
    lattice = x_diagram_lattice()
    results = []
    e8 = _vector(X_E8_FIBER)
    e7 = _vector(X_E7_FIBER)
    d14 = _vector(X_D14_FIBER)
    i2 = _vector(X_I2_FIBER)

    result = CheckResult('E8 and E7 fibers')
    difference = [a - b for a, b in zip(e8, e7)]
    result.check(lattice.norm(e8) == 0 and lattice.norm(e7) == 0
                 and not _in_radical(lattice, e8)
                 and _in_radical(lattice, difference),
                 'isotropic and numerically equal',
                 'E8 and E7 fiber classes differ')
    result.add_witness('sections', dict(
        (c, lattice.pairing(e8, _vector({c: 1}))) for c in ('S', 'A')))
    results.append(result)

    result = CheckResult('D14 and I2 fibers')
    difference = [a - b for a, b in zip(d14, i2)]
    result.check(lattice.norm(d14) == 0 and _in_radical(lattice, difference),
                 'D14 fiber equals A + N7', 'D14 fiber differs from A + N7')
    result.add_witness('zero_section_N6',
                       lattice.pairing(d14, _vector({'N6': 1})))
    result.add_witness('torsion_section_R1',
                       lattice.pairing(d14, _vector({'R1': 1})))
    results.append(result)

    result = CheckResult('reflection')
    index = dict((c, i) for i, c in enumerate(X_CURVES))
    bad = [[a, b] for a in X_CURVES for b in X_CURVES
           if lattice.gram[index[a]][index[b]]
           != lattice.gram[index[X_REFLECTION[a]]][index[X_REFLECTION[b]]]]
    swapped = [X_REFLECTION[c] for c in X_E8_COPIES[0]]
    result.check(not bad and sorted(swapped) == sorted(X_E8_COPIES[1]),
                 'isometry swapping the two E8 copies',
                 '%d pairings not preserved' % len(bad))
    if bad:
        result.add_witness('mismatches', bad)
    results.append(result)

    result = CheckResult('E8 copies')
    expected = dynkin_gram(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
                               (4, 6), (6, 7)], -2)
    ok = True
    for copy in X_E8_COPIES:
        gram = [[lattice.gram[index[a]][index[b]] for b in copy]
                for a in copy]
        ok = ok and gram == expected
    result.check(ok, 'two copies of E8(-1)', 'E8 copy Gram mismatch')
    results.append(result)

    basis = [index[c] for c in X_BASIS]
    sub = GramLattice([[lattice.gram[i][j] for j in basis] for i in basis],
                      X_BASIS, name='NS(X)')
    disc, sig = disc_and_signature(sub)
    result = CheckResult('Neron-Severi basis')
    result.check(disc == 2 and sig == (1, 16, 0),
                 'signature (1,16), discriminant 2',
                 'signature %s, discriminant %s' % (sig, disc))
    result.add_witness('discriminant', disc)
    result.add_witness('signature', list(sig))
    results.append(result)
    return lattice, results


def _expected_root_data():
    """Yield (name, roots, discriminant) of the standard root lattices."""
    yield 'E8', 240, 1
    yield 'E7', 126, 2
    yield 'E6', 72, 3
    for n in range(4, 11):
        yield 'D%d' % n, 2 * n * (n - 1), 4
    for n in range(1, 11):
        yield 'A%d' % n, n * (n + 1), n + 1
    yield 'Nikulin', 16, 2 ** 6


def lattice_data_suite(parallelism=None):
    """Check root counts, discriminants and signatures of the named
    lattices and of the Neron-Severi and K3 lattices.

    :return: list of CheckResult
    """
    results = []
    bad = []
    table = OrderedDict()
    for name, roots, disc in _expected_root_data():
        lattice = named_lattice(name)
        found_roots = count_roots(lattice, parallelism)
        found_disc, _ = disc_and_signature(lattice)
        table[name] = {'roots': found_roots, 'disc': found_disc}
        if found_roots != roots or found_disc != disc:
            bad.append({'name': name, 'roots': found_roots,
                        'disc': found_disc})
    result = CheckResult('root lattices')
    result.check(not bad, '%d lattices' % len(table),
                 '%d lattices differ' % len(bad))
    result.add_witness('table', table)
    if bad:
        result.add_witness('failures', bad)
    results.append(result)

    e8, e7, u = named_lattice('E8'), named_lattice('E7'), named_lattice('U')
    expected = [('Kummer', named_lattice('Kummer'), 2 ** 6, (0, 16, 0)),
                ('Lambda166', lambda166(), 2 ** 6, (1, 16, 0)),
                ('U+E8(-1)+E7(-1)', scale_and_sum([u, e8, e7], [1, -1, -1]),
                 2, (1, 16, 0)),
                ('E8(-1)^2+U^3', scale_and_sum([e8, e8, u, u, u],
                                               [-1, -1, 1, 1, 1]),
                 1, (3, 19, 0))]
    for name, lattice, disc, sign in expected:
        found = disc_and_signature(lattice)
        result = CheckResult(name)
        result.check(found == (disc, sign),
                     'disc %s, signature %s' % (disc, sign[:2]),
                     'disc %s, signature %s' % (found[0], found[1]))
        result.add_witness('disc', found[0])
        result.add_witness('signature', list(found[1]))
        results.append(result)
    return results
