import random

import pytest
import sympy

from k3python.lattices import (AMBIENT_LABELS, E, E0, L, DivisorClass,
                               GramLattice, LatticeError, alpha_isometry,
                               ambient_lattice, contains, count_roots,
                               disc_and_signature, integral_span, lambda166,
                               lattice_data_suite, named_lattice,
                               naruki_classes, naruki_fiber, overlattice,
                               overlattice_index, reed_muller_codewords,
                               scale_and_sum, short_vectors, signature,
                               span_lattice, trope_class, trope_classes,
                               verify_alpha, x_diagram_classes)


@pytest.mark.parametrize('name, roots, disc', [
    ('E8', 240, 1), ('E7', 126, 2), ('E6', 72, 3), ('D4', 24, 4),
    ('D(7)', 84, 4), ('A1', 2, 2), ('A(5)', 30, 6), ('Nikulin', 16, 64)])
def test_root_lattices(name, roots, disc):
    lattice = named_lattice(name)
    assert count_roots(lattice) == roots
    assert disc_and_signature(lattice)[0] == disc


def test_signatures():
    assert disc_and_signature(named_lattice('E8')) == (1, (8, 0, 0))
    assert signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert signature([[0, 0], [0, 1]]) == (1, 0, 1)
    assert disc_and_signature(named_lattice('Kummer')) == (64, (0, 16, 0))
    assert disc_and_signature(lambda166()) == (64, (1, 16, 0))


def test_orthogonal_sums():
    e8, e7, u = named_lattice('E8'), named_lattice('E7'), named_lattice('U')
    ns = scale_and_sum([u, e8, e7], [1, -1, -1])
    assert disc_and_signature(ns) == (2, (1, 16, 0))
    k3 = scale_and_sum([e8, e8, u, u, u], [-1, -1, 1, 1, 1])
    assert disc_and_signature(k3) == (1, (3, 19, 0))


def test_indefinite_roots():
    with pytest.raises(LatticeError):
        count_roots(named_lattice('U'))
    with pytest.raises(LatticeError):
        named_lattice('F4')


def test_short_vectors():
    vectors = short_vectors([[2, 1], [1, 2]], 2)
    assert sorted(v for v, _ in vectors) == sorted(
        [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)])


def test_reed_muller():
    words = reed_muller_codewords()
    assert len(words) == 32
    assert sorted(set(len(w) for w in words)) == [0, 8, 16]


def test_overlattice():
    base = GramLattice([[-2, 0], [0, -2]])
    with pytest.raises(LatticeError):
        overlattice(base, [[sympy.Rational(1, 2), 0]])
    a1 = GramLattice([[2, 0], [0, 2]])
    with pytest.raises(LatticeError):
        overlattice(a1, [[sympy.Rational(1, 2), sympy.Rational(1, 2)]])
    nikulin = named_lattice('Nikulin')
    base = GramLattice([[-2 * int(i == j) for j in range(8)]
                        for i in range(8)])
    assert overlattice_index(base, nikulin) == 2


def test_integral_span():
    basis = integral_span([[2, 0], [0, 2], [1, 1]])
    lattice = span_lattice(basis, GramLattice([[1, 0], [0, 1]]))
    assert disc_and_signature(lattice)[0] == 4


def test_divisor_classes():
    h = L - E0
    assert str(h) == 'L - E0'
    assert h.norm == 2
    assert str(DivisorClass.from_terms({'L': 2, 'E12': -3})) == '2*L - 3*E12'
    assert E(2, 1) == E(1, 2)
    assert len(AMBIENT_LABELS) == 17
    for c in trope_classes():
        assert c.norm == -2
    c23 = trope_class((1, 2, 3))
    assert trope_class((4, 5, 6)) == c23
    assert c23 * trope_class((2, )) == 0


def test_lambda166_membership():
    lattice = lambda166()
    for c in trope_classes():
        assert contains(lattice, c)
    assert contains(lattice, L)
    assert not contains(lattice, L / 2)
    with pytest.raises(LatticeError):
        contains(ambient_lattice(), L)


def test_alpha():
    assert verify_alpha()
    c23 = trope_class((1, 2, 3))
    assert alpha_isometry(alpha_isometry(c23)) == c23
    assert alpha_isometry(L).norm == L.norm


def test_naruki():
    classes, results = naruki_classes()
    assert len(classes) == 24
    assert all(results), [str(r) for r in results]
    assert naruki_fiber().norm == 0


def test_x_diagram():
    lattice, results = x_diagram_classes()
    assert all(results), [str(r) for r in results]


def test_data_suite():
    assert all(lattice_data_suite())


def unimodular(rng, n, steps=8):
    matrix = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-1, 1, 2])
        for row in matrix:
            row[i] += k * row[j]
    i, j = rng.sample(range(n), 2)
    for row in matrix:
        row[i], row[j] = row[j], row[i]
    return matrix


@pytest.mark.parametrize('name, roots', [
    ('A(3)', 12), ('D4', 24), ('E6', 72), ('Nikulin', 16)])
def test_roots_under_change_of_basis(name, roots):
    lattice = named_lattice(name)
    rng = random.Random(name)
    change = unimodular(rng, lattice.rank)
    assert abs(sympy.Matrix(change).det()) == 1
    transformed = lattice.transformed(change)
    assert transformed.rank == lattice.rank
    assert disc_and_signature(transformed) == disc_and_signature(lattice)
    assert count_roots(transformed) == roots
