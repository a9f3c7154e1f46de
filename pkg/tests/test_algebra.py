import random

import mpmath
import pytest
import sympy

from k3python.algebra import (AlgebraError, coefficients, complex_roots,
                              discriminant, evaluate, format_rational,
                              mpoly, nullspace, rational, resultant,
                              solve_linear, square_root, squarefree_factor,
                              substitute, upoly)

x, t = sympy.symbols('x t')


def test_rational_parsing():
    assert rational('-6/4') == sympy.Rational(-3, 2)
    assert rational('−2') == -2
    assert rational('0.25') == sympy.Rational(1, 4)
    assert format_rational(rational('10/5')) == '2'
    with pytest.raises(AlgebraError):
        rational('x')
    with pytest.raises(AlgebraError):
        rational(0.5)


def test_squarefree_factor():
    scalar, factors = squarefree_factor(upoly([1, -2, 1], t))
    assert scalar == 1
    assert factors == [(upoly([-1, 1], t), 2)]

    scalar, factors = squarefree_factor(upoly([0, -1, 0, 1], t))
    assert scalar == 1
    assert factors == [(upoly([0, -1, 0, 1], t), 1)]

    scalar, factors = squarefree_factor(upoly([0, 0, -4, 0, 4], t))
    assert scalar == 4
    assert factors == [(upoly([0, 1], t), 2), (upoly([-1, 0, 1], t), 1)]

    with pytest.raises(AlgebraError):
        squarefree_factor(upoly([0], t))


def test_resultant():
    assert resultant(upoly([-2, 1], x), upoly([-3, 1], x)) == -1
    assert resultant(upoly([-1, 0, 1], x), upoly([0, 1], x)) == -1
    assert resultant(upoly([1, 1, 0, 1], x), upoly([1, 0, 3], x)) == 31
    with pytest.raises(AlgebraError):
        resultant(upoly([1, 1], x), upoly([1, 1], t))


def test_resultant_antisymmetry():
    p = upoly([1, 2, 0, 1], x)
    q = upoly([3, 0, 1], x)
    sign = (-1) ** (p.degree() * q.degree())
    assert resultant(p, q) == sign * resultant(q, p)


def test_discriminant():
    assert discriminant(upoly([1, 3, 1], x)) == 5
    assert discriminant(upoly([0, -1, 0, 1], x)) == 4
    assert discriminant(upoly([1, 0, 0, 0, 0, 0, 1], x)) == -46656
    assert discriminant(upoly([-1, 0, 0, 0, 0, 0, 1], x)) == 46656
    with pytest.raises(AlgebraError):
        discriminant(upoly([1, 1], x))


def test_complex_roots():
    roots = complex_roots(upoly([1, 0, 1], x), 30)
    assert len(roots) == 2
    with mpmath.workdps(30):
        for expected in (1j, -1j):
            assert min(abs(r - expected) for r in roots) < 1e-28

    roots = complex_roots(upoly([-1, 3, -3, 1], x), 30)
    assert roots == [mpmath.mpc(1)] * 3

    p = upoly([-1, -1, 0, 0, 0, 0, 1], x)
    roots = complex_roots(p, 50)
    assert len(roots) == 6
    with mpmath.workdps(60):
        for r in roots:
            assert abs(evaluate(p, [r])) < mpmath.mpf(10) ** -45


def test_substitute():
    p = upoly([1, 0, 1], x)
    assert substitute(p, {x: t ** 2}) == upoly([1, 0, 0, 0, 1], t)
    q = mpoly(x ** 2 + t, (x, t))
    assert substitute(q, {x: x, t: t}).as_expr() == q.as_expr()
    num, den = substitute(p, {x: (upoly([1], t), upoly([0, 1], t))})
    assert num == upoly([1, 0, 1], t)
    assert den == upoly([0, 0, 1], t)
    with pytest.raises(AlgebraError):
        substitute(p, {t: x})


def test_square_root():
    root = upoly([1, 2], x)
    scalar, found = square_root(root ** 2 * 3)
    assert scalar == 12
    assert found * found * scalar == root ** 2 * 3
    assert square_root(upoly([1, 0, 1], x)) is None


def test_linear_algebra():
    assert nullspace([[1, 1, 0], [0, 0, 1]]) == [[-1, 1, 0]]
    assert len(nullspace([], 3)) == 3
    assert solve_linear([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    with pytest.raises(AlgebraError):
        solve_linear([[1, 1], [2, 2]], [1, 3])
    with pytest.raises(AlgebraError):
        solve_linear([[1, 1], [2, 2]], [1, 2])


def test_coefficients_and_evaluate():
    p = upoly(['1/2', 0, 3], x)
    assert coefficients(p) == [sympy.Rational(1, 2), 0, 3]
    assert evaluate(p, [rational('1/3')]) == sympy.Rational(5, 6)


def test_empty_systems():
    with pytest.raises(AlgebraError):
        nullspace([])
    with pytest.raises(AlgebraError):
        solve_linear([], [])
    assert nullspace([], 2) == [[1, 0], [0, 1]]


def random_poly(rng, degree, var=x):
    coeffs = [sympy.Rational(rng.randint(-9, 9), rng.randint(1, 5))
              for _ in range(degree)]
    return upoly(coeffs + [rng.choice([-3, -1, 1, 2])], var)


def test_substitute_is_a_ring_homomorphism():
    rng = random.Random(3)
    for _ in range(10):
        p = random_poly(rng, rng.randint(1, 4))
        q = random_poly(rng, rng.randint(1, 4))
        image = random_poly(rng, rng.randint(1, 3), t)
        bindings = {x: image}
        assert (substitute(p * q, bindings)
                == substitute(p, bindings) * substitute(q, bindings))
        assert (substitute(p + q, bindings)
                == substitute(p, bindings) + substitute(q, bindings))


def test_discriminant_detects_repeated_factors():
    rng = random.Random(4)
    for trial in range(20):
        factors = [random_poly(rng, rng.randint(1, 2))
                   for _ in range(rng.randint(1, 3))]
        p = upoly([1], x)
        for factor in factors:
            p = p * factor
        if trial % 2:
            p = p * factors[0]
            assert discriminant(p) == 0
        if p.degree() < 2:
            continue
        _, parts = squarefree_factor(p)
        repeated = any(m > 1 for _, m in parts)
        assert (discriminant(p) == 0) == repeated


def test_complex_roots_rebuild_the_coefficients():
    rng = random.Random(5)
    digits = 40
    for _ in range(8):
        p = random_poly(rng, rng.randint(2, 7))
        roots = complex_roots(p, digits)
        assert len(roots) == p.degree()
        with mpmath.workdps(digits + 10):
            rebuilt = [mpmath.mpc(1)]
            for r in roots:
                shifted = [mpmath.mpc(0)] + rebuilt
                for i, c in enumerate(rebuilt):
                    shifted[i] -= r * c
                rebuilt = shifted
            lc = coefficients(p)[-1]
            for c, expected in zip(rebuilt, coefficients(p)):
                value = mpmath.mpf(expected.p) / expected.q
                error = abs(mpmath.mpf(lc.p) / lc.q * c - value)
                assert error <= mpmath.mpf(10) ** (-digits // 2) * max(
                    1, abs(value))
