import random

import mpmath
import pytest
import sympy

from k3python.algebra import square_root, substitute
from k3python.invariants import GenusTwoCurve
from k3python.kummer import (KummerError, build_kummer,
                             completed_square_identity, nodes_and_tropes,
                             projection_involution, random_point,
                             trope_product_identity, verify_configuration,
                             z1, z2, z3, z4)


def reference_curve():
    return GenusTwoCurve.from_roots(range(6))


def test_x6_plus_1_coefficients():
    quartic = build_kummer(GenusTwoCurve.from_coefficients(
        [1, 0, 0, 0, 0, 0, 1]))
    assert quartic.K1.as_expr() == -4 * z1 ** 3 - 4 * z3 ** 3
    assert quartic.K2.as_expr() == z2 ** 2 - 4 * z1 * z3


def test_symbolic_quartic():
    quartic = build_kummer('symbolic')
    f0 = sympy.Symbol('f0')
    k0 = quartic.K0.as_expr().subs(f0, 0)
    assert f0 not in sympy.expand(k0).free_symbols
    assert completed_square_identity(quartic)
    with pytest.raises(KummerError):
        build_kummer([1, 2, 3])


def test_nodes_and_tropes():
    curve = reference_curve()
    nodes, tropes = nodes_and_tropes(curve)
    assert len(nodes) == 16 and len(tropes) == 16
    assert nodes[0].coordinates == (0, 0, 0, 1)
    p12 = nodes[1]
    assert p12.label == 'p12'
    h = curve.f.quo(sympy.Poly(GenusTwoCurve.x ** 2 - GenusTwoCurve.x,
                               GenusTwoCurve.x))
    assert p12.coordinates == (1, 1, 0, -h.eval(0))
    assert tropes[0].form.as_expr() == z3


def test_reference_configuration():
    curve = reference_curve()
    quartic = build_kummer(curve)
    nodes, tropes = nodes_and_tropes(curve)
    results = verify_configuration(quartic, nodes, tropes)
    assert all(results), [str(r) for r in results]
    product = trope_product_identity(quartic, tropes)
    assert product.witnesses['c'] == {'exact': '4'}


def test_trope_restriction_is_square():
    quartic = build_kummer(reference_curve())
    restricted = substitute(quartic.quartic(), {z3: 0},
                            gens=(z1, z2, z4))
    assert square_root(restricted) is not None


def test_nodal_model_requires_distinct_roots():
    with pytest.raises(KummerError):
        nodes_and_tropes(GenusTwoCurve.from_roots([0, 0, 1, 2, 3, 4]))
    with pytest.raises(KummerError):
        nodes_and_tropes(GenusTwoCurve.from_coefficients(
            [1, 0, 0, 0, 0, 0, 1]))


def test_projection_involution():
    quartic = build_kummer(reference_curve())
    rng = random.Random(5)
    with mpmath.workdps(60):
        point = random_point(quartic, rng)
        image = projection_involution(quartic, point)
        assert abs(quartic.evaluate(image)) < mpmath.mpf(10) ** -40
        back = projection_involution(quartic, image)
        assert all(abs(a - b) < mpmath.mpf(10) ** -40
                   for a, b in zip(point, back))
    with pytest.raises(KummerError):
        projection_involution(quartic, (1, 0, 0, 0))


def test_non_monic_configuration():
    curve = GenusTwoCurve.from_roots([-2, -1, 0, 1, 3, sympy.Rational(1, 2)],
                                     sympy.Rational(-2, 3))
    assert curve.leading == sympy.Rational(-2, 3)
    quartic = build_kummer(curve)
    nodes, tropes = nodes_and_tropes(curve)
    assert len(nodes) == 16 and len(tropes) == 16
    results = verify_configuration(quartic, nodes, tropes)
    assert all(results), [str(r) for r in results]
