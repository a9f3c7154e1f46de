import random

import pytest
import sympy

from k3python.algebra import discriminant, upoly
from k3python.invariants import (GenusTwoCurve, IgusaClebsch,
                                 InvariantsError, absolute_invariants,
                                 default_normalization, ic_from_coeffs,
                                 ic_from_roots, ic_weighted_equal,
                                 mobius_check, mobius_transform,
                                 oracle_check, random_rooted_curve, twist,
                                 weighted_scale)

x = GenusTwoCurve.x


def reference_curve():
    return GenusTwoCurve.from_roots(range(6))


def test_repeated_root_kills_i10():
    assert ic_from_roots(1, [0, 0, 1, 2, 3, 4]).I10 == 0
    f = GenusTwoCurve.from_roots([0, 0, 1, 2, 3, 4])
    assert ic_from_coeffs(f).I10 == 0


def test_reference_curve():
    curve = reference_curve()
    from_roots = ic_from_roots(1, list(range(6)))
    assert from_roots.I10 == discriminant(curve.f)
    assert ic_from_coeffs(curve) == from_roots


def test_x6_plus_1():
    ic = ic_from_coeffs(upoly([1, 0, 0, 0, 0, 0, 1], x))
    assert ic.I10 == -46656
    assert all(isinstance(v, sympy.Rational) for v in ic)


def test_scaled_roots_are_weighted_equal():
    roots = [1, 2, 3, 5, 7, 11]
    a = ic_from_roots(1, roots)
    b = ic_from_roots(1, [3 * r for r in roots])
    assert ic_weighted_equal(a, b)
    assert weighted_scale(a, b) == 27


def test_weighted_equality():
    a = IgusaClebsch(1, 2, 3, 4)
    assert ic_weighted_equal(a, a.scaled(3))
    assert not ic_weighted_equal(IgusaClebsch(1, 1, 1, 1),
                                 IgusaClebsch(1, 1, 1, 2))


def test_translation_is_weighted_equal():
    curve = GenusTwoCurve.from_coefficients([1, 0, 2, 0, 0, 3, 1])
    shifted = mobius_transform(curve, 1, 1, 0, 1)
    assert ic_weighted_equal(ic_from_coeffs(curve), ic_from_coeffs(shifted))


def test_quintic_matches_roots():
    curve = GenusTwoCurve.from_roots([0, 1, 2, 3, 4, None], 2)
    assert curve.degree == 5
    assert ic_from_coeffs(curve) == ic_from_roots(2, curve.roots)


def test_twist_and_absolute_invariants():
    curve = reference_curve()
    ic = ic_from_coeffs(curve)
    twisted = ic_from_coeffs(twist(curve, 3))
    assert weighted_scale(ic, twisted) == 9
    assert absolute_invariants(ic) == absolute_invariants(twisted)
    with pytest.raises(InvariantsError):
        absolute_invariants(IgusaClebsch(1, 1, 1, 0))


def test_invalid_input():
    with pytest.raises(InvariantsError):
        ic_from_coeffs(upoly([1, 1, 1], x))
    with pytest.raises(InvariantsError):
        ic_from_roots(1, [0, 1, 2])
    with pytest.raises(InvariantsError):
        IgusaClebsch.from_strings('1,2,3')


def test_random_curves_agree():
    rng = random.Random(3)
    for _ in range(10):
        curve = random_rooted_curve(rng, 5)
        assert ic_from_coeffs(curve) == ic_from_roots(curve.leading,
                                                      curve.roots)


def test_oracle_and_mobius_checks():
    assert all(oracle_check(10, seed=1, height=5))
    assert mobius_check(5, seed=1, height=4)


def test_normalization_from_settings():
    assert default_normalization() == (1, 1, 1, 1)
    assert default_normalization({'seed': 0}) == (1, 1, 1, 1)
    settings = {'normalization': {'I2': 2, 'I6': '1/3'}}
    normalization = default_normalization(settings)
    assert normalization == (2, 1, sympy.Rational(1, 3), 1)
    curve = reference_curve()
    plain = ic_from_coeffs(curve)
    scaled = ic_from_coeffs(curve, normalization)
    assert scaled == (2 * plain.I2, plain.I4, plain.I6 / 3, plain.I10)
    assert scaled == ic_from_roots(1, list(range(6)), normalization)
    assert all(oracle_check(5, seed=2, normalization=normalization))
    assert mobius_check(5, seed=2, normalization=normalization)
