import random

import mpmath
import pytest
import sympy

from k3python.algebra import upoly
from k3python.elliptic import (INFINITY, EllipticSurfaceError,
                               E8E7Parameters, WeierstrassSurface,
                               classify_all_fibers, discriminant_oracle,
                               duplication, e8e7_parameters, euler_sum,
                               fiber_data, fiber_summary, isogeny_maps,
                               kodaira_type_at, refiber_e8e7, shioda_tate,
                               surface_discriminant, t, two_isogeny)

x = sympy.Symbol('x')


def test_discriminant():
    s = WeierstrassSurface(0, 0, [0, 1])
    assert surface_discriminant(s) == upoly([0, 0, -432], t)
    p, q = upoly([1, 2, 0, 1], t), upoly([3, 1], t)
    s = WeierstrassSurface(q * -2, p, 0)
    assert surface_discriminant(s) == p ** 2 * (q ** 2 - p) * 64
    with pytest.raises(EllipticSurfaceError):
        surface_discriminant(WeierstrassSurface(0, 0, 0))


def test_discriminant_oracle():
    rng = random.Random(2)
    for _ in range(5):
        coeffs = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        s = WeierstrassSurface(*coeffs)
        assert surface_discriminant(s) == discriminant_oracle(s)


def test_cusp():
    s = WeierstrassSurface(0, 0, [0, 1])
    assert kodaira_type_at(s, 0).kind == 'II'
    fibers = classify_all_fibers(s)
    assert fiber_summary(fibers) == {'II': 1, 'II*': 1}
    assert euler_sum(fibers) == 12


def test_constant_surface():
    fibers = classify_all_fibers(WeierstrassSurface(0, 0, 1, chi=1))
    assert len(fibers) == 1
    assert fibers[0].at_infinity
    assert fibers[0].kind == 'I0'
    assert fibers[0].shifts == 1


def test_fiber_data():
    assert fiber_data('I3*') == (8, 4, 9, 'D7')
    assert fiber_data('I5') == (5, 5, 5, 'A4')
    assert fiber_data('II*') == (9, 1, 10, 'E8')
    with pytest.raises(EllipticSurfaceError):
        fiber_data('V')


def test_e8e7_surface():
    params = E8E7Parameters(sympy.Rational(2), sympy.Rational(-1),
                            sympy.Rational(3), sympy.Rational(1, 2),
                            sympy.Rational(5))
    s = params.surface()
    assert s.is_k3
    assert kodaira_type_at(s, INFINITY).kind == 'II*'
    assert kodaira_type_at(s, 0).kind == 'III*'
    fibers = classify_all_fibers(s)
    assert fiber_summary(fibers) == {'II*': 1, 'III*': 1, 'I1': 5}
    assert euler_sum(fibers) == 24
    assert shioda_tate(fibers) == (17, 2)
    assert e8e7_parameters(s) == params


def test_refibration():
    params = E8E7Parameters(sympy.Rational(2), sympy.Rational(-1),
                            sympy.Rational(3), sympy.Rational(1, 2),
                            sympy.Rational(5))
    refibered = refiber_e8e7(params.surface(), x)
    assert refibered.var == x
    assert refibered.a6.is_zero
    assert refibered.a2 == upoly([3, 2, 0, 1], x)
    fibers = classify_all_fibers(refibered)
    assert kodaira_type_at(refibered, INFINITY).kind == 'I10*'
    # I2 at x = -b'/a'
    assert kodaira_type_at(refibered, sympy.Rational(1, 2)).kind == 'I2'
    assert euler_sum(fibers) == 24


def test_refibration_symbolic():
    a, a1, b, b1, b2 = sympy.symbols("a a1 b b1 b2")
    s = E8E7Parameters(a, a1, b, b1, b2).surface()
    refibered = refiber_e8e7(s, x)
    assert sympy.expand(refibered.a2.as_expr() - (x ** 3 + a * x + b)) == 0
    assert sympy.expand(refibered.a4.as_expr() - b2 * (a1 * x + b1)) == 0


def test_shape_errors():
    with pytest.raises(EllipticSurfaceError):
        e8e7_parameters(WeierstrassSurface([0, 1], 0, [0, 0, 0, 0, 0, 1]))
    with pytest.raises(EllipticSurfaceError):
        e8e7_parameters(WeierstrassSurface(0, [0, 0, 0, 1],
                                           [0, 0, 0, 0, 0, 1]))


def test_two_isogeny():
    s = WeierstrassSurface(0, 1, 0)
    image = two_isogeny(s)
    assert image.a2.is_zero
    assert image.a4 == upoly([-4], t)
    a2, a4 = sympy.symbols('a2 a4')
    twice = two_isogeny(two_isogeny(WeierstrassSurface(a2, a4, 0)))
    assert sympy.expand(twice.a2.as_expr() - 4 * a2) == 0
    assert sympy.expand(twice.a4.as_expr() - 16 * a4) == 0
    with pytest.raises(EllipticSurfaceError):
        two_isogeny(WeierstrassSurface(0, 0, 1))


def test_dual_isogeny_is_doubling():
    s = WeierstrassSurface([1, 2], [3, 0, 1], 0)
    value = mpmath.mpf(3) / 7
    with mpmath.workdps(60):
        phi, dual = isogeny_maps(s, value)
        a2 = 1 + 2 * value
        a4 = 3 + value ** 2
        px = mpmath.mpf(2)
        py = mpmath.sqrt(px ** 3 + a2 * px ** 2 + a4 * px)
        back = dual(phi((px, py)))
        doubled = duplication(s, value, (px, py))
        assert abs(back[0] - doubled[0]) < mpmath.mpf(10) ** -50
        assert (abs(back[1] - doubled[1]) < mpmath.mpf(10) ** -50
                or abs(back[1] + doubled[1]) < mpmath.mpf(10) ** -50)


def test_chi_too_small():
    with pytest.raises(EllipticSurfaceError):
        WeierstrassSurface(0, 0, [0] * 13 + [1], chi=2)


def fiber_types(s):
    return [(f.place_str(), f.kind) for f in classify_all_fibers(s)]


def test_rescaling_keeps_fiber_types():
    params = E8E7Parameters(sympy.Rational(2), sympy.Rational(-1),
                            sympy.Rational(3), sympy.Rational(1, 2),
                            sympy.Rational(5))
    surfaces = [params.surface(), refiber_e8e7(params.surface(), x),
                WeierstrassSurface(0, 0, [0, 1])]
    for s in surfaces:
        expected = fiber_types(s)
        for u in (2, sympy.Rational(-3, 5)):
            rescaled = s.rescale(u)
            assert rescaled.a4 == s.a4 * (1 / sympy.Rational(u) ** 4)
            assert fiber_types(rescaled) == expected


def test_two_isogeny_exchanges_fibers():
    params = E8E7Parameters(sympy.Rational(2), sympy.Rational(-1),
                            sympy.Rational(3), sympy.Rational(1, 2),
                            sympy.Rational(5))
    refibered = refiber_e8e7(params.surface(), x)
    quotient = two_isogeny(refibered)
    fibers = classify_all_fibers(refibered)
    assert fiber_summary(fibers) == {'I10*': 1, 'I2': 1, 'I1': 6}
    exchange = {'I10*': 'I5*', 'I2': 'I1', 'I1': 'I2'}
    for fiber in fibers:
        if fiber.kind != 'I0':
            image = kodaira_type_at(quotient, fiber.place)
            assert image.kind == exchange[fiber.kind], str(fiber)
    assert fiber_summary(classify_all_fibers(quotient)) == {
        'I5*': 1, 'I2': 6, 'I1': 1}
