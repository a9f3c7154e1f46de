import pytest
import sympy

from k3python.algebra import coefficients
from k3python.elliptic import classify_all_fibers, fiber_summary
from k3python.invariants import GenusTwoCurve, IgusaClebsch, ic_from_coeffs
from k3python.shioda_inose import (EXPECTED_X_FIBERS, EXPECTED_Y_FIBERS,
                                   _compare_invariants,
                                   ShiodaInoseError, all_checks, cubic_q,
                                   fixed_point_check, igusa_quartic_check,
                                   kummer_side_verification,
                                   nikulin_involution,
                                   nikulin_involution_check,
                                   pair_configuration, parameters_from_ic,
                                   random_pair_checks,
                                   sextic_correspondence, sextic_g,
                                   surfaces_from_ic, symbolic_pair,
                                   twist_invariance_check,
                                   verify_quotient_identity,
                                   weighted_invariance_check, x)


def reference_curve():
    return GenusTwoCurve.from_roots(range(6))


def test_parameters():
    ic = IgusaClebsch(24, 12, 6, 4)
    p = parameters_from_ic(ic)
    assert (p.a, p.a1, p.b, p.b1, p.b2) == (-1, -1, sympy.Rational(5, 2),
                                            1, 1)
    q = sympy.Poly(cubic_q(ic, x), x)
    assert q.all_coeffs() == [1, 0, -1, sympy.Rational(5, 2)]
    g = sympy.Poly(sextic_g(ic, x), x)
    assert g == sympy.Poly(q.as_expr() ** 2 + 4 * (x - 1), x)


def test_singular_curve():
    with pytest.raises(ShiodaInoseError):
        surfaces_from_ic(IgusaClebsch(1, 2, 3, 0))
    with pytest.raises(ShiodaInoseError):
        sextic_correspondence(IgusaClebsch(1, 2, 3, 0))


def test_symbolic_quotient_identity():
    result = verify_quotient_identity(symbolic_pair())
    assert result
    assert all(d == 0 for d in result.differences.values())


def test_symbolic_sextic_on_igusa_quartic():
    g = sextic_correspondence(IgusaClebsch.symbolic())
    assert g.degree() == 6
    assert igusa_quartic_check(g)


def test_wrong_parameters_break_identity():
    pair = surfaces_from_ic(IgusaClebsch(24, 12, 6, 4))
    assert verify_quotient_identity(pair)
    broken = pair.with_parameters(b1=2)
    assert not verify_quotient_identity(broken)


def test_nikulin_involution():
    pair = surfaces_from_ic(ic_from_coeffs(reference_curve()))
    sigma = nikulin_involution(pair)
    assert sigma.compose(sigma).is_identity()
    results = nikulin_involution_check(pair, samples=5)
    assert [r.name for r in results] == [
        'involution preserves X', 'involution squares to identity',
        'translation by 2-torsion', 'sampled involution']
    assert all(results), [str(r) for r in results]


def test_symbolic_nikulin_involution():
    results = nikulin_involution_check(symbolic_pair())
    assert all(results), [str(r) for r in results]


def test_fixed_points():
    pair = surfaces_from_ic(ic_from_coeffs(reference_curve()))
    assert fixed_point_check(pair)
    assert fixed_point_check(symbolic_pair()).status == 'SKIP'


def test_twist_invariance():
    result = twist_invariance_check(reference_curve(), 3)
    assert result
    assert result.witnesses['r'] == {'exact': '9'}


def test_weighted_invariance():
    ic = ic_from_coeffs(reference_curve())
    assert weighted_invariance_check(ic, sympy.Rational(2, 3))


def test_fiber_configurations():
    pair = surfaces_from_ic(ic_from_coeffs(reference_curve()))
    assert fiber_summary(classify_all_fibers(pair.X)) == EXPECTED_X_FIBERS
    assert fiber_summary(classify_all_fibers(pair.Y)) == EXPECTED_Y_FIBERS


def test_all_checks():
    pair, results = all_checks(reference_curve(), {'samples': 3})
    assert pair.ic == ic_from_coeffs(reference_curve())
    assert all(results), [str(r) for r in results]
    names = [r.name for r in results]
    assert 'quotient identity' in names
    assert 'Shioda-Tate' in names
    assert 'g locates the I2 fibers' in names


@pytest.mark.slow
def test_random_pairs():
    result = random_pair_checks(20, seed=1, parallelism=1)
    assert result, result.witnesses.get('failures')


DEGENERATE = IgusaClebsch(12, 12, 12, 2)


def test_degenerate_tuple_configuration():
    g = sextic_correspondence(DEGENERATE)
    assert sympy.expand(g.as_expr()
                        - (x ** 6 - 2 * x ** 4 + 2 * x ** 3 + x ** 2)) == 0
    _, y_summary, problems = pair_configuration(DEGENERATE)
    assert y_summary != EXPECTED_Y_FIBERS
    assert 'Y fibers' in problems
    assert 'Y: I2 places differ from the roots of g' in problems


def test_reference_pair_configuration():
    x_summary, y_summary, problems = pair_configuration(
        ic_from_coeffs(reference_curve()))
    assert problems == []
    assert x_summary == EXPECTED_X_FIBERS
    assert y_summary == EXPECTED_Y_FIBERS


def test_degenerate_tuples_are_replaced(monkeypatch):
    draws = iter([DEGENERATE, ic_from_coeffs(reference_curve())])
    monkeypatch.setattr('k3python.shioda_inose.random_invariants',
                        lambda rng, height: next(draws))
    result = random_pair_checks(1, parallelism=1)
    assert result.status == 'PASSED'
    assert result.witnesses['degenerate'] == [str(DEGENERATE)]


def test_only_degenerate_tuples(monkeypatch):
    monkeypatch.setattr('k3python.shioda_inose.random_invariants',
                        lambda rng, height: DEGENERATE)
    result = random_pair_checks(1, parallelism=1)
    assert not result
    assert result.status == 'FAILED'


@pytest.mark.slow
def test_kummer_side():
    results = kummer_side_verification(reference_curve(), samples=40)
    statuses = dict((r.name, r.status) for r in results)
    witnesses = dict((r.name, r.witnesses) for r in results)
    assert statuses['plane curves e1..e5'] == 'PASSED'
    assert statuses['quintic pencil'] == 'PASSED'
    assert statuses['function degrees'] == 'PASSED'
    assert statuses['Weierstrass equation on the Kummer'] == 'PASSED'
    assert witnesses['Weierstrass equation on the Kummer']['samples'] == {
        'exact': '80'}
    assert (statuses['Weierstrass equation at points of the quartic']
            == 'PASSED')
    assert statuses['recovered invariants'] in ('PASSED', 'PROBLEM')


def test_recovered_invariants_are_exact():
    curve = reference_curve()
    ic = ic_from_coeffs(curve)
    u = sympy.Symbol('u')
    q = sympy.Poly(cubic_q(ic, u + 1), u)
    g = sympy.Poly(sextic_g(ic, u + 1), u)
    result = _compare_invariants(curve, coefficients(q), coefficients(g))
    assert result.status == 'PASSED'
    assert result.witnesses['fitted_invariants'] == [
        {'exact': str(v)} for v in ic]
    result = _compare_invariants(curve, coefficients(q),
                                 coefficients(g + sympy.Poly(u ** 3, u)))
    assert result.status == 'FAILED'


def test_kummer_side_needs_twelve_samples():
    with pytest.raises(ShiodaInoseError):
        kummer_side_verification(reference_curve(), samples=11)
