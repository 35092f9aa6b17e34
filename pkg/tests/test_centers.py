import random
from fractions import Fraction

import pytest

from abelcenter import (AbelEquation, Interval, InvalidEquation, Poly,
                        YSeries, brudnyi_coefficient, first_integral_series,
                        necessary_conditions, pullback_equation, return_map,
                        universal_check)
from abelcenter.centers import (brudnyi_weight, compositions,
                                invert_map_series, picard_coefficients)

from helpers import mean_zero_poly, rand_interval, rand_poly


def rand_equation(rng, max_species=3, max_deg=4):
    m = rng.randint(1, max_species)
    species = [rand_poly(rng, max_deg, lo=-2, hi=2) for _ in range(m)]
    return AbelEquation(species, rand_interval(rng))


def test_compositions_enumeration():
    assert list(compositions(3, 2)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert list(compositions(1, 3)) == [(1,)]


def test_weights_match_displayed_low_orders():
    assert brudnyi_weight((1,)) == 1
    # third order: 2 a2a1 + 3 a1a2 + 6 a1^3
    assert brudnyi_weight((2, 1)) == 2
    assert brudnyi_weight((1, 2)) == 3
    assert brudnyi_weight((1, 1, 1)) == 6


def test_weights_match_displayed_fourth_order():
    expected = {(4,): 1, (3, 1): 2, (2, 2): 3, (1, 3): 4,
                (2, 1, 1): 6, (1, 2, 1): 8, (1, 1, 2): 12, (1, 1, 1, 1): 24}
    for parts, want in expected.items():
        assert brudnyi_weight(parts) == want


def test_c1_is_species_integral():
    eq = AbelEquation([Poly((-1, 2))], Interval(0, 1))
    assert brudnyi_coefficient(eq, 1) == 0


def test_c2_with_shuffle_forced_value():
    # c2 = int a2 + 2 int a1 a1 = 1 + (int a1)^2 = 1
    eq = AbelEquation([Poly((-1, 2)), Poly.one()], Interval(0, 1))
    assert brudnyi_coefficient(eq, 2) == 1


def test_constant_species_closed_form():
    # dy/dx = -y^2 transports backward as y/(1-y): all coefficients 1
    eq = AbelEquation([Poly.one()], Interval(0, 1))
    rm = return_map(eq, 6, cross_check=True)
    assert rm.coefficients == (Fraction(1),) * 6
    # and the forward map has the alternating signs of y/(1+y)
    assert tuple(invert_map_series(rm.coefficients)) == tuple(
        Fraction((-1) ** n) for n in range(1, 7))


def test_linear_case_exponential_series():
    alpha = Fraction(3, 2)
    f = YSeries((Poly.zero(), Poly.constant(alpha)), trunc=6)
    phi = first_integral_series(f, Fraction(1, 3), 6)
    # coefficient of y is sum alpha^k (x - x0)^k / k!
    shifted = Poly((Fraction(-1, 3), 1))
    expect = Poly.zero()
    fact = 1
    for k in range(7):
        if k:
            fact *= k
        expect = expect + shifted ** k * Fraction(alpha ** k, fact)
    assert phi.coefficient(1) == expect
    assert phi.coefficient(0).is_zero


def test_quadratic_case_geometric_series():
    f = YSeries((Poly.zero(), Poly.zero(), Poly((0, 2))), trunc=6)
    x0 = Fraction(1, 2)
    phi = first_integral_series(f, x0, 6)
    base = Poly((-x0 * x0, 0, 1))
    for n in range(1, 6):
        assert phi.coefficient(n + 1) == base ** n


def test_zero_rhs_gives_identity():
    f = YSeries.zero(5)
    phi = first_integral_series(f, 0, 5)
    assert phi == YSeries.y(5)


def test_precondition_requires_vanishing_at_y0():
    with pytest.raises(InvalidEquation):
        first_integral_series(YSeries((Poly.one(),), trunc=3), 0, 3)


def test_brudnyi_equals_picard_random():
    rng = random.Random(401)
    for _ in range(12):
        eq = rand_equation(rng)
        rm = return_map(eq, 5)
        assert list(rm.coefficients) == picard_coefficients(eq, 5)


def test_c2_shuffle_identity_random():
    rng = random.Random(402)
    for _ in range(15):
        eq = rand_equation(rng, max_species=2)
        c1 = brudnyi_coefficient(eq, 1)
        c2 = brudnyi_coefficient(eq, 2)
        int_a2 = eq.word_integral((2,))
        assert c2 - int_a2 == c1 * c1


def test_c3_reduces_to_crossed_integral_when_c1_c2_vanish():
    rng = random.Random(403)
    for _ in range(10):
        iv = rand_interval(rng)
        a1 = mean_zero_poly(rng, 4, iv)
        a2 = mean_zero_poly(rng, 4, iv)
        eq = AbelEquation([a1, a2], iv)
        assert brudnyi_coefficient(eq, 1) == 0
        assert brudnyi_coefficient(eq, 2) == 0
        assert brudnyi_coefficient(eq, 3) == eq.word_integral((1, 2))


def test_pullback_equations_are_universal_centers():
    rng = random.Random(404)
    from helpers import closing_poly
    for _ in range(8):
        iv = rand_interval(rng)
        w = closing_poly(rng, rng.randint(2, 3), iv)
        upstairs = [rand_poly(rng, 2) for _ in range(rng.randint(1, 2))]
        eq = pullback_equation(upstairs, w, iv)
        assert return_map(eq, 6).is_identity
        verdict = universal_check(eq, max_length=3)
        assert verdict.universal


def test_universal_check_finds_witness():
    eq = AbelEquation([Poly.one()], Interval(0, 1))
    verdict = universal_check(eq, max_length=2)
    assert not verdict.universal
    assert verdict.witness == (1,)
    assert verdict.witness_value == 1
    assert "NotUniversal" in str(verdict)


def test_universal_check_zero_equation():
    eq = AbelEquation([Poly.zero()], Interval(0, 1))
    assert universal_check(eq, max_length=4).universal


def test_universal_check_weight_bound():
    eq = AbelEquation([Poly.zero(), Poly.one()], Interval(0, 1))
    # the only nonzero words use a2 (weight 2 each); weight cap 1 sees none
    assert universal_check(eq, max_length=3, max_weight=1).universal
    assert not universal_check(eq, max_length=3, max_weight=2).universal


def test_necessary_conditions_reports():
    eq = AbelEquation([Poly.one(), Poly.zero()], Interval(0, 1))
    report = necessary_conditions(eq)
    assert report.as_tuple() == (1, 0, 0)
    assert not report.is_satisfied

    c = Fraction(2, 3)
    rng = random.Random(405)
    eq2 = AbelEquation([rand_poly(rng, 3), rand_poly(rng, 3)], Interval(c, c))
    assert necessary_conditions(eq2).as_tuple() == (0, 0, 0)

    with pytest.raises(InvalidEquation):
        necessary_conditions(AbelEquation([Poly.one()] * 3, Interval(0, 1)))


def test_transport_group_property():
    rng = random.Random(406)
    for _ in range(8):
        x0, x1, x2 = Fraction(-1, 2), Fraction(1, 3), Fraction(1)
        species = [rand_poly(rng, 3, lo=-2, hi=2) for _ in range(2)]
        whole = return_map(AbelEquation(species, Interval(x0, x2)), 6)
        left = return_map(AbelEquation(species, Interval(x0, x1)), 6)
        right = return_map(AbelEquation(species, Interval(x1, x2)), 6)
        assert whole.coefficients == left.compose(right).coefficients


def test_inverse_map_roundtrip():
    rng = random.Random(407)
    for _ in range(10):
        eq = rand_equation(rng, max_species=2, max_deg=3)
        rm = return_map(eq, 6)
        assert rm.compose(rm.inverse()).is_identity
        assert rm.inverse().compose(rm).is_identity


def test_equation_ingestion_from_classical_form():
    a, b = Poly((0, 2)), Poly((1,))
    eq = AbelEquation.from_ab(a, b, Interval(0, 1))
    assert eq.species == (-a, -b)
    # trailing zero species strip
    eq2 = AbelEquation([Poly.one(), Poly.zero(), Poly.zero()], Interval(0, 1))
    assert eq2.m == 1
