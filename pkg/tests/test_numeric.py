import math
import random
from fractions import Fraction

import pytest

from abelcenter import (AbelEquation, BlowUp, Interval, NumericConfig, Poly,
                        return_map, transport)

from helpers import rand_poly


def test_closed_form_2x_species():
    # dy + 2xy^2 dx = 0: y(1) = y0 / (1 + y0) from y(0) = y0
    eq = AbelEquation([Poly((0, 2))], Interval(0, 1))
    for y0 in (0.1, -0.05, 0.3):
        want = y0 / (1 + y0)
        assert abs(transport(eq, y0) - want) < 1e-10


def test_closed_form_constant_species():
    # dy/dx = y^2: y(1) = y0 / (1 - y0)
    eq = AbelEquation([Poly.constant(-1)], Interval(0, 1))
    for y0 in (0.1, 0.25, -0.4):
        want = y0 / (1 - y0)
        assert abs(transport(eq, y0) - want) < 1e-10


def test_round_trip_inverts():
    rng = random.Random(801)
    for _ in range(6):
        eq = AbelEquation([rand_poly(rng, 3, lo=-2, hi=2) for _ in range(2)],
                          Interval(Fraction(-1, 2), Fraction(3, 4)))
        y0 = rng.uniform(-0.05, 0.05)
        out = transport(eq, y0)
        back = transport(eq.reversed(), out)
        assert abs(back - y0) < 1e-10


def test_matches_exact_series():
    rng = random.Random(802)
    for _ in range(5):
        eq = AbelEquation([rand_poly(rng, 3, lo=-2, hi=2) for _ in range(2)],
                          Interval(0, 1))
        rm = return_map(eq, 8)
        for y0 in (1e-3, -1e-3, 5e-3):
            # the series is the backward map: integrate x1 -> x0
            numeric = transport(eq.reversed(), y0)
            series = float(rm.evaluate(Fraction(y0).limit_denominator(10 ** 12)))
            assert abs(numeric - series) < max(abs(y0) ** 9, 1e-10)


def test_blow_up_detected_and_located():
    # dy/dx = y^2 from y(0) = 2 blows up at x = 1/2
    eq = AbelEquation([Poly.constant(-1)], Interval(0, 1))
    cfg = NumericConfig(blowup_bound=1e4)
    with pytest.raises(BlowUp) as info:
        transport(eq, 2.0, cfg)
    assert abs(info.value.x_escape - 0.5) < 1e-2


def test_degenerate_interval_is_identity():
    eq = AbelEquation([Poly.one()], Interval(Fraction(1, 3), Fraction(1, 3)))
    assert transport(eq, 0.125) == 0.125


def test_config_validation():
    with pytest.raises(ValueError):
        NumericConfig(abs_tol=0.0)
    with pytest.raises(ValueError):
        NumericConfig(max_steps=0)


def test_reversed_interval_direction():
    eq = AbelEquation([Poly((0, 2))], Interval(1, 0))  # integrate backward
    y1 = 0.05 / (1 + 0.05)      # value at x = 1 of the forward solution
    out = transport(eq, y1)
    assert abs(out - 0.05) < 1e-10


def test_float_conversion_of_exact_species():
    # rational coefficients flow through the float evaluator correctly
    eq = AbelEquation([Poly((Fraction(1, 3),))], Interval(0, 1))
    got = transport(eq, 0.01)
    # dy/dx = -y^2/3: y(1) = y0/(1 + y0/3)
    want = 0.01 / (1 + 0.01 / 3)
    assert math.isclose(got, want, rel_tol=1e-10)
