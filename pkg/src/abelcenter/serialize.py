"""JSON wire formats for every object the command line exchanges.

Scalars are rational strings ("3", "-7/4"); a polynomial is an array of
them, index = degree; a y-series is {"trunc": N, "coeffs": [poly, ...]}.
Exact values never travel as floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .centers import AbelEquation
from .darboux import DarbouxIntegral, Foliation
from .exactpoly import Poly, poly_from_json, poly_to_json, rat, rat_str
from .iterint import Interval, Word
from .melnikov import PerturbedAbel
from .yseries import YSeries, yseries_from_json, yseries_to_json


def interval_to_json(iv: Interval) -> list[str]:
    return [rat_str(iv.x0), rat_str(iv.x1)]


def interval_from_json(data: Any) -> Interval:
    if not isinstance(data, (list, tuple)) or len(data) != 2:
        raise ValueError("interval must be [x0, x1]")
    return Interval(rat(data[0]), rat(data[1]))


def equation_to_json(eq: AbelEquation) -> dict:
    return {"species": [poly_to_json(s) for s in eq.species],
            "interval": interval_to_json(eq.interval)}


def equation_from_json(data: Any) -> AbelEquation:
    if not isinstance(data, dict) or "species" not in data or "interval" not in data:
        raise ValueError('equation must be {"species": [...], "interval": [x0, x1]}')
    return AbelEquation([poly_from_json(s) for s in data["species"]],
                        interval_from_json(data["interval"]))


def word_from_json(data: Any) -> Word:
    if not isinstance(data, (list, tuple)):
        raise ValueError("word must be a JSON array of polynomials")
    return Word([poly_from_json(f) for f in data])


def perturbed_to_json(sys: PerturbedAbel) -> dict:
    return {"a": poly_to_json(sys.a),
            "orders": [[poly_to_json(p), poly_to_json(q)]
                       for p, q in sys.orders],
            "interval": interval_to_json(sys.interval)}


def perturbed_from_json(data: Any) -> PerturbedAbel:
    if (not isinstance(data, dict) or "a" not in data
            or "orders" not in data or "interval" not in data):
        raise ValueError(
            'system must be {"a": poly, "orders": [[p, q], ...], '
            '"interval": [x0, x1]}')
    orders = []
    for pair in data["orders"]:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValueError("each perturbation order must be a [p, q] pair")
        orders.append((poly_from_json(pair[0]), poly_from_json(pair[1])))
    return PerturbedAbel(poly_from_json(data["a"]), orders,
                         interval_from_json(data["interval"]))


def foliation_to_json(fol: Foliation) -> dict:
    return {"P": yseries_to_json(fol.p_form), "Q": yseries_to_json(fol.q_form)}


def foliation_from_json(data: Any) -> Foliation:
    if not isinstance(data, dict) or "P" not in data or "Q" not in data:
        raise ValueError('foliation must be {"P": series, "Q": series} '
                         "for P dy - Q dx = 0")
    return Foliation(p_form=yseries_from_json(data["P"]),
                     q_form=yseries_from_json(data["Q"]))


def darboux_to_json(h: DarbouxIntegral) -> dict:
    return {"factors": [[yseries_to_json(f), rat_str(lam)]
                        for f, lam in h.factors]}


def darboux_from_json(data: Any) -> DarbouxIntegral:
    if not isinstance(data, dict) or "factors" not in data:
        raise ValueError('first integral must be {"factors": '
                         '[[series, exponent], ...]}')
    factors = []
    for pair in data["factors"]:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValueError("each factor must be a [series, exponent] pair")
        factors.append((yseries_from_json(pair[0]), rat(pair[1])))
    return DarbouxIntegral(factors)


def fraction_tree(value: Any) -> Any:
    """Recursively render Fractions (and Poly / YSeries) as wire values
    inside plain dict/list/tuple certificate payloads."""
    if isinstance(value, Fraction):
        return rat_str(value)
    if isinstance(value, Poly):
        return poly_to_json(value)
    if isinstance(value, YSeries):
        return yseries_to_json(value)
    if isinstance(value, dict):
        return {k: fraction_tree(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [fraction_tree(v) for v in value]
    return value
