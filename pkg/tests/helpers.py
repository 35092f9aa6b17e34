"""Shared generators for randomized exact tests; every test seeds its own
random.Random so runs are reproducible."""

from __future__ import annotations

import random
from fractions import Fraction

from abelcenter import Interval, Poly

ENDPOINT_POOL = (
    Fraction(-1), Fraction(0), Fraction(1), Fraction(1, 2),
    Fraction(-1, 2), Fraction(1, 3), Fraction(-2, 3), Fraction(2),
)


def rand_fraction(rng: random.Random, lo: int = -3, hi: int = 3,
                  dens: tuple[int, ...] = (1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def rand_poly(rng: random.Random, max_deg: int, lo: int = -3, hi: int = 3,
              nonzero: bool = False) -> Poly:
    while True:
        deg = rng.randint(0, max_deg)
        p = Poly([rand_fraction(rng, lo, hi) for _ in range(deg + 1)])
        if not (nonzero and p.is_zero):
            return p


def rand_interval(rng: random.Random) -> Interval:
    x0 = rng.choice(ENDPOINT_POOL)
    x1 = rng.choice([e for e in ENDPOINT_POOL if e != x0])
    return Interval(x0, x1)


def closing_poly(rng: random.Random, deg: int, iv: Interval) -> Poly:
    """A degree-deg polynomial W with W(x0) = W(x1), built by tilting a
    random polynomial with the linear interpolant of its endpoint gap."""
    assert deg >= 2
    while True:
        w = rand_poly(rng, deg)
        if w.degree == deg:
            break
    slope = (w(iv.x1) - w(iv.x0)) / (iv.x1 - iv.x0)
    return w - Poly((0, slope))


def mean_zero_poly(rng: random.Random, max_deg: int, iv: Interval) -> Poly:
    """A polynomial whose integral over the interval vanishes."""
    p = rand_poly(rng, max_deg)
    from abelcenter import definite_integral
    mean = definite_integral(p, iv.x0, iv.x1) / (iv.x1 - iv.x0)
    return p - Poly.constant(mean)
