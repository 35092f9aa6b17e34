"""Return-map coefficients of polynomial Abel equations and center checks.

The normal form used throughout is

    dy/dx + sum_{i=1}^m a_i(x) y^{i+1} = 0        on [x0, x1],

with the transport-map series written at the RIGHT endpoint: the map

    B : y(x1) |-> y(x0),   B(y) = y + sum_{n>=1} c_n y^{n+1}.

Both computation routes produce the coefficients of exactly this map:

* `brudnyi_coefficient` sums, over all compositions (i1, ..., ik) of n
  with parts <= m, the word integral of [a_{i1}, ..., a_{ik}] weighted by
  the product of the shifted suffix sums
  (1 + ik)(1 + ik + i_{k-1}) ... (1 + ik + ... + i2);
* `first_integral_series` iterates the first-integral series of the flow
  (the Picard route) and is the independent oracle for the first.

Equations given in the classical form dy/dx = a(x) y^2 + b(x) y^3 are
ingested by negating: a1 = -a, a2 = -b (`AbelEquation.from_ab`).

A center on [x0, x1] means B = id; since no finite order certifies the
infinite condition, verdicts are always "to order N".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .exactpoly import Poly, rat
from .iterint import Interval, Word, iterated_integral
from .yseries import YSeries


class InvalidEquation(ValueError):
    """The input does not satisfy a documented precondition."""


class OracleMismatch(AssertionError):
    """The combinatorial formula and the series oracle disagree; this
    signals an implementation bug, never a property of the input."""


WordCache = dict[tuple[int, ...], Fraction]


@dataclass(frozen=True)
class AbelEquation:
    """Species (a1, ..., am) of dy/dx + sum a_i y^{i+1} = 0 on an interval.

    Trailing zero species are stripped; m >= 1 is enforced (the zero
    equation is represented with a single zero species)."""

    species: tuple[Poly, ...]
    interval: Interval

    def __init__(self, species: Sequence[Poly], interval: Interval):
        sp = [s if isinstance(s, Poly) else Poly(s) for s in species]
        while len(sp) > 1 and sp[-1].is_zero:
            sp.pop()
        if not sp:
            sp = [Poly.zero()]
        object.__setattr__(self, "species", tuple(sp))
        object.__setattr__(self, "interval", interval)

    @classmethod
    def from_ab(cls, a: Poly, b: Poly, interval: Interval) -> "AbelEquation":
        """Ingest dy/dx = a(x) y^2 + b(x) y^3 into the normal form."""
        return cls((-a, -b), interval)

    @property
    def m(self) -> int:
        return len(self.species)

    def species_at(self, i: int) -> Poly:
        """a_i with 1-based index; zero beyond m."""
        if 1 <= i <= self.m:
            return self.species[i - 1]
        return Poly.zero()

    def reversed(self) -> "AbelEquation":
        return AbelEquation(self.species, self.interval.swapped())

    def word_integral(self, indices: Sequence[int],
                      cache: Optional[WordCache] = None) -> Fraction:
        """Integral of the word [a_{i1}, ..., a_{ik}] over the interval."""
        key = tuple(indices)
        if cache is not None and key in cache:
            return cache[key]
        value = iterated_integral(
            Word([self.species_at(i) for i in key]), self.interval)
        if cache is not None:
            cache[key] = value
        return value


def compositions(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """All ordered tuples (i1, ..., ik) with 1 <= ij <= max_part summing
    to n, in lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(1, min(n, max_part) + 1):
        for rest in compositions(n - first, max_part):
            yield (first,) + rest


def brudnyi_weight(parts: Sequence[int]) -> int:
    """Weight of one composition: the product over j = 2..k of
    (1 + i_j + i_{j+1} + ... + i_k).  Length-1 compositions weigh 1."""
    weight = 1
    suffix = 0
    for p in reversed(parts[1:]):
        suffix += p
        weight *= 1 + suffix
    return weight


def brudnyi_coefficient(eq: AbelEquation, n: int,
                        cache: Optional[WordCache] = None) -> Fraction:
    """n-th transport-map coefficient c_n by the composition-weighted word
    integral formula."""
    if n < 1:
        raise InvalidEquation("coefficient order must be >= 1")
    total = Fraction(0)
    for parts in compositions(n, eq.m):
        total += brudnyi_weight(parts) * eq.word_integral(parts, cache)
    return total


# -- the Picard / first-integral-series oracle -------------------------------


def first_integral_series(f: YSeries, x0: Union[int, str, Fraction],
                          order: int) -> YSeries:
    """First integral phi(x0; x, y) of dy + f(x, y) dx = 0 as a y-series
    with Poly-in-x coefficients, truncated at y^order.

    Computed by the linear recursion  I_0 = y,
    I_n = int_{x0}^{x} f * d/dy(I_{n-1}) dt,  phi = sum_n I_n,
    stopped after `order` steps (earlier if a step vanishes).  When
    f = O(y^2) the result is the exact truncation of phi; when f has a
    linear y-term the y-coefficients are the order-`order` partial sums
    of the (non-terminating) expansion, e.g. the exponential series in
    the linear case.

    Precondition: f(x, 0) = 0, i.e. zero y^0 coefficient."""
    if order < 1:
        raise InvalidEquation("series order must be >= 1")
    if not f.coefficient(0).is_zero:
        raise InvalidEquation("f(x, 0) must vanish: y = 0 is not a solution")
    x0 = rat(x0)
    f = f.with_trunc(order) if f.trunc > order else f
    phi = YSeries.y(order)
    term = phi
    for _ in range(order):
        term = (f * term.y_derivative()).x_antiderivative().vanish_at(x0)
        if term.is_zero:
            break
        phi = phi + term
    return phi


def abel_rhs_series(eq: AbelEquation, trunc: int) -> YSeries:
    """f(x, y) = sum a_i(x) y^{i+1} of the equation, as a YSeries."""
    coeffs = [Poly.zero(), Poly.zero()] + list(eq.species)
    return YSeries(coeffs, trunc)


def picard_coefficients(eq: AbelEquation, order: int) -> list[Fraction]:
    """c_1..c_order extracted from the first-integral series evaluated at
    the right endpoint; independent of the combinatorial route."""
    phi = first_integral_series(abel_rhs_series(eq, order + 1),
                                eq.interval.x0, order + 1)
    values = phi.evaluate_x(eq.interval.x1)
    out = []
    for n in range(1, order + 1):
        out.append(values[n + 1] if n + 1 < len(values) else Fraction(0))
    return out


# -- the return map -----------------------------------------------------------


@dataclass(frozen=True)
class ReturnMapSeries:
    """Truncation y + sum_{n<=order} c_n y^{n+1} of the transport map
    y(x1) |-> y(x0)."""

    coefficients: tuple[Fraction, ...]
    order: int

    def coefficient(self, n: int) -> Fraction:
        if not 1 <= n <= self.order:
            raise IndexError("coefficient index out of the computed range")
        return self.coefficients[n - 1]

    @property
    def is_identity(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def evaluate(self, y: Union[int, str, Fraction]) -> Fraction:
        y = rat(y)
        acc = y
        ypow = y
        for c in self.coefficients:
            ypow *= y
            acc += c * ypow
        return acc

    def inverse(self) -> "ReturnMapSeries":
        """Series inverse (the forward transport y(x0) |-> y(x1)) to the
        same order."""
        inv = invert_map_series(self.coefficients)
        return ReturnMapSeries(tuple(inv), self.order)

    def compose(self, inner: "ReturnMapSeries") -> "ReturnMapSeries":
        """Coefficients of self(inner(y)) modulo y^(order+2)."""
        order = min(self.order, inner.order)
        outer = [Fraction(1)] + list(self.coefficients[:order])
        inner_c = [Fraction(1)] + list(inner.coefficients[:order])
        composed = _compose_unit_series(outer, inner_c, order + 1)
        return ReturnMapSeries(tuple(composed[1:]), order)


def _series_mul(a: list[Fraction], b: list[Fraction], size: int) -> list[Fraction]:
    out = [Fraction(0)] * size
    for i, ca in enumerate(a):
        if ca and i < size:
            for j, cb in enumerate(b):
                if i + j >= size:
                    break
                out[i + j] += ca * cb
    return out


def _compose_unit_series(outer: list[Fraction], inner: list[Fraction],
                         size: int) -> list[Fraction]:
    """Composition of maps y*(outer in y) after y*(inner in y): both given
    as coefficient lists of y^1..y^size; returns the same shape."""
    g = [Fraction(0)] + inner[:]                 # inner map in the power basis
    del g[size + 1:]
    g += [Fraction(0)] * (size + 1 - len(g))
    acc = [Fraction(0)] * (size + 1)
    gpow = [Fraction(0)] * (size + 1)
    gpow[0] = Fraction(1)                        # g^0
    for k, c in enumerate(outer):                # outer = sum c_k y^{k+1}
        gpow = _series_mul(gpow, g, size + 1)    # g^{k+1}
        if c:
            for idx in range(size + 1):
                acc[idx] += c * gpow[idx]
    return acc[1:]


def invert_map_series(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients d_n of the inverse of y + sum c_n y^{n+1}, i.e.
    B(F(y)) = y modulo y^(N+2)."""
    n = len(coeffs)
    outer = [Fraction(1)] + list(coeffs)
    inv = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        value = _compose_unit_series(outer, inv, k + 1)[k]
        inv[k] = -value
    return inv[1:]


def return_map(eq: AbelEquation, order: int = 10,
               cross_check: bool = False) -> ReturnMapSeries:
    """c_1..c_order of the transport map.  With cross_check=True the
    coefficients are recomputed through the first-integral series and any
    disagreement raises OracleMismatch (a bug detector, not an input
    property)."""
    if order < 1:
        raise InvalidEquation("order must be >= 1")
    cache: WordCache = {}
    coeffs = [brudnyi_coefficient(eq, n, cache) for n in range(1, order + 1)]
    if cross_check:
        oracle = picard_coefficients(eq, order)
        for n, (a, b) in enumerate(zip(coeffs, oracle), start=1):
            if a != b:
                raise OracleMismatch(
                    "c_%d: combinatorial %s != series %s" % (n, a, b))
    return ReturnMapSeries(tuple(coeffs), order)


# -- necessary conditions and universal centers -------------------------------


@dataclass(frozen=True)
class NecessaryReport:
    """The three integrals whose vanishing any two-species center needs."""

    int_a1: Fraction
    int_a2: Fraction
    int_a1_a2: Fraction

    @property
    def is_satisfied(self) -> bool:
        return self.int_a1 == 0 and self.int_a2 == 0 and self.int_a1_a2 == 0

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.int_a1, self.int_a2, self.int_a1_a2)


def necessary_conditions(eq: AbelEquation) -> NecessaryReport:
    """Evaluate int a1, int a2 and int a1 a2 over the interval; all three
    vanish for any center of a two-species equation."""
    if eq.m > 2:
        raise InvalidEquation("necessary conditions apply to species a1, a2 only")
    cache: WordCache = {}
    return NecessaryReport(
        int_a1=eq.word_integral((1,), cache),
        int_a2=eq.word_integral((2,), cache),
        int_a1_a2=eq.word_integral((1, 2), cache),
    )


@dataclass(frozen=True)
class UniversalVerdict:
    """Outcome of the exhaustive word-integral search.  `universal` means
    every word integral within the search bounds vanished; a witness is
    the first word (as a species-index tuple) with nonzero integral."""

    universal: bool
    max_length: int
    max_weight: Optional[int]
    witness: Optional[tuple[int, ...]] = None
    witness_value: Optional[Fraction] = None

    def __str__(self) -> str:
        if self.universal:
            bound = "length <= %d" % self.max_length
            if self.max_weight is not None:
                bound += ", weight <= %d" % self.max_weight
            return "UniversalUpTo(%s)" % bound
        return "NotUniversal(word a_%s, integral %s)" % (
            "a_".join(str(i) for i in self.witness), self.witness_value)


def universal_check(eq: AbelEquation, max_length: int = 4,
                    max_weight: Optional[int] = None,
                    cache: Optional[WordCache] = None) -> UniversalVerdict:
    """Exhaustively evaluate every word over the species with length up to
    max_length (and total species weight up to max_weight, when given);
    report the first nonzero integral as a witness."""
    if max_length < 1:
        raise InvalidEquation("max_length must be >= 1")
    if cache is None:
        cache = {}
    indices = [i for i in range(1, eq.m + 1)
               if not eq.species[i - 1].is_zero]

    def words(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) >= max_length:
            return
        for i in indices:
            word = prefix + (i,)
            if max_weight is not None and sum(word) > max_weight:
                continue
            yield word
            yield from words(word)

    for word in words(()):
        value = eq.word_integral(word, cache)
        if value != 0:
            return UniversalVerdict(False, max_length, max_weight,
                                    word, value)
    return UniversalVerdict(True, max_length, max_weight)


def pullback_equation(upstairs: Sequence[Poly], w: Poly,
                      interval: Interval) -> AbelEquation:
    """The equation obtained from dy/dxi + sum b_i(xi) y^{i+1} = 0 by the
    substitution xi = w(x): species a_i = (b_i o w) * w'.  When
    w(x0) = w(x1) every word integral vanishes and the center is
    universal."""
    dw = w.derivative()
    return AbelEquation([b.compose(w) * dw for b in upstairs], interval)
