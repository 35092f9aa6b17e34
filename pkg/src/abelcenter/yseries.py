"""Truncated power series in y with polynomial-in-x coefficients.

A :class:`YSeries` stores the coefficients of y^0, y^1, ... as `Poly`
objects together with an explicit truncation order: terms of y-power
greater than ``trunc`` are dropped on construction and by every
operation.  The truncation order of a binary operation is the minimum of
the operands' — two series of different working precision never combine
silently at the higher one.

Two distinct uses share this one kernel:

* genuinely truncated series (transport-map expansions), where ``trunc``
  is the working order; and
* bivariate polynomials in (x, y), where the caller picks ``trunc`` at
  least as large as the total y-degree of anything it will compute, so no
  information is ever cut.

The y-derivative of a series truncated at N is returned at the same
truncation: it is the derivative of the stored representative, whose
y^N coefficient would only be affected by the dropped y^(N+1) term.
Callers that need a strict modulus must lower ``trunc`` themselves.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .exactpoly import Poly, rat


class DivisibilityError(ArithmeticError):
    """A requested division by a power of y does not go through exactly."""


def _as_coeff_poly(c) -> Poly:
    if isinstance(c, Poly):
        return c
    return Poly.constant(c)


class YSeries:
    """Power series sum_i c_i(x) y^i truncated at y^trunc."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs: Iterable = (), trunc: int = 0):
        if trunc < 0:
            raise ValueError("truncation order must be >= 0")
        cs = [_as_coeff_poly(c) for c in coeffs]
        del cs[trunc + 1:]
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "trunc", trunc)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, trunc: int) -> "YSeries":
        return cls((), trunc)

    @classmethod
    def one(cls, trunc: int) -> "YSeries":
        return cls((Poly.one(),), trunc)

    @classmethod
    def y(cls, trunc: int) -> "YSeries":
        return cls((Poly.zero(), Poly.one()), trunc)

    @classmethod
    def from_x_poly(cls, u: Poly, trunc: int) -> "YSeries":
        return cls((u,), trunc)

    # -- structure ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def y_degree(self) -> int:
        """Degree in y of the stored representative; -1 if zero."""
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Poly:
        """Coefficient of y^k."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Poly.zero()

    def lowest_power(self) -> int:
        """Smallest k with nonzero y^k coefficient; -1 if zero."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero:
                return k
        return -1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, YSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.trunc == other.trunc

    def __hash__(self) -> int:
        return hash(("YSeries", self.coeffs, self.trunc))

    def __setattr__(self, name, value):
        raise AttributeError("YSeries is immutable")

    def __repr__(self) -> str:
        if not self.coeffs:
            return "YSeries(0; trunc=%d)" % self.trunc
        parts = ["(%r)*y^%d" % (c, k) for k, c in enumerate(self.coeffs)
                 if not c.is_zero]
        return "YSeries(%s; trunc=%d)" % (" + ".join(parts), self.trunc)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "YSeries") -> "YSeries":
        if not isinstance(other, YSeries):
            return NotImplemented
        n = min(self.trunc, other.trunc)
        a, b = self.coeffs, other.coeffs
        out = [Poly.zero()] * max(len(a), len(b))
        for i, c in enumerate(a):
            out[i] = out[i] + c
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return YSeries(out, n)

    def __neg__(self) -> "YSeries":
        return YSeries(tuple(-c for c in self.coeffs), self.trunc)

    def __sub__(self, other: "YSeries") -> "YSeries":
        if not isinstance(other, YSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["YSeries", Poly, int, Fraction]) -> "YSeries":
        if isinstance(other, (Poly, int, Fraction)):
            f = other if isinstance(other, (int, Fraction)) else other
            return YSeries(tuple(c * f for c in self.coeffs), self.trunc)
        if not isinstance(other, YSeries):
            return NotImplemented
        n = min(self.trunc, other.trunc)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return YSeries.zero(n)
        out = [Poly.zero()] * min(len(a) + len(b) - 1, n + 1)
        for i, ca in enumerate(a):
            if ca.is_zero or i > n:
                continue
            for j, cb in enumerate(b):
                if i + j > n:
                    break
                if not cb.is_zero:
                    out[i + j] = out[i + j] + ca * cb
        return YSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "YSeries":
        if n < 0:
            raise ValueError("negative power of a series")
        result = YSeries.one(self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- the operator D = d/dy, x-calculus, y-power shifts ----------------

    def y_derivative(self) -> "YSeries":
        return YSeries(tuple(c * k for k, c in enumerate(self.coeffs)
                             if k >= 1), self.trunc)

    def x_derivative(self) -> "YSeries":
        return YSeries(tuple(c.derivative() for c in self.coeffs), self.trunc)

    def x_antiderivative(self) -> "YSeries":
        """Coefficient-wise primitive in x, each with zero constant term."""
        return YSeries(tuple(c.antiderivative() for c in self.coeffs),
                       self.trunc)

    def vanish_at(self, x0: Union[int, str, Fraction]) -> "YSeries":
        """Subtract the value at x = x0 from every coefficient, so each
        coefficient polynomial vanishes there (used for primitives based
        at the left endpoint)."""
        x0 = rat(x0)
        return YSeries(tuple(c - Poly.constant(c(x0)) for c in self.coeffs),
                       self.trunc)

    def mul_by_y_power(self, m: int) -> "YSeries":
        if m < 0:
            raise ValueError("shift must be >= 0")
        return YSeries((Poly.zero(),) * m + self.coeffs, self.trunc)

    def divide_by_y_power(self, m: int) -> "YSeries":
        if m < 0:
            raise ValueError("shift must be >= 0")
        for k in range(min(m, len(self.coeffs))):
            if not self.coeffs[k].is_zero:
                raise DivisibilityError(
                    "y^%d does not divide: y^%d coefficient is %r"
                    % (m, k, self.coeffs[k]))
        return YSeries(self.coeffs[m:], self.trunc)

    # -- substitutions -----------------------------------------------------

    def evaluate_x(self, x: Union[int, str, Fraction]) -> tuple[Fraction, ...]:
        """Substitute a rational for x; returns the y-coefficient tuple in
        canonical form (trailing zeros stripped)."""
        x = rat(x)
        values = [c(x) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        return tuple(values)

    def compose_x(self, inner: Poly) -> "YSeries":
        """Substitute a polynomial for x in every coefficient."""
        return YSeries(tuple(c.compose(inner) for c in self.coeffs),
                       self.trunc)

    def scale_y(self, factor: Union[int, Fraction]) -> "YSeries":
        """Substitute factor*y for y."""
        factor = Fraction(factor)
        out = []
        f = Fraction(1)
        for c in self.coeffs:
            out.append(c * f)
            f *= factor
        return YSeries(out, self.trunc)

    def with_trunc(self, trunc: int) -> "YSeries":
        """Same coefficients re-homed at another truncation order; raising
        the order is only honest for series known to be exact polynomials."""
        return YSeries(self.coeffs, trunc)


# -- wire format -----------------------------------------------------------

def yseries_to_json(u: YSeries) -> dict:
    from .exactpoly import poly_to_json
    return {"trunc": u.trunc, "coeffs": [poly_to_json(c) for c in u.coeffs]}


def yseries_from_json(data: dict) -> YSeries:
    from .exactpoly import poly_from_json
    if not isinstance(data, dict) or "trunc" not in data or "coeffs" not in data:
        raise ValueError('series must be {"trunc": N, "coeffs": [poly, ...]}')
    return YSeries([poly_from_json(c) for c in data["coeffs"]],
                   int(data["trunc"]))
