"""Exact rational scalars and dense univariate polynomial arithmetic.

Every quantity in the certification core is either a ``Rational`` (an alias
of :class:`fractions.Fraction`: arbitrary precision, always in lowest terms,
positive denominator) or a :class:`Poly` built from them.  No floating point
is allowed anywhere in these paths; floats only appear in the separate
numeric cross-check integrator.

A polynomial is stored as a tuple of coefficients, index = degree in x,
with trailing zeros stripped.  The zero polynomial is the empty tuple, so
equality of mathematical polynomials is structural equality of the tuples
and every "is this identically zero?" question is a direct comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction

Scalar = Union[int, Fraction]

_LOWER_DIGITS = str.maketrans("0123456789-", "₀₁₂₃₄₅₆₇₈₉₋")


def rat(value: Union[int, str, Fraction]) -> Fraction:
    """Parse a rational scalar.  Accepts int, Fraction, or strings
    like ``"3"`` and ``"-7/4"``.  Floats are rejected: binary floats have
    no place in exact certificates."""
    if isinstance(value, float):
        raise TypeError("refusing float %r in exact arithmetic" % (value,))
    return Fraction(value)


def rat_str(value: Fraction) -> str:
    """Canonical text form: ``"num/den"``, or ``"num"`` when den == 1."""
    return str(value)


class Poly:
    """Univariate polynomial in x over the rationals, canonical form."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Union[int, str, Fraction]] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Union[int, str, Fraction]) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, coeff: Union[int, str, Fraction] = 1) -> "Poly":
        if power < 0:
            raise ValueError("monomial power must be >= 0")
        return cls((0,) * power + (coeff,))

    # -- structure ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        """Coefficient of x^k (zero beyond the stored degree)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("Poly is immutable")

    # -- ring operations ------------------------------------------------

    def __add__(self, other: Union["Poly", Scalar]) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["Poly", Scalar]) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Union["Poly", Scalar]) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly.zero()
            return Poly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division: self = q*other + r with deg r < deg other."""
        if not isinstance(other, Poly):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.leading_coefficient()
        if len(rem) - 1 < d:
            return Poly.zero(), self
        quot = [Fraction(0)] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                q = c / lead
                quot[i - d] = q
                for j, oc in enumerate(other.coeffs):
                    rem[i - d + j] -= q * oc
        return Poly(quot), Poly(rem)

    # -- calculus and evaluation -----------------------------------------

    def __call__(self, x: Union[int, str, Fraction]) -> Fraction:
        """Evaluate at a rational point (Horner)."""
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """self ∘ inner, i.e. substitute inner for x (Horner)."""
        acc = Poly.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.constant(c)
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(c * k for k, c in enumerate(self.coeffs) if k >= 1))

    def antiderivative(self) -> "Poly":
        """The primitive with zero constant term."""
        if not self.coeffs:
            return Poly.zero()
        out = [Fraction(0)]
        for k, c in enumerate(self.coeffs):
            out.append(c / (k + 1))
        return Poly(out)

    # -- display ----------------------------------------------------------

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append("%s*x" % c if c != 1 else "x")
            else:
                terms.append("%s*x^%d" % (c, k) if c != 1 else "x^%d" % k)
        return "Poly(%s)" % " + ".join(terms).replace("+ -", "- ")


def _as_poly(value) -> Union[Poly, object]:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.constant(value)
    return NotImplemented


def definite_integral(u: Poly, x0: Union[int, str, Fraction],
                      x1: Union[int, str, Fraction]) -> Fraction:
    """Exact value of the integral of u over [x0, x1] (oriented)."""
    prim = u.antiderivative()
    return prim(rat(x1)) - prim(rat(x0))


# -- wire format (index = degree, entries are rational strings) -----------

def poly_to_json(u: Poly) -> list[str]:
    return [rat_str(c) for c in u.coeffs]


def poly_from_json(data: Iterable) -> Poly:
    if isinstance(data, (str, bytes)) or not isinstance(data, (list, tuple)):
        raise ValueError("polynomial must be a JSON array of rational strings")
    return Poly(rat(c) for c in data)
