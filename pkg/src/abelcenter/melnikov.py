"""First and second Melnikov series of a perturbed Abel equation.

The unperturbed flow is dy/y^2 = a(x) dx on [x0, x1], whose primitive
A (normalized so A(x0) = A(x1) = 0) makes H = 1/y + A(x) a first
integral.  Perturbation orders are one-forms omega_j = (p_j + y q_j) dx.

Expanded at h = infinity along the level set {H = h}:

    M1(h) = int p1 + sum_{k>=0} h^(-k-1) * int q1 A^k,

so M1 vanishing identically is exactly "int p1 = 0 plus the moment
problem for (q1, A)", whose decidable certificate is the polynomial
composition condition on (A, Q1 = int q1).  Only under that certificate
is the second-order formula valid:

    M2(h) = int p2 + int g / (h - A)^2,   g = q1 * P1 - Q2 * a,

with P1, Q2 the primitives of p1, q2 vanishing at x0; its expansion
carries (k+1) * int g A^k at h^(-k-2).  When Q2(x1) != 0 an additional
boundary term (int q2)/h is dropped by this formula; we keep the
normalization Q2(x0) = 0, emit a warning recording the dropped
coefficient, and leave the series as stated.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .composition import moments, pcc_check
from .exactpoly import Poly, definite_integral, rat
from .iterint import Interval
from .yseries import YSeries


class M1NotZero(ValueError):
    """The second-order formula was requested without a certificate that
    the first Melnikov function vanishes identically."""


class UnsupportedOrder(NotImplementedError):
    """Only the order-1 -> order-2 recursion step is implemented."""


@dataclass(frozen=True)
class PerturbedAbel:
    """Unperturbed coefficient a(x) plus perturbation orders
    (p_j, q_j), j = 1, 2, ...  The primitive of a must close the
    interval (A(x0) = A(x1)); otherwise the unperturbed equation has no
    center and the expansion below is meaningless."""

    a: Poly
    orders: tuple[tuple[Poly, Poly], ...]
    interval: Interval

    def __init__(self, a: Poly, orders: Sequence[Sequence[Poly]],
                 interval: Interval):
        if definite_integral(a, interval.x0, interval.x1) != 0:
            raise ValueError(
                "the primitive of a must take equal endpoint values")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "orders",
                           tuple((p, q) for p, q in orders))
        object.__setattr__(self, "interval", interval)

    def hamiltonian_primitive(self) -> Poly:
        """A(x) = int a with A(x0) = 0 (hence A(x1) = 0 too)."""
        prim = self.a.antiderivative()
        return prim - Poly.constant(prim(self.interval.x0))

    def order_forms(self, j: int) -> tuple[Poly, Poly]:
        """(p_j, q_j) with 1-based index; zero forms beyond the stored
        orders."""
        if 1 <= j <= len(self.orders):
            return self.orders[j - 1]
        return Poly.zero(), Poly.zero()


@dataclass(frozen=True)
class MomentSeries:
    """Truncated expansion at h = infinity of a Melnikov function.

    evaluate(h) = constant_term + sum_k tail[k] * h^(-k-pole_order);
    pole_order is 1 for M1 and 2 for M2 (the (k+1) multipliers of the
    second-order expansion are already folded into the tail)."""

    constant_term: Fraction
    tail: tuple[Fraction, ...]
    kmax: int
    pole_order: int = 1

    @property
    def is_zero(self) -> bool:
        return self.constant_term == 0 and all(c == 0 for c in self.tail)

    def evaluate(self, h: Union[int, str, Fraction]) -> Fraction:
        h = rat(h)
        acc = self.constant_term
        for k, c in enumerate(self.tail):
            acc += c / h ** (k + self.pole_order)
        return acc


def melnikov1(sys: PerturbedAbel, kmax: int) -> MomentSeries:
    """Pole-order-1 series of the first Melnikov function: constant term
    int p1, tail[k] = int q1 A^k for k = 0..kmax."""
    if not sys.orders:
        raise ValueError("at least one perturbation order is required")
    p1, q1 = sys.order_forms(1)
    iv = sys.interval
    a_prim = sys.hamiltonian_primitive()
    return MomentSeries(
        constant_term=definite_integral(p1, iv.x0, iv.x1),
        tail=tuple(moments(q1, a_prim, iv, kmax)),
        kmax=kmax,
        pole_order=1,
    )


@dataclass(frozen=True)
class M1Certificate:
    """Why M1 is identically zero: the constant term vanishes and the
    moment tail is certified by composition (or by q1 = 0)."""

    constant_zero: bool
    moments_certified: bool
    reason: str
    w: Optional[Poly] = None

    @property
    def certified(self) -> bool:
        return self.constant_zero and self.moments_certified


def certify_m1_zero(sys: PerturbedAbel) -> M1Certificate:
    """Decide int p1 = 0 and the composition certificate for the moment
    tail of M1."""
    p1, q1 = sys.order_forms(1)
    iv = sys.interval
    const_zero = definite_integral(p1, iv.x0, iv.x1) == 0
    if q1.is_zero:
        return M1Certificate(const_zero, True, "q1 = 0")
    a_prim = sys.hamiltonian_primitive()
    q1_prim = q1.antiderivative()
    q1_prim = q1_prim - Poly.constant(q1_prim(iv.x0))
    verdict = pcc_check(a_prim, q1_prim, iv)
    if verdict.holds:
        return M1Certificate(const_zero, True,
                             "composition condition on (A, Q1)", verdict.w)
    return M1Certificate(const_zero, False,
                         "no composition certificate for (A, Q1)")


def melnikov2(sys: PerturbedAbel, kmax: int, force: bool = False) -> MomentSeries:
    """Pole-order-2 series of the second Melnikov function, valid only
    under a certified M1 = 0: constant term int p2,
    tail[k] = (k+1) * int (q1 P1 - Q2 a) A^k.

    Raises M1NotZero when the certificate fails, unless force=True (then
    the expansion is produced anyway, with a warning)."""
    cert = certify_m1_zero(sys)
    if not cert.certified:
        if not force:
            raise M1NotZero(
                "second-order formula needs M1 = 0; certificate failed "
                "(%s%s)" % (cert.reason,
                            "" if cert.constant_zero else "; int p1 != 0"))
        warnings.warn("expanding the second-order series although M1 = 0 "
                      "is not certified (%s)" % cert.reason)
    iv = sys.interval
    p1, q1 = sys.order_forms(1)
    p2, q2 = sys.order_forms(2)
    a_prim = sys.hamiltonian_primitive()
    p1_prim = p1.antiderivative()
    p1_prim = p1_prim - Poly.constant(p1_prim(iv.x0))
    q2_prim = q2.antiderivative()
    q2_prim = q2_prim - Poly.constant(q2_prim(iv.x0))
    boundary = q2_prim(iv.x1)
    if boundary != 0:
        warnings.warn(
            "Q2 does not close the interval: the expansion drops a "
            "boundary term %s/h" % boundary)
    g = q1 * p1_prim - q2_prim * sys.a
    raw = moments(g, a_prim, iv, kmax)
    return MomentSeries(
        constant_term=definite_integral(p2, iv.x0, iv.x1),
        tail=tuple((k + 1) * raw[k] for k in range(kmax + 1)),
        kmax=kmax,
        pole_order=2,
    )


def francoise_step(sys: PerturbedAbel, order: int = 2) -> tuple[YSeries, YSeries]:
    """The (R1, r1) pair of the order-1 -> order-2 recursion step for the
    perturbed Abel flow, in y-series form:

        R1 = P1(x) + y Q1(x),     r1 = -y^2 Q1(x),

    with P1, Q1 the primitives of p1, q1 vanishing at x0.  R1 is the
    x-primitive of omega_1 at frozen y; r1 is the x-primitive of the
    level-set h-derivative omega_1' = -y^2 q1 dx.  The exact polynomial
    identity these satisfy is the Gelfand-Leray relation

        y^2 * d omega_1 = (y^2 dH) ^ dr1        (dr1 at frozen y),

    which is what the second-order computation rests on; as plane
    (x, y)-forms, omega_1 - r1 dH is closed only up to O(y) terms that the
    recursion disposes of at the next order.

    Orders >= 3 are not implemented (UnsupportedOrder)."""
    if order != 2:
        raise UnsupportedOrder(
            "only the order-1 -> order-2 step is implemented")
    p1, q1 = sys.order_forms(1)
    x0 = sys.interval.x0
    p1_prim = p1.antiderivative()
    p1_prim = p1_prim - Poly.constant(p1_prim(x0))
    q1_prim = q1.antiderivative()
    q1_prim = q1_prim - Poly.constant(q1_prim(x0))
    r_big = YSeries((p1_prim, q1_prim), trunc=2)
    r_small = YSeries((Poly.zero(), Poly.zero(), -q1_prim), trunc=2)
    return r_big, r_small
