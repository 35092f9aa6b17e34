"""Polynomial decomposition, common right factors, moments and PCC checks.

`right_factor` decides whether P = Ptilde o W for some W of a prescribed
degree d, constructively: the candidate W (normalized monic with zero
constant term) is solved degree-by-degree from the top d-1 coefficients
of P, then P is expanded in the W-adic basis; the decomposition exists
iff every W-adic digit is a constant.  In characteristic zero the
normalized right factor of a fixed degree is unique, so this either finds
it or proves there is none — no field theory needed at runtime.

Moment vanishing (int q A^k over the interval, k = 0..kmax) is checked
only up to a finite kmax; the decidable certificate in both directions is
always the decomposition search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .exactpoly import Poly, definite_integral
from .iterint import Interval


def canonical_right_form(w: Poly) -> Poly:
    """The affine normalization (w - w(0)) / lc(w): monic, zero constant
    term.  Idempotent; degree >= 1 required."""
    if w.degree < 1:
        raise ValueError("cannot normalize a constant polynomial")
    return (w - Poly.constant(w(0))) * (1 / w.leading_coefficient())


@dataclass(frozen=True)
class DecompositionResult:
    """A common right factor W (canonical form) with the left factors
    that recompose P and Q exactly, and whether W closes the interval."""

    w: Poly
    p_left: Poly
    q_left: Poly
    closes: bool


def right_factor(p: Poly, d: int) -> Optional[tuple[Poly, Poly]]:
    """Return (W, Ptilde) with p = Ptilde o W, W canonical of degree d, or
    None.  Requires d | deg p and 2 <= d <= deg p; d == deg p is the
    affine-trivial boundary case, accepted because common-factor searches
    need it (e.g. Q = Qtilde o P)."""
    n = p.degree
    if n < 2:
        raise ValueError("polynomial of degree >= 2 required")
    if not 2 <= d <= n:
        raise ValueError("factor degree must satisfy 2 <= d <= deg p")
    if n % d:
        raise ValueError("factor degree must divide deg p")
    if d == n:
        w = canonical_right_form(p)
        lead = p.leading_coefficient()
        return w, Poly((p(0), lead))

    e = n // d
    mu = p.leading_coefficient()
    # Top-down solve: the x^(n-i) coefficient of W^e is linear in w_{d-i}
    # with unit-free coefficient e, all higher unknowns already fixed.
    w_coeffs = [Fraction(0)] * d + [Fraction(1)]     # monic, w_0 = 0
    for i in range(1, d):
        trial = Poly(w_coeffs) ** e
        target = p.coefficient(n - i) / mu
        w_coeffs[d - i] = (target - trial.coefficient(n - i)) / e
    w = Poly(w_coeffs)

    # W-adic expansion: p = sum digit_j * W^j with deg digit_j < d; the
    # decomposition exists iff every digit is constant.
    digits = []
    rest = p
    while not rest.is_zero:
        rest, digit = divmod(rest, w)
        if digit.degree > 0:
            return None
        digits.append(digit.coefficient(0))
    p_tilde = Poly(digits)
    if p_tilde.compose(w) != p:
        return None
    return w, p_tilde


def common_factor(p: Poly, q: Poly, iv: Interval) -> Optional[DecompositionResult]:
    """Maximal-degree common right factor of p and q, if any: divisors d of
    gcd(deg p, deg q) are tried in decreasing order and the first d at
    which the canonical right factors agree wins.  `closes` records
    whether W(x0) = W(x1)."""
    if p.degree < 2 or q.degree < 2:
        raise ValueError("both polynomials must have degree >= 2")
    g = gcd(p.degree, q.degree)
    for d in range(g, 1, -1):
        if g % d:
            continue
        fp = right_factor(p, d)
        if fp is None:
            continue
        fq = right_factor(q, d)
        if fq is None:
            continue
        if fp[0] != fq[0]:
            continue
        w = fp[0]
        return DecompositionResult(
            w=w, p_left=fp[1], q_left=fq[1],
            closes=w(iv.x0) == w(iv.x1))
    return None


def moments(q: Poly, a: Poly, iv: Interval, kmax: int) -> list[Fraction]:
    """The exact moments m_k = int q * a^k over the interval,
    k = 0..kmax."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    out = []
    power = Poly.one()
    for k in range(kmax + 1):
        out.append(definite_integral(q * power, iv.x0, iv.x1))
        if k < kmax:
            power = power * a
    return out


@dataclass(frozen=True)
class PCCVerdict:
    """Outcome of the composition-condition check.

    `holds` is the verdict; `w` the closing common factor when one
    exists.  `endpoints_generic` reports whether A'(x0) != 0 and
    A'(x1) != 0 — outside that hypothesis moment vanishing can hold
    without the composition condition, so a negative verdict should be
    read together with this flag.  `degenerate` names the constant/zero
    special case used, if any."""

    holds: bool
    w: Optional[Poly]
    endpoints_generic: bool
    degenerate: Optional[str] = None


def _closing_quadratic(iv: Interval) -> Poly:
    # x^2 - (x0+x1) x takes equal values at both endpoints.
    return Poly((0, -(iv.x0 + iv.x1), 1))


def pcc_check(a: Poly, b: Poly, iv: Interval) -> PCCVerdict:
    """Does the pair (a, b) factor as a = at o W, b = bt o W with
    W(x0) = W(x1)?  Constant/zero members factor through anything, so
    they reduce to a closing right factor of the other member alone (or,
    when both are constant, to any closing W)."""
    generic = _endpoints_generic(a, iv)
    const_a = a.degree <= 0
    const_b = b.degree <= 0
    if const_a and const_b:
        return PCCVerdict(True, _closing_quadratic(iv), generic,
                          degenerate="both constant")
    if const_a or const_b:
        main = b if const_a else a
        tag = "first member constant" if const_a else "second member constant"
        if main.degree < 2:
            return PCCVerdict(False, None, generic, degenerate=tag)
        if main(iv.x0) == main(iv.x1):
            return PCCVerdict(True, canonical_right_form(main), generic,
                              degenerate=tag)
        return PCCVerdict(False, None, generic, degenerate=tag)
    if a.degree < 2 or b.degree < 2:
        # a degree-1 member factors only through affine W, which is excluded
        return PCCVerdict(False, None, generic, degenerate="degree-1 member")
    found = common_factor(a, b, iv)
    if found is not None and found.closes:
        return PCCVerdict(True, found.w, generic)
    return PCCVerdict(False, None, generic)


def _endpoints_generic(a: Poly, iv: Interval) -> bool:
    da = a.derivative()
    return da(iv.x0) != 0 and da(iv.x1) != 0
