"""Darboux first integrals, the P^p = Q^q generator, the master Liénard
family and the full certification pipeline for its k = 2 counterexample.

Bivariate polynomials in (x, y) reuse the YSeries kernel with a
truncation chosen at least as large as any y-degree that can appear, so
every identity below is exact.

A foliation is the zero set of omega = Pform dy - Qform dx.  A product
H = prod f_i^{lambda_i} is a first integral iff dH wedge omega = 0; after
clearing the (nonvanishing) scalar H / prod f_i this is the polynomial
identity

    eta_x * Pform + eta_y * Qform = 0,
    eta = sum_i lambda_i (prod_{j != i} f_j) df_i,

which `verify_first_integral` tests literally (rational exponents are
lifted to integers by the common denominator first; scaling all
exponents by a nonzero constant does not change the verdict).

Truncated pairs P, Q with P^p = Q^q mod y^(n+1) have the one-form
p Q dP - q P dQ divisible by y^n, with the quotient's dx-part divisible
by one more power of y; `reduce_foliation` divides out y^n, checks both
facts, and for n = 2 also checks the quotient against independently
derived closed forms in the coefficients of P and Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from .centers import (AbelEquation, OracleMismatch, ReturnMapSeries,
                      UniversalVerdict, return_map, universal_check)
from .composition import DecompositionResult, common_factor
from .exactpoly import Poly, rat
from .iterint import Interval
from .numeric import NumericConfig, transport
from .yseries import YSeries


class InvalidBase(ValueError):
    """The generator needs a unit base: nonzero y^0 coefficient."""


@dataclass(frozen=True)
class Foliation:
    """omega = Pform dy - Qform dx; not both identically zero."""

    p_form: YSeries
    q_form: YSeries

    def __post_init__(self):
        if self.p_form.is_zero and self.q_form.is_zero:
            raise ValueError("the zero one-form defines no foliation")


@dataclass(frozen=True)
class DarbouxIntegral:
    """H = prod f_i^(lambda_i) with bivariate polynomial factors and
    nonzero rational exponents."""

    factors: tuple[tuple[YSeries, Fraction], ...]

    def __init__(self, factors: Sequence[tuple[YSeries, Union[int, str, Fraction]]]):
        fs = []
        for f, lam in factors:
            lam = rat(lam)
            if lam == 0:
                raise ValueError("zero exponent factor is vacuous")
            if f.is_zero:
                raise ValueError("zero polynomial cannot be a factor")
            fs.append((f, lam))
        object.__setattr__(self, "factors", tuple(fs))

    def scale_exponents(self, c: Union[int, str, Fraction]) -> "DarbouxIntegral":
        c = rat(c)
        return DarbouxIntegral([(f, lam * c) for f, lam in self.factors])


def verify_first_integral(fol: Foliation, h: DarbouxIntegral) -> bool:
    """Exact polynomial test that H is a first integral of the foliation."""
    trunc = (sum(max(f.y_degree, 0) for f, _ in h.factors)
             + max(fol.p_form.y_degree, fol.q_form.y_degree, 0) + 2)
    denom_lcm = 1
    for _, lam in h.factors:
        denom_lcm = denom_lcm * lam.denominator // gcd(denom_lcm,
                                                       lam.denominator)
    factors = [(f.with_trunc(trunc), lam * denom_lcm)
               for f, lam in h.factors]
    eta_x = YSeries.zero(trunc)
    eta_y = YSeries.zero(trunc)
    for i, (f, weight) in enumerate(factors):
        others = YSeries.one(trunc)
        for j, (g, _) in enumerate(factors):
            if j != i:
                others = others * g
        eta_x = eta_x + others * f.x_derivative() * weight
        eta_y = eta_y + others * f.y_derivative() * weight
    identity = (eta_x * fol.p_form.with_trunc(trunc)
                + eta_y * fol.q_form.with_trunc(trunc))
    return identity.is_zero


def foliations_proportional(a: Foliation, b: Foliation) -> bool:
    """Same foliation up to a nonzero rational scalar on the one-form."""
    trunc = max(a.p_form.trunc, a.q_form.trunc, b.p_form.trunc, b.q_form.trunc)
    ratio: Optional[Fraction] = None
    for own, other in ((a.p_form, b.p_form), (a.q_form, b.q_form)):
        own = own.with_trunc(trunc)
        other = other.with_trunc(trunc)
        for k in range(max(own.y_degree, other.y_degree) + 1):
            ca, cb = own.coefficient(k), other.coefficient(k)
            if ca.is_zero != cb.is_zero:
                return False
            if ca.is_zero:
                continue
            if ca.degree != cb.degree:
                return False
            for ia, ib in zip(ca.coeffs, cb.coeffs):
                if (ia == 0) != (ib == 0):
                    return False
                if ia == 0:
                    continue
                r = ia / ib
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    return False
    return ratio is not None


# -- the functional equation P^p = Q^q ---------------------------------------


@dataclass(frozen=True)
class TruncatedPair:
    """P, Q truncated at y^n with gcd(p, q) = 1 and
    P^p = Q^q mod y^(n+1), validated on construction."""

    p_series: YSeries
    q_series: YSeries
    p: int
    q: int
    n: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("exponents must be positive")
        if gcd(self.p, self.q) != 1:
            raise ValueError("exponents must be coprime")
        object.__setattr__(self, "p_series", self.p_series.with_trunc(self.n))
        object.__setattr__(self, "q_series", self.q_series.with_trunc(self.n))
        if self.p_series ** self.p != self.q_series ** self.q:
            raise ValueError("P^p != Q^q modulo y^(n+1)")


def solve_pq(r: YSeries, p: int, q: int, n: int) -> TruncatedPair:
    """Every solution of P^p = Q^q is a power pair of a common base:
    P = R^q and Q = R^p (note the crossed exponents: then both sides are
    R^(pq)).  Returns the pair truncated at y^n."""
    if gcd(p, q) != 1:
        raise ValueError("exponents must be coprime")
    if r.coefficient(0).is_zero:
        raise InvalidBase("the base series needs a nonzero y^0 coefficient")
    base = r.with_trunc(n)
    return TruncatedPair(base ** q, base ** p, p, q, n)


def _quadratic_truncation_forms(tp: TruncatedPair) -> tuple[YSeries, YSeries]:
    """Closed forms of the reduced one-form for n = 2, derived directly
    from the coefficient constraints of P^p = Q^q mod y^3:

        omega_y / y^2 = r1 y + r2,      omega_x / y^2 = -y (r3 y + r4),

    r1 = 2(p-q) a2 b2,
    r2 = (p-2q) a1 b2 - (q-2p) b1 a2,
    r3 = q b2' a2 - p a2' b2,
    r4 = q (b1' a2 + b2' a1) - p (a1' b2 + a2' b1).
    """
    a1, a2 = tp.p_series.coefficient(1), tp.p_series.coefficient(2)
    b1, b2 = tp.q_series.coefficient(1), tp.q_series.coefficient(2)
    p, q = tp.p, tp.q
    r1 = 2 * (p - q) * (a2 * b2)
    r2 = (p - 2 * q) * (a1 * b2) - (q - 2 * p) * (b1 * a2)
    r3 = q * (b2.derivative() * a2) - p * (a2.derivative() * b2)
    r4 = (q * (b1.derivative() * a2 + b2.derivative() * a1)
          - p * (a1.derivative() * b2 + a2.derivative() * b1))
    omega_y = YSeries((r2, r1), trunc=2)
    omega_x = YSeries((Poly.zero(), -r4, -r3), trunc=2)
    return omega_x, omega_y


def reduce_foliation(tp: TruncatedPair) -> Foliation:
    """Form omega = p Q dP - q P dQ, check exact divisibility (y^n in both
    components, y^(n+1) in the dx-component, so the reduced form vanishes
    on the line y = 0), divide out y^n, and return the reduced foliation.
    For n = 2 the quotient is also checked against the closed forms."""
    n = tp.n
    trunc = 2 * n + 2
    ps = tp.p_series.with_trunc(trunc)
    qs = tp.q_series.with_trunc(trunc)
    omega_x = qs * ps.x_derivative() * tp.p - ps * qs.x_derivative() * tp.q
    omega_y = qs * ps.y_derivative() * tp.p - ps * qs.y_derivative() * tp.q
    omega_x.divide_by_y_power(min(n + 1, omega_x.trunc))  # raises if not
    red_x = omega_x.divide_by_y_power(n)
    red_y = omega_y.divide_by_y_power(n)
    if n == 2:
        want_x, want_y = _quadratic_truncation_forms(tp)
        if (red_x.coeffs != want_x.coeffs) or (red_y.coeffs != want_y.coeffs):
            raise OracleMismatch(
                "reduced quadratic-truncation form disagrees with its "
                "closed-form derivation")
    return Foliation(p_form=red_y, q_form=-red_x)


# -- the master Liénard family ------------------------------------------------


@dataclass(frozen=True)
class MasterSystem:
    """Output of the family generator: the (normalized) plane system, its
    Darboux first integral, the generating truncated pair, and the
    derived coefficient polynomials of the normal form
    dx/dt = -y + r2(x), dy/dt = y r4(x) (reachable from `system` by
    y -> -y)."""

    system: Foliation
    first_integral: DarbouxIntegral
    pair: TruncatedPair
    r2: Poly
    r4: Poly


def generate_master(k: int, r: Poly) -> MasterSystem:
    """Instantiate the degree-k family member with inner polynomial r(x).

    The first integral is
    H = [(1-r^2)^(2k) + 2k r (1-r^2)^k y + k y^2]^(2k-1)
      / [(1-r^2)^(2k-1) + (2k-1) r (1-r^2)^(k-1) y + (2k-1)/2 y^2]^(2k),
    a valid truncated pair for (p, q) = (2k-1, 2k) at n = 2; the plane
    system is its reduced foliation, normalized so the dy-coefficient is
    y + c(x).  The result is self-verified before being returned."""
    if k < 1:
        raise ValueError("family index k must be >= 1")
    if not isinstance(r, Poly):
        r = Poly.constant(r)
    u = Poly.one() - r * r
    p, q = 2 * k - 1, 2 * k
    numerator = YSeries((u ** (2 * k), 2 * k * (r * u ** k),
                         Poly.constant(k)), trunc=2)
    denominator = YSeries((u ** (2 * k - 1),
                           (2 * k - 1) * (r * u ** (k - 1)),
                           Poly.constant(Fraction(2 * k - 1, 2))), trunc=2)
    pair = TruncatedPair(numerator, denominator, p, q, 2)
    raw = reduce_foliation(pair)
    lead = raw.p_form.coefficient(1)
    if lead.degree != 0:
        raise OracleMismatch("family dy-coefficient is not constant in x")
    scale = 1 / lead.coefficient(0)
    system = Foliation(p_form=raw.p_form * scale, q_form=raw.q_form * scale)
    first_integral = DarbouxIntegral([(numerator, p), (denominator, -q)])
    if not verify_first_integral(system, first_integral):
        raise OracleMismatch("family member failed its own verification")
    r2 = system.p_form.coefficient(0)
    r4 = system.q_form.coefficient(1)
    return MasterSystem(system=system, first_integral=first_integral,
                        pair=pair, r2=r2, r4=r4)


def lienard_standard_form(fol: Foliation) -> tuple[Poly, Poly]:
    """Carry a foliation (y + c(x)) dy - y e(x) dx = 0 to the standard
    Liénard data: the substitution y -> -y - c(x) turns it into
    y dy + (q + p y) dx = 0 with p = c' + e and q = c e.  Returns (p, q)."""
    if (fol.p_form.coefficient(1) != Poly.one()
            or fol.p_form.y_degree != 1
            or not fol.q_form.coefficient(0).is_zero
            or fol.q_form.y_degree > 1):
        raise ValueError("foliation is not in the (y + c)dy = y e dx shape")
    c = fol.p_form.coefficient(0)
    e = fol.q_form.coefficient(1)
    return c.derivative() + e, c * e


def abel_foliation(a: Poly, b: Poly) -> Foliation:
    """The foliation dy - (a y^2 + b y^3) dx = 0 of dy/dx = a y^2 + b y^3."""
    trunc = 4
    return Foliation(
        p_form=YSeries.one(trunc),
        q_form=YSeries((Poly.zero(), Poly.zero(), a, b), trunc))


# -- fixed fixtures ------------------------------------------------------------


def quadratic_q4_fixture(alpha: Union[int, str, Fraction]
                         ) -> tuple[Foliation, DarbouxIntegral]:
    """The exceptional quadratic family: foliation
    (-alpha x^2 - 2y^2 - alpha y + x) dx + (xy - alpha x + 1) dy = 0
    with first integral (x^2 + 2y + alpha)^3 / (x^3 + 3xy + 1)^2."""
    alpha = rat(alpha)
    trunc = 6
    p_form = YSeries((Poly((1, -alpha)), Poly.x()), trunc)
    q_form = YSeries((Poly((0, -1, alpha)), Poly.constant(alpha),
                      Poly.constant(2)), trunc)
    numerator = YSeries((Poly((alpha, 0, 1)), Poly.constant(2)), trunc)
    denominator = YSeries((Poly((1, 0, 0, 1)), Poly((0, 3))), trunc)
    h = DarbouxIntegral([(numerator, 3), (denominator, -2)])
    return Foliation(p_form=p_form, q_form=q_form), h


def ggs_lienard_data() -> tuple[Poly, Poly]:
    """(p, q) of the standard Liénard form of the k = 2 family member at
    r(x) = x; the primitives of these have no common composition factor."""
    member = generate_master(2, Poly.x())
    return lienard_standard_form(member.system)


def ggs_abel_equation() -> AbelEquation:
    """The cubic Abel equation dy/dx = p y^2 + q y^3 on [-1, 1] built from
    the k = 2 data, in normal form."""
    p, q = ggs_lienard_data()
    return AbelEquation.from_ab(p, q, Interval(-1, 1))


def ggs_first_integral() -> DarbouxIntegral:
    """The Darboux first integral y^2 f1^3 / f2^4 of the k = 2 Abel
    equation, derived from the family first integral by the same two
    substitutions that produce the equation (y -> -y - c, then y -> 1/y
    with denominators cleared), with each factor normalized to constant
    term 1 so that both reduce to 1 at x = +-1."""
    member = generate_master(2, Poly.x())
    c = member.system.p_form.coefficient(0)
    trunc = 4
    shift = YSeries((-c, Poly.constant(-1)), trunc)  # y -> -y - c(x)
    factors = []
    for f, lam in member.first_integral.factors:
        shifted = _compose_y(f.with_trunc(trunc), shift)
        reversed_f = YSeries(shifted.coeffs[::-1], trunc)  # y -> 1/y, cleared
        unit = reversed_f.coefficient(0)
        if unit.degree != 0 or unit.is_zero:
            raise OracleMismatch("cleared factor has non-constant unit term")
        factors.append((reversed_f * (1 / unit.coefficient(0)), lam))
    y_power = sum(max(f.y_degree, 0) * lam for f, lam in factors)
    return DarbouxIntegral([(YSeries.y(trunc), -y_power)] + factors)


def _compose_y(series: YSeries, inner: YSeries) -> YSeries:
    """Substitute inner(x, y) for y (Horner in the y-variable)."""
    acc = YSeries.zero(inner.trunc)
    for c in reversed(series.coeffs):
        acc = acc * inner + YSeries.from_x_poly(c, inner.trunc)
    return acc


# -- the certification pipeline ------------------------------------------------


class CertificationError(RuntimeError):
    """A pipeline leg failed; `leg` names it."""

    def __init__(self, leg: str, detail: str):
        super().__init__("%s: %s" % (leg, detail))
        self.leg = leg


@dataclass(frozen=True)
class GgsCertificate:
    """Everything the counterexample claim needs, in one record: the
    equation is a center to the stated order (exact zeros), carries an
    exact Darboux first integral reducing to y^2 at the endpoints, yet
    admits no closing composition factor and has a nonzero word integral
    — so the center is not universal — and the numeric transport agrees."""

    order: int
    coefficients: tuple[Fraction, ...]
    first_integral_verified: bool
    boundary_reduces_to_y2: bool
    composition_factor: Optional[DecompositionResult]
    witness: tuple[int, ...]
    witness_value: Fraction
    numeric_defects: tuple[float, ...]
    numeric_threshold: float

    @property
    def center_to_order(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    @property
    def ok(self) -> bool:
        return (self.center_to_order and self.first_integral_verified
                and self.boundary_reduces_to_y2
                and self.composition_factor is None
                and self.witness_value != 0
                and max(self.numeric_defects) < self.numeric_threshold)


def ggs_pipeline(order: int = 10, witness_length: int = 3,
                 numeric_threshold: float = 1e-9) -> GgsCertificate:
    """Run the five certification legs on the k = 2 counterexample and
    return the combined certificate; any failing leg raises
    CertificationError naming it."""
    eq = ggs_abel_equation()
    p, q = ggs_lienard_data()

    rm: ReturnMapSeries = return_map(eq, order)
    if not rm.is_identity:
        raise CertificationError("return-map", "nonzero coefficient found")

    h = ggs_first_integral()
    a1, a2 = eq.species[0], eq.species[1]
    if not verify_first_integral(abel_foliation(-a1, -a2), h):
        raise CertificationError("first-integral", "wedge identity failed")

    boundary_ok = True
    for x_end in (-1, 1):
        for f, _ in h.factors[1:]:
            if f.evaluate_x(x_end) != (Fraction(1),):
                boundary_ok = False
    if not boundary_ok:
        raise CertificationError("boundary", "factors do not reduce to 1")

    prim_p = p.antiderivative()
    prim_q = q.antiderivative()
    factor = common_factor(prim_p, prim_q, eq.interval)
    if factor is not None:
        raise CertificationError("composition",
                                 "unexpected common factor found")

    verdict: UniversalVerdict = universal_check(eq, max_length=witness_length)
    if verdict.universal:
        raise CertificationError("witness",
                                 "no nonzero word integral found")

    defects = []
    cfg = NumericConfig()
    for y0 in (1e-3, -1e-3, 1e-2, -1e-2):
        defects.append(abs(transport(eq, y0, cfg) - y0))
    if max(defects) >= numeric_threshold:
        raise CertificationError("numeric",
                                 "transport defect %g" % max(defects))

    return GgsCertificate(
        order=order,
        coefficients=rm.coefficients,
        first_integral_verified=True,
        boundary_reduces_to_y2=True,
        composition_factor=factor,
        witness=verdict.witness,
        witness_value=verdict.witness_value,
        numeric_defects=tuple(defects),
        numeric_threshold=numeric_threshold,
    )
