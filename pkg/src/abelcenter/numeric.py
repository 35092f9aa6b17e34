"""Floating-point transport map of an Abel equation.

A deliberately self-contained Dormand-Prince 5(4) embedded pair with step
rejection: the fifth-order solution is propagated, the fourth-order one
supplies the local error estimate.  This is the only module where floats
exist; it cross-checks the exact certificates, never feeds them.

Abel flows genuinely blow up in finite time for large initial values, so
escape past a configured bound is reported as a BlowUp outcome (with the
escape location), not as a failure of the integrator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .centers import AbelEquation

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
       187 / 2100, 1 / 40)


@dataclass(frozen=True)
class NumericConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_steps: int = 1_000_000
    blowup_bound: float = 1e6

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


class BlowUp(RuntimeError):
    """The solution escaped the configured bound before reaching x1."""

    def __init__(self, x_escape: float):
        super().__init__("solution escaped at x = %r" % x_escape)
        self.x_escape = x_escape


def _horner(coeffs: tuple[float, ...], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _make_rhs(eq: AbelEquation):
    species = [tuple(float(c) for c in s.coeffs) for s in eq.species]

    def rhs(x: float, y: float) -> float:
        total = 0.0
        ypow = y * y
        for coeffs in species:
            if coeffs:
                total += _horner(coeffs, x) * ypow
            ypow *= y
        return -total

    return rhs


def transport(eq: AbelEquation, y0: float,
              cfg: NumericConfig | None = None) -> float:
    """y(x1) for the solution of the equation with y(x0) = y0, by adaptive
    embedded Runge-Kutta integration.  Raises BlowUp when |y| crosses the
    configured bound, and RuntimeError if the step budget runs out."""
    if cfg is None:
        cfg = NumericConfig()
    x0 = float(eq.interval.x0)
    x1 = float(eq.interval.x1)
    if x0 == x1:
        return float(y0)
    rhs = _make_rhs(eq)
    direction = 1.0 if x1 > x0 else -1.0
    span = abs(x1 - x0)
    x, y = x0, float(y0)
    h = direction * span / 100.0
    k1 = rhs(x, y)

    for _ in range(cfg.max_steps):
        if abs(y) > cfg.blowup_bound:
            raise BlowUp(x)
        if direction * (x + h - x1) > 0:
            h = x1 - x
        ks = [k1]
        for stage in range(1, 7):
            acc = 0.0
            for a, k in zip(_A[stage], ks):
                acc += a * k
            ks.append(rhs(x + _C[stage] * h, y + h * acc))
        y5 = y + h * sum(b * k for b, k in zip(_B5, ks))
        y4 = y + h * sum(b * k for b, k in zip(_B4, ks))
        scale = cfg.abs_tol + cfg.rel_tol * max(abs(y), abs(y5))
        err = abs(y5 - y4) / scale
        if err <= 1.0:
            x += h
            y = y5
            k1 = ks[6]  # FSAL: the last stage is the next first stage
            if x == x1 or direction * (x - x1) >= 0:
                return y
        # accepted or not, rescale h; on rejection k1 is still valid since
        # (x, y) did not move
        factor = 0.9 * (1.0 / err) ** 0.2 if err > 0 else 5.0
        h *= min(5.0, max(0.2, factor))
        if abs(h) < 1e-16 * span:
            raise RuntimeError("step size underflow at x = %r" % x)
    raise RuntimeError("step budget exhausted before reaching x1")
