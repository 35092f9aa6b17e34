"""Exact center certification for polynomial Abel equations.

The package computes transport/return-map coefficients of
dy/dx + sum a_i(x) y^{i+1} = 0 through two independent exact routes,
decides composition and moment conditions, expands first- and
second-order bifurcation series, and verifies Darboux first integrals —
all over arbitrary-precision rationals, with a floating-point integrator
kept aside purely as a cross-check.
"""

from .exactpoly import Poly, Rational, definite_integral, rat, rat_str
from .yseries import DivisibilityError, YSeries
from .iterint import Interval, Word, iterated_integral, shuffle_product
from .centers import (AbelEquation, InvalidEquation, NecessaryReport,
                      OracleMismatch, ReturnMapSeries, UniversalVerdict,
                      brudnyi_coefficient, first_integral_series,
                      necessary_conditions, pullback_equation, return_map,
                      universal_check)
from .composition import (DecompositionResult, PCCVerdict,
                          canonical_right_form, common_factor, moments,
                          pcc_check, right_factor)
from .melnikov import (M1NotZero, MomentSeries, PerturbedAbel,
                       UnsupportedOrder, certify_m1_zero, francoise_step,
                       melnikov1, melnikov2)
from .darboux import (CertificationError, DarbouxIntegral, Foliation,
                      GgsCertificate, InvalidBase, MasterSystem,
                      TruncatedPair, abel_foliation, generate_master,
                      ggs_abel_equation, ggs_first_integral, ggs_pipeline,
                      lienard_standard_form, quadratic_q4_fixture,
                      reduce_foliation, solve_pq, verify_first_integral)
from .numeric import BlowUp, NumericConfig, transport

__version__ = "0.1.0"

__all__ = [
    "AbelEquation", "BlowUp", "CertificationError", "DarbouxIntegral",
    "DecompositionResult", "DivisibilityError", "Foliation",
    "GgsCertificate", "Interval", "InvalidBase", "InvalidEquation",
    "M1NotZero", "MasterSystem", "MomentSeries", "NecessaryReport",
    "NumericConfig", "OracleMismatch", "PCCVerdict", "PerturbedAbel",
    "Poly", "Rational", "ReturnMapSeries", "TruncatedPair",
    "UniversalVerdict", "UnsupportedOrder", "Word", "YSeries",
    "abel_foliation", "brudnyi_coefficient", "canonical_right_form",
    "certify_m1_zero", "common_factor", "definite_integral",
    "first_integral_series", "francoise_step", "generate_master",
    "ggs_abel_equation", "ggs_first_integral", "ggs_pipeline",
    "iterated_integral", "lienard_standard_form", "melnikov1", "melnikov2",
    "moments", "necessary_conditions", "pcc_check", "pullback_equation",
    "quadratic_q4_fixture", "rat", "rat_str", "reduce_foliation",
    "return_map", "right_factor", "shuffle_product", "solve_pq",
    "transport", "universal_check", "verify_first_integral",
]
