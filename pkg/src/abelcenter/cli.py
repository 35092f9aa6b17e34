"""Command-line front end: JSON in, one JSON certificate out.

Exit codes: 0 = a verdict was computed (negative verdicts included),
1 = input error (bad flags, malformed JSON, precondition violations),
2 = internal invariant breach (the two exact routes disagreed — a bug,
never a property of the input).

Certificates contain only rational strings for exact values; floats
appear solely in `transport` output and are tagged approximate.  Output
is deterministic: same inputs, same bytes.  The ABEL_CENTER_THREADS
environment variable caps worker parallelism; this implementation
computes sequentially, which satisfies any cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from math import gcd
from typing import Any, Optional

from . import __version__
from .centers import (OracleMismatch, necessary_conditions, return_map,
                      universal_check)
from .composition import common_factor, moments, pcc_check
from .darboux import (CertificationError, generate_master, ggs_pipeline,
                      verify_first_integral)
from .exactpoly import poly_from_json, poly_to_json, rat_str
from .iterint import iterated_integral
from .melnikov import melnikov1, melnikov2
from .numeric import BlowUp, NumericConfig, transport
from .serialize import (darboux_from_json, equation_from_json,
                        foliation_from_json, foliation_to_json,
                        fraction_tree, interval_from_json,
                        perturbed_from_json, word_from_json,
                        yseries_to_json)


class CliInputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliInputError(message)


def _read_json(path: str) -> Any:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CliInputError("cannot read %s: %s" % (path, exc))
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CliInputError("malformed JSON in %s at line %d column %d: %s"
                            % (path, exc.lineno, exc.colno, exc.msg))


def _parse_inline_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliInputError("malformed JSON in %s at column %d: %s"
                            % (what, exc.colno, exc.msg))


def _thread_cap() -> Optional[int]:
    raw = os.environ.get("ABEL_CENTER_THREADS")
    if raw is None:
        return None
    try:
        cap = int(raw)
    except ValueError:
        raise CliInputError("ABEL_CENTER_THREADS must be an integer")
    if cap < 1:
        raise CliInputError("ABEL_CENTER_THREADS must be >= 1")
    return cap


def _certificate(command: str, inputs: dict, payload: dict) -> dict:
    canonical = json.dumps(fraction_tree(inputs), sort_keys=True)
    digest = hashlib.sha256(canonical.encode()).hexdigest()
    cert = {"command": command,
            "inputs": {"digest": digest, "args": fraction_tree(inputs)},
            "version": __version__}
    cert.update(fraction_tree(payload))
    return cert


def build_parser() -> _Parser:
    parser = _Parser(prog="abel-center", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="transport-map coefficients c_1..c_N")
    p.add_argument("--eq", required=True, metavar="FILE")
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--cross-check", action="store_true",
                   help="recompute through the series oracle and compare")

    p = sub.add_parser("universal", help="exhaustive word-integral search")
    p.add_argument("--eq", required=True, metavar="FILE")
    p.add_argument("-L", "--max-length", type=int, default=4)
    p.add_argument("--max-weight", type=int, default=None)

    p = sub.add_parser("necessary", help="the three vanishing integrals any "
                                         "two-species center must satisfy")
    p.add_argument("--eq", required=True, metavar="FILE")

    p = sub.add_parser("decompose", help="common right composition factor")
    p.add_argument("--P", required=True, metavar="FILE")
    p.add_argument("--Q", required=True, metavar="FILE")
    p.add_argument("--interval", nargs=2, required=True, metavar=("X0", "X1"))

    p = sub.add_parser("moments", help="exact moments of q against powers of A")
    p.add_argument("--q", required=True, metavar="FILE")
    p.add_argument("--A", required=True, metavar="FILE")
    p.add_argument("--interval", nargs=2, required=True, metavar=("X0", "X1"))
    p.add_argument("-k", "--kmax", type=int, default=20)

    p = sub.add_parser("melnikov", help="bifurcation series at h = infinity")
    p.add_argument("--sys", required=True, metavar="FILE")
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.add_argument("-k", "--kmax", type=int, default=20)
    p.add_argument("--force", action="store_true",
                   help="expand the second-order series without an M1 = 0 "
                        "certificate")

    p = sub.add_parser("verify-integral", help="exact Darboux first-integral "
                                               "check")
    p.add_argument("--fol", required=True, metavar="FILE")
    p.add_argument("--H", required=True, metavar="FILE")

    p = sub.add_parser("generate-master", help="instantiate the integrable "
                                               "family")
    p.add_argument("-k", "--index", type=int, required=True)
    p.add_argument("--r", required=True, metavar="FILE")

    p = sub.add_parser("ggs", help="full certification of the k = 2 "
                                   "counterexample")
    p.add_argument("--order", type=int, default=10)
    p.add_argument("-L", "--max-length", type=int, default=3)

    p = sub.add_parser("transport", help="numeric transport map (approximate)")
    p.add_argument("--eq", required=True, metavar="FILE")
    p.add_argument("--y0", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub.add_parser("iterint", help="one exact iterated integral")
    p.add_argument("--word", required=True,
                   help="inline JSON array of polynomials, outermost first")
    p.add_argument("--interval", nargs=2, required=True, metavar=("X0", "X1"))
    return parser


def _run(args: argparse.Namespace) -> dict:
    if args.command == "coeffs":
        data = _read_json(args.eq)
        eq = equation_from_json(data)
        rm = return_map(eq, args.order, cross_check=args.cross_check)
        return _certificate("coeffs", {"eq": data, "order": args.order}, {
            "verdict": "identity-to-order" if rm.is_identity else "not-identity",
            "coefficients": list(rm.coefficients),
            "cross_checked": bool(args.cross_check),
        })

    if args.command == "universal":
        data = _read_json(args.eq)
        eq = equation_from_json(data)
        verdict = universal_check(eq, max_length=args.max_length,
                                  max_weight=args.max_weight)
        payload = {"verdict": ("universal-up-to" if verdict.universal
                               else "not-universal"),
                   "max_length": verdict.max_length,
                   "max_weight": verdict.max_weight}
        if not verdict.universal:
            payload["witness"] = list(verdict.witness)
            payload["witness_integral"] = verdict.witness_value
        return _certificate("universal", {"eq": data,
                                          "max_length": args.max_length,
                                          "max_weight": args.max_weight},
                            payload)

    if args.command == "necessary":
        data = _read_json(args.eq)
        eq = equation_from_json(data)
        report = necessary_conditions(eq)
        return _certificate("necessary", {"eq": data}, {
            "verdict": "satisfied" if report.is_satisfied else "violated",
            "int_a1": report.int_a1,
            "int_a2": report.int_a2,
            "int_a1_a2": report.int_a1_a2,
        })

    if args.command == "decompose":
        p_data = _read_json(args.P)
        q_data = _read_json(args.Q)
        iv = interval_from_json(args.interval)
        p_poly = poly_from_json(p_data)
        q_poly = poly_from_json(q_data)
        inputs = {"P": p_data, "Q": q_data, "interval": list(args.interval)}
        pcc = pcc_check(p_poly, q_poly, iv)
        payload: dict = {"verdict": "pcc" if pcc.holds else "no-pcc",
                         "endpoints_generic": pcc.endpoints_generic}
        if pcc.w is not None:
            payload["W"] = pcc.w
        if pcc.degenerate is not None:
            payload["degenerate_case"] = pcc.degenerate
        if (p_poly.degree >= 2 and q_poly.degree >= 2
                and gcd(p_poly.degree, q_poly.degree) >= 2):
            found = common_factor(p_poly, q_poly, iv)
            if found is not None:
                payload["common_factor"] = {"W": found.w,
                                            "P_left": found.p_left,
                                            "Q_left": found.q_left,
                                            "closes": found.closes}
        return _certificate("decompose", inputs, payload)

    if args.command == "moments":
        q_data = _read_json(args.q)
        a_data = _read_json(args.A)
        iv = interval_from_json(args.interval)
        values = moments(poly_from_json(q_data), poly_from_json(a_data),
                         iv, args.kmax)
        return _certificate("moments", {"q": q_data, "A": a_data,
                                        "interval": list(args.interval),
                                        "kmax": args.kmax}, {
            "verdict": ("vanish-up-to-kmax" if all(v == 0 for v in values)
                        else "nonzero"),
            "moments": values,
        })

    if args.command == "melnikov":
        data = _read_json(args.sys)
        sys_obj = perturbed_from_json(data)
        if args.order == 1:
            series = melnikov1(sys_obj, args.kmax)
        else:
            series = melnikov2(sys_obj, args.kmax, force=args.force)
        return _certificate("melnikov", {"sys": data, "order": args.order,
                                         "kmax": args.kmax}, {
            "verdict": ("identically-zero-to-kmax" if series.is_zero
                        else "nonzero"),
            "constant_term": series.constant_term,
            "tail": list(series.tail),
            "pole_order": series.pole_order,
        })

    if args.command == "verify-integral":
        fol_data = _read_json(args.fol)
        h_data = _read_json(args.H)
        ok = verify_first_integral(foliation_from_json(fol_data),
                                   darboux_from_json(h_data))
        return _certificate("verify-integral", {"fol": fol_data, "H": h_data},
                            {"verdict": "first-integral" if ok else "not-a-"
                                                                    "first-integral"})

    if args.command == "generate-master":
        r_data = _read_json(args.r)
        member = generate_master(args.index, poly_from_json(r_data))
        return _certificate("generate-master",
                            {"k": args.index, "r": r_data}, {
            "verdict": "verified",
            "system": foliation_to_json(member.system),
            "first_integral": {"factors": [[yseries_to_json(f), lam]
                                           for f, lam in
                                           member.first_integral.factors]},
            "r2": member.r2,
            "r4": member.r4,
        })

    if args.command == "ggs":
        cert = ggs_pipeline(order=args.order, witness_length=args.max_length)
        return _certificate("ggs", {"order": args.order,
                                    "max_length": args.max_length}, {
            "verdict": "center-not-universal" if cert.ok else "failed",
            "coefficients": list(cert.coefficients),
            "first_integral_verified": cert.first_integral_verified,
            "boundary_reduces_to_y2": cert.boundary_reduces_to_y2,
            "composition_factor": None,
            "witness": list(cert.witness),
            "witness_integral": cert.witness_value,
            "numeric_defects_approx": list(cert.numeric_defects),
        })

    if args.command == "transport":
        data = _read_json(args.eq)
        eq = equation_from_json(data)
        cfg = NumericConfig(abs_tol=args.tol, rel_tol=args.tol)
        try:
            value = transport(eq, args.y0, cfg)
            payload = {"verdict": "transported",
                       "y1_approx": value,
                       "tagged": "approximate"}
        except BlowUp as exc:
            payload = {"verdict": "blow-up",
                       "x_escape_approx": exc.x_escape,
                       "tagged": "approximate"}
        return _certificate("transport", {"eq": data, "y0": args.y0,
                                          "tol": args.tol}, payload)

    if args.command == "iterint":
        word_data = _parse_inline_json(args.word, "--word")
        word = word_from_json(word_data)
        iv = interval_from_json(args.interval)
        value = iterated_integral(word, iv)
        return _certificate("iterint", {"word": word_data,
                                        "interval": list(args.interval)},
                            {"verdict": "computed", "integral": value})

    raise CliInputError("unknown command %r" % args.command)


def main(argv: Optional[list[str]] = None) -> int:
    try:
        _thread_cap()
        parser = build_parser()
        args = parser.parse_args(argv)
        cert = _run(args)
    except CliInputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 1
    except (OracleMismatch, CertificationError, AssertionError) as exc:
        print("internal invariant breach: %s" % exc, file=sys.stderr)
        return 2
    json.dump(cert, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
