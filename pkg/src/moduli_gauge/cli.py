"""Command-line front end.

Subcommands: forms, classno, count, j, height, effective, verify.
JSON goes to stdout (CSV for tabular outputs), diagnostics to stderr.
Exit codes: 0 success (including hypothesis-unmet results, which are
flagged "certified": false in the report), 1 internal violation,
2 usage error (argparse default).  The MODULI_GAUGE_PRECISION
environment variable overrides the default 128-bit precision.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from mpmath import mp, mpc, workprec

from . import counting, effective, forms, heights, jfun, verify
from .errors import ModuliGaugeError
from .precision import default_precision
from .report import dump_csv, dump_json, jsonable, log_value


def _parse_pair(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    return parts[0], parts[1]


def _parse_range(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'lo:hi', got {text!r}")
    return int(parts[0]), int(parts[1])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="moduli-gauge",
        description="quadratic-form counts, j-function numerics and "
        "effective discriminant bounds",
    )
    ap.add_argument("--precision", type=int, default=None, help="mantissa bits")
    ap.add_argument("--workers", type=int, default=1, help="worker processes")
    ap.add_argument(
        "--output-format", choices=("json", "csv", "text"), default="json"
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forms", help="reduced forms and class number")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--limit", type=int, default=10000, help="max forms to list")

    p = sub.add_parser("classno", help="class-number table (CSV)")
    p.add_argument("--range", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument("--table", type=str, default=None, help="write CSV here")

    p = sub.add_parser("count", help="neighborhood count and bounds")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--xi", type=_parse_pair, required=True, metavar="RE,IM")
    p.add_argument("--eps", type=str, required=True)
    p.add_argument("--full-scan", action="store_true", help="walk every form")

    p = sub.add_parser("j", help="j and derivatives, or inverse")
    p.add_argument("--tau", type=_parse_pair, metavar="RE,IM")
    p.add_argument("--derivative", type=int, choices=(0, 1, 2), default=0)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--value", type=_parse_pair, metavar="RE,IM")

    p = sub.add_parser("height", help="singular-modulus height and lower bounds")
    p.add_argument("--disc", type=int, required=True)

    p = sub.add_parser("effective", help="full effective-constant report")
    p.add_argument(
        "--alpha-poly", type=str, required=True,
        help="integer minimal polynomial, leading first, comma-separated",
    )
    p.add_argument("--periods", type=str, default=None,
                   help="per-embedding 'w1re,w1im,w2re,w2im' separated by ';'")
    p.add_argument("--curve", type=str, default=None,
                   help="per-embedding 'g2,g3' (real) separated by ';'")
    p.add_argument("--h-curve", type=str, default=None, help="h(1, g2, g3)")
    p.add_argument("--xi", type=_parse_pair, default=None, metavar="RE,IM",
                   help="cross-check the computed preimage against this point")

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument(
        "--suite",
        choices=("forms", "counting", "modular", "heights", "section4", "all"),
        required=True,
    )
    return ap


def _cmd_forms(args, prec: int) -> tuple[int, str]:
    d = forms.validate_discriminant(args.disc)
    fs = forms.enumerate_reduced_forms(d)
    body = {
        "delta": d.delta,
        "fundamental": d.fundamental,
        "conductor": d.conductor,
        "modified_conductor": d.modified_conductor,
        "class_number": len(fs),
        "forms": [f.as_tuple() for f in fs[: args.limit]],
        "forms_truncated": len(fs) > args.limit,
        "exact": True,
    }
    return 0, dump_json(body)


def _cmd_classno(args, prec: int, workers: int) -> tuple[int, str]:
    lo, hi = args.range
    if lo > hi:
        lo, hi = hi, lo
    rows = []
    for n in range(hi, lo - 1, -1):
        if n < 0 and n % 4 in (0, 1):
            rows.append((n, forms.class_number(n, workers=1)))
    rows.sort()
    text = dump_csv(rows, ["delta", "class_number"])
    if args.table:
        with open(args.table, "w") as fh:
            fh.write(text)
        return 0, dump_json({"written": args.table, "rows": len(rows), "exact": True})
    return 0, text


def _cmd_count(args, prec: int, workers: int) -> tuple[int, str]:
    q = counting.make_query(
        args.disc, Fraction(args.xi[0]), Fraction(args.xi[1]), Fraction(args.eps)
    )
    rep = counting.count_report(q, workers=workers, prec=prec)
    body = {
        "delta": q.delta.delta,
        "xi_re": q.xi_re,
        "xi_im": q.xi_im,
        "eps": q.eps,
        "exact_count": rep.exact_count,
        "exact": True,
        "lemma_bound": rep.lemma_bound,
        "lemma_bound_rounding": "outward",
        "corollary_bound": rep.corollary_bound,
        "corollary_certified": rep.corollary_certified,
        "a_interval": rep.a_interval,
        "certified": rep.certified,
    }
    if args.full_scan:
        cls, inside = counting.cm_count_full_scan(q, workers=workers)
        body["full_scan_class_number"] = cls
        body["full_scan_count"] = inside
        body["full_scan_matches"] = inside == rep.exact_count
        if inside != rep.exact_count:
            return 1, dump_json(body)
    return 0, dump_json(body)


def _cmd_j(args, prec: int) -> tuple[int, str]:
    with workprec(prec + 20):
        if args.inverse:
            if not args.value:
                raise ModuliGaugeError("j --inverse needs --value re,im")
            z = mpc(mp.mpf(args.value[0]), mp.mpf(args.value[1]))
            tau = jfun.j_inverse(z, prec)
            res = jfun.j_eval(tau.mpc, prec)
            body = {
                "tau_re": tau.re,
                "tau_im": tau.im,
                "residual": abs(res.value - z),
                "error_bound": res.error_bound,
            }
            return 0, dump_json(body)
        if not args.tau:
            raise ModuliGaugeError("j needs --tau re,im (or --inverse --value)")
        tau = mpc(mp.mpf(args.tau[0]), mp.mpf(args.tau[1]))
        fn = (jfun.j_eval, jfun.j_prime, jfun.j_double_prime)[args.derivative]
        res = fn(tau, prec)
        body = {
            "derivative": args.derivative,
            "value_re": res.value.real,
            "value_im": res.value.imag,
            "error_bound": res.error_bound,
        }
        return 0, dump_json(body)


def _cmd_height(args, prec: int, workers: int) -> tuple[int, str]:
    d = forms.validate_discriminant(args.disc)
    est = heights.singular_modulus_height(d, prec, workers=workers)
    body = {
        "delta": d.delta,
        "height": est.value,
        "error_bound": est.error_bound,
        "class_number": est.terms,
        "lower_bound_colmez": heights.lower_bound_colmez(d, 0, prec),
        "exact": False,
    }
    if d.abs_delta >= 16:
        body["lower_bound_trivial"] = heights.lower_bound_trivial(
            d, 0, prec, cls=est.terms
        )
    else:
        body["lower_bound_trivial"] = None
        body["lower_bound_trivial_note"] = "requires |Delta| >= 16"
    return 0, dump_json(body)


def _cmd_effective(args, prec: int) -> tuple[int, str]:
    coeffs = [int(c) for c in args.alpha_poly.split(",")]
    periods = None
    if args.periods:
        periods = []
        for blk in args.periods.split(";"):
            a, b, c, d = (mp.mpf(x) for x in blk.split(","))
            periods.append((mpc(a, b), mpc(c, d)))
    curve = None
    if args.curve:
        curve = []
        for blk in args.curve.split(";"):
            g2, g3 = (mp.mpf(x) for x in blk.split(","))
            curve.append((g2, g3))
    prof = effective.build_alpha_profile(
        coeffs, curve=curve, periods=periods,
        h_curve=mp.mpf(args.h_curve) if args.h_curve else None, prec=prec,
    )
    rep = effective.final_delta_bound(prof, prec)
    xi_note = None
    if args.xi:
        with workprec(prec + 10):
            given = mpc(mp.mpf(args.xi[0]), mp.mpf(args.xi[1]))
            xi_note = min(
                float(abs(e.xi_sigma.mpc - given)) for e in prof.embeddings
            )
    body = {
        "alpha_min_poly": list(prof.min_poly),
        "degree": prof.degree,
        "model_degree": prof.model_degree,
        "h_alpha": prof.h_alpha,
        "h_model": prof.h_model,
        "model_height_assumed": prof.model_height_assumed,
        "embeddings": [
            {
                "alpha_re": e.alpha_sigma.real,
                "alpha_im": e.alpha_sigma.imag,
                "xi_re": e.xi_sigma.re,
                "xi_im": e.xi_sigma.im,
                "case": e.separation.case_tag,
                "A": e.separation.A,
                "B": e.separation.B,
                "delta_sep": e.separation.delta_sep,
                "c_xi": e.separation.c_xi,
                "omega1": e.omega1,
                "omega2": e.omega2,
            }
            for e in prof.embeddings
        ],
        "c2_integer_part": rep.c2.integer_part,
        "c2": log_value(rep.c2.log_value),
        "pen": rep.pen,
        "m_periods": rep.m_periods,
        "pen_at_least_log12": rep.pen_at_least_log12,
        "C_route_const_then_Cprime": rep.C_route_const_then_Cprime,
        "C_route_final_display": rep.C_route_final_display,
        "C_final": rep.C_final,
        "bound_e15C": log_value(rep.log_bound_e15C),
        "bound_three_term_max": log_value(rep.log_bound_three_term_max),
        "max_terms_log": rep.max_terms_log,
        "rhs_smaller1_at_bound": rep.rhs_smaller1_at_bound,
        "contradiction_certified": rep.contradiction_certified,
        "dominates_1e50": rep.dominates_1e50,
        "xi_check_distance": xi_note,
        "certified": not prof.model_height_assumed,
    }
    return 0, dump_json(body)


def _cmd_verify(args, workers: int) -> tuple[int, str]:
    checks = verify.run_suite(args.suite, workers=workers)
    lines = []
    failed = 0
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        if not c.passed:
            failed += 1
        extra = f" -- {c.detail}" if c.detail else ""
        lines.append(f"{status} {c.name}{extra}")
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    return (1 if failed else 0), "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    prec = args.precision if args.precision else default_precision()
    try:
        if args.command == "forms":
            code, text = _cmd_forms(args, prec)
        elif args.command == "classno":
            code, text = _cmd_classno(args, prec, args.workers)
        elif args.command == "count":
            code, text = _cmd_count(args, prec, args.workers)
        elif args.command == "j":
            code, text = _cmd_j(args, prec)
        elif args.command == "height":
            code, text = _cmd_height(args, prec, args.workers)
        elif args.command == "effective":
            code, text = _cmd_effective(args, prec)
        elif args.command == "verify":
            code, text = _cmd_verify(args, args.workers)
        else:  # pragma: no cover
            raise ModuliGaugeError(f"unhandled command {args.command}")
    except ModuliGaugeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
