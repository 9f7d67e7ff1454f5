"""Command-line front end: ``betaq <command> [options]``.

Exit status is 0 when every check in the command passed, 1 when any failed and
2 on a usage error.  JSON output carries exact rationals and high-precision
reals as strings.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import analytics, checks, cmeval
from .basisdecomp import build_basis, cusp_conditions, decompose
from .eisenstein import CHI_2, CHI_M4, TRIVIAL, EisensteinSpec, eis2_crosscheck, eisenstein_series, h_k_series
from .etaq import EtaQuotient, FractionalPrefactor, eta_expand, f_quotient, ghn_check
from .lambert import classical_sides, verify_theorem2

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MIN_TRUNC, MIN_PREC = 8, 64


class UsageError(Exception):
    pass


def default_prec() -> int:
    raw = os.environ.get("BETAQ_PREC")
    if raw is None:
        return cmeval.DEFAULT_PREC
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"BETAQ_PREC must be an integer, got {raw!r}") from None
    if value < MIN_PREC:
        raise UsageError(f"BETAQ_PREC must be at least {MIN_PREC}")
    return value


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def cmd_expand(args) -> int:
    try:
        e = EtaQuotient.parse(args.quotient)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        series = eta_expand(e, args.trunc)
    except FractionalPrefactor as exc:
        raise UsageError(str(exc)) from None
    report = ghn_check(e)
    out = {"quotient": e.to_dict(), "weight": str(e.weight), "series": series.to_dict(),
           "text": repr(series), "holomorphic": report.is_holomorphic, "modular": report.is_modular}
    _emit(out)
    return EXIT_OK


def cmd_eisenstein(args) -> int:
    psi = {1: TRIVIAL, 2: CHI_2}[args.twist]
    spec = EisensteinSpec(2 * args.k + 1, CHI_M4, psi)
    series = eisenstein_series(spec, args.trunc, scale=2)
    out = {"k": args.k, "weight": spec.weight, "twist": args.twist, "argument": "2tau",
           "series": series.to_dict()}
    ok = True
    if args.twist == 2:
        ok = eis2_crosscheck(args.k, args.trunc)
        out["crosscheck"] = ok
    if args.json:
        _emit(out)
    else:
        print(repr(series))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.identity == "theorem2":
        if args.k is None:
            raise UsageError("--identity theorem2 needs --k")
        rep = verify_theorem2(args.k, args.trunc)
        _emit({"identity": "theorem2", **rep.to_dict()})
        return EXIT_OK if rep.passed else EXIT_FAIL
    lhs, rhs = classical_sides(args.identity, args.trunc)
    mismatch = lhs.first_mismatch(rhs)
    _emit({"identity": args.identity, "trunc": args.trunc, "passed": mismatch is None,
           "first_mismatch": mismatch})
    return EXIT_OK if mismatch is None else EXIT_FAIL


def cmd_decompose(args) -> int:
    f = eta_expand(f_quotient(args.k), args.trunc)
    h = h_k_series(args.k, args.trunc)
    target = {"fk-minus-hk": f - h, "hk-minus-fk": h - f, "fk": f, "hk": h}[args.target]
    d = decompose(target, build_basis(args.k, args.trunc), strict=False)
    conds = cusp_conditions(d)
    out = {"target": args.target, "trunc": args.trunc, **d.to_dict(), "conditions": conds.as_dict()}
    if args.json:
        _emit(out)
    else:
        print(f"alpha = {[str(x) for x in d.alpha]}")
        print(f"beta = {[str(x) for x in d.beta]}")
        print(f"gamma = {d.gamma}")
    ok = d.residual_zero
    if args.target in ("fk-minus-hk", "hk-minus-fk"):
        ok = ok and conds.all
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cm(args) -> int:
    prec = args.prec or default_prec()
    rep = cmeval.cm_report(args.k, args.r, prec)
    out = rep.to_dict()
    ok = rep.rel_err < checks.CM_TOL
    out["passed"] = ok
    if args.json:
        _emit(out)
    else:
        print(f"closed    {out['closed']}")
        print(f"direct    {out['direct']}")
        print(f"rel_err   {out['rel_err']}")
        print(f"rederived rel_err {out['rel_err_rederived']}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_limits(args) -> int:
    rep = analytics.limit_check(args.k, prec=args.prec or 96)
    tol = checks.LIMIT_TOL.get(args.k, 1e-2)
    ok = rep.rel_error < tol and rep.algebraic_match
    _emit({**rep.to_dict(), "tolerance": repr(tol), "passed": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_count(args) -> int:
    t = analytics.t_count(args.k, args.n)
    e = 2 * args.n + args.k + 1
    coeff = eta_expand(f_quotient(args.k), e + 1).coeff(e)
    ok = coeff == t
    _emit({"k": args.k, "n": args.n, "t": str(t), "f_coefficient": str(coeff), "passed": ok})
    return EXIT_OK if ok else EXIT_FAIL


CSV_COLUMNS = ["n", "t", "main", "cusp", "ratio", "corollary_main"]


def cmd_asympt(args) -> int:
    rows = analytics.asymptotic_report(args.k, args.nmax)
    ok = all(r.t == r.main + r.cusp for r in rows)
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow([r.n, r.t, str(r.main), str(r.cusp), f"{r.ratio:.12g}" if r.main else "",
                        str(r.corollary_main)])
    else:
        _emit({"k": args.k, "nmax": args.nmax, "exact_split": ok,
               "rows": [{"n": r.n, "t": str(r.t), "main": str(r.main), "cusp": str(r.cusp),
                         "ratio": f"{r.ratio:.12g}" if r.main else None, "corollary_main": str(r.corollary_main)}
                        for r in rows]})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_suite(args) -> int:
    results = checks.run_all(args.k_max)
    if args.json:
        _emit({"k_max": args.k_max, "passed": all(r.passed for r in results),
               "checks": [r.to_dict() for r in results]})
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _positive(minimum: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}")
        return value
    return parse


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="betaq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    k_arg = dict(type=_positive(1), required=True, help="index k (weight 2k+1)")
    trunc_arg = dict(type=_positive(MIN_TRUNC), help="truncation order")

    s = sub.add_parser("expand", help="expand an eta quotient such as '4^6*8^4/2^4 @8'")
    s.add_argument("--quotient", required=True)
    s.add_argument("--trunc", default=20, **trunc_arg)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("eisenstein", help="Eisenstein series of weight 2k+1 at 2tau")
    s.add_argument("--k", **k_arg)
    s.add_argument("--twist", type=int, choices=(1, 2), default=1, help="modulus of psi")
    s.add_argument("--trunc", default=100, **trunc_arg)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_eisenstein)

    s = sub.add_parser("verify", help="check a q-series identity coefficient by coefficient")
    s.add_argument("--identity", required=True, choices=("ramanujan", "hou-sun", "k3", "theorem2"))
    s.add_argument("--k", type=_positive(1))
    s.add_argument("--trunc", default=200, **trunc_arg)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("decompose", help="coordinates in the eta-quotient basis")
    s.add_argument("--k", **k_arg)
    s.add_argument("--target", default="fk-minus-hk", choices=("fk-minus-hk", "hk-minus-fk", "fk", "hk"))
    s.add_argument("--trunc", default=200, **trunc_arg)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("cm", help="H_k at tau = 2^r i, closed form against direct summation")
    s.add_argument("--k", **k_arg)
    s.add_argument("--r", type=_positive(1), required=True)
    s.add_argument("--prec", type=_positive(MIN_PREC), help="bits (default from BETAQ_PREC or 256)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_cm)

    s = sub.add_parser("limits", help="extrapolated q -> 1 limit of (1-q)^(2k+1) f_k")
    s.add_argument("--k", **k_arg)
    s.add_argument("--prec", type=_positive(MIN_PREC))
    s.set_defaults(func=cmd_limits)

    s = sub.add_parser("count", help="representations by triangular numbers")
    s.add_argument("--k", **k_arg)
    s.add_argument("--n", type=_positive(0), required=True)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("asympt", help="exact counts against the Eisenstein main term")
    s.add_argument("--k", **k_arg)
    s.add_argument("--nmax", type=_positive(0), required=True)
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_asympt)

    s = sub.add_parser("suite", help="run every end-to-end check")
    s.add_argument("--k-max", type=_positive(2), default=6)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"betaq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
