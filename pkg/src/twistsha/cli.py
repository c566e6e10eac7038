"""Command-line front end.

Every subcommand writes one JSON document (or CSV for ``scan``) to stdout.
Exit status:

    0  success
    2  bad command line
    3  hypothesis violation (bad curve, bad n, not Selmer-minimal)
    4  anomaly or disagreement (torsion, rank, route equivalence, oracle)
    5  search exhausted (norm equation not found, inconclusive oracle, budget)
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import cassels, dist, f2, genus, selmer, suites
from .errors import (
    BudgetExceeded,
    EquivalenceViolation,
    HypothesisViolation,
    Inconclusive,
    NotFound,
    RankAnomaly,
    TorsionAnomaly,
    TwistError,
)
from .forms import class_group_oracle
from .params import CurveParams, TwistN

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3
EXIT_ANOMALY = 4
EXIT_SEARCH = 5


class OracleDisagreement(TwistError):
    pass


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, HypothesisViolation):
        return EXIT_HYPOTHESIS
    if isinstance(exc, (TorsionAnomaly, RankAnomaly, EquivalenceViolation, OracleDisagreement)):
        return EXIT_ANOMALY
    if isinstance(exc, (NotFound, Inconclusive, BudgetExceeded)):
        return EXIT_SEARCH
    return EXIT_ANOMALY


def dumps(report: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **report}, sort_keys=True, indent=2)


# ------------------------------------------------------------------ parsing


def _pair(text: str) -> tuple:
    try:
        x, y = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'x,y', got {text!r}") from None
    return x, y


def _int_list(text: str) -> list:
    try:
        return [int(float(t)) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _count(text: str) -> int:
    # accepts 1e6 style
    v = float(text)
    if v != int(v) or v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return int(v)


def _add_curve(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--curve", type=_pair, metavar="A,B", help="curve y^2 = x(x - a^2 n)(x + b^2 n) by (a, b)")
    g.add_argument("--param", type=_pair, metavar="ALPHA,BETA", help="curve by the parametrization (alpha, beta)")


def _add_n(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=_count, required=True, help="square-free twist n")


def _add_bound(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bound", type=_count, default=None, help="norm-equation search bound on gamma (default 10 n)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistsha", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve-check", help="validate (a, b): c, prime partition, Ker CM_1")
    _add_curve(p)

    p = sub.add_parser("selmer", help="dimension and basis of the pure 2-Selmer group of E^(n)")
    _add_curve(p)
    _add_n(p)

    p = sub.add_parser("genus", help="h2, h4, h8 and d0 for discriminant -4n, with the forms oracle")
    _add_n(p)
    _add_bound(p)
    p.add_argument("--no-oracle", action="store_true", help="skip the class-group oracle cross-check")

    p = sub.add_parser("classify", help="verdict, pairing certificate and route agreement")
    _add_curve(p)
    _add_n(p)
    _add_bound(p)

    p = sub.add_parser("scan", help="density counts as CSV with checkpoints")
    _add_curve(p)
    p.add_argument("--k", type=int, required=True, help="number of prime factors")
    p.add_argument("--x", type=_count, required=True, help=f"upper bound (at most {dist.MAX_X:.0e})")
    p.add_argument("--checkpoints", type=_int_list, default=None, help="extra x checkpoints (default powers of 10 below x)")
    p.add_argument("--workers", type=int, default=1, help="worker processes for classification (default 1)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--quiet", action="store_true", help="no progress lines on stderr")

    p = sub.add_parser("crosscheck", help="run the oracle-agreement suites and print tallies")
    p.add_argument("--suite", action="append", choices=sorted(SUITES), help="suite to run (repeatable; default all)")
    p.add_argument("--seed", type=int, default=suites.DEFAULT_SEED, help=f"seed for randomized suites (default {suites.DEFAULT_SEED})")
    p.add_argument("--quick", action="store_true", help="smaller instance counts and ranges")
    return ap


def _curve(args) -> CurveParams:
    if args.curve is not None:
        return CurveParams.from_ab(*args.curve)
    a, b, _ = selmer.parametrize_abc(*args.param)
    return CurveParams.from_ab(a, b)


def _curve_dict(cur: CurveParams) -> dict:
    return {"a": cur.a, "b": cur.b, "c": cur.c}


def _triple(t) -> list:
    return list(t.as_tuple())


# --------------------------------------------------------------- commands


def cmd_curve_check(args) -> tuple:
    cur = _curve(args)
    ker = f2.kernel_basis(selmer.matrix_M1(cur))
    report = {
        "command": "curve-check",
        "curve": _curve_dict(cur),
        "partition": {
            "a_primes": list(cur.a_primes),
            "b_primes": list(cur.b_primes),
            "c_primes": list(cur.c_primes),
            "l1": cur.l1,
            "l2": cur.l2,
            "l": cur.l,
        },
        "ker_CM1_dim": len(ker),
        "selmer_minimal": not ker,
    }
    return report, (EXIT_OK if not ker else EXIT_HYPOTHESIS)


def cmd_selmer(args) -> tuple:
    cur = _curve(args)
    n = TwistN.of(args.n)
    torsion = selmer.torsion_check(cur, n)
    dim, basis = selmer.sel2_prime(cur, n)
    report = {
        "command": "selmer",
        "curve": _curve_dict(cur),
        "n": n.n,
        "torsion": list(torsion),
        "dimension": dim,
        "basis": [_triple(t) for t in basis],
    }
    return report, EXIT_OK


def cmd_genus(args) -> tuple:
    n = TwistN.of(args.n)
    g = genus.genus_data(n, args.bound)
    report = {
        "command": "genus",
        "n": n.n,
        "h2": g.h2,
        "h4": g.h4,
        "h8": g.h8_indicator,
        "d0": g.d0,
        "d": g.d_odd,
    }
    code = EXIT_OK
    if not args.no_oracle:
        orc = class_group_oracle(n.n)
        agree = orc.rank(1) == g.h2 and orc.rank(2) == g.h4
        if g.h8_indicator is not None:
            agree = agree and orc.rank(3) == g.h8_indicator
        report["oracle"] = {"order": orc.order, "two_power_ranks": list(orc.two_power_ranks), "agrees": agree}
        if not agree:
            code = EXIT_ANOMALY
    return report, code


def _certificate_dict(cert) -> Optional[dict]:
    if cert is None:
        return None
    s = cert.norm_solution
    return {
        "case": cert.case_tag,
        "d": cert.d,
        "generators": [_triple(t) for t in cert.generators],
        "normalized_generators": [_triple(t) for t in cert.normalized_generators],
        "norm_solution": {"d": s.d, "dprime": s.dprime, "r": s.r, "alpha": s.alpha, "beta": s.beta, "gamma": s.gamma},
        "pairing_bit": cert.pairing_bit,
        "gram": [list(r) for r in cert.gram],
    }


def cmd_classify(args) -> tuple:
    cur = _curve(args)
    n = TwistN.of(args.n)
    res = cassels.classify(cur, n, args.bound)
    report = {
        "command": "classify",
        "curve": _curve_dict(cur),
        "n": n.n,
        "cases": list(res.cases),
        "verdict": res.verdict,
        "agreement": res.agreement,
        "certificate": _certificate_dict(res.certificate),
    }
    return report, EXIT_OK


def _checkpoints(x: int, extra: Optional[list]) -> list:
    pts = {x}
    if extra:
        pts |= {c for c in extra if 1 <= c <= x}
    else:
        t = 10
        while t < x:
            pts.add(t)
            t *= 10
    return sorted(pts)


def cmd_scan(args) -> tuple:
    cur = _curve(args)
    if args.k < 1:
        raise HypothesisViolation("--k must be at least 1")
    if args.x > dist.MAX_X:
        raise BudgetExceeded(f"x = {args.x} exceeds {dist.MAX_X}")
    progress = None
    if not args.quiet:
        err = getattr(args, "err", None) or sys.stderr

        def progress(done, total):
            print(f"progress: classified {done}/{total} candidates", file=err, flush=True)
    reports = dist.density_scan(cur, args.k, _checkpoints(args.x, args.checkpoints), progress=progress, workers=args.workers)
    if args.format == "csv":
        return dist.write_csv(reports), EXIT_OK
    rows = [dict(zip(dist.CSV_COLUMNS, r.csv_row())) for r in reports]
    return {"command": "scan", "curve": _curve_dict(cur), "rows": rows}, EXIT_OK


def _suite_runs(seed: int, quick: bool) -> dict:
    r11 = CurveParams.from_ab(1, 1)
    r723 = CurveParams.from_ab(7, 23)
    q = quick
    return {
        "local": lambda: suites.local_oracle_suite(1000 if q else 10**4, seed),
        "redundancy": lambda: suites.redundancy_suite(300 if q else 2000, seed),
        "selmer": lambda: suites.selmer_bruteforce_suite(40 if q else 300, seed),
        "genus": lambda: suites.genus_suite(5000 if q else 10**5),
        "routes": lambda: [suites.route_suite(r11, 10**4 if q else 10**5), suites.route_suite(r723, 10**4)],
        "torsion": lambda: suites.torsion_suite(100 if q else 1000, seed),
        "symbols": lambda: suites.symbol_suite(100, seed),
    }


SUITES = ("genus", "local", "redundancy", "routes", "selmer", "symbols", "torsion")


def cmd_crosscheck(args) -> tuple:
    runs = _suite_runs(args.seed, args.quick)
    chosen = args.suite or list(SUITES)
    results = []
    for name in chosen:
        out = runs[name]()
        results.extend(out if isinstance(out, list) else [out])
    tallies = [r.as_dict() | {"inconclusive_rate": r.inconclusive_rate, "ok": r.ok and r.inconclusive_rate < 0.01} for r in results]
    ok = all(t["ok"] for t in tallies)
    report = {"command": "crosscheck", "seed": args.seed, "quick": args.quick, "suites": tallies, "ok": ok}
    return report, (EXIT_OK if ok else EXIT_ANOMALY)


COMMANDS = {
    "curve-check": cmd_curve_check,
    "selmer": cmd_selmer,
    "genus": cmd_genus,
    "classify": cmd_classify,
    "scan": cmd_scan,
    "crosscheck": cmd_crosscheck,
}


def _context(args) -> dict:
    ctx = {}
    for key in ("curve", "param", "n", "k", "x"):
        val = getattr(args, key, None)
        if val is not None:
            ctx[key] = list(val) if isinstance(val, tuple) else val
    return ctx


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    args.err = err
    try:
        report, code = COMMANDS[args.command](args)
    except TwistError as exc:
        body = {"command": args.command, "error": {"type": type(exc).__name__, "message": str(exc)}, "context": _context(args)}
        print(dumps(body), file=out)
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return _exit_code(exc)
    if isinstance(report, str):
        out.write(report)
    else:
        print(dumps(report), file=out)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:  # argparse
        return int(exc.code or 0)
