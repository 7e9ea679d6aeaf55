"""Command line front end.

Every subcommand prints one JSON record per job on stdout and, unless
--json-only is given, a short table on stderr.  The exit code is 0 iff every
job passed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bailey as bl
from . import hecke, partitions, quadfield, verify
from .analytics import (
    attainment_targets,
    density_non_increasing,
    density_report,
    sign_violations,
    value_attainment,
)
from .catalog import SeriesId, expand
from .verify import FAIL, PASS, JobResult


def _parse_value(text: str):
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(text)
    except ValueError:
        return text


def parse_convention(family: int, items: list[str]) -> partitions.FamilyConvention | None:
    if not items:
        return None
    kw = {}
    for item in items:
        if "=" not in item:
            raise SystemExit(f"--convention expects KEY=VAL, got {item!r}")
        k, v = item.split("=", 1)
        kw[k.strip()] = _parse_value(v.strip())
    return partitions.FamilyConvention.literal(family).with_overrides(**kw)


def _emit(results: list[JobResult], json_only: bool) -> int:
    for r in results:
        print(r.to_json(), flush=True)
    if not json_only:
        width = max((len(r.job) for r in results), default=10)
        print(f"{'job':<{width}}  {'N':>6}  verdict  elapsed  first mismatch", file=sys.stderr)
        for r in results:
            fm = "" if r.first_mismatch is None else json.dumps(r.first_mismatch)
            print(f"{r.job:<{width}}  {r.order:>6}  {r.verdict:<7}  {r.elapsed:7.2f}  {fm}", file=sys.stderr)
        n_pass = sum(r.passed for r in results)
        print(f"{n_pass}/{len(results)} passed", file=sys.stderr)
    return 0 if all(r.passed for r in results) else 1


# subcommands


def cmd_expand(args) -> int:
    t0 = time.perf_counter()
    s = expand(args.series, args.terms)
    if not args.json_only:
        print(s.pretty(args.show), file=sys.stderr)
    rec = {"job": f"EXPAND_{SeriesId.parse(args.series).name}", "N": args.terms, "verdict": PASS}
    rec["series"] = s.to_record()
    rec["elapsed"] = round(time.perf_counter() - t0, 3)
    print(json.dumps(rec))
    return 0


def cmd_hecke(args) -> int:
    names = args.names or (["SIGMA_HECKE"] + [f"HECKE{i}" for i in range(1, 9)])
    return _emit([verify.hecke_job(n, args.terms) for n in names], args.json_only)


def cmd_ideals(args) -> int:
    rings = [args.ring] if args.ring else ["SQRT2", "SQRT3"]
    results = [verify.ideal_consistency_job(r, args.terms) for r in rings]
    keys = args.theorems or list(verify.THEOREMS)
    results += [verify.theorem_job(k, args.terms, args.method) for k in keys]
    return _emit(results, args.json_only)


def cmd_bailey(args) -> int:
    pids = [args.pair] if args.pair else list(bl.PAIR_IDS)
    pair_order = min(args.terms, 400)
    results = [verify.bailey_pair_job(p, args.n_max, pair_order) for p in pids]
    if not args.pair:
        results += [verify.bailey_inversion_job(p, 10, pair_order) for p in ("NEW_A1", "NEW_AQ", "LEMMA12")]
        results += [verify.bailey_lemma_job(k, min(args.terms, 500)) for k in bl.LEMMA_SPECS]
        results.append(verify.u_sequence_job(min(args.terms, 400)))
        results += [verify.heine_job(k, min(args.terms, 200)) for k in verify.HEINE_PARAMS]
    return _emit(results, args.json_only)


def cmd_oracle(args) -> int:
    families = [args.family] if args.family else list(range(1, 9))
    if args.convention and not args.family:
        raise SystemExit("--convention needs --family")
    results = []
    for i in families:
        conv = parse_convention(i, args.convention)
        results.append(verify.oracle_job(i, args.terms, conv))
    if not args.family:
        results.insert(0, verify.sigma_oracle_job(min(args.terms, 30)))
    return _emit(results, args.json_only)


def _series_list(name):
    if name:
        return [SeriesId.parse(name)]
    return [SeriesId(f"f{i}") for i in range(1, 9)]


def cmd_density(args) -> int:
    results = []
    for sid in _series_list(args.series):
        t0 = time.perf_counter()
        stats = density_report(sid, args.terms)
        ok = args.terms < 10**4 or density_non_increasing(stats)
        res = JobResult(
            f"DENSITY_{sid.name}", args.terms, PASS if ok else FAIL, None,
            "nonzero density per decade (10^(k-1), 10^k]",
            {"nonzero": stats.nonzero, "density": {str(k): v for k, v in sorted(stats.density.items())}},
        )
        res.elapsed = time.perf_counter() - t0
        results.append(res)
    return _emit(results, args.json_only)


def cmd_values(args) -> int:
    results = []
    for sid in _series_list(args.series):
        t0 = time.perf_counter()
        s = expand(sid, args.terms)
        targets = args.targets if args.targets else attainment_targets(sid)
        att = value_attainment(sid, args.terms, targets, s)
        bad = sign_violations(sid, s)
        missing = [m for m, c in att.items() if c == 0]
        ok = not bad and not missing
        mm = {"n": bad[0], "lhs": s[bad[0]], "rhs": None, "where": "sign rule"} if bad else None
        res = JobResult(
            f"VALUES_{sid.name}", args.terms, PASS if ok else FAIL, mm,
            "sign rule holds and the target values are attained",
            {"attained": {str(k): v for k, v in att.items()}, "missing": missing},
        )
        res.elapsed = time.perf_counter() - t0
        results.append(res)
    return _emit(results, args.json_only)


def cmd_verify_all(args) -> int:
    results = [job() for job in verify.verify_all(args.terms, args.method, args.with_oracles)]
    return _emit(results, args.json_only)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rqseries", description="Exact checks of q-series identities.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--terms", type=int, default=2000, help="truncation order N (default 2000)")
    common.add_argument("--json-only", action="store_true", help="suppress the stderr table")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="expand a series")
    p.add_argument("series", help="sigma, f1..f8, remark_unsigned, remark_eta_product")
    p.add_argument("--show", type=int, default=20, help="terms shown on stderr")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("hecke", parents=[common], help="compare double sums with their series")
    p.add_argument("names", nargs="*", help=f"spec names: {', '.join(hecke.names())}")
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("ideals", parents=[common], help="ideal counts and the theorem identities")
    p.add_argument("--ring", choices=[r.name for r in quadfield.Ring])
    p.add_argument("--method", choices=["enum", "mult", "both"], default="both")
    p.add_argument("--theorem", dest="theorems", action="append", help="T1..T8 (repeatable)")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("bailey", parents=[common], help="Bailey pairs, lemma, U_n and Heine")
    p.add_argument("--pair", choices=bl.PAIR_IDS)
    p.add_argument("--n-max", type=int, default=12)
    p.set_defaults(func=cmd_bailey)

    p = sub.add_parser("oracle", help="partition-family oracles")
    p.add_argument("--terms", type=int, default=20, help="N_pin (default 20)")
    p.add_argument("--json-only", action="store_true")
    p.add_argument("--family", type=int, choices=range(1, 9))
    p.add_argument("--convention", action="append", default=[], metavar="KEY=VAL")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("density", parents=[common], help="nonzero density per decade")
    p.add_argument("series", nargs="?")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("values", parents=[common], help="value attainment and sign rules")
    p.add_argument("series", nargs="?")
    p.add_argument("--targets", type=int, nargs="*")
    p.set_defaults(func=cmd_values)

    p = sub.add_parser("verify-all", parents=[common], help="run the full suite")
    p.add_argument("--method", choices=["enum", "mult", "both"], default="both")
    p.add_argument("--with-oracles", action="store_true", help="include the eight family oracles")
    p.set_defaults(func=cmd_verify_all)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
