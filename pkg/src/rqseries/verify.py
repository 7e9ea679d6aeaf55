"""Verification jobs.  Each returns a JobResult with a PASS/FAIL verdict.

Records have a fixed key order (job, N, verdict, first_mismatch, statement,
details, elapsed) so JSON output is stable; ``elapsed`` is the only field that
varies between runs.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

from . import bailey as bl
from . import hecke, partitions, quadfield
from .catalog import SeriesId, expand
from .fps import TruncatedSeries, qp
from .theorems import INTERMEDIATE, THEOREMS, first_mismatch

PASS, FAIL = "PASS", "FAIL"


@dataclass
class JobResult:
    job: str
    order: int
    verdict: str
    first_mismatch: dict | None = None
    statement: str = ""
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_record(self, with_elapsed: bool = True) -> dict:
        rec = {
            "job": self.job,
            "N": self.order,
            "verdict": self.verdict,
            "first_mismatch": self.first_mismatch,
            "statement": self.statement,
            "details": self.details,
        }
        if with_elapsed:
            rec["elapsed"] = round(self.elapsed, 3)
        return rec

    def to_json(self, with_elapsed: bool = True) -> str:
        return json.dumps(self.to_record(with_elapsed))


def _timed(fn: Callable[..., JobResult]) -> Callable[..., JobResult]:
    def wrapper(*args, **kw):
        t0 = time.perf_counter()
        res = fn(*args, **kw)
        res.elapsed = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _mismatch(x: TruncatedSeries, y: TruncatedSeries, label: str | None = None) -> dict | None:
    m = first_mismatch(x, y)
    if m is None:
        return None
    out = {"n": m[0], "lhs": m[1], "rhs": m[2]}
    if label:
        out["where"] = label
    return out


def _compare(job, order, statement, pairs, details=None) -> JobResult:
    """pairs: list of (label, lhs, rhs); FAIL at the first disagreeing pair."""
    for label, lhs, rhs in pairs:
        m = _mismatch(lhs, rhs, label)
        if m is not None:
            return JobResult(job, order, FAIL, m, statement, details or {})
    return JobResult(job, order, PASS, None, statement, details or {})


# theorems and Hecke sums


@_timed
def theorem_job(key: str, order: int, method: str = "both") -> JobResult:
    ident = THEOREMS.get(key) or INTERMEDIATE[key]
    lhs = ident.series_side(order)
    methods = ["enum", "mult"] if method == "both" else [method]
    pairs = [(f"series vs {m}", lhs, ident.ideal_side(order, m)) for m in methods]
    return _compare(
        f"THEOREM_{key}", order, ident.statement, pairs,
        {"method": method, "ring": ident.ring.name, "weight": ident.weight.describe()},
    )


_HECKE_TARGET = {f"HECKE{i}": f"f{i}" for i in range(1, 9)}
_HECKE_TARGET["SIGMA_HECKE"] = "sigma"


@_timed
def hecke_job(name: str, order: int) -> JobResult:
    name = name.upper()
    lhs = hecke.evaluate(name, order)
    if name in _HECKE_TARGET:
        target = _HECKE_TARGET[name]
        rhs = expand(target, order)
        statement = f"{name} double sum = {target}"
    elif name in hecke.DISSECTIONS:
        base, m, s, neg = hecke.DISSECTIONS[name]
        rhs = hecke.dissected_from_hecke(name, order)
        sign = "-" if neg else ""
        statement = f"{name} = {sign}q^{s} {base}(q^{m})"
    else:
        return JobResult(f"HECKE_{name}", order, FAIL, None, f"no reference series for {name}")
    return _compare(f"HECKE_{name}", order, statement, [("coefficients", lhs, rhs)])


# ideals


@_timed
def ideal_consistency_job(ring: str, order: int) -> JobResult:
    r = quadfield.Ring.parse(ring)
    enum_ = quadfield.ideal_counts_enum(r, order)
    mult = quadfield.ideal_counts_mult(r, order)
    lhs, rhs = TruncatedSeries(enum_), TruncatedSeries(mult)
    return _compare(
        f"IDEAL_CONSISTENCY_{r.name}", order,
        "ideal counts by enumeration = multiplicative formula",
        [("counts", lhs, rhs)],
    )


# Bailey machinery


@_timed
def bailey_pair_job(pid: str, n_max: int, order: int) -> JobResult:
    p = bl.pair(pid)
    checks = bl.verify_pair_relation(p, n_max, order)
    bad = [c for c in checks if not c.equal]
    stmt = f"{p.name}: beta_n = sum_r alpha_r / ((Q)_(n-r) (aQ)_(n+r)), n <= {n_max}"
    if bad:
        c = bad[0]
        mm = {"n": c.first_mismatch, "lhs": None, "rhs": None, "where": f"beta_{c.n}"}
        lhs = p.beta_at(c.n, order)
        rhs = bl.defining_sum(p, c.n, order)
        mm["lhs"], mm["rhs"] = lhs[c.first_mismatch], rhs[c.first_mismatch]
        return JobResult(f"BAILEY_PAIR_{pid}", order, FAIL, mm, stmt)
    return JobResult(f"BAILEY_PAIR_{pid}", order, PASS, None, stmt, {"n_max": n_max})


@_timed
def bailey_inversion_job(pid: str, n_max: int, order: int) -> JobResult:
    p = bl.pair(pid)
    alphas = bl.bailey_invert(p.beta_at, p.a, n_max, order, p.base)
    pairs = [(f"alpha_{n}", alphas[n], p.alpha_at(n, order)) for n in range(n_max + 1)]
    return _compare(f"BAILEY_INVERSION_{pid}", order, f"inverting beta recovers alpha for {p.name}", pairs)


@_timed
def bailey_lemma_job(key: str, order: int) -> JobResult:
    spec = bl.LEMMA_SPECS[key.upper()]
    alpha_side, beta_side = spec.sides(order)
    m = spec.power
    series = expand(spec.series, order // m).substitute_power(m, order)
    double = hecke.evaluate(spec.hecke, order // m).substitute_power(m, order)
    rho2 = "1 (limit)" if spec.rho2 is None else str(spec.rho2)
    stmt = f"Bailey's lemma with {spec.pair_id}, rho1={spec.rho1}, rho2={rho2}: {spec.series} = {spec.hecke}"
    return _compare(
        f"BAILEY_LEMMA_{key.upper()}", order, stmt,
        [("beta side vs series", beta_side, series), ("alpha side vs double sum", alpha_side, double),
         ("alpha side vs beta side", alpha_side, beta_side)],
    )


@_timed
def u_sequence_job(order: int, n_def: int = 20, n_rec: int = 18) -> JobResult:
    pairs = []
    for n in range(n_def + 1):
        pairs.append((f"U_{n} definition vs closed form", bl.u_sequence(n, order), bl.u_closed(n, order)))
    two = TruncatedSeries.monomial(0, order, 2)
    for n in range(n_rec + 1):
        lhs = bl.u_closed(n + 2, order)
        rhs = bl.u_closed(n, order).shift(2 * n) if 2 * n <= order else TruncatedSeries.zero(order)
        rhs = rhs + two.scale((-1) ** n)
        pairs.append((f"U_{n + 2} recurrence", lhs, rhs))
    a1, aq = bl.pair("NEW_A1"), bl.pair("NEW_AQ")
    for n in range(n_def):
        u_n = bl.u_closed(n, order)
        pairs.append((f"a_{n} = (1-q^{2 * n})U_{n}", a1.alpha_at(n, order), u_n.mul_binomial(-1, 2 * n)))
        rhs = -bl.u_closed(n + 1, order) + (u_n.shift(2 * n) if 2 * n <= order else TruncatedSeries.zero(order))
        pairs.append((f"(1-q) alpha_{n} for a=q", aq.alpha_at(n, order).mul_binomial(-1, 1), rhs))
    return _compare("U_SEQ", order, "U_n definition, closed form, recurrence and links to the new pairs", pairs)


HEINE_PARAMS = {
    "q2_q_q4": (qp(2), qp(1), qp(4)),
    "mq_q_mq3": (qp(1, -1), qp(1), qp(3, -1)),
    "q_mq_q3": (qp(1), qp(1, -1), qp(3)),
    "m1_q_q2": (qp(0, -1), qp(1), qp(2)),
}


@_timed
def heine_job(key: str, order: int) -> JobResult:
    a, b, c = HEINE_PARAMS[key]
    lhs, rhs = bl.heine_check(a, b, c, order)
    return _compare(f"HEINE_{key}", order, f"Heine's transformation at a={a}, b={b}, c={c}", [("sides", lhs, rhs)])


# partition oracles


@_timed
def sigma_oracle_job(order: int) -> JobResult:
    return _compare(
        "ORACLE_SIGMA", order, "distinct partitions, even rank minus odd rank = sigma",
        [("coefficients", partitions.sigma_oracle(order), expand(SeriesId.SIGMA, order))],
    )


@_timed
def oracle_job(family: int, n_pin: int, convention: partitions.FamilyConvention | None = None) -> JobResult:
    target = "f1 - q" if family == 1 else f"f{family}"
    if convention is not None:
        got = partitions.family_oracle(family, n_pin, convention)
        want = partitions.family_target(family, n_pin)
        res = _compare(
            f"ORACLE_{family}", n_pin, f"signed count over P_{family} = {target}",
            [("coefficients", got, want)], {"convention": convention.to_record()},
        )
        return res
    sr = partitions.convention_search(family, n_pin)
    details = sr.to_record()
    if sr.matched:
        return JobResult(f"ORACLE_{family}", n_pin, PASS, None, f"signed count over P_{family} = {target}", details)
    fm = sr.report.to_record()["first_mismatch"]
    mm = {"n": fm["n"], "lhs": fm["got"], "rhs": fm["expected"], "where": "best convention"}
    return JobResult(f"ORACLE_{family}", n_pin, FAIL, mm, f"signed count over P_{family} = {target}", details)


# suites


def verify_all(order: int, method: str = "both", oracles: bool = False) -> list[Callable[[], JobResult]]:
    """Thunks for the full suite at the given order; Bailey and U checks use capped orders."""
    jobs: list[Callable[[], JobResult]] = []
    for key in THEOREMS:
        jobs.append(lambda key=key: theorem_job(key, order, method))
    for key in INTERMEDIATE:
        jobs.append(lambda key=key: theorem_job(key, order, method))
    for name in ["SIGMA_HECKE"] + [f"HECKE{i}" for i in range(1, 9)]:
        jobs.append(lambda name=name: hecke_job(name, order))
    for name in hecke.DISSECTIONS:
        jobs.append(lambda name=name: hecke_job(name, order))
    for ring in ("SQRT2", "SQRT3"):
        jobs.append(lambda ring=ring: ideal_consistency_job(ring, order))
    pair_order, lemma_order = min(order, 400), min(order, 500)
    for pid in bl.PAIR_IDS:
        jobs.append(lambda pid=pid: bailey_pair_job(pid, 12, pair_order))
    for pid in ("NEW_A1", "NEW_AQ", "LEMMA12"):
        jobs.append(lambda pid=pid: bailey_inversion_job(pid, 10, pair_order))
    for key in bl.LEMMA_SPECS:
        jobs.append(lambda key=key: bailey_lemma_job(key, lemma_order))
    jobs.append(lambda: u_sequence_job(min(order, 400)))
    for key in HEINE_PARAMS:
        jobs.append(lambda key=key: heine_job(key, min(order, 200)))
    jobs.append(lambda: sigma_oracle_job(min(order, 30)))
    if oracles:
        for i in range(1, 9):
            jobs.append(lambda i=i: oracle_job(i, 20))
    return jobs
