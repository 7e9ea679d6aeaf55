"""Acceptance suite: one PASS/FAIL line per criterion, printed uncaptured."""

import json
import random
import subprocess
import sys
import time
from math import gcd

import pytest

from expansions import DISPLAYED, expected_pairs
from rqseries import bailey as bl
from rqseries import hecke, partitions, verify
from rqseries.analytics import (
    attainment_targets,
    density_non_increasing,
    density_report,
    sign_violations,
    value_attainment,
)
from rqseries.catalog import SeriesId, expand
from rqseries.quadfield import Ring, ideal_counts_enum, ideal_counts_mult
from rqseries.theorems import THEOREMS


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'}  {detail}")

    return emit


def test_criterion_1_expansion_fidelity(report):
    t0 = time.perf_counter()
    bad = []
    for name in DISPLAYED:
        if name == "remark_unsigned":
            continue
        s = expand(name, 100)
        bad += [(name, k, s[k], v) for k, v in expected_pairs(name) if s[k] != v]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 5
    report(1, ok, f"displayed coefficients at N=100, mismatches={bad[:3]}, {dt:.2f}s (limit 5s)")
    assert not bad
    assert dt < 5


def test_criterion_2_hecke_equivalence(report):
    t0 = time.perf_counter()
    bad = []
    for i in range(1, 9):
        if hecke.evaluate(f"HECKE{i}", 2000) != expand(f"f{i}", 2000):
            bad.append(f"HECKE{i}")
    if hecke.evaluate("SIGMA_HECKE", 2000) != expand("sigma", 2000):
        bad.append("SIGMA_HECKE")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    report(2, ok, f"double sums = series at N=2000, failing={bad}, {dt:.2f}s (limit 30s)")
    assert not bad
    assert dt < 30


def test_criterion_3_theorem_identities(report):
    t0 = time.perf_counter()
    results = [verify.theorem_job(k, 2000, "both") for k in THEOREMS]
    dt = time.perf_counter() - t0
    failing = [r.job for r in results if not r.passed]
    ok = not failing and len(results) == 8 and dt < 60
    report(3, ok, f"T1..T8 at N=2000 with enum and mult, failing={failing}, {dt:.2f}s (limit 60s)")
    assert not failing and len(results) == 8
    assert dt < 60


def test_criterion_4_ideal_counts(report):
    bad = []
    for ring in Ring:
        e, m = ideal_counts_enum(ring, 5000), ideal_counts_mult(ring, 5000)
        if e != m:
            bad.append((ring.name, next(n for n in range(5001) if e[n] != m[n])))
    rng = random.Random(20260101)
    tables = {ring: ideal_counts_enum(ring, 5000) for ring in Ring}
    tested = 0
    while tested < 200:
        a, b = rng.randint(1, 70), rng.randint(1, 70)
        if gcd(a, b) != 1 or a * b > 5000:
            continue
        tested += 1
        for ring, t in tables.items():
            if t[a * b] != t[a] * t[b]:
                bad.append((ring.name, a, b))
    report(4, not bad, f"enum = mult to 5000 and {tested} coprime pairs multiplicative, problems={bad[:3]}")
    assert not bad


def test_criterion_5_bailey_suite(report):
    t0 = time.perf_counter()
    results = [verify.bailey_pair_job(p, 12, 400) for p in bl.PAIR_IDS]
    results += [verify.bailey_inversion_job(p, 10, 400) for p in ("NEW_A1", "NEW_AQ", "LEMMA12")]
    results.append(verify.u_sequence_job(400, 20, 18))
    results += [verify.heine_job(k, 200) for k in verify.HEINE_PARAMS]
    results += [verify.bailey_lemma_job(k, 500) for k in bl.LEMMA_SPECS]
    dt = time.perf_counter() - t0
    failing = [r.job for r in results if not r.passed]
    n_ah = sum(p.startswith("AH_") for p in bl.PAIR_IDS)
    n_heine = len(verify.HEINE_PARAMS)
    ok = not failing and n_ah >= 3 and n_heine >= 3 and dt < 60
    report(5, ok, f"{len(results)} Bailey jobs ({n_ah} AH pairs, {n_heine} Heine), failing={failing}, {dt:.2f}s (limit 60s)")
    assert not failing and n_ah >= 3 and n_heine >= 3
    assert dt < 60


def test_criterion_6_oracles(report):
    sigma_ok = partitions.sigma_oracle(30) == expand(SeriesId.SIGMA, 30)
    outcomes, stable = {}, True
    for i in range(1, 9):
        a = partitions.convention_search(i, 20)
        b = partitions.convention_search(i, 20)
        stable &= json.dumps(a.to_record(), sort_keys=True) == json.dumps(b.to_record(), sort_keys=True)
        one = a.matched != (a.report is not None)
        if not one:
            stable = False
        if a.matched:
            outcomes[i] = "match"
        else:
            fm = a.report.to_record()["first_mismatch"]
            outcomes[i] = f"report@n={fm['n']}"
    ok = sigma_ok and stable
    report(6, ok, f"sigma oracle={'ok' if sigma_ok else 'bad'}, families {outcomes}, stable={stable}")
    assert sigma_ok
    assert stable


def test_criterion_7_sign_density_values(report):
    order = 10**4
    problems = []
    for i in range(1, 9):
        sid = SeriesId(f"f{i}")
        s = expand(sid, order)
        v = sign_violations(sid, s)
        if v:
            problems.append((sid.value, "sign", v[0]))
        if not density_non_increasing(density_report(sid, order, s)):
            problems.append((sid.value, "density"))
        att = value_attainment(sid, order - 1, attainment_targets(sid), s)
        missing = [m for m, c in att.items() if c == 0]
        if missing:
            problems.append((sid.value, "values", missing))
    report(7, not problems, f"sign rules, decade density and values at N=10^4, problems={problems}")
    assert not problems


def test_criterion_8_determinism(report):
    cmd = [sys.executable, "-m", "rqseries.cli", "verify-all", "--terms", "500", "--json-only"]
    payloads = []
    for _ in range(2):
        res = subprocess.run(cmd, capture_output=True, text=True, check=False)
        lines = []
        for line in res.stdout.splitlines():
            rec = json.loads(line)
            rec.pop("elapsed")
            lines.append(json.dumps(rec))
        payloads.append(("\n".join(lines).encode(), res.returncode))
    same = payloads[0] == payloads[1]
    n = len(payloads[0][0].splitlines())
    report(8, same, f"two verify-all runs at N=500, {n} records, identical={same}, exit={payloads[0][1]}")
    assert same
    assert n > 0
