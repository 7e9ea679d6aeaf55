import dataclasses

import pytest

from rqseries import verify
from rqseries.quadfield import ideal_counts_enum, Ring
from rqseries.theorems import INTERMEDIATE, THEOREMS, first_mismatch


@pytest.mark.parametrize("key", sorted(THEOREMS))
@pytest.mark.parametrize("method", ["enum", "mult"])
def test_theorem_identity(key, method):
    ident = THEOREMS[key]
    assert first_mismatch(ident.series_side(800), ident.ideal_side(800, method)) is None


@pytest.mark.parametrize("key", sorted(INTERMEDIATE))
def test_intermediate_identity(key):
    ident = INTERMEDIATE[key]
    assert first_mismatch(ident.series_side(800), ident.ideal_side(800)) is None


def test_negative_shift_drops_only_zeros():
    # q^-7 f2(q^16): the first seven coefficients of f2(q^16) q^0 must vanish
    ident = THEOREMS["T2"]
    assert ident.series_side(100)[9] == 1


def test_off_by_one_weight_fails_at_first_odd_norm():
    ident = THEOREMS["T4"]
    bad = dataclasses.replace(ident, weight=lambda n: (-1) ** (n + 1))
    m = first_mismatch(bad.series_side(200), bad.ideal_side(200))
    assert m is not None
    counts = ideal_counts_enum(Ring.SQRT2, 200)
    first_odd = next(n for n in range(1, 201) if n % 2 and counts[n])
    assert m[0] == first_odd


def test_theorem_job_record():
    res = verify.theorem_job("T5", 300)
    assert res.passed
    rec = res.to_record()
    assert list(rec) == ["job", "N", "verdict", "first_mismatch", "statement", "details", "elapsed"]
    assert rec["job"] == "THEOREM_T5" and rec["details"]["ring"] == "SQRT3"
