import random
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rqseries.fps import SeriesError
from rqseries.quadfield import (
    IdealWeightSpec,
    Ring,
    WeightRule,
    factorize,
    ideal_count_enum,
    ideal_count_mult,
    ideal_counts_enum,
    ideal_counts_mult,
    ideal_theta,
    indicator,
    kronecker_minus4,
)

DISC = {Ring.SQRT2: 8, Ring.SQRT3: 12}


def kronecker(D, n):
    """(D|n) for D = 8 or 12 via quadratic reciprocity free rules."""
    if gcd(D, n) != 1:
        return 0
    if D == 8:
        return 1 if n % 8 in (1, 7) else -1
    return 1 if n % 12 in (1, 11) else -1


def zeta_coefficient(ring, n):
    # Dedekind zeta = zeta * L(chi_D): a(n) = sum_{d | n} (D|d)
    return sum(kronecker(DISC[ring], d) for d in range(1, n + 1) if n % d == 0)


def test_examples():
    assert ideal_count_enum(Ring.SQRT2, 2) == 1
    assert ideal_count_enum(Ring.SQRT3, 2) == 1
    assert ideal_count_enum(Ring.SQRT2, 1) == 1
    assert ideal_count_enum(Ring.SQRT2, 7) == 2
    assert ideal_count_enum(Ring.SQRT2, 3) == 0
    assert ideal_count_mult(Ring.SQRT2, 49) == 3
    assert ideal_count_mult(Ring.SQRT2, 9) == 1
    assert ideal_count_mult(Ring.SQRT3, 6) == 1
    with pytest.raises(SeriesError):
        ideal_count_enum(Ring.SQRT2, 0)
    with pytest.raises(SeriesError):
        ideal_count_mult(Ring.SQRT3, 0)


@pytest.mark.parametrize("ring", list(Ring))
def test_against_dedekind_zeta(ring):
    counts = ideal_counts_enum(ring, 600)
    assert counts[1:] == [zeta_coefficient(ring, n) for n in range(1, 601)]


@pytest.mark.parametrize("ring", list(Ring))
def test_single_count_agrees_with_table(ring):
    table = ideal_counts_enum(ring, 400)
    assert [ideal_count_enum(ring, n) for n in range(1, 401)] == table[1:]


@pytest.mark.parametrize("ring", list(Ring))
def test_enum_equals_mult(ring):
    assert ideal_counts_enum(ring, 3000) == ideal_counts_mult(ring, 3000)


def test_multiplicative_on_coprime_pairs():
    rng = random.Random(7)
    for _ in range(100):
        a, b = rng.randint(1, 3000), rng.randint(1, 3000)
        if gcd(a, b) != 1:
            continue
        for ring in Ring:
            assert ideal_count_mult(ring, a * b) == ideal_count_mult(ring, a) * ideal_count_mult(ring, b)


@given(st.integers(1, 10**6))
def test_factorize_reconstructs(n):
    prod = 1
    for p, e in factorize(n).items():
        prod *= p**e
    assert prod == n


def test_kronecker_minus4():
    assert [kronecker_minus4(n) for n in (1, 2, 7, 9)] == [1, 0, -1, 1]


def test_weight_rules():
    assert indicator(16, 1)(17) == 1 and indicator(16, 1)(9) == 0
    assert IdealWeightSpec(WeightRule.NEG_ONE_POW_NORM, 3, 2)(5) == -1
    assert IdealWeightSpec(WeightRule.NEG_ONE_POW_HALF_NORM, 6, 4)(10) == -1
    with pytest.raises(SeriesError):
        IdealWeightSpec(WeightRule.NEG_ONE_POW_HALF_NORM)
    with pytest.raises(SeriesError):
        IdealWeightSpec(WeightRule.NEG_ONE_POW_HALF_NORM, 4, 1)
    with pytest.raises(SeriesError):
        IdealWeightSpec(WeightRule.ONE, 4, None)


def test_theta_examples():
    t = ideal_theta(Ring.SQRT2, indicator(16, 1), 20)
    assert t[1] == 1 and t[17] == 2
    assert sum(1 for c in t.coeffs if c) == 2
    assert ideal_theta(Ring.SQRT2, IdealWeightSpec(WeightRule.KRONECKER_MINUS4), 7)[7] == -2
    assert ideal_theta(Ring.SQRT3, indicator(4, 1), 1).coeffs == [0, 1]
    with pytest.raises(SeriesError):
        ideal_theta(Ring.SQRT2, indicator(4, 1), 10, method="magic")


def test_ring_parse():
    assert Ring.parse("K") is Ring.SQRT2
    assert Ring.parse("3") is Ring.SQRT3
    assert Ring.parse("sqrt2") is Ring.SQRT2
