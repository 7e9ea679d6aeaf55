import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rqseries import partitions as pt
from rqseries.fps import INFINITY, SeriesError, TruncatedSeries, pochhammer
from rqseries.partitions import FamilyConvention, Kind, Overpartition


def test_enumeration_examples():
    assert sorted(pt.distinct_partitions(3)) == [(2, 1), (3,)]
    assert len(list(pt.overpartitions(2))) == 4
    assert len(list(pt.partitions(4))) == 5
    assert list(pt.partitions(0)) == [()]
    with pytest.raises(SeriesError):
        list(pt.partitions(-1))


def test_counts_match_generating_products():
    order = 20
    euler_inv = pochhammer(1, 1, 1, INFINITY, order).invert()
    plus = pochhammer(-1, 1, 1, INFINITY, order)
    over = plus * euler_inv
    pairs = over * over
    expected = {
        Kind.PARTITION: euler_inv,
        Kind.DISTINCT: plus,
        Kind.OVERPARTITION: over,
        Kind.OVERPARTITION_PAIR: pairs,
    }
    for kind, gf in expected.items():
        top = 12 if kind is Kind.OVERPARTITION_PAIR else order
        assert [len(list(pt.enumerate_objects(kind, n))) for n in range(top + 1)] == gf.coeffs[: top + 1]


def test_linked_pairs_are_a_subset():
    for n in range(8):
        full = set(pt.overpartition_pairs(n))
        for offset in (0, 1):
            linked = list(pt.linked_pairs(n, offset))
            assert len(linked) == len(set(linked))
            assert set(linked) <= full


def test_overpartitions_are_valid():
    for n in range(10):
        for op in pt.overpartitions(n):
            assert sum(op.parts) == n
            assert list(op.parts) == sorted(op.parts, reverse=True)
            assert op.overlined <= set(op.parts)


def test_dyson_rank():
    assert pt.dyson_rank((4, 1)) == 2
    assert pt.dyson_rank((1, 1, 1)) == -2
    with pytest.raises(SeriesError):
        pt.dyson_rank(())


def test_sigma_oracle():
    from rqseries.catalog import expand

    assert pt.sigma_oracle(30) == expand("sigma", 30)


def test_member_examples():
    assert pt.family_member(2, (2, 1)) == 0
    assert pt.family_member(6, Overpartition((2, 2), frozenset())) == 2
    assert pt.family_member(1, (1, 1, 1)) == 0


def test_kind_mismatch():
    with pytest.raises(SeriesError):
        pt.family_member(6, (2, 1))
    with pytest.raises(SeriesError):
        pt.family_member(3, (2, 1))


def test_convention_validation():
    with pytest.raises(SeriesError):
        FamilyConvention(9)
    with pytest.raises(SeriesError):
        FamilyConvention(1, 2)
    with pytest.raises(SeriesError):
        FamilyConvention.literal(5).with_overrides(strict_half=True)
    conv = FamilyConvention.literal(3).with_overrides(empty_mu_flip=True)
    assert conv.get("empty_mu_flip") is True and conv.get("count_overlined_in_mu") is True


@pytest.mark.parametrize("i", range(1, 9))
def test_search_is_deterministic(i):
    a = pt.convention_search(i, 12)
    b = pt.convention_search(i, 12)
    assert a.to_record() == b.to_record()
    assert a.matched != (a.report is not None)


@pytest.mark.parametrize("i", [4, 5, 6])
def test_literal_conventions_match(i):
    res = pt.convention_search(i, 16)
    assert res.matched and res.tried == 1


def test_corrupted_target_gives_report():
    target = pt.family_target(5, 10) + TruncatedSeries.monomial(7, 10)
    res = pt.convention_search(5, 10, target)
    assert not res.matched
    rec = res.report.to_record()
    assert rec["first_mismatch"]["n"] == 7
    assert rec["first_mismatch"]["expected"] == rec["first_mismatch"]["got"] + 1


def test_budget_guard():
    with pytest.raises(SeriesError):
        pt.convention_search(3, pt.PAIR_BUDGET + 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10))
def test_signed_count_bounded_by_unsigned(i, n):
    for conv in list(pt.conventions(i))[:4]:
        assert abs(pt.family_counts(i, n, conv)) <= pt.unsigned_total(i, n, conv)
