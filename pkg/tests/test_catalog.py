import pytest

from expansions import DISPLAYED, expected_pairs
from rqseries.catalog import SeriesId, eta_quotient_product, expand, expand_reference
from rqseries.fps import SeriesError
from rqseries.partitions import sigma_oracle


@pytest.mark.parametrize("name", sorted(DISPLAYED))
def test_displayed_coefficients(name):
    s = expand(name, 100)
    for k, v in expected_pairs(name):
        assert s[k] == v, (name, k)


@pytest.mark.parametrize("sid", list(SeriesId))
def test_incremental_matches_termwise(sid):
    assert expand(sid, 120) == expand_reference(sid, 120)


def test_unsigned_companion_is_eta_quotient():
    assert expand(SeriesId.REMARK_UNSIGNED, 400) == eta_quotient_product(400)


def test_sigma_against_rank_oracle():
    assert expand(SeriesId.SIGMA, 30) == sigma_oracle(30)


def test_truncation_is_consistent():
    big = expand("f3", 300)
    assert expand("f3", 120) == big.truncate(120)


def test_parse_and_errors():
    assert SeriesId.parse("F4") is SeriesId.F4
    assert SeriesId.parse("remark_unsigned") is SeriesId.REMARK_UNSIGNED
    with pytest.raises(KeyError):
        SeriesId.parse("f9")
    with pytest.raises(SeriesError):
        expand("f1", -1)


def test_order_zero():
    assert expand("f1", 0).coeffs == [1]
    assert expand("f2", 0).coeffs == [0]
    assert expand("sigma", 0).coeffs == [1]
