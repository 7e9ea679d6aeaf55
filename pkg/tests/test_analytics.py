import pytest

from rqseries.analytics import (
    CoefficientStats,
    attainment_targets,
    density_non_increasing,
    density_report,
    sign_violations,
    value_attainment,
)
from rqseries.catalog import SeriesId, expand
from rqseries.fps import SeriesError, TruncatedSeries


def test_density_decades():
    s = TruncatedSeries.from_dict({1: 1, 5: 1, 11: 1, 100: 2}, 100)
    stats = density_report("f1", 100, s)
    assert stats.density == {1: 1 / 9, 2: 2 / 90}
    assert stats.nonzero == 4
    with pytest.raises(SeriesError):
        density_report("f1", 99)


def test_value_attainment_counts():
    s = TruncatedSeries([1, 0, 0, 3, -2, 0])
    assert value_attainment("f1", 5, [0, 1, 3, 7], s) == {0: 3, 1: 1, 3: 1, 7: 0}


def test_targets_are_sign_adjusted():
    assert attainment_targets(SeriesId.F6) == [0, -1, -2, -3]
    assert attainment_targets(SeriesId.F1) == [0, 1, 2, 3]


def test_sign_rules_detect_violations():
    assert sign_violations(SeriesId.F1, TruncatedSeries([1, -1, 0])) == [1]
    assert sign_violations(SeriesId.F3, TruncatedSeries([1, -2, -3])) == [2]
    assert sign_violations(SeriesId.F6, TruncatedSeries([0, 1, -1])) == [1]


@pytest.mark.parametrize("i", range(1, 9))
def test_sign_rules_hold_at_moderate_order(i):
    sid = SeriesId(f"f{i}")
    assert sign_violations(sid, expand(sid, 2000)) == []


def test_non_increasing():
    stats = CoefficientStats("x", 10**4, 0, {2: 0.5, 3: 0.4, 4: 0.4})
    assert density_non_increasing(stats)
    stats.density[4] = 0.41
    assert not density_non_increasing(stats)
