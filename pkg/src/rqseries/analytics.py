"""Coefficient statistics: nonzero density per decade, value attainment, sign checks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .catalog import SeriesId, expand
from .fps import SeriesError, TruncatedSeries


@dataclass
class CoefficientStats:
    series: str
    order: int
    nonzero: int
    # decade k -> density of nonzeros in (10^(k-1), 10^k]
    density: dict[int, float] = field(default_factory=dict)
    values: dict[int, int] = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "series": self.series,
            "N": self.order,
            "nonzero": self.nonzero,
            "density": {str(k): v for k, v in sorted(self.density.items())},
            "values": {str(k): v for k, v in sorted(self.values.items())},
        }


def _coeffs(sid, order, series):
    if series is not None:
        return series.coeffs[: order + 1]
    return expand(sid, order).coeffs


def density_report(
    sid: SeriesId | str, order: int, series: TruncatedSeries | None = None
) -> CoefficientStats:
    if order < 100:
        raise SeriesError("density_report needs N >= 100")
    sid = SeriesId.parse(sid) if isinstance(sid, str) else sid
    c = _coeffs(sid, order, series)
    density = {}
    k = 1
    while 10**k <= order:
        lo, hi = 10 ** (k - 1), 10**k
        hits = sum(1 for n in range(lo + 1, hi + 1) if c[n])
        density[k] = hits / (hi - lo)
        k += 1
    return CoefficientStats(sid.value, order, sum(1 for x in c if x), density, dict(Counter(c)))


def value_attainment(
    sid: SeriesId | str, order: int, targets, series: TruncatedSeries | None = None
) -> dict[int, int]:
    """{m: #{n <= order : a(n) = m}} for m in targets."""
    sid = SeriesId.parse(sid) if isinstance(sid, str) else sid
    counts = Counter(_coeffs(sid, order, series))
    return {m: counts.get(m, 0) for m in sorted(targets)}


def _nonneg(a: int) -> bool:
    return a >= 0


def _nonpos(a: int) -> bool:
    return a <= 0


def _nonneg_or_neg_even(a: int) -> bool:
    return a >= 0 or a % 2 == 0


def _any(a: int) -> bool:
    return True


# expected value set per series at desk scale, and the sign used for attainment targets
VALUE_RULES = {
    SeriesId.F1: (_nonneg, 1),
    SeriesId.F2: (_nonneg, 1),
    SeriesId.F3: (_nonneg_or_neg_even, 1),
    SeriesId.F4: (_any, 1),
    SeriesId.F5: (_nonneg, 1),
    SeriesId.F6: (_nonpos, -1),
    SeriesId.F7: (_any, 1),
    SeriesId.F8: (_nonneg_or_neg_even, 1),
}


def sign_violations(sid: SeriesId, series: TruncatedSeries) -> list[int]:
    """Exponents whose coefficient falls outside the expected value set."""
    ok, _ = VALUE_RULES[sid]
    return [n for n, a in enumerate(series.coeffs) if not ok(a)]


def attainment_targets(sid: SeriesId) -> list[int]:
    _, s = VALUE_RULES[sid]
    return [s * m for m in range(4)]


def density_non_increasing(stats: CoefficientStats, decades=(2, 3, 4)) -> bool:
    vals = [stats.density[k] for k in decades]
    return all(a >= b for a, b in zip(vals, vals[1:]))
