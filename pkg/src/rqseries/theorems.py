"""The eight series = ideal-sum identities, plus intermediate forms used in their proofs.

Each identity is stated as   series_side(N) == ideal_side(N)   at a common
order N.  Series sides are built from :func:`catalog.expand` by substitution
q -> q^m, a shift by q^s (s may be negative, then the dropped coefficients
must vanish) and an optional sign.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import SeriesId, expand
from .fps import TruncatedSeries
from .quadfield import IdealWeightSpec, Ring, WeightRule, ideal_theta, indicator


@dataclass(frozen=True)
class Identity:
    key: str
    statement: str
    series: SeriesId
    power: int
    shift: int
    negate_series: bool
    ring: Ring
    weight: IdealWeightSpec
    negate_ideal: bool = False

    def series_side(self, order: int) -> TruncatedSeries:
        inner = order + max(0, -self.shift)
        base = expand(self.series, inner // self.power)
        sub = base.substitute_power(self.power, inner)
        out = sub.shift(self.shift) if self.shift >= 0 else sub.lower(-self.shift)
        return -out if self.negate_series else out

    def ideal_side(self, order: int, method: str = "enum") -> TruncatedSeries:
        out = ideal_theta(self.ring, self.weight, order, method)
        return -out if self.negate_ideal else out


def _w(rule: WeightRule, modulus=None, residue=None) -> IdealWeightSpec:
    return IdealWeightSpec(rule, modulus, residue)


K, L = Ring.SQRT2, Ring.SQRT3

THEOREMS: dict[str, Identity] = {
    "T1": Identity("T1", "q f1(q^16) = sum_{N(a) = 1 mod 16} q^N(a)",
                   SeriesId.F1, 16, 1, False, K, indicator(16, 1)),
    "T2": Identity("T2", "q^-7 f2(q^16) = sum_{N(a) = 9 mod 16} q^N(a)",
                   SeriesId.F2, 16, -7, False, K, indicator(16, 9)),
    "T3": Identity("T3", "q f3(q^2) = sum (-4|N(a)) q^N(a)",
                   SeriesId.F3, 2, 1, False, K, _w(WeightRule.KRONECKER_MINUS4)),
    "T4": Identity("T4", "f4(q) = -sum (-1)^N(a) q^N(a)",
                   SeriesId.F4, 1, 0, False, K, _w(WeightRule.NEG_ONE_POW_NORM), negate_ideal=True),
    "T5": Identity("T5", "q f5(q^4) = sum_{N(a) = 1 mod 4} q^N(a)",
                   SeriesId.F5, 4, 1, False, L, indicator(4, 1)),
    "T6": Identity("T6", "q^-1 f6(q^4) = -sum_{N(a) = 3 mod 4} q^N(a)",
                   SeriesId.F6, 4, -1, False, L, indicator(4, 3), negate_ideal=True),
    "T7": Identity("T7", "q f7(q^3) = -sum_{N(a) = 1 mod 3} (-1)^N(a) q^N(a)",
                   SeriesId.F7, 3, 1, False, L, _w(WeightRule.NEG_ONE_POW_NORM, 3, 1), negate_ideal=True),
    "T8": Identity("T8", "q^-1 f8(q^3) = sum_{N(a) = 2 mod 3} (-1)^N(a) q^N(a)",
                   SeriesId.F8, 3, -1, False, L, _w(WeightRule.NEG_ONE_POW_NORM, 3, 2)),
}

INTERMEDIATE: dict[str, Identity] = {
    "F4_EVEN": Identity("F4_EVEN", "f4(q^2) = -sum_{2 | N(a)} (-1)^(N(a)/2) q^N(a)",
                        SeriesId.F4, 2, 0, False, K, _w(WeightRule.NEG_ONE_POW_HALF_NORM, 2, 0),
                        negate_ideal=True),
    "F5_MOD8": Identity("F5_MOD8", "q^2 f5(q^8) = sum_{N(a) = 2 mod 8} q^N(a)",
                        SeriesId.F5, 8, 2, False, L, indicator(8, 2)),
    "F8_MOD6": Identity("F8_MOD6", "q^-2 f8(q^6) = sum_{N(a) = 4 mod 6} (-1)^(N(a)/2) q^N(a)",
                        SeriesId.F8, 6, -2, False, L, _w(WeightRule.NEG_ONE_POW_HALF_NORM, 6, 4)),
}


def first_mismatch(x: TruncatedSeries, y: TruncatedSeries) -> tuple[int, int, int] | None:
    """(exponent, x coefficient, y coefficient) at the first disagreement, if any."""
    for k, (a, b) in enumerate(zip(x.coeffs, y.coeffs)):
        if a != b:
            return k, a, b
    return None
