"""The q-hypergeometric series sigma, f_1..f_8 and the unsigned f_5 companion.

Every series has the shape  sum_{n >= n0} sign(n) q^{e(n)} P_num(n) / P_den(n)
where P_num and P_den are products of q-Pochhammer symbols.  :func:`expand`
walks n upward and obtains the Pochhammer part of term n from that of term
n-1 by multiplying/dividing only the binomial factors (1 + c q^k) that differ,
so each step costs O(N).  :func:`expand_reference` builds each term from
scratch with pochhammer() and invert() and is kept as an independent check.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .fps import (
    _SAFE,
    INFINITY,
    SeriesError,
    TruncatedSeries,
    _div_binomial,
    _maxabs,
    _mul_binomial,
    pochhammer,
)


def _scalar_div(arr: np.ndarray, d: int) -> np.ndarray:
    return TruncatedSeries(arr).exact_div_scalar(d).array()


class SeriesId(enum.Enum):
    SIGMA = "sigma"
    F1 = "f1"
    F2 = "f2"
    F3 = "f3"
    F4 = "f4"
    F5 = "f5"
    F6 = "f6"
    F7 = "f7"
    F8 = "f8"
    REMARK_UNSIGNED = "remark_unsigned"
    REMARK_ETA_PRODUCT = "remark_eta_product"

    @classmethod
    def parse(cls, name: str) -> "SeriesId":
        key = name.strip().lower()
        for sid in cls:
            if sid.value == key or sid.name.lower() == key:
                return sid
        raise KeyError(f"unknown series {name!r}")


# (s, a, d, m) stands for (s q^a; q^d)_m
Poch = tuple[int, int, int, int]


@dataclass
class Term:
    sign: int
    exponent: int
    num: list[Poch] = field(default_factory=list)
    den: list[Poch] = field(default_factory=list)


@dataclass(frozen=True)
class HyperSum:
    n_start: int
    term: Callable[[int], Term]


def _tri(n: int) -> int:
    return n * (n + 1) // 2


def _sigma(n):
    return Term(1, _tri(n), den=[(-1, 1, 1, n)])


def _f1(n):
    return Term(1, _tri(n), num=[(1, 1, 1, 2 * n)], den=[(-1, 1, 1, n), (1, 1, 1, 2 * n + 1)])


def _f2(n):
    return Term(
        1, _tri(n), num=[(1, 1, 1, 2 * n - 2)], den=[(-1, 1, 1, n - 1), (1, 1, 1, 2 * n - 1)]
    )


def _f3(n):
    return Term(1, n, num=[(1, 1, 1, 2 * n)], den=[(-1, 1, 1, 2 * n + 1)])


def _f4(n):
    return Term(1, n + 1, num=[(1, 1, 1, 2 * n + 1)], den=[(-1, 1, 1, 2 * n + 2)])


def _f5(n):
    return Term((-1) ** n, _tri(n), num=[(1, 1, 1, n)], den=[(1, 1, 2, n + 1)])


def _f5_unsigned(n):
    return Term(1, _tri(n), num=[(1, 1, 1, n)], den=[(1, 1, 2, n + 1)])


def _f6(n):
    return Term(
        (-1) ** n, n, num=[(1, 1, 1, n - 1), (1, 2, 2, n - 1)], den=[(1, 1, 1, 2 * n - 1)]
    )


def _f7(n):
    return Term((-1) ** n, n * n + n, num=[(1, 2, 2, n)], den=[(-1, 1, 1, 2 * n + 1)])


def _f8(n):
    return Term(1, n, num=[(1, 1, 1, 2 * n - 1)], den=[(1, 2 * n, 2, n)])


# minimal q-order of term n is its explicit prefactor e(n), strictly increasing
DEFINITIONS: dict[SeriesId, HyperSum] = {
    SeriesId.SIGMA: HyperSum(0, _sigma),
    SeriesId.F1: HyperSum(0, _f1),
    SeriesId.F2: HyperSum(1, _f2),
    SeriesId.F3: HyperSum(0, _f3),
    SeriesId.F4: HyperSum(0, _f4),
    SeriesId.F5: HyperSum(0, _f5),
    SeriesId.F6: HyperSum(1, _f6),
    SeriesId.F7: HyperSum(0, _f7),
    SeriesId.F8: HyperSum(1, _f8),
    SeriesId.REMARK_UNSIGNED: HyperSum(0, _f5_unsigned),
}


def _breakpoints(num: list[Poch], den: list[Poch]) -> dict[tuple[int, int, int], Counter]:
    """Net factor multiplicity per progression, as +/- steps at index breakpoints.

    A factor (1 + c q^(r + t d)) is keyed by (c, d, r) and indexed by t; the
    Pochhammer (s q^a; q^d)_m covers t in [a // d, a // d + m).
    """
    out: dict[tuple[int, int, int], Counter] = {}
    for pochs, sgn in ((num, 1), (den, -1)):
        for s, a, d, m in pochs:
            if m < 0:
                raise SeriesError(f"negative Pochhammer length in {(s, a, d, m)}")
            if m == 0:
                continue
            steps = out.setdefault((-s, d, a % d), Counter())
            steps[a // d] += sgn
            steps[a // d + m] -= sgn
    return out


def _delta(old: dict, new: dict):
    """Yield (c, k, power) so that applying (1 + c q^k)^power turns old into new."""
    for key in sorted(set(old) | set(new)):
        c, d, r = key
        steps: Counter = Counter()
        for t, v in new.get(key, {}).items():
            steps[t] += v
        for t, v in old.get(key, {}).items():
            steps[t] -= v
        level = 0
        marks = sorted(t for t, v in steps.items() if v)
        for lo, hi in zip(marks, marks[1:]):
            level += steps[lo]
            if level:
                for t in range(lo, hi):
                    yield c, r + t * d, level
        if marks:
            level += steps[marks[-1]]
        if level:
            raise SeriesError("unbalanced factor steps")


def hypergeometric_sum(spec: HyperSum, order: int) -> TruncatedSeries:
    """Exact truncation of sum_n sign q^e num/den via incremental factor updates."""
    acc = np.zeros(order + 1, dtype=np.int64)
    body = np.zeros(order + 1, dtype=np.int64)
    body[0] = 1
    current: dict = {}
    last_e = -1
    n = spec.n_start
    while True:
        t = spec.term(n)
        if t.exponent < last_e:
            raise SeriesError(f"prefactor exponent decreased at n={n}")
        last_e = t.exponent
        if t.exponent > order:
            break
        top = order - t.exponent
        body = body[: top + 1]
        target = _breakpoints(t.num, t.den)
        changes = sorted(_delta(current, target), key=lambda x: (x[2] < 0, x[1]))
        for c, k, power in changes:
            # multiplications first keeps intermediate coefficients small
            if k > top:
                continue
            if power > 0:
                for _ in range(power):
                    body = _mul_binomial(body, c, k)
            else:
                if k == 0 and c == -1:
                    raise SeriesError("division by a vanishing factor (1 - 1)")
                for _ in range(-power):
                    body = _div_binomial(body, c, k) if k else _scalar_div(body, 1 + c)
        current = target
        part = body
        if acc.dtype != object and (
            part.dtype == object or _maxabs(acc) + _maxabs(part) >= _SAFE
        ):
            acc = acc.astype(object)
        if acc.dtype == object:
            part = part.astype(object)
        acc[t.exponent :] += t.sign * part
        n += 1
    return TruncatedSeries(acc)


def eta_quotient_product(order: int) -> TruncatedSeries:
    """prod_{n>=1} (1 - q^{2n})^4 (1 - q^n)^{-2}, normalized to constant term 1."""
    even = pochhammer(1, 2, 2, INFINITY, order)
    plain = pochhammer(1, 1, 1, INFINITY, order).invert()
    return even * even * even * even * plain * plain


def expand(sid: SeriesId | str, order: int) -> TruncatedSeries:
    """The series ``sid`` truncated at q^order."""
    if isinstance(sid, str):
        sid = SeriesId.parse(sid)
    if order < 0:
        raise SeriesError("order must be >= 0")
    if sid is SeriesId.REMARK_ETA_PRODUCT:
        return eta_quotient_product(order)
    return hypergeometric_sum(DEFINITIONS[sid], order)


def expand_reference(sid: SeriesId | str, order: int) -> TruncatedSeries:
    """Slow path: each term as shift * prod pochhammer * invert(prod pochhammer)."""
    if isinstance(sid, str):
        sid = SeriesId.parse(sid)
    if sid is SeriesId.REMARK_ETA_PRODUCT:
        return eta_quotient_product(order)
    spec = DEFINITIONS[sid]
    total = TruncatedSeries.zero(order)
    n = spec.n_start
    while True:
        t = spec.term(n)
        if t.exponent > order:
            return total
        term = TruncatedSeries.one(order)
        for s, a, d, m in t.num:
            term = term * pochhammer(s, a, d, m, order)
        for s, a, d, m in t.den:
            term = term * pochhammer(s, a, d, m, order).invert()
        total = total + term.shift(t.exponent).scale(t.sign)
        n += 1
