"""Bailey pairs with q-power parameters, checked as truncated-series identities.

A pair relative to ``a`` over base Q = q^d satisfies

    beta_n = sum_{r=0}^{n} alpha_r / ((Q; Q)_{n-r} (aQ; Q)_{n+r}).

Parameters (a, b, c, rho1, rho2) are SignedQPower values s*q^e in the actual
variable q, or INFINITY where a limiting form is documented.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .fps import (
    INFINITY,
    SeriesError,
    SignedQPower,
    TruncatedSeries,
    gaussian_binomial,
    pochhammer,
    qp,
)

Seq = Callable[[int, int], TruncatedSeries]


class DivergentSpecialization(SeriesError):
    pass


# small helpers on (x; q^d)_n with x a SignedQPower


def _factors(x: SignedQPower, d: int, n: int) -> list[tuple[int, int]]:
    """(c, k) pairs with (x; q^d)_n = prod (1 + c q^k)."""
    if x.exponent < 0:
        raise SeriesError(f"Pochhammer base {x} has a negative exponent")
    return [(-x.sign, x.exponent + j * d) for j in range(n)]


def ratio(num: list[tuple[int, int]], den: list[tuple[int, int]], order: int) -> TruncatedSeries:
    """prod (1 + c q^k) over num divided by the same over den, exactly."""
    out = TruncatedSeries.one(order)
    for c, k in num:
        out = out.mul_binomial(c, k)
    for c, k in den:
        if k == 0 and c == -1:
            raise SeriesError("denominator factor (1 - 1) vanishes")
        out = out.div_binomial(c, k)
    return out


class _Running:
    """Products P(n) = prod num(n) / prod den(n), built incrementally in n.

    ``factors(n)`` returns the (num, den) lists of binomial factors (c, k).
    Only the factors that change between n-1 and n are applied, and the
    values are cached at the largest order requested so far.
    """

    def __init__(self, factors: Callable[[int], tuple[list, list]], start: int = 0):
        self._factors = factors
        self._start = start
        self._order = -1
        self._vals: list[TruncatedSeries] = []
        self._net: dict = {}

    @staticmethod
    def _count(num, den) -> dict:
        out: dict = {}
        for f in num:
            out[f] = out.get(f, 0) + 1
        for f in den:
            out[f] = out.get(f, 0) - 1
        return out

    def get(self, n: int, order: int) -> TruncatedSeries:
        if n < self._start:
            raise SeriesError(f"index {n} below {self._start}")
        if order > self._order:
            num, den = self._factors(self._start)
            self._vals = [ratio(num, den, order)]
            self._net = self._count(num, den)
            self._order = order
        while len(self._vals) <= n - self._start:
            net = self._count(*self._factors(self._start + len(self._vals)))
            keys = set(net) | set(self._net)
            step = {f: net.get(f, 0) - self._net.get(f, 0) for f in keys}
            num = [f for f, v in sorted(step.items()) if v > 0 for _ in range(v)]
            den = [f for f, v in sorted(step.items()) if v < 0 for _ in range(-v)]
            self._vals.append(_apply(self._vals[-1], num, den))
            self._net = net
        val = self._vals[n - self._start]
        return val if order == self._order else val.truncate(order)


def _apply(x: TruncatedSeries, num, den) -> TruncatedSeries:
    for c, k in num:
        x = x.mul_binomial(c, k)
    for c, k in den:
        if k == 0 and c == -1:
            raise SeriesError("denominator factor (1 - 1) vanishes")
        x = x.div_binomial(c, k)
    return x


def poch(x: SignedQPower, d: int, n: int, order: int) -> TruncatedSeries:
    return ratio(_factors(x, d, n), [], order)


def poch_inf(x: SignedQPower, d: int, order: int, invert: bool = False) -> TruncatedSeries:
    """(x; q^d)_oo, or its inverse; a leading factor 1 - x with x = -1 is the scalar 2."""
    lead = None
    if x.exponent == 0:
        if x.sign == 1:
            raise SeriesError("infinite Pochhammer (1; q)_oo vanishes")
        lead = (1, 0)
        x = qp(d, -1)
    body = pochhammer(x.sign, x.exponent, d, INFINITY, order)
    if invert:
        body = body.invert()
        if lead is not None:
            body = body.div_binomial(*lead)
    elif lead is not None:
        body = body.mul_binomial(*lead)
    return body


def _mono(x: SignedQPower, order: int) -> TruncatedSeries:
    return x.series(order)


@dataclass
class BaileyPair:
    name: str
    a: SignedQPower
    base: int
    alpha: Seq
    beta: Seq
    notes: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def alpha_at(self, n: int, order: int) -> TruncatedSeries:
        key = ("a", n, order)
        if key not in self._cache:
            self._cache[key] = self.alpha(n, order)
        return self._cache[key]

    def beta_at(self, n: int, order: int) -> TruncatedSeries:
        key = ("b", n, order)
        if key not in self._cache:
            self._cache[key] = self.beta(n, order)
        return self._cache[key]


def _poly(terms, order: int) -> TruncatedSeries:
    acc: dict[int, int] = {}
    for e, c in terms:
        if e < 0:
            raise SeriesError(f"negative exponent {e} in a closed form")
        acc[e] = acc.get(e, 0) + c
    return TruncatedSeries.from_dict(acc, order)


# the two pairs built on U_n


def new_a1() -> BaileyPair:
    run = _Running(lambda n: (_factors(qp(1), 2, n - 1), _factors(qp(1), 1, 2 * n - 1)), start=1)

    def beta(n, order):
        if n == 0:
            return TruncatedSeries.zero(order)
        return run.get(n, order).scale((-1) ** n)

    def alpha(n, order):
        m, odd = divmod(n, 2)
        if not odd:
            inner = [(2 * m * m - 2 * m - 2 * j * j - 2 * j, 1) for j in range(-m, m)]
            return _poly(inner, order).mul_binomial(-1, 4 * m)
        inner = [(2 * m * m - 2 * j * j, -1) for j in range(-m, m + 1)]
        return _poly(inner, order).mul_binomial(-1, 4 * m + 2)

    return BaileyPair("NEW_A1", qp(0), 1, alpha, beta, "a=1, b_0=0")


def new_aq() -> BaileyPair:
    run = _Running(lambda n: (_factors(qp(1), 2, n), _factors(qp(1), 1, 2 * n + 1)))

    def beta(n, order):
        return run.get(n, order).scale((-1) ** n)

    def alpha(n, order):
        m, odd = divmod(n, 2)
        if not odd:
            terms = [(2 * m * m + 2 * m - 2 * j * j - 2 * j, 1) for j in range(-m, m)]
            terms += [(2 * m * m - 2 * j * j, 1) for j in range(-m, m + 1)]
        else:
            terms = [(2 * m * m + 4 * m + 2 - 2 * j * j, -1) for j in range(-m, m + 1)]
            terms += [(2 * m * m + 2 * m - 2 * j * j - 2 * j, -1) for j in range(-m - 1, m + 1)]
        return _poly(terms, order).div_binomial(-1, 1)

    return BaileyPair("NEW_AQ", qp(1), 1, alpha, beta, "a=q")


def lemma12() -> BaileyPair:
    run = _Running(lambda n: (_factors(qp(1), 1, n - 1), _factors(qp(1), 1, 2 * n - 1)), start=1)

    def beta(n, order):
        if n == 0:
            return TruncatedSeries.zero(order)
        return run.get(n, order)

    def alpha(n, order):
        m, odd = divmod(n, 2)
        if not odd:
            terms = [(3 * m * m - 2 * m - j * j - j, -1) for j in range(-m, m)]
            return _poly(terms, order).mul_binomial(-1, 4 * m)
        terms = [(3 * m * m + m - j * j, 1) for j in range(-m, m + 1)]
        return _poly(terms, order).mul_binomial(-1, 4 * m + 2)

    return BaileyPair("LEMMA12", qp(0), 1, alpha, beta, "a=1, B_0=0")


def over_power(pair: BaileyPair, d: int) -> BaileyPair:
    """The same pair with q replaced by q^d throughout."""

    def alpha(n, order):
        return pair.alpha_at(n, order // d).substitute_power(d, order)

    def beta(n, order):
        return pair.beta_at(n, order // d).substitute_power(d, order)

    a = SignedQPower(pair.a.sign, pair.a.exponent * d)
    return BaileyPair(f"{pair.name}(q^{d})", a, pair.base * d, alpha, beta, pair.notes)


def andrews_hickerson(d: int, a: SignedQPower, b: SignedQPower, c: SignedQPower) -> BaileyPair:
    """The (A'_n, B'_n) pair relative to a over base q^d with parameters b, c.

    The j = 0 summand carries (1 - a q^{-d}) (a; q^d)_{-1}, taken as 1.
    """
    bc = b * c
    ab, ac = a / b, a / c
    bq, cq = b * qp(d), c * qp(d)
    for x, label in ((ab, "a/b"), (ac, "a/c"), (bq, "bq"), (cq, "cq"), (a, "a")):
        if x.exponent < 0:
            raise SeriesError(f"ill-formed specialization: {label} = {x}")
    if bc.exponent < 0:
        raise SeriesError(f"ill-formed specialization: bc = {bc}")
    if a.exponent == 0 and a.sign == 1:
        raise SeriesError("ill-formed specialization: 1 - a vanishes")

    def beta_factors(n):
        return [], _factors(bq, d, n) + _factors(cq, d, n)

    def outer_factors(n):
        num = [(-a.sign, a.exponent + 2 * n * d)] + _factors(ab, d, n) + _factors(ac, d, n)
        den = [(-a.sign, a.exponent)] + _factors(bq, d, n) + _factors(cq, d, n)
        return num, den

    def inner_factors(j):
        num = _factors(b, d, j) + _factors(c, d, j)
        den = _factors(qp(d), d, j) + _factors(ab, d, j) + _factors(ac, d, j)
        if j >= 1:
            num += [(-a.sign, a.exponent + (2 * j - 1) * d)] + _factors(a, d, j - 1)
        return num, den

    betas = _Running(beta_factors)
    outer = _Running(outer_factors)
    inner = _Running(inner_factors)

    def beta(n, order):
        return betas.get(n, order)

    def alpha(n, order):
        total = TruncatedSeries.zero(order)
        for j in range(n + 1):
            e = d * (n * n - j * (j - 1) // 2) + bc.exponent * (n - j)
            if e > order:
                continue
            sign = (-1) ** j * bc.sign ** (n - j)
            total = total + inner.get(j, order - e).shift_into(e, order).scale(sign)
        return outer.get(n, order) * total

    name = f"AH(q^{d}; a={a}, b={b}, c={c})"
    return BaileyPair(name, a, d, alpha, beta)


# definition, inversion


def defining_sum(p: BaileyPair, n: int, order: int) -> TruncatedSeries:
    """sum_r alpha_r / ((Q)_{n-r} (aQ)_{n+r})."""
    d = p.base
    aq = p.a * qp(d)
    total = TruncatedSeries.zero(order)
    for r in range(n + 1):
        den = _factors(qp(d), d, n - r) + _factors(aq, d, n + r)
        total = total + p.alpha_at(r, order) * ratio([], den, order)
    return total


@dataclass
class PairCheck:
    n: int
    equal: bool
    first_mismatch: int | None


def verify_pair_relation(p: BaileyPair, n_max: int, order: int) -> list[PairCheck]:
    out = []
    for n in range(n_max + 1):
        lhs = p.beta_at(n, order)
        rhs = defining_sum(p, n, order)
        diff = (lhs - rhs).valuation()
        out.append(PairCheck(n, diff is None, diff))
    return out


def bailey_invert(beta: Seq, a: SignedQPower, n_max: int, order: int, d: int = 1) -> list[TruncatedSeries]:
    """alpha_0..alpha_{n_max} recovered from beta by Bailey inversion."""
    aq = a * qp(d)
    out = [beta(0, order)]
    for n in range(1, n_max + 1):
        total = TruncatedSeries.zero(order)
        for j in range(n + 1):
            k = n - j
            e = d * (k * (k - 1) // 2)
            if e > order:
                continue
            coeff = ratio(_factors(aq, d, n + j - 1), _factors(qp(d), d, k), order - e)
            term = coeff.shift_into(e, order) * beta(j, order)
            total = total + term.scale((-1) ** k)
        out.append(total.mul_binomial(-a.sign, a.exponent + 2 * n * d))
    return out


# Bailey's lemma


def _weights(p: BaileyPair, rhos: list, n: int, order: int):
    """(explicit q-exponent, sign, finite Pochhammer factors) of the n-th weight."""
    d = p.base
    aq = p.a * qp(d)
    finite = [r for r in rhos if r is not INFINITY]
    n_inf = len(rhos) - len(finite)
    ratio_ = aq
    for r in finite:
        ratio_ = ratio_ / r
    if ratio_.exponent < 0:
        raise DivergentSpecialization(f"aq/(rho1 rho2) = {ratio_} has a negative exponent")
    e = n * ratio_.exponent + n_inf * d * n * (n - 1) // 2
    sign = ratio_.sign**n * (-1) ** (n * n_inf)
    num = [f for r in finite for f in _factors(r, d, n)]
    return e, sign, num, ratio_, n_inf


def _check_growth(ratio_: SignedQPower, n_inf: int):
    if ratio_.exponent == 0 and n_inf == 0:
        raise DivergentSpecialization("summand orders do not grow")


def bailey_lemma_sides(p: BaileyPair, rho1, rho2, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """(alpha side, beta side) of Bailey's lemma, each truncated at q^order.

    rho = INFINITY uses (rho; Q)_n / rho^n -> (-1)^n Q^{n(n-1)/2} and aQ/rho -> 0.
    """
    d = p.base
    aq = p.a * qp(d)
    rhos = [rho1, rho2]
    finite = [r for r in rhos if r is not INFINITY]
    den_params = [aq / r for r in finite]
    for x in den_params:
        if x.exponent < 0:
            raise SeriesError(f"aq/rho = {x} has a negative exponent")
        if x.exponent == 0 and x.sign == 1:
            raise SeriesError("specialization makes a denominator Pochhammer vanish")
    def num(n):
        return [f for r in finite for f in _factors(r, d, n)]

    def den(n):
        return [f for x in den_params for f in _factors(x, d, n)]

    w_run = _Running(lambda n: (num(n), []))
    wa_run = _Running(lambda n: (num(n), den(n)))
    alpha_side = TruncatedSeries.zero(order)
    beta_sum = TruncatedSeries.zero(order)
    n = 0
    while True:
        e, sign, _, ratio_, n_inf = _weights(p, rhos, n, order)
        _check_growth(ratio_, n_inf)
        if e > order:
            break
        top = order - e
        w = w_run.get(n, top)
        wa = wa_run.get(n, top)
        alpha_side = alpha_side + (wa * p.alpha_at(n, top)).shift_into(e, order).scale(sign)
        beta_sum = beta_sum + (w * p.beta_at(n, top)).shift_into(e, order).scale(sign)
        n += 1
    pref = poch_inf(aq, d, order)
    if len(finite) == 2:
        pref = pref * poch_inf(aq / (rho1 * rho2), d, order)
    for x in den_params:
        pref = pref * poch_inf(x, d, order, invert=True)
    return alpha_side, pref * beta_sum


def bailey_lemma_rho2_to_one(
    p: BaileyPair, rho1, order: int, divisor: int = 1
) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides divided by divisor*(1 - rho2), in the limit rho2 -> 1.

    For n >= 1, (rho2; Q)_n / (1 - rho2) -> (Q; Q)_{n-1}; the infinite-product
    prefactor tends to 1.  The n = 0 terms alpha_0 = beta_0 must vanish.
    """
    d = p.base
    aq = p.a * qp(d)
    if not (p.alpha_at(0, order).is_zero() and p.beta_at(0, order).is_zero()):
        raise SeriesError("illegal rho2 -> 1 limit for this pair")
    finite = [] if rho1 is INFINITY else [rho1]
    den_params = [aq / r for r in finite] + [aq]
    for x in den_params:
        if x.exponent < 0 or (x.exponent == 0 and x.sign == 1):
            raise SeriesError(f"denominator Pochhammer base {x} is not admissible")
    def num(n):
        # (rho2; Q)_n / (1 - rho2) at rho2 = 1
        return [f for r in finite for f in _factors(r, d, n)] + _factors(qp(d), d, n - 1)

    def den(n):
        return [f for x in den_params for f in _factors(x, d, n)]

    w_run = _Running(lambda n: (num(n), []), start=1)
    wa_run = _Running(lambda n: (num(n), den(n)), start=1)
    alpha_side = TruncatedSeries.zero(order)
    beta_side = TruncatedSeries.zero(order)
    n = 1
    while True:
        # rho2 = 1 inside aq/(rho1 rho2)
        e, sign, _, ratio_, n_inf = _weights(p, [rho1, qp(0)], n, order)
        _check_growth(ratio_, n_inf)
        if e > order:
            break
        top = order - e
        alpha_side = alpha_side + (wa_run.get(n, top) * p.alpha_at(n, top)).shift_into(e, order).scale(sign)
        beta_side = beta_side + (w_run.get(n, top) * p.beta_at(n, top)).shift_into(e, order).scale(sign)
        n += 1
    if divisor != 1:
        alpha_side = alpha_side.exact_div_scalar(divisor)
        beta_side = beta_side.exact_div_scalar(divisor)
    return alpha_side, beta_side


# U_n


def u_sequence(n: int, order: int) -> TruncatedSeries:
    """(-1)^n sum_{j=1}^n [n+j-1, 2j-1] q^{C(n-j, 2)} (q; q^2)_{j-1}."""
    total = TruncatedSeries.zero(order)
    for j in range(1, n + 1):
        k = n - j
        e = k * (k - 1) // 2
        if e > order:
            continue
        gb = gaussian_binomial(n + j - 1, 2 * j - 1, order - e)
        term = gb * poch(qp(1), 2, j - 1, order - e)
        total = total + term.shift_into(e, order)
    return total.scale((-1) ** n)


def u_closed(n: int, order: int) -> TruncatedSeries:
    m, odd = divmod(n, 2)
    if not odd:
        return _poly([(2 * m * m - 2 * m - 2 * j * j - 2 * j, 1) for j in range(-m, m)], order)
    return _poly([(2 * m * m - 2 * j * j, -1) for j in range(-m, m + 1)], order)


# Heine


def heine_check(a: SignedQPower, b: SignedQPower, c: SignedQPower, order: int):
    """Both sides of sum (a,b)_n/(q,c)_n (c/ab)^n = (c/a, c/b)_oo/(c, c/ab)_oo."""
    r = c / (a * b)
    ca, cb = c / a, c / b
    for x, label in ((r, "c/ab"), (ca, "c/a"), (cb, "c/b"), (c, "c")):
        if x.exponent < 1:
            raise DivergentSpecialization(f"divergent specialization: {label} = {x}")
    for x in (a, b):
        if x.exponent < 0 or (x.exponent == 0 and x.sign == 1):
            raise DivergentSpecialization(f"divergent specialization: parameter {x}")
    lhs = TruncatedSeries.zero(order)
    n = 0
    while n * r.exponent <= order:
        e = n * r.exponent
        top = order - e
        num = _factors(a, 1, n) + _factors(b, 1, n)
        den = _factors(qp(1), 1, n) + _factors(c, 1, n)
        lhs = lhs + ratio(num, den, top).shift_into(e, order).scale(r.sign**n)
        n += 1
    rhs = poch_inf(ca, 1, order) * poch_inf(cb, 1, order)
    rhs = rhs * poch_inf(c, 1, order, invert=True) * poch_inf(r, 1, order, invert=True)
    return lhs, rhs


# registry


AH_SPECIALIZATIONS: dict[str, tuple[int, SignedQPower, SignedQPower, SignedQPower]] = {
    # (d, a, b, c) with q -> q^d
    "F3": (2, qp(2), qp(1, -1), qp(0, -1)),
    "F4": (2, qp(4), qp(1, -1), qp(2, -1)),
    "F7": (2, qp(2), qp(0, -1), qp(1, -1)),
    # b = q^(1/2), c = -q^(1/2), a = q, realized after q -> q^2
    "F5_SQ": (2, qp(2), qp(1), qp(1, -1)),
}


@lru_cache(maxsize=None)
def pair(pid: str) -> BaileyPair:
    key = pid.strip().upper()
    if key == "NEW_A1":
        return new_a1()
    if key == "NEW_AQ":
        return new_aq()
    if key == "LEMMA12":
        return lemma12()
    if key == "LEMMA12_Q2":
        return over_power(lemma12(), 2)
    if key.startswith("AH_"):
        spec = key[3:]
        if spec not in AH_SPECIALIZATIONS:
            raise KeyError(f"unknown AH specialization {pid!r}")
        return andrews_hickerson(*AH_SPECIALIZATIONS[spec])
    raise KeyError(f"unknown pair {pid!r}")


PAIR_IDS = ("NEW_A1", "NEW_AQ", "LEMMA12", "LEMMA12_Q2", "AH_F3", "AH_F4", "AH_F7", "AH_F5_SQ")


# which Bailey's-lemma specialization produces which series


@dataclass(frozen=True)
class LemmaSpec:
    key: str
    pair_id: str
    rho1: object
    rho2: object  # None selects the rho2 -> 1 limit
    series: str
    hecke: str
    # multiplier  q^shift * prod (1 + c q^k)  applied to both sides
    shift: int = 0
    binomials: tuple[tuple[int, int], ...] = ()
    divisor: int = 1
    # sides equal series(q^power) and hecke(q^power)
    power: int = 1

    def sides(self, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
        p = pair(self.pair_id)
        if self.rho2 is None:
            al, be = bailey_lemma_rho2_to_one(p, self.rho1, order, self.divisor)
        else:
            al, be = bailey_lemma_sides(p, self.rho1, self.rho2, order)
        return self._scale(al), self._scale(be)

    def _scale(self, x: TruncatedSeries) -> TruncatedSeries:
        for c, k in self.binomials:
            x = x.mul_binomial(c, k)
        return x.shift(self.shift)


ONE_MINUS_Q = ((-1, 1),)

LEMMA_SPECS: dict[str, LemmaSpec] = {
    "F1": LemmaSpec("F1", "NEW_AQ", INFINITY, qp(1), "f1", "HECKE1", binomials=ONE_MINUS_Q),
    "F2": LemmaSpec("F2", "NEW_A1", INFINITY, None, "f2", "HECKE2"),
    "F3": LemmaSpec("F3", "AH_F3", qp(1), qp(2), "f3", "HECKE3"),
    "F4": LemmaSpec("F4", "AH_F4", qp(2), qp(3), "f4", "HECKE4", shift=1, binomials=ONE_MINUS_Q),
    "F5": LemmaSpec("F5", "AH_F5_SQ", qp(2), INFINITY, "f5", "HECKE5", power=2),
    "F6": LemmaSpec("F6", "LEMMA12", qp(0, -1), None, "f6", "HECKE6", divisor=2),
    "F7": LemmaSpec("F7", "AH_F7", qp(2), INFINITY, "f7", "HECKE7", binomials=ONE_MINUS_Q),
    "F8": LemmaSpec("F8", "LEMMA12_Q2", qp(1), None, "f8", "HECKE8"),
}


def corrupted(p: BaileyPair, n: int, delta: TruncatedSeries | None = None) -> BaileyPair:
    """Copy of p with beta_n perturbed (by q unless delta is given), for fault injection."""

    def beta(m, order):
        val = p.beta_at(m, order)
        if m != n:
            return val
        bump = delta.truncate(order) if delta is not None else TruncatedSeries.monomial(1, order)
        return val + bump

    return BaileyPair(p.name + "*", p.a, p.base, p.alpha, beta, "corrupted")
