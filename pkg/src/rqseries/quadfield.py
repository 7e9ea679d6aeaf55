"""Ideal counting in the rings of integers of Q(sqrt 2) and Q(sqrt 3).

Two independent routes:

* enumeration of generators u + v sqrt(d) over a fundamental domain for the
  unit group (both rings are principal), and
* the multiplicative formula from the splitting of rational primes.

``ideal_theta`` assembles sum_a w(N(a)) q^N(a) for a norm-only weight w.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .fps import SeriesError, TruncatedSeries


class Ring(enum.Enum):
    SQRT2 = 2
    SQRT3 = 3

    @classmethod
    def parse(cls, name: str) -> "Ring":
        key = name.strip().upper()
        aliases = {"2": "SQRT2", "K": "SQRT2", "3": "SQRT3", "L": "SQRT3"}
        return cls[aliases.get(key, key)]


# enumeration


def _domain_points(ring: Ring, limit: int):
    """Yield the norm of every fundamental-domain generator with norm <= limit."""
    if ring is Ring.SQRT2:
        # u >= 1, -u/2 < v <= u/2; norm u^2 - 2v^2 >= u^2/2
        for u in range(1, isqrt(2 * limit) + 2):
            vmax = u // 2
            vmin = -((u - 1) // 2)
            for v in range(vmin, vmax + 1):
                n = u * u - 2 * v * v
                if 0 < n <= limit:
                    yield n
    else:
        # positive norms: u >= 1, -u/3 < v <= u/3; norm >= 2u^2/3
        for u in range(1, isqrt(3 * limit) + 2):
            vmax = u // 3
            vmin = -((u - 1) // 3)
            for v in range(vmin, vmax + 1):
                n = u * u - 3 * v * v
                if 0 < n <= limit:
                    yield n
        # negative norms: v >= 1, -v < u <= v; |norm| = 3v^2 - u^2 >= 2v^2
        for v in range(1, isqrt(limit) + 2):
            for u in range(-v + 1, v + 1):
                n = 3 * v * v - u * u
                if 0 < n <= limit:
                    yield n


def ideal_counts_enum(ring: Ring, limit: int) -> list[int]:
    """counts[n] = number of ideals of norm n for 0 <= n <= limit (counts[0] = 0)."""
    counts = [0] * (limit + 1)
    for n in _domain_points(ring, limit):
        counts[n] += 1
    return counts


def ideal_count_enum(ring: Ring, n: int) -> int:
    if n < 1:
        raise SeriesError("ideal norms start at 1")
    total = 0
    if ring is Ring.SQRT2:
        for u in range(1, isqrt(2 * n) + 2):
            rest = u * u - n
            if rest < 0 or rest % 2:
                continue
            v = isqrt(rest // 2)
            if 2 * v * v != rest:
                continue
            # both v and -v if they lie in -u/2 < v <= u/2
            for w in {v, -v}:
                if -u < 2 * w <= u:
                    total += 1
        return total
    for u in range(1, isqrt(3 * n) + 2):
        rest = u * u - n
        if rest < 0 or rest % 3:
            continue
        v = isqrt(rest // 3)
        if 3 * v * v != rest:
            continue
        for w in {v, -v}:
            if -u < 3 * w <= u:
                total += 1
    for v in range(1, isqrt(n) + 2):
        rest = 3 * v * v - n
        if rest < 0:
            continue
        u = isqrt(rest)
        if u * u != rest:
            continue
        for w in {u, -u}:
            if -v < w <= v:
                total += 1
    return total


# multiplicative formula


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise SeriesError("factorize needs n >= 1")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power_count(ring: Ring, p: int, ell: int) -> int:
    """Number of ideals of norm p^ell."""
    if ring is Ring.SQRT2:
        ramified, mod, split = (2,), 8, (1, 7)
    else:
        ramified, mod, split = (2, 3), 12, (1, 11)
    if p in ramified:
        return 1
    if p % mod in split:
        return ell + 1
    return 1 if ell % 2 == 0 else 0


def ideal_count_mult(ring: Ring, n: int) -> int:
    if n < 1:
        raise SeriesError("ideal norms start at 1")
    total = 1
    for p, ell in factorize(n).items():
        total *= prime_power_count(ring, p, ell)
        if not total:
            break
    return total


def ideal_counts_mult(ring: Ring, limit: int) -> list[int]:
    return [0] + [ideal_count_mult(ring, n) for n in range(1, limit + 1)]


def kronecker_minus4(n: int) -> int:
    if n < 1:
        raise SeriesError("kronecker_minus4 needs n >= 1")
    if n % 2 == 0:
        return 0
    return 1 if n % 4 == 1 else -1


# weights


class WeightRule(enum.Enum):
    ONE = "one"
    KRONECKER_MINUS4 = "kronecker_minus4"
    NEG_ONE_POW_NORM = "neg_one_pow_norm"
    NEG_ONE_POW_HALF_NORM = "neg_one_pow_half_norm"


@dataclass(frozen=True)
class IdealWeightSpec:
    """w(n) = [n = residue mod modulus] * base(n); the residue filter is optional."""

    rule: WeightRule = WeightRule.ONE
    modulus: int | None = None
    residue: int | None = None

    def __post_init__(self):
        if (self.modulus is None) != (self.residue is None):
            raise SeriesError("modulus and residue go together")
        if self.modulus is not None and self.modulus < 1:
            raise SeriesError("modulus must be >= 1")
        if self.rule is WeightRule.NEG_ONE_POW_HALF_NORM:
            # only legal if every admitted norm is even
            if self.modulus is None or self.modulus % 2 or self.residue % 2:
                raise SeriesError("(-1)^(N/2) weight needs a residue filter admitting only even norms")

    def __call__(self, n: int) -> int:
        if self.modulus is not None and n % self.modulus != self.residue % self.modulus:
            return 0
        if self.rule is WeightRule.ONE:
            return 1
        if self.rule is WeightRule.KRONECKER_MINUS4:
            return kronecker_minus4(n)
        if self.rule is WeightRule.NEG_ONE_POW_NORM:
            return -1 if n % 2 else 1
        return -1 if (n // 2) % 2 else 1

    def describe(self) -> str:
        base = self.rule.value
        if self.modulus is None:
            return base
        return f"{base}[N={self.residue} mod {self.modulus}]"


def indicator(modulus: int, residue: int) -> IdealWeightSpec:
    return IdealWeightSpec(WeightRule.ONE, modulus, residue)


def ideal_theta(
    ring: Ring, weight: IdealWeightSpec, order: int, method: str = "enum"
) -> TruncatedSeries:
    """sum over nonzero ideals a with N(a) <= order of weight(N(a)) q^N(a)."""
    if method == "enum":
        counts = ideal_counts_enum(ring, order)
    elif method == "mult":
        counts = ideal_counts_mult(ring, order)
    else:
        raise SeriesError(f"unknown counting method {method!r}")
    arr = np.zeros(order + 1, dtype=np.int64)
    for n in range(1, order + 1):
        if counts[n]:
            arr[n] = weight(n) * counts[n]
    return TruncatedSeries(arr)
