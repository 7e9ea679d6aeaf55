"""Hecke-type (indefinite theta) double sums.

A component is

    outer * sum_{n >= n_start} sum_{j_lo(n) <= j <= j_hi(n)}
        (-1)^(en*n + ej*j + e0) q^Q(n, j) (1 + t q^(G n + H))

with Q(n, j) = A n^2 + B n + C + D j^2 + E j, rational coefficients with
denominator 1 or 2.  A spec is a sum of components.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .fps import SeriesError, TruncatedSeries

# consecutive shells whose minimum exponent must exceed N before stopping
_SAFETY_WINDOW = 4


class IllFormedSpec(SeriesError):
    pass


@dataclass(frozen=True)
class Affine:
    """p + r*n."""

    p: int
    r: int

    def __call__(self, n: int) -> int:
        return self.p + self.r * n


@dataclass(frozen=True)
class Component:
    n_start: int
    j_lo: Affine
    j_hi: Affine
    quad: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]
    sign: tuple[int, int, int] = (0, 0, 0)
    factor: tuple[int, int, int] | None = None
    outer: int = 1

    def __post_init__(self):
        quad = tuple(Fraction(x) for x in self.quad)
        if len(quad) != 5 or any(x.denominator not in (1, 2) for x in quad):
            raise IllFormedSpec(f"quadratic coefficients need denominators 1 or 2: {self.quad}")
        object.__setattr__(self, "quad", quad)
        if self.outer not in (1, -1):
            raise IllFormedSpec("outer sign must be +1 or -1")
        if any(e not in (0, 1) for e in self.sign):
            raise IllFormedSpec("sign exponents must be 0 or 1")
        if self.factor is not None and self.factor[0] not in (1, -1):
            raise IllFormedSpec("trailing factor sign must be +1 or -1")

    def exponent(self, n: int, j: int) -> int:
        A, B, C, D, E = self.quad
        q = A * n * n + B * n + C + D * j * j + E * j
        if q.denominator != 1:
            raise IllFormedSpec(f"non-integral exponent {q} at (n, j) = ({n}, {j})")
        if q < 0:
            raise IllFormedSpec(f"negative exponent {q} at (n, j) = ({n}, {j})")
        return int(q)

    def min_exponent(self, n: int) -> Fraction | None:
        """Minimum of Q over the j-range of shell n (None if the range is empty)."""
        lo, hi = self.j_lo(n), self.j_hi(n)
        if lo > hi:
            return None
        A, B, C, D, E = self.quad
        base = A * n * n + B * n + C
        cands = [lo, hi]
        if D > 0:
            crit = -E / (2 * D)
            for j in (math.floor(crit), math.ceil(crit)):
                if lo <= j <= hi:
                    cands.append(j)
        return min(base + D * j * j + E * j for j in cands)

    def to_record(self) -> dict:
        return {
            "n_start": self.n_start,
            "j_lo": [self.j_lo.p, self.j_lo.r],
            "j_hi": [self.j_hi.p, self.j_hi.r],
            "quad": [str(x) for x in self.quad],
            "sign": list(self.sign),
            "factor": list(self.factor) if self.factor else None,
            "outer": self.outer,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Component":
        return cls(
            n_start=int(rec["n_start"]),
            j_lo=Affine(*rec["j_lo"]),
            j_hi=Affine(*rec["j_hi"]),
            quad=tuple(Fraction(x) for x in rec["quad"]),
            sign=tuple(rec.get("sign", (0, 0, 0))),
            factor=tuple(rec["factor"]) if rec.get("factor") else None,
            outer=int(rec.get("outer", 1)),
        )


@dataclass(frozen=True)
class IndefiniteThetaSpec:
    name: str
    components: tuple[Component, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.components:
            raise IllFormedSpec("a spec needs at least one component")

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "components": [c.to_record() for c in self.components]})

    @classmethod
    def from_json(cls, text: str) -> "IndefiniteThetaSpec":
        rec = json.loads(text)
        return cls(rec.get("name", "custom"), tuple(Component.from_record(c) for c in rec["components"]))


def _evaluate_component(comp: Component, order: int, acc: np.ndarray) -> None:
    A, B, C, D, E = comp.quad
    en, ej, e0 = comp.sign
    above = 0
    n = comp.n_start
    while True:
        lo, hi = comp.j_lo(n), comp.j_hi(n)
        if lo > hi:
            raise IllFormedSpec(f"empty j-range at n={n}")
        low = comp.min_exponent(n)
        if low > order and n >= comp.n_start + 1:
            above += 1
            if above > _SAFETY_WINDOW:
                return
            n += 1
            continue
        above = 0
        extra = None
        if comp.factor is not None:
            t, G, H = comp.factor
            extra = G * n + H
            if extra < 0:
                raise IllFormedSpec(f"trailing factor exponent {extra} < 0 at n={n}")
        for j in range(lo, hi + 1):
            e = comp.exponent(n, j)
            sgn = comp.outer * (-1) ** ((en * n + ej * j + e0) & 1)
            if e <= order:
                acc[e] += sgn
                if extra is not None and e + extra <= order:
                    acc[e + extra] += sgn * t
        n += 1


def evaluate(spec: IndefiniteThetaSpec | str, order: int) -> TruncatedSeries:
    """Exact truncation of the double sum at q^order."""
    if isinstance(spec, str):
        spec = predefined(spec)
    acc = np.zeros(order + 1, dtype=object)
    for comp in spec.components:
        _evaluate_component(comp, order, acc)
    return TruncatedSeries(acc)


# predefined specs

F = Fraction
H = F(1, 2)


def _c(n_start, lo, hi, quad, sign=(0, 0, 0), factor=None, outer=1) -> Component:
    return Component(n_start, Affine(*lo), Affine(*hi), tuple(F(x) for x in quad), sign, factor, outer)


# j-ranges as (p, r) pairs for p + r n
SYM = ((0, -1), (0, 1))  # |j| <= n
LOW1 = ((-1, -1), (0, 1))  # -n-1 <= j <= n
LOW0 = ((0, -1), (-1, 1))  # -n <= j <= n-1

_SPECS: dict[str, tuple[Component, ...]] = {
    "SIGMA_HECKE": (_c(0, *SYM, (F(3, 2), H, 0, -1, 0), (1, 1, 0), (-1, 2, 1)),),
    "SIXTH_ORDER_COMPANION": (_c(0, *SYM, (F(3, 2), H, 0, -1, 0), (1, 1, 0), (1, 2, 1)),),
    "HECKE1": (
        _c(0, *LOW1, (4, 5, 1, -2, -2), factor=(1, 6, 6)),
        _c(0, *SYM, (4, 1, 0, -2, 0), factor=(1, 6, 3)),
    ),
    "HECKE2": (
        _c(1, *LOW0, (4, -1, 0, -2, -2), factor=(1, 2, 0)),
        _c(0, *SYM, (4, 3, 1, -2, 0), factor=(1, 2, 1)),
    ),
    "HECKE3": (_c(0, *SYM, (2, 2, 0, -1, 0), (0, 1, 0)),),
    "HECKE4": (_c(0, *LOW1, (2, 4, 2, -1, 0), (0, 1, 0), outer=-1),),
    "HECKE5": (_c(0, *SYM, (F(3, 2), F(3, 2), 0, -H, -H)),),
    "HECKE6": (
        _c(0, *SYM, (3, 3, 1, -1, 0), outer=-1),
        # the n = 0 shell of -n <= j <= n-1 is empty
        _c(1, *LOW0, (3, 0, 0, -1, -1), outer=-1),
    ),
    "HECKE7": (_c(0, *SYM, (3, 2, 0, -1, 0), (1, 1, 0), (-1, 2, 1)),),
    "HECKE8": (
        _c(1, *LOW0, (6, -2, 0, -2, -2), factor=(1, 4, 0), outer=-1),
        _c(0, *SYM, (6, 4, 1, -2, 0), factor=(1, 4, 2)),
    ),
    # q f1(q^16): (8n+5)^2 - 2(4j+2)^2 etc.
    "DISSECT1": (
        _c(0, *LOW1, (64, 80, 17, -32, -32)),
        _c(0, *LOW1, (64, 176, 113, -32, -32)),
        _c(0, *SYM, (64, 16, 1, -32, 0)),
        _c(0, *SYM, (64, 112, 49, -32, 0)),
    ),
    # q^-7 f2(q^16)
    "DISSECT2": (
        _c(1, *LOW0, (64, -16, -7, -32, -32)),
        _c(1, *LOW0, (64, 16, -7, -32, -32)),
        _c(0, *SYM, (64, 48, 9, -32, 0)),
        _c(0, *SYM, (64, 80, 25, -32, 0)),
    ),
    # q f3(q^2): (2n+1)^2 - 2j^2
    "DISSECT3": (_c(0, *SYM, (4, 4, 1, -2, 0), (0, 1, 0)),),
    # -f4(q^2): (2n+2)^2 - 2j^2
    "DISSECT4": (_c(0, *LOW1, (4, 8, 4, -2, 0), (0, 1, 0)),),
    # q^2 f5(q^8): 3(2n+1)^2 - (2j+1)^2
    "DISSECT5": (_c(0, *SYM, (12, 12, 2, -4, -4)),),
    # q^-1 f6(q^4): 3(2n+1)^2 - (2j)^2 and 3(2n)^2 - (2j+1)^2
    "DISSECT6": (
        _c(0, *SYM, (12, 12, 3, -4, 0), outer=-1),
        _c(1, *LOW0, (12, 0, -1, -4, -4), outer=-1),
    ),
    # q f7(q^3): (3n+1)^2 - 3j^2 and (3n+2)^2 - 3j^2
    "DISSECT7": (
        _c(0, *SYM, (9, 6, 1, -3, 0), (1, 1, 0)),
        _c(0, *SYM, (9, 12, 4, -3, 0), (1, 1, 0), outer=-1),
    ),
    # q^-2 f8(q^6): (6n+7)^2, (6n+5)^2 against 3(2j+1)^2; (6n+2)^2, (6n+4)^2 against 12 j^2
    "DISSECT8": (
        _c(0, *LOW1, (36, 84, 46, -12, -12), outer=-1),
        _c(0, *LOW1, (36, 60, 22, -12, -12), outer=-1),
        _c(0, *SYM, (36, 24, 4, -12, 0)),
        _c(0, *SYM, (36, 48, 16, -12, 0)),
    ),
}

# how each dissected spec relates to its base series: (hecke name, power m, shift s, negate)
# DISSECT_i(q) = (-1)^negate * q^s * HECKE_i(q^m)
DISSECTIONS: dict[str, tuple[str, int, int, bool]] = {
    "DISSECT1": ("HECKE1", 16, 1, False),
    "DISSECT2": ("HECKE2", 16, -7, False),
    "DISSECT3": ("HECKE3", 2, 1, False),
    "DISSECT4": ("HECKE4", 2, 0, True),
    "DISSECT5": ("HECKE5", 8, 2, False),
    "DISSECT6": ("HECKE6", 4, -1, False),
    "DISSECT7": ("HECKE7", 3, 1, False),
    "DISSECT8": ("HECKE8", 6, -2, False),
}


def names() -> list[str]:
    return list(_SPECS)


def predefined(name: str) -> IndefiniteThetaSpec:
    key = name.strip().upper()
    if key not in _SPECS:
        raise KeyError(f"unknown Hecke spec {name!r}")
    return IndefiniteThetaSpec(key, _SPECS[key])


def dissected_from_hecke(name: str, order: int) -> TruncatedSeries:
    """Rebuild DISSECT_i from HECKE_i by substitution, shift and sign."""
    base, m, s, negate = DISSECTIONS[name.upper()]
    inner = order + max(0, -s)
    src = evaluate(base, inner // m + 1).substitute_power(m, inner)
    out = src.shift(s) if s >= 0 else src.lower(-s)
    return -out if negate else out
