"""Brute-force partition families and their signed generating functions.

Objects:

* a partition is a weakly decreasing tuple of positive ints,
* an Overpartition is (parts, overlined) where ``overlined`` is the set of
  part sizes whose first occurrence carries a bar,
* a Pair is an overpartition pair (mu, lam).

Each family i = 1..8 has a membership predicate and a statistic r_i.  Where
the verbal definition leaves an edge case open the choice is a named switch
in a FamilyConvention; ``convention_search`` tries the finite switch space
(and a global sign) against the series and either freezes a convention or
returns a DiscrepancyReport.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple


from .catalog import SeriesId, expand
from .fps import SeriesError, TruncatedSeries

PAIR_BUDGET = 25
SINGLE_BUDGET = 30


class Overpartition(NamedTuple):
    parts: tuple[int, ...]
    overlined: frozenset

    @property
    def size(self) -> int:
        return sum(self.parts)

    def to_record(self):
        return {"parts": list(self.parts), "overlined": sorted(self.overlined, reverse=True)}


class Pair(NamedTuple):
    mu: Overpartition
    lam: Overpartition

    @property
    def size(self) -> int:
        return self.mu.size + self.lam.size

    def to_record(self):
        return {"mu": self.mu.to_record(), "lambda": self.lam.to_record()}


class Kind(enum.Enum):
    PARTITION = "partition"
    DISTINCT = "distinct"
    OVERPARTITION = "overpartition"
    OVERPARTITION_PAIR = "overpartition_pair"


# enumeration


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    if n < 0:
        raise SeriesError("n must be >= 0")
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def distinct_partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    if n < 0:
        raise SeriesError("n must be >= 0")
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(max_part, 0, -1):
        for rest in distinct_partitions(n - first, first - 1):
            yield (first,) + rest


def overpartitions(n: int) -> Iterator[Overpartition]:
    for p in partitions(n):
        sizes = sorted(set(p), reverse=True)
        for mask in itertools.product((False, True), repeat=len(sizes)):
            yield Overpartition(p, frozenset(s for s, m in zip(sizes, mask) if m))


@lru_cache(maxsize=None)
def _overpartitions_by_largest(n: int) -> dict[int, tuple[Overpartition, ...]]:
    out: dict[int, list] = {}
    for op in overpartitions(n):
        out.setdefault(op.parts[0] if op.parts else 0, []).append(op)
    return {k: tuple(v) for k, v in out.items()}


def overpartition_pairs(n: int) -> Iterator[Pair]:
    for m in range(n + 1):
        for mu in overpartitions(m):
            for lam in overpartitions(n - m):
                yield Pair(mu, lam)


def linked_pairs(n: int, offset: int) -> Iterator[Pair]:
    """Pairs of weight n with lam empty or largest(lam) = largest(mu) + offset.

    Both pair families impose this link, so nothing else can be a member.
    """
    empty = Overpartition((), frozenset())
    for m in range(n + 1):
        for mu in overpartitions(m):
            top = mu.parts[0] if mu.parts else 0
            if m == n:
                yield Pair(mu, empty)
                continue
            for lam in _overpartitions_by_largest(n - m).get(top + offset, ()):
                yield Pair(mu, lam)


def enumerate_objects(kind: Kind | str, n: int) -> Iterator:
    kind = Kind(kind) if isinstance(kind, str) else kind
    if kind is Kind.PARTITION:
        return partitions(n)
    if kind is Kind.DISTINCT:
        return distinct_partitions(n)
    if kind is Kind.OVERPARTITION:
        return overpartitions(n)
    return overpartition_pairs(n)


def dyson_rank(p: tuple[int, ...]) -> int:
    if not p:
        raise SeriesError("rank of the empty partition is undefined")
    return p[0] - len(p)


def sigma_oracle(order: int) -> TruncatedSeries:
    """Distinct-part partitions with even rank minus odd rank; the empty partition counts +1."""
    out = [0] * (order + 1)
    out[0] = 1
    for n in range(1, order + 1):
        out[n] = sum(1 if dyson_rank(p) % 2 == 0 else -1 for p in distinct_partitions(n))
    return TruncatedSeries(out)


# families


# switch name -> allowed values; the first value is the literal reading
FAMILY_SWITCHES: dict[int, dict[str, tuple]] = {
    1: {
        "ones_constraint_scope": ("repeated", "present", "always"),
        "single_nonrepeated_r1": ("literal", "generic", "literal_if_ones_repeated"),
    },
    2: {
        "single_part_rank_condition": ("apply", "skip"),
        "single_part_r2": (1, 0),
    },
    3: {
        "count_overlined_in_mu": (True, False),
        "empty_mu_flip": (False, True),
    },
    4: {
        "count_overlined_in_mu": (True, False),
    },
    5: {},
    6: {
        "repetitions": ("occurrences", "extra_copies"),
        "strict_half": (True, False),
    },
    7: {
        "all_ones_overlines": ("allowed", "forbidden"),
        "m_counts_overlined": (True, False),
    },
    8: {
        "strict_half": (True, False),
    },
}

FAMILY_KIND = {
    1: Kind.PARTITION,
    2: Kind.DISTINCT,
    3: Kind.OVERPARTITION_PAIR,
    4: Kind.OVERPARTITION_PAIR,
    5: Kind.DISTINCT,
    6: Kind.OVERPARTITION,
    7: Kind.OVERPARTITION,
    8: Kind.OVERPARTITION,
}

# +1: "r even minus r odd", -1: "r odd minus r even"
ORIENTATION = {1: 1, 2: 1, 3: -1, 4: -1, 5: -1, 6: 1, 7: 1, 8: -1}

# constant term of f_i; the empty object is a member iff this is nonzero
EMPTY_CONSTANT = {1: 1, 2: 0, 3: 1, 4: 0, 5: 1, 6: 0, 7: 1, 8: 0}

SERIES = {i: SeriesId(f"f{i}") for i in range(1, 9)}


@dataclass(frozen=True)
class FamilyConvention:
    family: int
    delta: int = 0
    switches: tuple[tuple[str, object], ...] = ()

    def __post_init__(self):
        if self.family not in FAMILY_SWITCHES:
            raise SeriesError(f"unknown family {self.family}")
        if self.delta not in (0, 1):
            raise SeriesError("delta must be 0 or 1")
        allowed = FAMILY_SWITCHES[self.family]
        given = dict(self.switches)
        for k, v in given.items():
            if k not in allowed:
                raise SeriesError(f"family {self.family} has no switch {k!r}")
            if v not in allowed[k]:
                raise SeriesError(f"switch {k} must be one of {allowed[k]}")
        full = tuple((k, given.get(k, vals[0])) for k, vals in allowed.items())
        object.__setattr__(self, "switches", full)

    @classmethod
    def literal(cls, family: int) -> "FamilyConvention":
        return cls(family)

    def get(self, name: str):
        return dict(self.switches)[name]

    def with_overrides(self, **kw) -> "FamilyConvention":
        delta = kw.pop("delta", self.delta)
        sw = dict(self.switches)
        sw.update(kw)
        return FamilyConvention(self.family, int(delta), tuple(sw.items()))

    def to_record(self) -> dict:
        return {"family": self.family, "delta": self.delta, "switches": {k: v for k, v in self.switches}}


def _kind_of(obj) -> Kind:
    if isinstance(obj, Pair):
        return Kind.OVERPARTITION_PAIR
    if isinstance(obj, Overpartition):
        return Kind.OVERPARTITION
    return Kind.PARTITION


def _is_empty(obj) -> bool:
    if isinstance(obj, Pair):
        return not obj.mu.parts and not obj.lam.parts
    if isinstance(obj, Overpartition):
        return not obj.parts
    return not obj


def _check_kind(i: int, obj) -> None:
    want = FAMILY_KIND[i]
    got = _kind_of(obj)
    if want in (Kind.PARTITION, Kind.DISTINCT):
        ok = got is Kind.PARTITION
    else:
        ok = got is want
    if not ok:
        raise SeriesError(f"family {i} takes {want.value} objects, got {got.value}")


def _counts(parts) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in parts:
        out[p] = out.get(p, 0) + 1
    return out


def _p1(lam, conv):
    c = _counts(lam)
    if any(v > 1 for s, v in c.items() if s != 1):
        return None
    ones = c.get(1, 0)
    scope = conv.get("ones_constraint_scope")
    applies = (
        ones >= 2 if scope == "repeated" else ones >= 1 if scope == "present" else True
    )
    if applies:
        r = ones - 1
        # with ones present the smallest size is 1 and the next sizes follow
        above = sorted(s for s in c if s != 1)
        if ones == 0:
            above = above[1:]
        if len(above) >= 1 and above[0] < 2 * r:
            return None
        if len(above) >= 2 and above[1] < above[0] + 2:
            return None
    nonrep = [s for s, v in c.items() if v == 1]
    if not nonrep:
        return 0
    if len(nonrep) != 1:
        return max(nonrep) - len(nonrep)
    mode = conv.get("single_nonrepeated_r1")
    if mode == "literal" or (mode == "literal_if_ones_repeated" and ones >= 2):
        return nonrep[0]
    return nonrep[0] - 1


def _p2(lam, conv):
    if len(set(lam)) != len(lam):
        return None
    s = lam[-1]
    single = len(lam) == 1
    if not single or conv.get("single_part_rank_condition") == "apply":
        if dyson_rank(lam) < 2 * (s - 1):
            return None
    if len(lam) >= 2 and lam[-2] < 2 * s:
        return None
    return conv.get("single_part_r2") if single else dyson_rank(lam)


def _mu_ok(mu: Overpartition) -> bool:
    if not mu.parts:
        return True
    top = mu.parts[0]
    # an overlined largest part also needs a plain copy
    return top not in mu.overlined or mu.parts.count(top) >= 2


def _mu_parts(mu: Overpartition, conv) -> int:
    if conv.get("count_overlined_in_mu"):
        return len(mu.parts)
    return len(mu.parts) - len(mu.overlined)


def _p3(pair: Pair, conv):
    mu, lam = pair
    if not _mu_ok(mu):
        return None
    if not mu.parts and lam.overlined:
        return None
    occ = 0
    if lam.parts:
        top = lam.parts[0]
        if top != (mu.parts[0] if mu.parts else 0) + 1:
            return None
        if top - 1 in lam.overlined:
            return None
        occ = lam.parts.count(top)
        total = len(lam.parts)
        if top in lam.overlined:
            if not 2 * occ > total:
                return None
        elif not 2 * occ >= total:
            return None
    r = occ - _mu_parts(mu, conv)
    if not mu.parts and conv.get("empty_mu_flip"):
        r += 1
    return r


def _p4(pair: Pair, conv):
    mu, lam = pair
    if not _mu_ok(mu):
        return None
    if lam.parts:
        if not mu.parts:
            return None
        top = lam.parts[0]
        if top != mu.parts[0] or top in lam.overlined:
            return None
        if len(lam.parts) % 2:
            return None
        if 2 * lam.parts.count(top) < len(lam.parts):
            return None
    return len(lam.parts) // 2 - _mu_parts(mu, conv)


def _p5(lam, conv):
    if len(set(lam)) != len(lam):
        return None
    n = len(lam)
    if n == 1:
        return None if lam[0] % 3 == 1 else 1
    ell = [lam[i] - lam[i + 1] for i in range(n - 1)] + [lam[-1]]
    e = sum(1 for r in range(2, n + 1) if ell[r - 1] % 2 == 0)
    d1 = lam[1] - ((n - 1) + e)
    if d1 % 2:
        raise SeriesError(f"d_lambda,1 is odd for {lam}")
    d = d1 // 2
    if ell[0] < d + 1 or (ell[0] - d - 1) % 3:
        return None
    return lam[1]


def _p6(op: Overpartition, conv):
    parts, ov = op
    top = parts[0]
    if top in ov:
        return None
    if any(parts.count(s) < 2 for s in ov):
        return None
    reps = parts.count(top)
    if conv.get("repetitions") == "extra_copies":
        reps -= 1
    lhs, total = 2 * (reps + len(ov)), len(parts)
    if not (lhs > total if conv.get("strict_half") else lhs >= total):
        return None
    return top - len(ov)


def _p7(op: Overpartition, conv):
    parts, ov = op
    top = parts[0]
    if top <= 1:
        if ov and conv.get("all_ones_overlines") == "forbidden":
            return None
        return len(parts)
    m = parts.count(top)
    if top in ov and not conv.get("m_counts_overlined"):
        m -= 1
    if top != len(parts) - len(ov) + 1:
        return None
    below = [p for p in parts if p < top]
    if below and below[0] > m + 1:
        return None
    if any(s > m for s in ov):
        return None
    return len(parts)


def _p8(op: Overpartition, conv):
    parts, ov = op
    top = parts[0]
    if top in ov:
        return None
    lhs, total = 2 * parts.count(top), len(parts) - len(ov)
    if not (lhs > total if conv.get("strict_half") else lhs >= total):
        return None
    return len(parts)


_PREDICATES = {1: _p1, 2: _p2, 3: _p3, 4: _p4, 5: _p5, 6: _p6, 7: _p7, 8: _p8}


def family_member(i: int, obj, conv: FamilyConvention | None = None) -> int | None:
    """r_i(obj) if obj belongs to P_i under conv, else None.

    The empty object is a member iff f_i has a nonzero constant term; its
    statistic is reported as 0 and its weight is that constant.
    """
    conv = conv or FamilyConvention.literal(i)
    if conv.family != i:
        raise SeriesError("convention is for another family")
    _check_kind(i, obj)
    if _is_empty(obj):
        return 0 if EMPTY_CONSTANT[i] else None
    return _PREDICATES[i](obj, conv)


def family_weight(i: int, obj, conv: FamilyConvention | None = None) -> int:
    conv = conv or FamilyConvention.literal(i)
    if _is_empty(obj):
        _check_kind(i, obj)
        return EMPTY_CONSTANT[i]
    r = family_member(i, obj, conv)
    if r is None:
        return 0
    return ORIENTATION[i] * (-1) ** ((r + conv.delta) % 2)


def _budget(i: int) -> int:
    return PAIR_BUDGET if FAMILY_KIND[i] is Kind.OVERPARTITION_PAIR else SINGLE_BUDGET


@lru_cache(maxsize=None)
def _objects(i: int, n: int) -> tuple:
    kind = FAMILY_KIND[i]
    if i == 3:
        return tuple(linked_pairs(n, 1))
    if i == 4:
        return tuple(linked_pairs(n, 0))
    return tuple(enumerate_objects(kind, n))


def family_counts(i: int, n: int, conv: FamilyConvention | None = None) -> int:
    conv = conv or FamilyConvention.literal(i)
    return sum(family_weight(i, obj, conv) for obj in _objects(i, n))


def family_oracle(i: int, order: int, conv: FamilyConvention | None = None) -> TruncatedSeries:
    """sum over members of P_i with size <= order of (-1)^(r_i + delta) q^size, oriented per family."""
    if order > _budget(i):
        raise SeriesError(f"order {order} exceeds the enumeration budget {_budget(i)} for family {i}")
    conv = conv or FamilyConvention.literal(i)
    return TruncatedSeries([family_counts(i, n, conv) for n in range(order + 1)])


def family_target(i: int, order: int) -> TruncatedSeries:
    """f_i truncated at order, with the term q removed for family 1."""
    out = expand(SERIES[i], order)
    if i == 1 and order >= 1:
        out = out - TruncatedSeries.monomial(1, order)
    return out


def _record(obj):
    if isinstance(obj, (Pair, Overpartition)):
        return obj.to_record()
    return list(obj)


@dataclass
class DiscrepancyReport:
    family: int
    n_pin: int
    convention: dict
    n: int
    expected: int
    got: int
    members: list = field(default_factory=list)
    tried: int = 0

    def to_record(self) -> dict:
        return {
            "family": self.family,
            "n_pin": self.n_pin,
            "best_convention": self.convention,
            "first_mismatch": {"n": self.n, "expected": self.expected, "got": self.got},
            "members_at_n": self.members,
            "conventions_tried": self.tried,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)


@dataclass
class SearchResult:
    family: int
    n_pin: int
    convention: FamilyConvention | None
    report: DiscrepancyReport | None
    tried: int

    @property
    def matched(self) -> bool:
        return self.convention is not None

    def to_record(self) -> dict:
        return {
            "family": self.family,
            "n_pin": self.n_pin,
            "matched": self.matched,
            "convention": self.convention.to_record() if self.convention else None,
            "report": self.report.to_record() if self.report else None,
            "tried": self.tried,
        }


def conventions(i: int) -> Iterator[FamilyConvention]:
    """All conventions for family i, literal first, then in switch order, delta innermost."""
    sw = FAMILY_SWITCHES[i]
    names = list(sw)
    for values in itertools.product(*(sw[k] for k in names)):
        for delta in (0, 1):
            yield FamilyConvention(i, delta, tuple(zip(names, values)))


def convention_search(
    i: int, n_pin: int = 20, target: TruncatedSeries | None = None, max_members: int = 12
) -> SearchResult:
    if n_pin > _budget(i):
        raise SeriesError(f"N_pin {n_pin} exceeds the enumeration budget {_budget(i)}")
    want = family_target(i, n_pin) if target is None else target.truncate(n_pin)
    best: tuple[int, FamilyConvention, int] | None = None
    tried = 0
    for conv in conventions(i):
        tried += 1
        bad = None
        for n in range(n_pin + 1):
            got = family_counts(i, n, conv)
            if got != want[n]:
                bad = (n, got)
                break
        if bad is None:
            return SearchResult(i, n_pin, conv, None, tried)
        if best is None or bad[0] > best[0]:
            best = (bad[0], conv, bad[1])
    n, conv, got = best
    members = []
    for obj in _objects(i, n):
        w = family_weight(i, obj, conv)
        if w:
            members.append({"object": _record(obj), "weight": w, "r": family_member(i, obj, conv)})
    members.sort(key=lambda m: json.dumps(m["object"], sort_keys=True))
    report = DiscrepancyReport(i, n_pin, conv.to_record(), n, want[n], got, members[:max_members], tried)
    return SearchResult(i, n_pin, None, report, tried)


def unsigned_total(i: int, n: int, conv: FamilyConvention | None = None) -> int:
    conv = conv or FamilyConvention.literal(i)
    return sum(abs(family_weight(i, obj, conv)) for obj in _objects(i, n))
