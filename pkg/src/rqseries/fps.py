"""Exact truncated formal power series over the integers.

A :class:`TruncatedSeries` holds the coefficients c_0..c_N of a power series
modulo q^(N+1).  Coefficients live in an int64 numpy array while they are
provably small, and are escalated to Python integers (object dtype) before any
operation that could overflow 64 bits.  No result is ever silently wrapped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# magnitude below which int64 work is allowed; leaves headroom for one add
_SAFE = 1 << 61


class SeriesError(ValueError):
    """Raised on order mismatches and other ill-formed series operations."""


def _maxabs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(v)) for v in arr)
    return int(np.abs(arr).max())


def _as_object(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return arr
    return np.array([int(v) for v in arr], dtype=object)


class TruncatedSeries:
    """Power series c_0 + c_1 q + ... + c_N q^N, exact modulo q^(N+1)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] | np.ndarray, order: int | None = None):
        if isinstance(coeffs, np.ndarray):
            arr = coeffs
        else:
            vals = [int(v) for v in coeffs]
            arr = np.array(vals, dtype=object)
        if order is not None:
            if order < 0:
                raise SeriesError(f"negative order {order}")
            arr = _fit(arr, order + 1)
        elif arr.size == 0:
            raise SeriesError("a series needs at least one coefficient")
        self._c = _normalize(arr)

    # construction helpers

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(np.zeros(order + 1, dtype=np.int64))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff: int = 1) -> "TruncatedSeries":
        arr = np.zeros(order + 1, dtype=object)
        if 0 <= k <= order:
            arr[k] = int(coeff)
        return cls(arr)

    @classmethod
    def from_dict(cls, terms: dict[int, int], order: int) -> "TruncatedSeries":
        arr = np.zeros(order + 1, dtype=object)
        for k, v in terms.items():
            if k < 0:
                raise SeriesError(f"negative exponent {k}")
            if k <= order:
                arr[k] += int(v)
        return cls(arr)

    # basic accessors

    @property
    def order(self) -> int:
        return self._c.size - 1

    @property
    def coeffs(self) -> list[int]:
        return [int(v) for v in self._c]

    def array(self) -> np.ndarray:
        """Copy of the underlying coefficient array."""
        return self._c.copy()

    def __getitem__(self, k: int) -> int:
        if k < 0 or k > self.order:
            raise IndexError(f"coefficient {k} outside 0..{self.order}")
        return int(self._c[k])

    def __len__(self) -> int:
        return self._c.size

    def valuation(self) -> int | None:
        """Smallest k with a nonzero coefficient, or None for the zero series."""
        nz = np.flatnonzero(self._c != 0)
        return int(nz[0]) if nz.size else None

    def is_zero(self) -> bool:
        return not bool(np.any(self._c != 0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, tuple(self.coeffs)))

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.pretty(12)}, order={self.order})"

    def pretty(self, max_terms: int | None = None) -> str:
        parts = []
        for k, v in enumerate(self.coeffs):
            if v == 0:
                continue
            if max_terms is not None and len(parts) >= max_terms:
                parts.append("...")
                break
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if k == 0:
                body = str(abs(v))
            elif abs(v) == 1:
                body = mono
            else:
                body = f"{abs(v)}{mono}"
            sign = "-" if v < 0 else "+"
            parts.append(f"{sign} {body}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    # arithmetic

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if self.order != other.order:
            raise SeriesError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        a, b = _pair(self._c, other._c)
        return TruncatedSeries(a + b)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        a, b = _pair(self._c, other._c)
        return TruncatedSeries(a - b)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self._c)

    def __mul__(self, other: "TruncatedSeries | int") -> "TruncatedSeries":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        return TruncatedSeries(_convolve(self._c, other._c, self.order + 1))

    __rmul__ = __mul__

    def scale(self, c: int) -> "TruncatedSeries":
        c = int(c)
        arr = self._c
        if arr.dtype != object and _maxabs(arr) * max(1, abs(c)) >= _SAFE:
            arr = _as_object(arr)
        return TruncatedSeries(arr * c)

    def exact_div_scalar(self, d: int) -> "TruncatedSeries":
        """Divide every coefficient by d, which must divide each one exactly."""
        if d == 0:
            raise SeriesError("division by zero")
        vals = self.coeffs
        bad = [k for k, v in enumerate(vals) if v % d]
        if bad:
            raise SeriesError(f"coefficient {bad[0]} not divisible by {d}")
        return TruncatedSeries([v // d for v in vals])

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by q^k, keeping the order."""
        if k < 0:
            raise SeriesError("shift needs k >= 0; use lower() for q^-k")
        out = np.zeros_like(self._c)
        if k <= self.order:
            out[k:] = self._c[: self.order + 1 - k]
        return TruncatedSeries(out)

    def shift_into(self, k: int, order: int) -> "TruncatedSeries":
        """q^k times this series, as a series of the given order (needs order - k <= self.order)."""
        if k < 0 or k > order:
            raise SeriesError(f"cannot place q^{k} inside order {order}")
        if order - k > self.order:
            raise SeriesError("not enough known coefficients for shift_into")
        out = np.zeros(order + 1, dtype=self._c.dtype)
        out[k:] = self._c[: order + 1 - k]
        return TruncatedSeries(out)

    def lower(self, k: int) -> "TruncatedSeries":
        """Multiply by q^-k.  The dropped coefficients must be zero; order drops by k."""
        if k < 0:
            raise SeriesError("lower needs k >= 0")
        if k > self.order:
            raise SeriesError(f"cannot lower order-{self.order} series by {k}")
        if np.any(self._c[:k] != 0):
            raise SeriesError(f"q^-{k} would produce negative exponents")
        return TruncatedSeries(self._c[k:].copy())

    def truncate(self, order: int) -> "TruncatedSeries":
        """Reduce to a smaller (or equal) order."""
        if order > self.order:
            raise SeriesError(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries(self._c[: order + 1].copy())

    def substitute_power(self, m: int, order: int | None = None) -> "TruncatedSeries":
        """Return x(q^m) truncated at ``order`` (default: this series' order)."""
        if m < 1:
            raise SeriesError("substitute_power needs m >= 1")
        order = self.order if order is None else order
        out = np.zeros(order + 1, dtype=self._c.dtype)
        top = min(self.order, order // m)
        out[: m * top + 1 : m] = self._c[: top + 1]
        return TruncatedSeries(out)

    def mul_binomial(self, c: int, k: int) -> "TruncatedSeries":
        """Multiply by (1 + c q^k), k >= 0."""
        return TruncatedSeries(_mul_binomial(self._c, c, k))

    def div_binomial(self, c: int, k: int) -> "TruncatedSeries":
        """Divide by (1 + c q^k).  Needs k >= 1 (a unit); k = 0 means the scalar 1 + c."""
        if k == 0:
            return self.exact_div_scalar(1 + c)
        return TruncatedSeries(_div_binomial(self._c, c, k))

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be +1 or -1."""
        c0 = int(self._c[0])
        if c0 not in (1, -1):
            raise SeriesError(f"constant term {c0} is not a unit")
        n = self.order + 1
        y = np.array([c0], dtype=np.int64)
        prec = 1
        # Newton iteration y <- y (2 - x y), doubling precision each step
        while prec < n:
            prec = min(2 * prec, n)
            xy = _convolve(self._c[:prec], y, prec)
            corr = -xy
            corr[0] += 2
            y = _convolve(y, corr, prec)
        return TruncatedSeries(_fit(y, n))

    # serialization

    def to_record(self) -> dict:
        return {"order": self.order, "coeffs": [str(v) for v in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_record(cls, rec: dict) -> "TruncatedSeries":
        coeffs = [int(v) for v in rec["coeffs"]]
        if len(coeffs) != int(rec["order"]) + 1:
            raise SeriesError("record length does not match its order")
        return cls(coeffs)

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        return cls.from_record(json.loads(text))


# array kernels


def _fit(arr: np.ndarray, n: int) -> np.ndarray:
    if arr.size >= n:
        return arr[:n].copy()
    out = np.zeros(n, dtype=arr.dtype)
    out[: arr.size] = arr
    return out


def _normalize(arr: np.ndarray) -> np.ndarray:
    """Store small object arrays back as int64."""
    if arr.dtype == object:
        if _maxabs(arr) < _SAFE:
            return arr.astype(np.int64)
        return arr
    if arr.dtype != np.int64:
        return arr.astype(np.int64)
    return arr


def _pair(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if a.dtype == object or b.dtype == object:
        return _as_object(a), _as_object(b)
    if _maxabs(a) >= _SAFE or _maxabs(b) >= _SAFE:
        return _as_object(a), _as_object(b)
    return a, b


def _convolve(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    a = a[:n]
    b = b[:n]
    if a.dtype != object and b.dtype != object:
        bound = _maxabs(a) * _maxabs(b) * min(a.size, b.size)
        if bound < _SAFE:
            return _fit(np.convolve(a, b), n)
    return _fit(np.convolve(_as_object(a), _as_object(b)), n)


def _mul_binomial(arr: np.ndarray, c: int, k: int) -> np.ndarray:
    if k == 0:
        if arr.dtype != object and _maxabs(arr) * abs(1 + c) >= _SAFE:
            arr = _as_object(arr)
        return arr * (1 + c)
    if arr.dtype != object and _maxabs(arr) * (1 + abs(c)) >= _SAFE:
        arr = _as_object(arr)
    out = arr.copy()
    if k < arr.size and c:
        out[k:] += c * arr[: arr.size - k]
    return out


def _div_binomial(arr: np.ndarray, c: int, k: int) -> np.ndarray:
    """Solve out * (1 + c q^k) = arr; out[i] = arr[i] - c out[i-k], blockwise."""
    n = arr.size
    out = arr.copy()
    if c == 0 or k >= n:
        return out
    if out.dtype != object:
        limit = _SAFE // (1 + abs(c))
        ok = _maxabs(out) < limit
        start = k
        while ok and start < n:
            stop = min(start + k, n)
            out[start:stop] -= c * out[start - k : stop - k]
            if _maxabs(out[start:stop]) >= limit:
                ok = False
                break
            start = stop
        if ok:
            return out
        out = _as_object(arr.copy())
    for start in range(k, n, k):
        stop = min(start + k, n)
        out[start:stop] -= c * out[start - k : stop - k]
    return out


# parameters of the form s*q^e


@dataclass(frozen=True)
class SignedQPower:
    """The parameter value sign * q**exponent."""

    sign: int
    exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise SeriesError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def is_infinite(self) -> bool:
        return False

    def __mul__(self, other: "SignedQPower") -> "SignedQPower":
        return SignedQPower(self.sign * other.sign, self.exponent + other.exponent)

    def __truediv__(self, other: "SignedQPower") -> "SignedQPower":
        return SignedQPower(self.sign * other.sign, self.exponent - other.exponent)

    def __pow__(self, n: int) -> "SignedQPower":
        return SignedQPower(self.sign**n, self.exponent * n)

    def series(self, order: int) -> TruncatedSeries:
        if self.exponent < 0:
            raise SeriesError(f"{self} has a negative exponent")
        return TruncatedSeries.monomial(self.exponent, order, self.sign)

    def __str__(self) -> str:
        s = "-" if self.sign < 0 else ""
        if self.exponent == 0:
            return f"{s}1"
        return f"{s}q^{self.exponent}"


class _Infinity:
    """Limit marker for a parameter sent to infinity."""

    is_infinite = True
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INFINITY"

    __str__ = __repr__


INFINITY = _Infinity()


def qp(exponent: int, sign: int = 1) -> SignedQPower:
    """Shorthand for sign * q**exponent."""
    return SignedQPower(sign, exponent)


def pochhammer(s: int, a: int, d: int, n: int | _Infinity, order: int) -> TruncatedSeries:
    """(s q^a; q^d)_n truncated at ``order``; n may be INFINITY."""
    if s not in (1, -1):
        raise SeriesError(f"sign must be +1 or -1, got {s}")
    if d < 1:
        raise SeriesError("pochhammer step d must be >= 1")
    if a < 0:
        raise SeriesError("pochhammer needs a >= 0")
    if n is INFINITY:
        if a < 1:
            raise SeriesError("infinite pochhammer needs a >= 1")
        count = 0 if a > order else (order - a) // d + 1
    else:
        if n < 0:
            raise SeriesError(f"negative length {n}")
        count = n
    if s == 1 and a == 0 and count >= 1:
        raise SeriesError("vanishing Pochhammer: factor (1 - 1)")
    arr = np.zeros(order + 1, dtype=np.int64)
    arr[0] = 1
    for j in range(count):
        e = a + j * d
        if e > order and e > 0:
            break
        arr = _mul_binomial(arr, -s, e)
    return TruncatedSeries(arr)


def gaussian_binomial(n: int, j: int, order: int) -> TruncatedSeries:
    """The Gaussian binomial [n, j] as a polynomial truncated at ``order``."""
    if j < 0 or n < 0 or j > n:
        raise SeriesError(f"gaussian_binomial needs 0 <= j <= n, got n={n}, j={j}")
    j = min(j, n - j)
    deg = j * (n - j)
    work = deg + n + 1
    arr = np.zeros(work + 1, dtype=np.int64)
    arr[0] = 1
    for i in range(1, j + 1):
        arr = _mul_binomial(arr, -1, n - j + i)
        arr = _div_binomial(arr, -1, i)
    if np.any(arr[deg + 1 :] != 0):
        raise SeriesError(f"[{n} {j}] is not a polynomial: nonzero remainder")
    return TruncatedSeries(_fit(arr, order + 1))


def series_from_terms(terms: Sequence[tuple[int, int]], order: int) -> TruncatedSeries:
    """Sum of coeff * q^exp over (exp, coeff) pairs, ignoring exponents above order."""
    acc: dict[int, int] = {}
    for e, c in terms:
        if e < 0:
            raise SeriesError(f"negative exponent {e}")
        if e <= order:
            acc[e] = acc.get(e, 0) + c
    return TruncatedSeries.from_dict(acc, order)
