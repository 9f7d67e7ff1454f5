"""Truncated formal power series in q with exact rational coefficients.

A :class:`QSeries` stores an integer numerator vector over one common positive
denominator.  Every coefficient at an exponent below ``trunc`` is known
exactly; coefficients at or beyond ``trunc`` are unknown, and asking for one
raises :class:`UnknownCoefficient` instead of returning a silent zero.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

DEFAULT_TRUNC = 200


class QSeriesError(ArithmeticError):
    pass


class ZeroLeadingCoefficient(QSeriesError):
    pass


class UnknownCoefficient(QSeriesError, IndexError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the Cauchy product of two integer vectors."""
    out = [0] * n
    if not a or not b or n <= 0:
        return out
    # loop over the sparser operand
    if sum(1 for x in a if x) > sum(1 for x in b if x):
        a, b = b, a
    b = list(b[:n])
    lb = len(b)
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        stop = min(lb, n - i)
        for j in range(stop):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


class QSeries:
    """Exact truncated series ``sum_{e >= offset} c_e q^e  + O(q^trunc)``."""

    __slots__ = ("offset", "trunc", "_num", "_den")

    def __init__(self, coeffs: Iterable = (), offset: int = 0, trunc: int | None = None):
        vals = [Fraction(c) for c in coeffs]
        if trunc is None:
            trunc = offset + len(vals)
        known = max(0, trunc - offset)
        vals = vals[:known] + [Fraction(0)] * (known - len(vals))
        den = 1
        for v in vals:
            den = _lcm(den, v.denominator)
        nums = [v.numerator * (den // v.denominator) for v in vals]
        self._set(offset, nums, den, trunc)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, offset: int, nums: list[int], den: int, trunc: int) -> "QSeries":
        obj = cls.__new__(cls)
        obj._set(offset, nums, den, trunc)
        return obj

    def _set(self, offset: int, nums: list[int], den: int, trunc: int) -> None:
        nums = list(nums[: max(0, trunc - offset)])
        start = 0
        while start < len(nums) and nums[start] == 0:
            start += 1
        end = len(nums)
        while end > start and nums[end - 1] == 0:
            end -= 1
        if start == end:
            # canonical zero: nothing known to be nonzero below trunc
            self.offset, self.trunc, self._num, self._den = trunc, trunc, (), 1
            return
        nums = nums[start:end]
        g = math.gcd(den, *nums)
        if den < 0:
            g = -g
        self.offset = offset + start
        self.trunc = trunc
        self._num = tuple(x // g for x in nums)
        self._den = den // g

    @classmethod
    def zero(cls, trunc: int = DEFAULT_TRUNC) -> "QSeries":
        return cls._raw(trunc, [], 1, trunc)

    @classmethod
    def one(cls, trunc: int = DEFAULT_TRUNC) -> "QSeries":
        return cls.monomial(0, 1, trunc)

    @classmethod
    def monomial(cls, exponent: int, coeff=1, trunc: int = DEFAULT_TRUNC) -> "QSeries":
        c = Fraction(coeff)
        return cls._raw(exponent, [c.numerator], c.denominator, trunc)

    @classmethod
    def from_dict(cls, terms: dict[int, object], trunc: int) -> "QSeries":
        """Series with the given ``{exponent: coefficient}`` terms, zero elsewhere below trunc."""
        if not terms:
            return cls.zero(trunc)
        lo = min(terms)
        vals = [Fraction(0)] * (max(terms) - lo + 1)
        for e, c in terms.items():
            vals[e - lo] = Fraction(c)
        return cls(vals, offset=lo, trunc=trunc)

    # -- inspection -----------------------------------------------------------

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    def is_zero(self) -> bool:
        return not self._num

    def is_integral(self) -> bool:
        return self._den == 1

    @property
    def end(self) -> int:
        """One past the highest exponent carrying a nonzero coefficient."""
        return self.offset + len(self._num)

    def coeff(self, e: int) -> Fraction:
        if e >= self.trunc:
            raise UnknownCoefficient(f"coefficient of q^{e} unknown (truncation {self.trunc})")
        i = e - self.offset
        if 0 <= i < len(self._num):
            return Fraction(self._num[i], self._den)
        return Fraction(0)

    __getitem__ = coeff

    def leading(self) -> Fraction:
        if self.is_zero():
            raise ZeroLeadingCoefficient("zero series has no leading coefficient")
        return Fraction(self._num[0], self._den)

    def dense(self, start: int, stop: int | None = None) -> list[Fraction]:
        """Coefficients for exponents ``start .. stop-1`` (stop defaults to trunc)."""
        stop = self.trunc if stop is None else stop
        if stop > self.trunc:
            raise UnknownCoefficient(f"coefficients up to q^{stop - 1} requested, truncation {self.trunc}")
        return [self.coeff(e) for e in range(start, stop)]

    def _ints(self, start: int, stop: int) -> list[int]:
        """Numerators (over ``_den``) for exponents ``start .. stop-1``."""
        out = [0] * max(0, stop - start)
        for i, x in enumerate(self._num):
            e = self.offset + i
            if start <= e < stop:
                out[e - start] = x
        return out

    def terms(self) -> Iterable[tuple[int, Fraction]]:
        for i, x in enumerate(self._num):
            if x:
                yield self.offset + i, Fraction(x, self._den)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Rational)):
            return QSeries.monomial(0, other, self.trunc) if other else QSeries.zero(self.trunc)
        return NotImplemented

    def __add__(self, other) -> "QSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        lo = min(self.offset, other.offset, trunc)
        den = _lcm(self._den, other._den)
        sa, sb = den // self._den, den // other._den
        out = [0] * (trunc - lo)
        for i, x in enumerate(self._num):
            e = self.offset + i - lo
            if e < len(out):
                out[e] += x * sa
        for i, x in enumerate(other._num):
            e = other.offset + i - lo
            if e < len(out):
                out[e] += x * sb
        return QSeries._raw(lo, out, den, trunc)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries._raw(self.offset, [-x for x in self._num], self._den, self.trunc)

    def __sub__(self, other) -> "QSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        if c == 0:
            return QSeries.zero(self.trunc)
        return QSeries._raw(self.offset, [x * c.numerator for x in self._num],
                            self._den * c.denominator, self.trunc)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = min(self.trunc + other.offset, other.trunc + self.offset)
        if self.is_zero() or other.is_zero():
            return QSeries.zero(trunc)
        offset = self.offset + other.offset
        nums = _convolve(self._num, other._num, trunc - offset)
        return QSeries._raw(offset, nums, self._den * other._den, trunc)

    def __rmul__(self, other) -> "QSeries":
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, (int, Rational)):
            return self.scale(1 / Fraction(other))
        if isinstance(other, QSeries):
            return self * other.inverse()
        return NotImplemented

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; offset becomes ``-offset``."""
        if self.is_zero():
            raise ZeroLeadingCoefficient("cannot invert the zero series")
        n = self.trunc - self.offset
        a = self._num
        a0 = a[0]
        top = len(a) - 1
        if a0 in (1, -1):
            w = [0] * n
            w[0] = a0
            for m in range(1, n):
                s = 0
                for i in range(1, min(m, top) + 1):
                    if a[i]:
                        s += a[i] * w[m - i]
                w[m] = -a0 * s
            return QSeries._raw(-self.offset, [x * self._den for x in w], 1, n - self.offset)
        w = [Fraction(0)] * n
        w[0] = Fraction(1, a0)
        for m in range(1, n):
            s = Fraction(0)
            for i in range(1, min(m, top) + 1):
                if a[i]:
                    s += a[i] * w[m - i]
            w[m] = -s / a0
        return QSeries([x * self._den for x in w], offset=-self.offset, trunc=n - self.offset)

    def __pow__(self, e: int) -> "QSeries":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return QSeries.one(self.trunc - self.offset)
        result = None
        base = self
        while True:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if not e:
                return result
            base = base * base

    def rescale(self, m: int) -> "QSeries":
        """Substitute ``q -> q^m``."""
        if m < 1:
            raise ValueError("rescale factor must be a positive integer")
        if m == 1:
            return self
        nums = [0] * ((len(self._num) - 1) * m + 1) if self._num else []
        for i, x in enumerate(self._num):
            nums[i * m] = x
        return QSeries._raw(self.offset * m, nums, self._den, self.trunc * m)

    def shift(self, e: int) -> "QSeries":
        """Multiply by ``q^e`` exactly."""
        if self.is_zero():
            return QSeries.zero(self.trunc + e)
        return QSeries._raw(self.offset + e, list(self._num), self._den, self.trunc + e)

    def truncate(self, trunc: int) -> "QSeries":
        if trunc > self.trunc:
            raise UnknownCoefficient(f"cannot extend truncation {self.trunc} to {trunc}")
        if self.is_zero():
            return QSeries.zero(trunc)
        return QSeries._raw(self.offset, list(self._num), self._den, trunc)

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.offset, self.trunc, self._num, self._den) == (
            other.offset, other.trunc, other._num, other._den)

    def __hash__(self) -> int:
        return hash((self.offset, self.trunc, self._num, self._den))

    def first_mismatch(self, other: "QSeries") -> int | None:
        """Lowest exponent below the shared truncation where the two series differ."""
        diff = self - other
        return None if diff.is_zero() else diff.offset

    def agrees_with(self, other: "QSeries") -> bool:
        return self.first_mismatch(other) is None

    def __repr__(self) -> str:
        if self.is_zero():
            return f"O(q^{self.trunc})"
        parts = []
        for e, c in self.terms():
            if len(parts) == 8:
                parts.append("...")
                break
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(parts) + f" + O(q^{self.trunc})"

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        off = self.offset if not self.is_zero() else self.trunc
        return {"offset": off, "truncation": self.trunc,
                "coeffs": [str(c) for c in self.dense(off, self.end if self._num else off)]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_mapping(cls, data: dict) -> "QSeries":
        return cls([Fraction(c) for c in data["coeffs"]], offset=int(data["offset"]),
                   trunc=int(data["truncation"]))

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        return cls.from_mapping(json.loads(text))


# Functional surface ---------------------------------------------------------

def series_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def series_inv(a: QSeries) -> QSeries:
    return a.inverse()


def series_pow(a: QSeries, e: int) -> QSeries:
    return a ** e


def series_rescale(a: QSeries, m: int) -> QSeries:
    return a.rescale(m)


def pentagonal_terms(limit: int) -> list[tuple[int, int]]:
    """``(g, sign)`` for generalized pentagonal numbers ``g < limit``, in increasing order."""
    out = [(0, 1)]
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 >= limit:
            break
        sign = -1 if j % 2 else 1
        out.append((g1, sign))
        g2 = j * (3 * j + 1) // 2
        if g2 < limit:
            out.append((g2, sign))
        j += 1
    return out


def euler_product(delta: int, trunc: int) -> QSeries:
    """``(q^delta; q^delta)_inf`` to ``O(q^trunc)`` via the pentagonal number theorem."""
    if delta < 1 or trunc < 1:
        raise ValueError("need delta >= 1 and trunc >= 1")
    nums = [0] * trunc
    for g, sign in pentagonal_terms((trunc - 1) // delta + 1):
        nums[g * delta] = sign
    return QSeries._raw(0, nums, 1, trunc)


def power_recurrence(a: QSeries, e: int) -> QSeries:
    """``a**e`` for ``a = 1 + O(q)`` with integer coefficients, by the J. C. P. Miller recurrence.

    Cost is proportional to ``trunc`` times the number of nonzero terms of ``a``,
    which makes it the right tool for sparse products and theta series.
    """
    if a.offset != 0 or a.leading() != 1 or not a.is_integral():
        raise ValueError("power_recurrence needs an integral series with constant term 1")
    n = a.trunc
    coeffs = a._ints(0, n)
    nz = [(i, c) for i, c in enumerate(coeffs) if i and c]
    b = [0] * n
    b[0] = 1
    for m in range(1, n):
        s = 0
        for i, c in nz:
            if i > m:
                break
            s += ((e + 1) * i - m) * c * b[m - i]
        b[m] = s // m
    return QSeries._raw(0, b, 1, n)
