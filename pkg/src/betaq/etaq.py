"""Eta quotients ``prod_{delta | N} eta(delta*tau)^{r_delta}``.

Quotients are expanded exactly as ``q^{sum delta*r / 24}`` times products of
``(q^delta; q^delta)_inf`` powers, and checked for modularity with the
Gordon-Hughes-Newman criterion.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .qseries import QSeries, QSeriesError, euler_product, power_recurrence


class FractionalPrefactor(QSeriesError):
    pass


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class EtaQuotient:
    level: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        merged: dict[int, int] = {}
        for delta, r in self.factors:
            merged[delta] = merged.get(delta, 0) + r
        factors = tuple(sorted((d, r) for d, r in merged.items() if r))
        object.__setattr__(self, "factors", factors)
        if self.level < 1:
            raise ValueError("level must be positive")
        for delta, _ in factors:
            if delta < 1 or self.level % delta:
                raise ValueError(f"delta={delta} does not divide level {self.level}")

    @classmethod
    def of(cls, level: int, exps: dict[int, int]) -> "EtaQuotient":
        return cls(level, tuple(exps.items()))

    @classmethod
    def parse(cls, text: str) -> "EtaQuotient":
        """Parse the compact form ``"4^6*8^4/2^4 @8"`` (level after ``@``)."""
        body, _, lvl = text.partition("@")
        body = body.replace(" ", "")
        num, _, den = body.partition("/")
        exps: dict[int, int] = {}

        def eat(part: str, sign: int) -> None:
            if not part or part == "1":
                return
            for tok in part.strip("()").split("*"):
                m = re.fullmatch(r"(\d+)(?:\^(-?\d+))?", tok)
                if not m:
                    raise ValueError(f"cannot parse eta factor {tok!r}")
                d, r = int(m.group(1)), int(m.group(2) or 1)
                exps[d] = exps.get(d, 0) + sign * r

        eat(num, 1)
        eat(den, -1)
        level = int(lvl) if lvl.strip() else math.lcm(*exps) if exps else 1
        return cls.of(level, exps)

    def __str__(self) -> str:
        num = "*".join(f"{d}^{r}" for d, r in self.factors if r > 0) or "1"
        den = "*".join(f"{d}^{-r}" for d, r in self.factors if r < 0)
        return f"{num}/{den} @{self.level}" if den else f"{num} @{self.level}"

    @property
    def exps(self) -> dict[int, int]:
        return dict(self.factors)

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        exps = self.exps
        for d, r in other.factors:
            exps[d] = exps.get(d, 0) + r
        return EtaQuotient.of(math.lcm(self.level, other.level), exps)

    def __truediv__(self, other: "EtaQuotient") -> "EtaQuotient":
        return self * other ** -1

    def __pow__(self, e: int) -> "EtaQuotient":
        return EtaQuotient.of(self.level, {d: r * e for d, r in self.factors})

    def with_level(self, level: int) -> "EtaQuotient":
        return EtaQuotient(level, self.factors)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    @property
    def order_at_infinity(self) -> Fraction:
        """Exponent of the ``q`` prefactor, ``sum delta*r / 24``."""
        return Fraction(sum(d * r for d, r in self.factors), 24)

    def to_dict(self) -> dict:
        return {"level": self.level, "factors": [{"delta": d, "exp": r} for d, r in self.factors]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_mapping(cls, data: dict) -> "EtaQuotient":
        return cls(int(data["level"]), tuple((int(f["delta"]), int(f["exp"])) for f in data["factors"]))


@lru_cache(maxsize=512)
def euler_power(delta: int, r: int, trunc: int) -> QSeries:
    """``(q^delta; q^delta)_inf ** r`` to ``O(q^trunc)``."""
    n = (trunc - 1) // delta + 1
    base = power_recurrence(euler_product(1, n), r)
    return base.rescale(delta).truncate(trunc)


def eta_product(exps: dict[int, int], trunc: int) -> QSeries:
    """``prod (q^delta; q^delta)_inf ** r`` without the fractional ``q`` prefactor."""
    result = QSeries.one(trunc)
    for d, r in sorted(exps.items()):
        if r:
            result = result * euler_power(d, r, trunc)
    return result


def eta_expand(e: EtaQuotient, trunc: int) -> QSeries:
    """q-expansion of the eta quotient to ``O(q^trunc)``."""
    shift = e.order_at_infinity
    if shift.denominator != 1:
        raise FractionalPrefactor(f"{e}: sum(delta*r) = {24 * shift} is not divisible by 24")
    shift = int(shift)
    return eta_product(e.exps, max(trunc - shift, 1)).shift(shift).truncate(trunc) \
        if trunc - shift >= 1 else QSeries.zero(trunc)


@dataclass
class ModularityReport:
    weight: Fraction
    cond24_a: bool
    cond24_b: bool
    cusp_orders: dict[int, Fraction] = field(default_factory=dict)
    character_discriminant: int = 1

    @property
    def is_holomorphic(self) -> bool:
        return all(v >= 0 for v in self.cusp_orders.values())

    @property
    def is_cusp(self) -> bool:
        return all(v > 0 for v in self.cusp_orders.values())

    @property
    def is_modular(self) -> bool:
        return self.weight.denominator == 1 and self.cond24_a and self.cond24_b and self.is_holomorphic


def _squarefree_part(n: int) -> int:
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1
    return sign * out * n


def character_discriminant(e: EtaQuotient) -> int:
    """Fundamental discriminant of ``((-1)^k prod delta^r / .)``; 1 for the trivial character."""
    k = e.weight
    num, den = 1, 1
    for d, r in e.factors:
        if r > 0:
            num *= d ** r
        else:
            den *= d ** (-r)
    # prod delta^r and num*den differ by the square den^2
    val = num * den
    if k.denominator == 1 and k.numerator % 2:
        val = -val
    d = _squarefree_part(val)
    return d if d % 4 == 1 else 4 * d


def cusp_order(e: EtaQuotient, s: int) -> Fraction:
    n = e.level
    total = Fraction(0)
    for delta, r in e.factors:
        total += Fraction(math.gcd(s, delta) ** 2 * r, math.gcd(s, n // s) * s * delta)
    return Fraction(n, 24) * total


def ghn_check(e: EtaQuotient) -> ModularityReport:
    n = e.level
    return ModularityReport(
        weight=e.weight,
        cond24_a=sum(d * r for d, r in e.factors) % 24 == 0,
        cond24_b=sum((n // d) * r for d, r in e.factors) % 24 == 0,
        cusp_orders={s: cusp_order(e, s) for s in divisors(n)},
        character_discriminant=character_discriminant(e),
    )


# Named quotients at level 8 -------------------------------------------------

def f_quotient(k: int) -> EtaQuotient:
    """``eta(4t)^(8k-2) eta(8t)^4 / eta(2t)^(4k)``, weight 2k+1 on Gamma_0(8)."""
    return EtaQuotient.of(8, {2: -4 * k, 4: 8 * k - 2, 8: 4})


F_QUOTIENT = EtaQuotient.of(8, {2: -4, 4: 8})
F2_QUOTIENT = EtaQuotient.of(8, {4: -4, 8: 8})
THETA2_QUOTIENT = EtaQuotient.of(8, {2: -2, 4: 5, 8: -2})
THETA_QUOTIENT = EtaQuotient.of(4, {1: -2, 2: 5, 4: -2})
PSI_QUOTIENT = EtaQuotient.of(2, {1: -1, 2: 2})


def theta_series(trunc: int, scale: int = 1) -> QSeries:
    """``sum_{n in Z} q^{scale*n^2}`` summed directly."""
    terms: dict[int, int] = {0: 1}
    n = 1
    while scale * n * n < trunc:
        terms[scale * n * n] = 2
        n += 1
    return QSeries.from_dict(terms, trunc)


def psi_series(trunc: int, scale: int = 1) -> QSeries:
    """``sum_{n >= 0} q^{scale*n(n+1)/2}`` summed directly."""
    terms: dict[int, int] = {}
    n = 0
    while scale * n * (n + 1) // 2 < trunc:
        terms[scale * n * (n + 1) // 2] = 1
        n += 1
    return QSeries.from_dict(terms, trunc)
