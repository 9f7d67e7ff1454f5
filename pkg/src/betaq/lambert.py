"""Eulerian polynomials, Lambert-series expansions and exact identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .eisenstein import CHI_M4, h_k_series
from .etaq import EtaQuotient, eta_expand, eta_product, f_quotient
from .qseries import QSeries


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def of(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial.of([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + other.scale(-1)

    def scale(self, c: int) -> "IntPolynomial":
        return IntPolynomial.of([c * x for x in self.coeffs])

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial.of(out)

    def substitute_power(self, m: int) -> "IntPolynomial":
        """``p(t^m)``."""
        out = [0] * (m * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[m * i] = c
        return IntPolynomial.of(out)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]


def eulerian_poly(r: int) -> IntPolynomial:
    """``A_r`` with ``sum_{l >= 1} l^r t^l = t A_r(t) / (1 - t)^{r+1}``.

    Read off as ``(1 - t)^{r+1} sum_{l=1}^{r+1} l^r t^{l-1}`` cut at degree ``max(r-1, 0)``.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    top = max(r - 1, 0)
    head = [(l + 1) ** r for l in range(top + 1)]
    out = []
    for d in range(top + 1):
        out.append(sum((-1) ** j * comb(r + 1, j) * head[d - j] for j in range(min(d, r + 1) + 1)))
    return IntPolynomial.of(out)


def p_k_poly(k: int) -> IntPolynomial:
    """``(1 + t)^{2k+1} A_{2k}(t) - 2^{2k} t A_{2k}(t^2)``, degree 4k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a = eulerian_poly(2 * k)
    binom = IntPolynomial.of([comb(2 * k + 1, i) for i in range(2 * k + 2)])
    shifted = IntPolynomial.of([0] + list(a.substitute_power(2).coeffs)).scale(4 ** k)
    return binom * a - shifted


def rational_lambert_sum(numer: IntPolynomial, denom_step: int, power: int, trunc: int,
                         chi=CHI_M4, step: int = 1) -> QSeries:
    """``sum_{n >= 1} chi(n) x N(x) / (1 - x^denom_step)^power`` with ``x = q^{step*n}``.

    The x-series is expanded once with negative binomial coefficients, then
    spread over every ``n`` with its exponent scaled by ``step*n``.
    """
    length = (trunc - 1) // step + 1
    base = [0] * length
    # (1 - x^s)^(-p) = sum_j C(j + p - 1, p - 1) x^(s*j)
    geo = [0] * length
    for j in range((length - 1) // denom_step + 1):
        geo[denom_step * j] = comb(j + power - 1, power - 1)
    for i, c in enumerate(numer.coeffs):
        if not c:
            continue
        for e in range(length - 1 - i):
            g = geo[e]
            if g:
                base[e + i + 1] += c * g
    out = [0] * trunc
    for n in range(1, length):
        sign = chi(n)
        if not sign:
            continue
        for j in range(1, (trunc - 1) // (step * n) + 1):
            out[step * n * j] += sign * base[j]
    return QSeries(out, trunc=trunc)


def _euler(m: int) -> int:
    from .analytics import euler_number
    return euler_number(m)


def lambert_expand(k: int, trunc: int) -> QSeries:
    """The normalized Lambert side whose difference from ``f_k`` is a cusp form."""
    if k < 1:
        raise ValueError("k must be >= 1")
    e2k = _euler(2 * k)
    if k % 2:
        s = rational_lambert_sum(eulerian_poly(2 * k), 1, 2 * k + 1, trunc, step=2)
        return s.scale(Fraction(-1, e2k))
    s = rational_lambert_sum(p_k_poly(k), 2, 2 * k + 1, trunc, step=1)
    return s.scale(Fraction(1, 4 ** k * e2k))


# Classical identities -------------------------------------------------------

def ramanujan_sides(trunc: int) -> tuple[QSeries, QSeries]:
    """``sum (-1)^n q^n / (1 - q^{2n+1})`` and ``(q^4;q^4)^2 / (q^2;q^4)^2``."""
    lhs = [0] * trunc
    n = 0
    while n < trunc:
        sign = -1 if n % 2 else 1
        e = n
        while e < trunc:
            lhs[e] += sign
            e += 2 * n + 1
        n += 1
    # (q^2;q^4) = (q^2;q^2)/(q^4;q^4)
    rhs = eta_product({2: -2, 4: 4}, trunc)
    return QSeries(lhs, trunc=trunc), rhs


def hou_sun_sides(trunc: int) -> tuple[QSeries, QSeries]:
    """``sum (-1)^n q^{2n}(1 + q^{2n+1})/(1 - q^{2n+1})^3`` and ``(q^2;q^4)^2 (q^4;q^4)^6 / (q;q^2)^4``."""
    lhs = [0] * trunc
    n = 0
    while 2 * n < trunc:
        sign = -1 if n % 2 else 1
        m = 2 * n + 1
        j = 0
        # q^{2n} (1 + q^m) sum_j C(j+2, 2) q^{m j}
        while 2 * n + m * j < trunc:
            c = sign * comb(j + 2, 2)
            lhs[2 * n + m * j] += c
            if 2 * n + m * (j + 1) < trunc:
                lhs[2 * n + m * (j + 1)] += c
            j += 1
        n += 1
    # (q;q^2) = (q;q)/(q^2;q^2), (q^2;q^4) = (q^2;q^2)/(q^4;q^4)
    rhs = eta_product({1: -4, 2: 6, 4: 4}, trunc)
    return QSeries(lhs, trunc=trunc), rhs


K3_NUMERATOR = IntPolynomial.of([1, 57, 302, 302, 57, 1])
K3_X = EtaQuotient.of(8, {2: -12, 4: 22, 8: 4})
K3_Y = EtaQuotient.of(8, {2: -20, 4: 46, 8: -12})
K3_Z = EtaQuotient.of(8, {2: -4, 4: -2, 8: 20})


def k3_sides(trunc: int) -> tuple[QSeries, QSeries]:
    """Both sides of the weight-7 identity, each term expanded independently."""
    lam = rational_lambert_sum(K3_NUMERATOR, 1, 7, trunc, step=2)
    x = eta_expand(K3_X, trunc)
    lhs = lam + x.scale(17)
    rhs = x.scale(61) + eta_expand(K3_Y, trunc) + eta_expand(K3_Z, trunc).scale(16)
    return lhs, rhs


CLASSICAL = {"ramanujan": ramanujan_sides, "hou_sun": hou_sun_sides, "k3": k3_sides}


def classical_sides(which: str, trunc: int) -> tuple[QSeries, QSeries]:
    key = which.replace("-", "_")
    if key not in CLASSICAL:
        raise ValueError(f"unknown identity {which!r}; choose from {sorted(CLASSICAL)}")
    return CLASSICAL[key](trunc)


def verify_classical(which: str, trunc: int) -> bool:
    lhs, rhs = classical_sides(which, trunc)
    return lhs.agrees_with(rhs)


@dataclass
class IdentityReport:
    k: int
    trunc: int
    difference_zero: bool
    first_nonzero: int | None
    conditions: dict[str, bool] = field(default_factory=dict)
    residual_zero: bool = True

    @property
    def passed(self) -> bool:
        if self.k == 1:
            return self.difference_zero
        return self.residual_zero and all(self.conditions.values())

    def to_dict(self) -> dict:
        return {"k": self.k, "trunc": self.trunc, "passed": self.passed,
                "difference_zero": self.difference_zero, "first_nonzero": self.first_nonzero,
                "residual_zero": self.residual_zero, "conditions": self.conditions}


def verify_theorem2(k: int, trunc: int) -> IdentityReport:
    """``f_k`` minus the Lambert side must be zero (k = 1) or a cusp form."""
    from .basisdecomp import build_basis, cusp_conditions, decompose

    diff = eta_expand(f_quotient(k), trunc) - lambert_expand(k, trunc)
    report = IdentityReport(k, trunc, diff.is_zero(), None if diff.is_zero() else diff.offset)
    d = decompose(diff, build_basis(k, trunc), strict=False)
    report.residual_zero = d.residual_zero
    report.conditions = cusp_conditions(d).as_dict()
    return report


def lambert_matches_eisenstein(k: int, trunc: int) -> bool:
    return lambert_expand(k, trunc).agrees_with(h_k_series(k, trunc))
