"""Eta-quotient basis of ``M_{2k+1}(8, chi_{-4})`` and exact decomposition into it.

Element ``l`` of the basis starts ``q^l + O(q^{l+1})`` for ``l = 0 .. 2k+1``,
so any form in the space is recovered by forward substitution on leading
exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .eisenstein import h_k_series
from .etaq import F2_QUOTIENT, F_QUOTIENT, THETA2_QUOTIENT, EtaQuotient, eta_expand, f_quotient
from .qseries import QSeries, QSeriesError


class NotInSpace(QSeriesError):
    def __init__(self, exponent: int, coeff: Fraction):
        super().__init__(f"residual has nonzero coefficient {coeff} at q^{exponent}")
        self.exponent = exponent
        self.coeff = coeff


def basis_quotient(k: int, ell: int) -> EtaQuotient:
    if 0 <= ell <= k - 1:
        return F_QUOTIENT ** ell * THETA2_QUOTIENT ** (4 * (k - ell) + 2)
    if k <= ell <= 2 * k:
        return F_QUOTIENT ** (2 * k - ell) * F2_QUOTIENT ** (ell - k) * THETA2_QUOTIENT ** 2
    if ell == 2 * k + 1:
        return F_QUOTIENT * F2_QUOTIENT ** k * THETA2_QUOTIENT ** -2
    raise ValueError(f"basis index {ell} out of range for k={k}")


@dataclass(frozen=True)
class BasisSet:
    k: int
    elements: tuple[QSeries, ...]
    provenance: tuple[EtaQuotient, ...]

    @property
    def trunc(self) -> int:
        return min(e.trunc for e in self.elements)

    def leading_exponents(self) -> list[int]:
        return [e.offset for e in self.elements]

    def combine(self, coefficients) -> QSeries:
        out = QSeries.zero(self.trunc)
        for c, e in zip(coefficients, self.elements):
            if c:
                out = out + e.scale(c)
        return out


@lru_cache(maxsize=32)
def build_basis(k: int, trunc: int) -> BasisSet:
    if k < 1:
        raise ValueError("k must be >= 1")
    if trunc <= 2 * k + 1:
        raise ValueError(f"truncation must exceed 2k+1 = {2 * k + 1}")
    quotients = tuple(basis_quotient(k, ell) for ell in range(2 * k + 2))
    return BasisSet(k, tuple(eta_expand(e, trunc) for e in quotients), quotients)


@dataclass(frozen=True)
class Decomposition:
    k: int
    coefficients: tuple[Fraction, ...]
    residual_zero: bool = True

    @property
    def alpha(self) -> tuple[Fraction, ...]:
        return self.coefficients[: self.k]

    @property
    def beta(self) -> tuple[Fraction, ...]:
        """``beta_k(l)`` for ``l = k .. 2k``."""
        return self.coefficients[self.k: 2 * self.k + 1]

    @property
    def gamma(self) -> Fraction:
        return self.coefficients[2 * self.k + 1]

    def to_dict(self) -> dict:
        return {"k": self.k, "alpha": [str(x) for x in self.alpha],
                "beta": [str(x) for x in self.beta], "gamma": str(self.gamma),
                "residual_zero": self.residual_zero}


def decompose(g: QSeries, basis: BasisSet, strict: bool = True) -> Decomposition:
    """Coefficients of ``g`` in the basis; raises :class:`NotInSpace` on a nonzero residual."""
    k = basis.k
    if not g.is_zero() and g.offset < 0:
        raise ValueError("input must be holomorphic at infinity (offset >= 0)")
    trunc = min(g.trunc, basis.trunc)
    if trunc <= 2 * k + 1:
        raise ValueError(f"truncation must exceed 2k+1 = {2 * k + 1}")
    residual = g.truncate(trunc)
    coeffs = []
    for ell, elem in enumerate(basis.elements):
        c = residual.coeff(ell)
        coeffs.append(c)
        if c:
            residual = residual - elem.truncate(trunc).scale(c)
    zero = residual.is_zero()
    if strict and not zero:
        raise NotInSpace(residual.offset, residual.leading())
    return Decomposition(k, tuple(coeffs), zero)


@dataclass(frozen=True)
class ConditionReport:
    c1: bool
    c2: bool
    c3: bool

    @property
    def all(self) -> bool:
        return self.c1 and self.c2 and self.c3

    def as_dict(self) -> dict[str, bool]:
        return {"c1": self.c1, "c2": self.c2, "c3": self.c3}


def condition_values(d: Decomposition) -> tuple[Fraction, Fraction]:
    """Left sides of the two weighted-sum cusp conditions, as exact rationals."""
    k = d.k
    two = sum(c / Fraction(4) ** ell for ell, c in enumerate(d.coefficients[: 2 * k + 1]))
    three = sum((-1) ** ell * c / Fraction(4) ** ell for ell, c in enumerate(d.coefficients[: 2 * k + 1]))
    two += d.gamma / Fraction(2) ** (4 * k + 3)
    three -= d.gamma / Fraction(2) ** (4 * k + 2)
    return two, three


def cusp_conditions(d: Decomposition) -> ConditionReport:
    two, three = condition_values(d)
    return ConditionReport(c1=d.alpha[0] == 0 and d.gamma == 0, c2=two == 0, c3=three == 0)


def t_cusp_series(k: int, trunc: int) -> QSeries:
    """``f_k - H_k``, the cusp component."""
    return eta_expand(f_quotient(k), trunc) - h_k_series(k, trunc)
