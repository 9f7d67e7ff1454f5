"""Euler numbers, odd beta values, q -> 1 limits and coefficient asymptotics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath

from .eisenstein import sigma_chi
from .etaq import divisors, psi_series
from .qseries import QSeries, QSeriesError, power_recurrence

DEFAULT_PREC = 256


class OddIndex(QSeriesError, ValueError):
    pass


@lru_cache(maxsize=None)
def _sech_series(n: int) -> QSeries:
    cosh = QSeries([Fraction(1, math.factorial(j)) if j % 2 == 0 else 0 for j in range(n)], trunc=n)
    return cosh.inverse()


@lru_cache(maxsize=None)
def euler_number(m: int) -> int:
    """``E_m`` from ``2/(e^z + e^-z) = sum E_n z^n / n!``."""
    if m < 0:
        raise ValueError("index must be nonnegative")
    if m % 2:
        raise OddIndex(f"E_{m}: odd-index Euler numbers vanish")
    n = max(16, 1 << m.bit_length() + 1)
    val = _sech_series(n).coeff(m) * math.factorial(m)
    assert val.denominator == 1
    return int(val)


@lru_cache(maxsize=None)
def bernoulli_number(m: int) -> Fraction:
    """``B_m`` from ``z/(e^z - 1)``, so ``B_1 = -1/2``."""
    n = max(16, 1 << m.bit_length() + 1)
    shifted_exp = QSeries([Fraction(1, math.factorial(j + 1)) for j in range(n)], trunc=n)
    return shifted_exp.inverse().coeff(m) * math.factorial(m)


@dataclass(frozen=True)
class BetaValue:
    k: int
    rational_part: Fraction
    float_value: mpmath.mpf

    def __str__(self) -> str:
        return f"beta({2 * self.k + 1}) = {self.rational_part} * pi^{2 * self.k + 1}"


def beta_rational_part(k: int) -> Fraction:
    return Fraction((-1) ** k * euler_number(2 * k), 4 ** (k + 1) * math.factorial(2 * k))


def beta_odd(k: int, prec: int = DEFAULT_PREC) -> BetaValue:
    if k < 0:
        raise ValueError("k must be nonnegative")
    c = beta_rational_part(k)
    with mpmath.workprec(prec):
        val = mpmath.mpf(c.numerator) / c.denominator * mpmath.pi ** (2 * k + 1)
    return BetaValue(k, c, val)


def beta_direct(s: int, prec: int = 64) -> mpmath.mpf:
    """``sum (-1)^n / (2n+1)^s`` as a Dirichlet L-series; valid at ``s = 1`` too."""
    with mpmath.workprec(prec):
        return mpmath.dirichlet(s, [0, 1, 0, -1])


def _pochhammer_same(q, prec: int):
    """``(q; q)_inf`` for ``0 < q < 1`` by direct product."""
    eps = mpmath.ldexp(1, -prec - 8)
    acc = mpmath.mpf(1)
    qn = q
    while qn > eps:
        acc *= 1 - qn
        qn *= q
    return acc


def wallis_check(q, prec: int = 64) -> mpmath.mpf:
    """``(1 - q) (q^2; q^2)^4 / (q; q)^2``, which tends to pi/2 as q -> 1-."""
    with mpmath.workprec(prec + 16):
        q = mpmath.mpf(q)
        if not 0 < q < 1:
            raise ValueError("q must lie in (0, 1)")
        return (1 - q) * _pochhammer_same(q * q, prec) ** 4 / _pochhammer_same(q, prec) ** 2


def psi_value(x, prec: int):
    """``sum_{n >= 0} x^{n(n+1)/2}`` for ``0 <= x < 1``."""
    eps = mpmath.ldexp(1, -prec - 8)
    total = mpmath.mpf(0)
    n = 0
    while True:
        term = x ** (n * (n + 1) // 2)
        total += term
        if term < eps:
            return total
        n += 1


def f_k_value(k: int, q, prec: int = 96) -> mpmath.mpf:
    """``f_k`` at real ``0 < q < 1`` via ``q^{k+1} Psi(q^4)^2 Psi(q^2)^{4k}``."""
    with mpmath.workprec(prec + 16):
        q = mpmath.mpf(q)
        return q ** (k + 1) * psi_value(q ** 4, prec) ** 2 * psi_value(q ** 2, prec) ** (4 * k)


def richardson(values: Sequence, order: int, ratio: int = 2) -> list[list]:
    """Richardson table for samples at step sizes ``h, h/ratio, h/ratio^2, ...``.

    ``table[i][m]`` eliminates the ``h^1 .. h^m`` error terms using samples ``i-m .. i``.
    """
    table = []
    for i, v in enumerate(values):
        row = [v]
        for m in range(1, min(i, order) + 1):
            f = ratio ** m
            row.append((f * row[m - 1] - table[i - 1][m - 1]) / (f - 1))
        table.append(row)
    return table


def default_grid(jmin: int = 4, jmax: int = 12) -> list[Fraction]:
    return [1 - Fraction(1, 2 ** j) for j in range(jmin, jmax + 1)]


def limit_target(k: int) -> Fraction:
    """Rational ``c`` with the limit of ``(1-q)^{2k+1} f_k`` equal to ``c * pi^{2k+1}``."""
    return Fraction(1, 2 ** (4 * k + 3))


def lambert_limit_coefficient(k: int) -> Fraction:
    """``(2k)! beta(2k+1) / (2^{2k+1} E_{2k})`` over ``pi^{2k+1}``, signed per parity of k."""
    c = Fraction(math.factorial(2 * k)) * beta_rational_part(k) / (2 ** (2 * k + 1) * euler_number(2 * k))
    return c if k % 2 == 0 else -c


@dataclass
class LimitReport:
    k: int
    grid: list
    values: list
    extrapolated: mpmath.mpf
    sequence: list
    target: mpmath.mpf
    rel_error: mpmath.mpf
    algebraic_match: bool

    def to_dict(self, digits: int = 20) -> dict:
        return {"k": self.k, "extrapolated": mpmath.nstr(self.extrapolated, digits),
                "target": mpmath.nstr(self.target, digits),
                "rel_err": mpmath.nstr(self.rel_error, 6),
                "sequence": [mpmath.nstr(v, digits) for v in self.sequence],
                "algebraic_match": self.algebraic_match}


def limit_check(k: int, q_grid: Sequence | None = None, order: int = 3, prec: int = 96) -> LimitReport:
    """Extrapolate ``(1-q)^{2k+1} f_k(q)`` to ``q = 1`` along a grid with ``1-q`` halving."""
    grid = list(q_grid) if q_grid is not None else default_grid()
    with mpmath.workprec(prec):
        qs = [mpmath.mpf(g.numerator) / g.denominator if isinstance(g, Fraction) else mpmath.mpf(g)
              for g in grid]
        vals = [(1 - q) ** (2 * k + 1) * f_k_value(k, q, prec) for q in qs]
        table = richardson(vals, order)
        seq = [row[order] for row in table if len(row) > order]
        c = limit_target(k)
        target = mpmath.mpf(c.numerator) / c.denominator * mpmath.pi ** (2 * k + 1)
        best = seq[-1] if seq else vals[-1]
        rel = abs(best / target - 1)
    return LimitReport(k, grid, vals, best, seq, target, rel, limit_target(k) == lambert_limit_coefficient(k))


# Triangular-number representations ------------------------------------------

@lru_cache(maxsize=16)
def t_series(k: int, trunc: int) -> QSeries:
    """``Psi(x)^{4k} Psi(x^2)^2 = sum t_k(n) x^n``."""
    return power_recurrence(psi_series(trunc), 4 * k) * power_recurrence(psi_series(trunc, 2), 2)


def t_count(k: int, n: int) -> int:
    """Representations ``n = T_1 + ... + T_{4k} + 2(T_a + T_b)``, zero allowed as an index."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    trunc = 64
    while trunc <= n:
        trunc *= 2
    return int(t_series(k, trunc).coeff(n))


def t_count_bruteforce(k: int, n: int) -> int:
    """Literal enumeration of tuples; only sensible for small n."""
    tri = []
    i = 0
    while i * (i + 1) // 2 <= n:
        tri.append(i * (i + 1) // 2)
        i += 1
    weights = [1] * (4 * k) + [2, 2]

    def count(pos: int, rest: int) -> int:
        if pos == len(weights):
            return 1 if rest == 0 else 0
        w = weights[pos]
        total = 0
        for t in tri:
            if w * t > rest:
                break
            total += count(pos + 1, rest - w * t)
        return total

    return count(0, n)


def main_term(k: int, n: int) -> Fraction:
    """Coefficient of ``q^{2n+k+1}`` in the Eisenstein part ``H_k``."""
    m = 2 * n + k + 1
    e2k = euler_number(2 * k)
    if k % 2 == 0:
        return Fraction(sigma_chi(m, k), 4 ** k * e2k)
    return Fraction(-sigma_chi(m // 2, k), e2k)


def corollary_main_term(k: int, n: int) -> Fraction:
    """Main term written with ``sigma(2n+k+1)`` for both parities of k."""
    m = 2 * n + k + 1
    e2k = euler_number(2 * k)
    if k % 2 == 0:
        return Fraction(sigma_chi(m, k), 4 ** k * e2k)
    return Fraction(-sigma_chi(m, k), e2k)


@dataclass
class AsymptoticRow:
    n: int
    t: int
    main: Fraction
    cusp: Fraction
    corollary_main: Fraction

    @property
    def ratio(self) -> float:
        return float(Fraction(self.t) / self.main)


def asymptotic_report(k: int, n_max: int, ns: Sequence[int] | None = None) -> list[AsymptoticRow]:
    from .basisdecomp import t_cusp_series

    ns = list(range(n_max + 1)) if ns is None else list(ns)
    top = 2 * max(ns) + k + 2
    cusp = t_cusp_series(k, top)
    rows = []
    for n in ns:
        m = 2 * n + k + 1
        rows.append(AsymptoticRow(n, t_count(k, n), main_term(k, n), cusp.coeff(m), corollary_main_term(k, n)))
    return rows


def divisor_count(n: int) -> int:
    return len(divisors(n))


@dataclass
class GrowthReport:
    k: int
    n_max: int
    c_obs: float
    argmax: int | None
    running_max: list[tuple[int, float]] = field(default_factory=list)


def coefficient_growth_check(k: int, n_max: int, checkpoints: int = 8) -> GrowthReport:
    """Largest ``|a_k(n)| / (d(n) n^k)`` over the cusp component up to ``n_max``."""
    from .basisdecomp import t_cusp_series

    cusp = t_cusp_series(k, n_max + 1)
    best, arg = 0.0, None
    marks = {max(1, n_max * (i + 1) // checkpoints) for i in range(checkpoints)}
    running = []
    for n in range(1, n_max + 1):
        a = cusp.coeff(n)
        if a:
            r = float(abs(a) / (divisor_count(n) * Fraction(n) ** k))
            if r > best:
                best, arg = r, n
        if n in marks:
            running.append((n, best))
    return GrowthReport(k, n_max, best, arg, running)
