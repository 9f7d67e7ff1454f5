"""High-precision evaluation at the CM points ``tau_r = 2^r i``.

Everything here works on the positive reals ``q = exp(-2 pi 2^r)``; no general
complex ``tau`` is represented.  Precision arguments are in bits and every
internal computation carries ``GUARD_BITS`` extra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .analytics import euler_number
from .basisdecomp import build_basis, decompose
from .eisenstein import h_k_series
from .etaq import f_quotient, eta_expand
from .qseries import QSeries

DEFAULT_PREC = 256
GUARD_BITS = 32


def _mpf(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


def lattice_sum(s: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``sum_{m,n >= 1} (-1)^m / (n^2 + s m^2)``, inner sum over n first.

    With ``c = sqrt(s)`` the n-sum is ``(pi c m coth(pi c m) - 1) / (2 c^2 m^2)``.
    Splitting ``coth = 1 + 2/(e^{2 pi c m} - 1)`` leaves two alternating sums with
    closed forms plus a geometrically convergent remainder.
    """
    if s < 1:
        raise ValueError("s must be a positive integer")
    with mpmath.workprec(prec + GUARD_BITS):
        c = mpmath.sqrt(s)
        pi = mpmath.pi
        total = -pi * mpmath.log(2) / (2 * c) + pi ** 2 / (24 * s)
        eps = mpmath.ldexp(1, -(prec + GUARD_BITS))
        m = 1
        while True:
            term = pi / (c * m * mpmath.expm1(2 * pi * c * m))
            total += -term if m % 2 else term
            if term < eps * abs(total):
                break
            m += 1
        return +total


def lattice_scale(ell: int) -> int:
    """Coefficient of ``m^2`` in the lattice sum ``L_ell``: ``4^(ell-1)``."""
    return 4 ** (ell - 1)


@lru_cache(maxsize=256)
def lattice_sum_L(ell: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``L_ell = sum_{m,n >= 1} (-1)^m / (n^2 + 4^(ell-1) m^2)``."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    return lattice_sum(lattice_scale(ell), prec)


def lattice_sum_closed_form(ell: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Closed forms of ``L_1, L_2, L_3`` in terms of pi, log 2 and quartic surds."""
    with mpmath.workprec(prec + GUARD_BITS):
        pi, log = mpmath.pi, mpmath.log
        l2 = log(2)
        if ell == 1:
            return -pi ** 2 / 24 - pi * l2 / 8
        if ell == 2:
            return -7 * pi ** 2 / 96 - pi * l2 / 32 - pi * log(mpmath.sqrt(2) - 1) / 8
        if ell == 3:
            return (-31 * pi ** 2 / 384 - 5 * pi * l2 / 128 + pi * log(mpmath.sqrt(2) - 1) / 32
                    - pi * log(1 - mpmath.power(2, mpmath.mpf(-1) / 4)) / 8)
    raise ValueError("closed forms are known for ell = 1, 2, 3 only")


def lattice_sum_naive(s: int, m_terms: int = 2000, n_terms: int = 2000) -> float:
    """Low-precision double sum with an integral tail for n and averaged alternating partial sums in m."""
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    partial = 0.0
    prev = 0.0
    for m in range(1, m_terms + 1):
        a2 = s * m * m
        a = np.sqrt(a2)
        inner = np.sum(1.0 / (n * n + a2))
        inner += (np.pi / 2 - np.arctan((n_terms + 0.5) / a)) / a
        prev = partial
        partial += (-1) ** m * inner
    return 0.5 * (partial + prev)


def eta_direct(r: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``eta(2^r i) = q^{1/24} prod (1 - q^n)`` with ``q = exp(-2 pi 2^r)``."""
    return eta_imag(mpmath.mpf(2) ** r, prec)


def eta_imag(y, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``eta(i y)`` for real ``y > 0`` by direct product."""
    with mpmath.workprec(prec + GUARD_BITS):
        q = mpmath.exp(-2 * mpmath.pi * y)
        eps = mpmath.ldexp(1, -(prec + GUARD_BITS))
        acc = mpmath.exp(-2 * mpmath.pi * y / 24)
        qn = q
        while qn > eps:
            acc *= 1 - qn
            qn *= q
        return +acc


def psi_imag(y, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``Psi(i y) = sum_{n >= 0} q^{n(n+1)/2}``, ``q = exp(-2 pi y)``."""
    with mpmath.workprec(prec + GUARD_BITS):
        q = mpmath.exp(-2 * mpmath.pi * y)
        eps = mpmath.ldexp(1, -(prec + GUARD_BITS))
        total, n = mpmath.mpf(0), 0
        while True:
            term = q ** (n * (n + 1) // 2)
            total += term
            if term < eps:
                return +total
            n += 1


def cm_constant_a(prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``pi^{1/4} / Gamma(3/4)``."""
    with mpmath.workprec(prec + GUARD_BITS):
        return mpmath.pi ** mpmath.mpf(0.25) / mpmath.gamma(mpmath.mpf(3) / 4)


def _lattice_weighted(k: int, prec: int):
    """``sum_{l=1}^k 2^l L_l``."""
    return mpmath.fsum(mpmath.mpf(2) ** l * lattice_sum_L(l, prec) for l in range(1, k + 1))


def eta_pow2_lemma(k: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``eta(2^k i)`` from Gamma(3/4), pi and the lattice sums ``L_1 .. L_k``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    with mpmath.workprec(prec + GUARD_BITS):
        pi = mpmath.pi
        two_k = mpmath.mpf(2) ** k
        expo = -pi * (two_k - 1) ** 2 / (12 * two_k) - _lattice_weighted(k, prec) / (2 * pi)
        return cm_constant_a(prec) / mpmath.power(2, mpmath.mpf(k + 1) / 2) * mpmath.exp(expo)


def eta_closed_form(k: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Known radical forms of ``eta(i), eta(2i), eta(4i), eta(8i)``."""
    with mpmath.workprec(prec + GUARD_BITS):
        a = cm_constant_a(prec)
        two = mpmath.mpf(2)
        r2m1 = mpmath.sqrt(2) - 1
        if k == 0:
            return a / mpmath.sqrt(2)
        if k == 1:
            return a / two ** (mpmath.mpf(7) / 8)
        if k == 2:
            return a * r2m1 ** (mpmath.mpf(1) / 4) / two ** (mpmath.mpf(21) / 16)
        if k == 3:
            return (a * r2m1 ** (mpmath.mpf(1) / 8) * mpmath.sqrt(1 - two ** (mpmath.mpf(-1) / 4))
                    / two ** (mpmath.mpf(53) / 32))
    raise ValueError("closed forms known for k = 0..3")


def psi_closed_form(y: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Radical forms of ``Psi(2i)`` and ``Psi(4i)``."""
    with mpmath.workprec(prec + GUARD_BITS):
        a = cm_constant_a(prec)
        pi = mpmath.pi
        if y == 2:
            return a * mpmath.sqrt(2 - mpmath.sqrt(2)) * mpmath.exp(pi / 2) / 4
        if y == 4:
            return a * (1 - mpmath.mpf(2) ** (mpmath.mpf(-1) / 4)) * mpmath.exp(pi) / 4
    raise ValueError("closed forms known for Psi(2i) and Psi(4i) only")


def product_closed_forms(r: int, prec: int = DEFAULT_PREC) -> dict[str, mpmath.mpf]:
    """``F(tau_r)``, ``F(2 tau_r)``, ``theta(2 tau_r)`` from the eta lemma, multiplied out."""
    with mpmath.workprec(prec + GUARD_BITS):
        pi = mpmath.pi
        a = cm_constant_a(prec)
        L = {m: lattice_sum_L(m, prec) for m in range(1, r + 4)}
        S = lambda j: mpmath.fsum(mpmath.mpf(2) ** m * L[m] for m in range(1, j + 1))
        p = mpmath.mpf(2) ** r
        F = a ** 4 / mpmath.mpf(2) ** (2 * r + 8) * mpmath.exp(
            -2 * pi * (2 * p + p - 1) / 3 - 2 / pi * S(r + 1) - 16 * p / pi * L[r + 2])
        F2 = a ** 4 / mpmath.mpf(2) ** (2 * r + 10) * mpmath.exp(
            -2 * pi * (4 * p + 2 * p - 1) / 3 - 2 / pi * S(r + 2) - 32 * p / pi * L[r + 3])
        th = a / mpmath.mpf(2) ** (mpmath.mpf(r + 3) / 2) * mpmath.exp(
            pi / 6 - S(r + 1) / (2 * pi) - 6 * p / pi * L[r + 2] + 8 * p / pi * L[r + 3])
        return {"F": F, "F2": F2, "theta2": th}


def product_direct(r: int, prec: int = DEFAULT_PREC) -> dict[str, mpmath.mpf]:
    """The same three values from directly evaluated eta products."""
    with mpmath.workprec(prec + GUARD_BITS):
        e1, e2, e3 = (eta_direct(j, prec) for j in (r + 1, r + 2, r + 3))
        return {"F": e2 ** 8 / e1 ** 4, "F2": e3 ** 8 / e2 ** 4, "theta2": e2 ** 5 / (e1 ** 2 * e3 ** 2)}


# H_k at CM points -----------------------------------------------------------

@dataclass(frozen=True)
class CMContext:
    """Data for the closed form of ``H_k(2^r i)``.

    ``alpha`` and ``beta`` are the basis coordinates of ``H_k - f_k`` (so
    ``alpha[0]`` and ``gamma`` vanish); ``L`` holds ``L_1 .. L_{r+3}``.
    """

    k: int
    r: int
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    gamma: Fraction
    L: tuple[mpmath.mpf, ...]

    def L_at(self, ell: int) -> mpmath.mpf:
        return self.L[ell - 1]


def build_cm_context(k: int, r: int, prec: int = DEFAULT_PREC, trunc: int | None = None) -> CMContext:
    if k < 1 or r < 1:
        raise ValueError("need k >= 1 and r >= 1")
    trunc = trunc or max(40, 4 * k + 8)
    diff = h_k_series(k, trunc) - eta_expand(f_quotient(k), trunc)
    d = decompose(diff, build_basis(k, trunc))
    L = tuple(lattice_sum_L(ell, prec + GUARD_BITS) for ell in range(1, r + 4))
    return CMContext(k, r, d.alpha, d.beta, d.gamma, L)


def _weighted_L(ctx: CMContext):
    return mpmath.fsum(mpmath.mpf(2) ** m * ctx.L_at(m) for m in range(1, ctx.r + 2))


def j_exponent(ctx: CMContext) -> mpmath.mpf:
    k, r, pi = ctx.k, ctx.r, mpmath.pi
    p = mpmath.mpf(2) ** r
    return (pi * (2 * k + 1) / 3 - (2 * k + 1) / pi * _weighted_L(ctx)
            - 4 * p * (4 * k + 1) / pi * ctx.L_at(r + 2) - 16 * p / pi * ctx.L_at(r + 3))


def m_exponent(ctx: CMContext, ell: int, rederived: bool = False) -> mpmath.mpf:
    """Per-element exponent relative to ``J``.

    In the reference form the first term is ``-(ell 2^{r+1}/pi) sum_{m<=r+1} 2^m L_m``.
    Multiplying out the product formulas for ``F``, ``F(2tau)`` and
    ``theta(2tau)`` gives ``-ell 2^{r+1} pi`` there instead; ``rederived``
    selects that form.
    """
    k, r, pi = ctx.k, ctx.r, mpmath.pi
    p = mpmath.mpf(2) ** r
    lead = -ell * 2 * p * pi if rederived else -ell * 2 * p / pi * _weighted_L(ctx)
    return lead - 8 * p * (k - ell + 1) / pi * ctx.L_at(r + 2) + 32 * p * (k - ell + 1) / pi * ctx.L_at(r + 3)


def _closed(ctx: CMContext, prec: int, rederived: bool) -> mpmath.mpf:
    k, r = ctx.k, ctx.r
    with mpmath.workprec(prec + GUARD_BITS):
        pi = mpmath.pi
        a = cm_constant_a(prec)
        four = mpmath.mpf(4)
        inner = mpmath.exp(-(2 ** (r + 1)) * (k + 1) * pi) / four ** (k + 1)
        for ell in range(1, k):
            c = ctx.alpha[ell]
            if c:
                inner += _mpf(c) / four ** ell * mpmath.exp(m_exponent(ctx, ell, rederived))
        for i, c in enumerate(ctx.beta):
            ell = k + i
            if c:
                inner += _mpf(c) / four ** ell * mpmath.exp(m_exponent(ctx, ell, rederived))
        pref = a ** (4 * k + 2) / mpmath.mpf(2) ** ((2 * k + 1) * (r + 3))
        return +(pref * inner * mpmath.exp(j_exponent(ctx)))


def hk_cm_closed(ctx: CMContext, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``H_k(2^r i)`` from the closed form with ``J`` and ``M`` in their reference form."""
    return _closed(ctx, prec, rederived=False)


def hk_cm_closed_rederived(ctx: CMContext, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Closed form with the ``M`` exponent recomputed from the eta lemma."""
    return _closed(ctx, prec, rederived=True)


def _hk_coefficient_bound(k: int) -> Fraction:
    """``C`` with ``|[q^n] H_k| <= C n^{2k}``; uses ``|sigma_chi(n)| <= 2 n^{2k}``."""
    e = abs(euler_number(2 * k))
    if k % 2:
        return Fraction(2, e)
    return Fraction(2 * (1 + 4 ** k), 4 ** k * e)


def hk_cm_direct(k: int, r: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``H_k(2^r i)`` by summing its exact Fourier expansion at ``q = exp(-2^{r+1} pi)``."""
    if k < 1 or r < 1:
        raise ValueError("need k >= 1 and r >= 1")
    with mpmath.workprec(prec + GUARD_BITS):
        q = mpmath.exp(-(2 ** (r + 1)) * mpmath.pi)
        bound = _mpf(_hk_coefficient_bound(k))
        eps = mpmath.ldexp(1, -(prec + GUARD_BITS))
        n = 8
        while True:
            # tail sum_{j >= n} C j^{2k} q^j <= C n^{2k} q^n / (1 - q (1 + 1/n)^{2k})
            ratio = q * (1 + mpmath.mpf(1) / n) ** (2 * k)
            if ratio < mpmath.mpf(1) / 2:
                tail = bound * mpmath.mpf(n) ** (2 * k) * q ** n / (1 - ratio)
                if tail < eps * q ** (k + 1):
                    break
            n *= 2
        series = h_k_series(k, n)
        total = mpmath.fsum(_mpf(c) * q ** e for e, c in series.terms())
        return +total


def hk_cm_from_basis(k: int, r: int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """``H_k(2^r i)`` as ``f_k + sum c_l B_l`` with every basis element from direct eta values."""
    ctx = build_cm_context(k, r, prec)
    with mpmath.workprec(prec + GUARD_BITS):
        vals = product_direct(r, prec)
        F, F2, th = vals["F"], vals["F2"], vals["theta2"]
        total = F ** (k - 1) * F2 * th ** 2
        coeffs = list(ctx.alpha) + list(ctx.beta)
        for ell, c in enumerate(coeffs):
            if not c:
                continue
            if ell < k:
                elem = F ** ell * th ** (4 * (k - ell) + 2)
            else:
                elem = F ** (2 * k - ell) * F2 ** (ell - k) * th ** 2
            total += _mpf(c) * elem
        return +total


def relative_error(x, y) -> mpmath.mpf:
    return abs(x - y) / abs(y)


@dataclass
class CMReport:
    k: int
    r: int
    prec: int
    closed: mpmath.mpf
    direct: mpmath.mpf
    rederived: mpmath.mpf

    @property
    def rel_err(self) -> mpmath.mpf:
        return relative_error(self.closed, self.direct)

    @property
    def rel_err_rederived(self) -> mpmath.mpf:
        return relative_error(self.rederived, self.direct)

    def to_dict(self) -> dict:
        digits = int(self.prec * 0.30103)
        return {"k": self.k, "r": self.r, "prec": self.prec,
                "closed": mpmath.nstr(self.closed, digits), "direct": mpmath.nstr(self.direct, digits),
                "rel_err": mpmath.nstr(self.rel_err, 6),
                "rederived": mpmath.nstr(self.rederived, digits),
                "rel_err_rederived": mpmath.nstr(self.rel_err_rederived, 6)}


def cm_report(k: int, r: int, prec: int = DEFAULT_PREC) -> CMReport:
    ctx = build_cm_context(k, r, prec)
    return CMReport(k, r, prec, hk_cm_closed(ctx, prec), hk_cm_direct(k, r, prec),
                    hk_cm_closed_rederived(ctx, prec))
