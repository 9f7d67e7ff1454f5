"""Real Dirichlet characters, twisted divisor sums and Eisenstein q-expansions.

Only characters with values in {-1, 0, 1} are modelled.  That covers
``chi_{-4}``, the trivial character and the principal character mod 2, and
keeps every normalized Eisenstein coefficient an integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .etaq import divisors
from .qseries import QSeries, QSeriesError


class ParityViolation(QSeriesError):
    pass


@dataclass(frozen=True)
class CharacterTable:
    modulus: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.modulus:
            raise ValueError("need one value per residue class")
        if any(v not in (-1, 0, 1) for v in self.values):
            raise ValueError("only real characters with values in {-1, 0, 1} are supported")
        for n, v in enumerate(self.values):
            if (v == 0) != (math.gcd(n, self.modulus) > 1):
                raise ValueError(f"value at {n} inconsistent with gcd({n}, {self.modulus})")
        for m in range(self.modulus):
            for n in range(self.modulus):
                if self.values[m * n % self.modulus] != self.values[m] * self.values[n]:
                    raise ValueError("values are not completely multiplicative")

    def __call__(self, n: int) -> int:
        return self.values[n % self.modulus]

    @property
    def is_principal(self) -> bool:
        return all(v in (0, 1) for v in self.values)

    @property
    def parity(self) -> int:
        """``chi(-1)``."""
        return self(-1)

    def primitive(self) -> "CharacterTable":
        """The primitive character inducing this one."""
        for r in divisors(self.modulus):
            vals = [0] * r
            ok = True
            for a in range(r):
                if math.gcd(a, r) > 1:
                    continue
                seen = {self(n) for n in range(a, a + r * self.modulus, r)
                        if math.gcd(n, self.modulus) == 1}
                if len(seen) != 1:
                    ok = False
                    break
                vals[a] = seen.pop()
            if ok:
                return CharacterTable(r, tuple(vals if r > 1 else [1]))
        return self

    @property
    def conductor(self) -> int:
        return self.primitive().modulus


TRIVIAL = CharacterTable(1, (1,))
CHI_M4 = CharacterTable(4, (0, 1, 0, -1))
CHI_2 = CharacterTable(2, (0, 1))


def char_value(c: CharacterTable, n: int) -> int:
    return c(n)


def prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    return out + [n] if n > 1 else out


def mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def sigma_chi(n: int, k: int) -> int:
    """``sum_{d | n} chi_{-4}(n/d) d^{2k}``."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    return sum(CHI_M4(n // d) * d ** (2 * k) for d in divisors(n))


def sigma_chi_series(k: int, trunc: int, scale: int = 1) -> QSeries:
    """``sum_{n >= 1} sigma_chi(n, k) q^{scale*n}``, one divisor enumeration per term."""
    terms = {scale * n: sigma_chi(n, k) for n in range(1, (trunc - 1) // scale + 1)}
    return QSeries.from_dict(terms, trunc)


@dataclass(frozen=True)
class EisensteinSpec:
    weight: int
    chi: CharacterTable
    psi: CharacterTable

    @property
    def R(self) -> int:
        return self.psi.modulus

    @property
    def ell(self) -> int:
        return self.psi.modulus // self.psi.conductor

    def check_parity(self) -> None:
        if self.chi.parity * self.psi.parity != (-1) ** self.weight:
            raise ParityViolation(
                f"chi(-1)psi(-1) = {self.chi.parity * self.psi.parity} but (-1)^k = {(-1) ** self.weight}")


def _inner_weight(spec: EisensteinSpec, d: int) -> int:
    """``sum_{c | (ell, d)} c mu(ell/c) psi0(ell/c) conj(psi0)(d/c)``; real characters are self-conjugate."""
    ell = spec.ell
    psi0 = spec.psi.primitive()
    return sum(c * mobius(ell // c) * psi0(ell // c) * psi0(d // c)
               for c in divisors(math.gcd(ell, d)))


def eisenstein_coefficients(spec: EisensteinSpec, nmax: int) -> list[int]:
    """``a(0..nmax)`` with ``a(0) = 0``, by a divisor sieve over the general coefficient law."""
    spec.check_parity()
    k = spec.weight
    a = [0] * (nmax + 1)
    for d in range(1, nmax + 1):
        w = _inner_weight(spec, d)
        if not w:
            continue
        base = w * d ** (k - 1)
        for m in range(1, nmax // d + 1):
            c = spec.chi(m)
            if c:
                a[d * m] += c * base
    return a


def bernoulli_number(m: int) -> Fraction:
    from .analytics import bernoulli_number as _b
    return _b(m)


def constant_term(spec: EisensteinSpec) -> Fraction:
    """Normalized constant ``c_k / A_k``.

    Zero unless ``chi`` is principal.  For principal ``chi`` only a trivial
    primitive ``psi`` is handled, where the Gauss sum is 1 and the constant is
    ``-B_k/(2k) * R^k * prod_{p | R} (1 - p^-k)``.
    """
    if not spec.chi.is_principal:
        return Fraction(0)
    if spec.psi.conductor != 1:
        raise NotImplementedError("constant term needs the Gauss sum of a nontrivial psi")
    k, R = spec.weight, spec.R
    val = -bernoulli_number(k) / (2 * k) * R ** k
    for p in prime_divisors(R):
        val *= 1 - Fraction(1, p ** k)
    return val


def eisenstein_series(spec: EisensteinSpec, trunc: int, scale: int = 1) -> QSeries:
    """Normalized ``E_{k,chi,psi}(scale*tau)`` to ``O(q^trunc)``.

    The raw expansion runs over ``q^{n/R}``; ``scale`` must be a multiple of
    ``R`` so that every exponent ``scale*n/R`` is an integer.
    """
    spec.check_parity()
    if scale < 1 or scale % spec.R:
        raise ValueError(f"scale {scale} must be a positive multiple of R = {spec.R}")
    step = scale // spec.R
    nmax = (trunc - 1) // step
    a = eisenstein_coefficients(spec, nmax)
    terms = {step * n: a[n] for n in range(1, nmax + 1) if a[n]}
    c0 = constant_term(spec)
    if c0:
        terms[0] = c0
    return QSeries.from_dict(terms, trunc)


def _euler(m: int) -> int:
    from .analytics import euler_number
    return euler_number(m)


@lru_cache(maxsize=64)
def h_k_series(k: int, trunc: int, route: str = "trivial") -> QSeries:
    """The Eisenstein part ``H_k`` of ``f_k`` in ``M_{2k+1}(8, chi_{-4})``.

    ``route="trivial"`` builds the even-k case from the two ``psi = 1`` series
    ``E(tau) - 2^{2k} E(2tau)``; ``route="chi2"`` uses
    ``2^{2k} E(2tau) - E_{chi_2}(2tau)`` instead.  Both must agree.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    e2k = _euler(2 * k)
    w = 2 * k + 1
    plain = EisensteinSpec(w, CHI_M4, TRIVIAL)
    if k % 2:
        return eisenstein_series(plain, trunc, scale=2).scale(Fraction(-1, e2k))
    if route == "trivial":
        body = eisenstein_series(plain, trunc, 1) - eisenstein_series(plain, trunc, 2).scale(4 ** k)
    elif route == "chi2":
        twisted = EisensteinSpec(w, CHI_M4, CHI_2)
        body = eisenstein_series(plain, trunc, 2).scale(4 ** k) - eisenstein_series(twisted, trunc, 2)
    else:
        raise ValueError(f"unknown route {route!r}")
    return body.scale(Fraction(1, 4 ** k * e2k))


def eis2_crosscheck(k: int, trunc: int) -> bool:
    """General-law ``E_{2k+1,chi_{-4},chi_2}(2tau)`` against ``2^{2k+1} E(2tau) - E(tau)`` from plain divisor sums."""
    twisted = eisenstein_series(EisensteinSpec(2 * k + 1, CHI_M4, CHI_2), trunc, scale=2)
    rhs = sigma_chi_series(k, trunc, 2).scale(2 ** (2 * k + 1)) - sigma_chi_series(k, trunc, 1)
    return twisted.agrees_with(rhs)
