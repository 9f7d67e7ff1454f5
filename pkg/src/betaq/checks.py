"""End-to-end verification checks shared by ``betaq suite`` and the acceptance tests.

Each check returns a :class:`CheckResult`; tolerances and truncations are fixed
here so the command line and the test suite agree.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from . import analytics, cmeval
from .basisdecomp import build_basis, cusp_conditions, decompose, t_cusp_series
from .eisenstein import eis2_crosscheck, h_k_series
from .etaq import eta_expand, f_quotient
from .lambert import eulerian_poly, lambert_expand, verify_classical
from .qseries import QSeries, euler_product, pentagonal_terms

LATTICE_TOL = mpmath.ldexp(1, -240)
CM_TOL = mpmath.mpf("1e-15")
LIMIT_TOL = {1: 1e-3, 2: 1e-2, 3: 1e-2}
RATIO_TOL = 0.05


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name} ({self.seconds:.2f}s) {self.detail}".rstrip()

    def to_dict(self) -> dict:
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "seconds": f"{self.seconds:.3f}", "detail": self.detail}


def _timed(number: int, name: str, limit: float | None, body: Callable[[], tuple[bool, str]]) -> CheckResult:
    start = time.perf_counter()
    ok, detail = body()
    took = time.perf_counter() - start
    if limit is not None and took > limit:
        ok = False
        detail = f"{detail} exceeded {limit:.0f}s".strip()
    return CheckResult(number, name, ok, took, detail)


def check_ramanujan() -> CheckResult:
    return _timed(1, "ramanujan identity to q^500", 10, lambda: (verify_classical("ramanujan", 500), ""))


def check_hou_sun() -> CheckResult:
    return _timed(2, "hou-sun identity to q^500", 10, lambda: (verify_classical("hou_sun", 500), ""))


def check_k3() -> CheckResult:
    return _timed(3, "weight-7 lambert/eta identity to q^300", 30, lambda: (verify_classical("k3", 300), ""))


def check_k1() -> CheckResult:
    def body():
        f = eta_expand(f_quotient(1), 400)
        ok = f.agrees_with(h_k_series(1, 400)) and f.agrees_with(lambert_expand(1, 400))
        return ok, ""
    return _timed(4, "f_1 = H_1 = lambert side to q^400", None, body)


def check_cusp_decomposition(k_max: int = 6, trunc: int = 300) -> CheckResult:
    def body():
        bad = []
        for k in range(2, k_max + 1):
            d = decompose(t_cusp_series(k, trunc), build_basis(k, trunc), strict=False)
            if not (d.residual_zero and cusp_conditions(d).all):
                bad.append(k)
        return not bad, f"k=2..{k_max}" + (f" failing {bad}" if bad else "")
    return _timed(5, "cusp component decomposes with conditions (1)-(3)", 120, body)


def check_eis2(k_max: int = 6, trunc: int = 200) -> CheckResult:
    def body():
        bad = [k for k in range(1, k_max + 1) if not eis2_crosscheck(k, trunc)]
        return not bad, f"k=1..{k_max}" + (f" failing {bad}" if bad else "")
    return _timed(6, "twisted Eisenstein cross-check", None, body)


def check_lattice(prec: int = 256) -> CheckResult:
    def body():
        errs = [cmeval.relative_error(cmeval.lattice_sum_L(l, prec), cmeval.lattice_sum_closed_form(l, prec))
                for l in (1, 2, 3)]
        worst = max(errs)
        return worst < LATTICE_TOL, f"max rel err {mpmath.nstr(worst, 3)}"
    return _timed(7, "lattice sums L_1..L_3 closed forms", 5, body)


def check_eta_lemma(prec: int = 256) -> CheckResult:
    def body():
        errs = [cmeval.relative_error(cmeval.eta_pow2_lemma(k, prec), cmeval.eta_direct(k, prec)) for k in range(5)]
        errs += [cmeval.relative_error(cmeval.eta_pow2_lemma(k, prec), cmeval.eta_closed_form(k, prec))
                 for k in (1, 2, 3)]
        worst = max(errs)
        return worst < LATTICE_TOL, f"max rel err {mpmath.nstr(worst, 3)}"
    return _timed(8, "eta(2^k i) from lattice sums", None, body)


def check_cm(k_max: int = 3, r_values=(1, 2), prec: int = 256) -> CheckResult:
    def body():
        failing = []
        worst = mpmath.mpf(0)
        for k in range(1, k_max + 1):
            for r in r_values:
                rep = cmeval.cm_report(k, r, prec)
                worst = max(worst, rep.rel_err)
                if not rep.rel_err < CM_TOL:
                    failing.append((k, r))
        detail = f"max rel err {mpmath.nstr(worst, 3)}"
        if failing:
            detail += f" failing (k,r) {failing}"
        return not failing, detail
    return _timed(9, "closed form of H_k at 2^r i", 30, body)


def check_limits(prec: int = 96) -> CheckResult:
    def body():
        parts, ok = [], True
        for k, tol in LIMIT_TOL.items():
            rep = analytics.limit_check(k, prec=prec)
            good = rep.rel_error < tol and rep.algebraic_match
            ok &= good
            parts.append(f"k={k}:{mpmath.nstr(rep.rel_error, 3)}")
        return ok, " ".join(parts)
    return _timed(10, "q -> 1 limit of f_k", None, body)


def check_counts(k_max: int = 3, n_max: int = 100, n_asym: int = 500) -> CheckResult:
    def body():
        bad = []
        for k in range(1, k_max + 1):
            f = eta_expand(f_quotient(k), 2 * n_max + k + 2)
            if any(analytics.t_count(k, n) != f.coeff(2 * n + k + 1) for n in range(n_max + 1)):
                bad.append(("count", k))
        ratios = []
        for k in (2, 3):
            row = analytics.asymptotic_report(k, n_asym, [n_asym])[0]
            ratios.append(f"k={k}:{row.ratio:.4f}")
            if not abs(row.ratio - 1) < RATIO_TOL:
                bad.append(("ratio", k))
        return not bad, " ".join(ratios) + (f" failing {bad}" if bad else "")
    return _timed(11, "triangular counts and main-term ratio", None, body)


def _random_series(rng: random.Random) -> QSeries:
    trunc = rng.randint(4, 24)
    offset = rng.randint(0, 3)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(trunc - offset)]
    return QSeries(coeffs, offset=offset, trunc=trunc)


def ring_axioms(cases: int = 200, seed: int = 20240611) -> bool:
    rng = random.Random(seed)
    for _ in range(cases):
        a, b, c = (_random_series(rng) for _ in range(3))
        if (a + b) + c != a + (b + c) or a + b != b + a:
            return False
        if (a * b) * c != a * (b * c) or a * b != b * a:
            return False
        if not (a * (b + c)).agrees_with(a * b + a * c):
            return False
        u = QSeries.one(a.trunc) + a.shift(1).truncate(a.trunc)
        if not (u * u.inverse()).agrees_with(QSeries.one(u.trunc)):
            return False
    return True


def eulerian_identity(r_max: int = 10, terms: int = 40) -> bool:
    # t A_r(t) = (1-t)^{r+1} sum l^r t^l as exact power series
    for r in range(r_max + 1):
        lhs = QSeries([0] + [l ** r for l in range(1, terms)], trunc=terms)
        rhs = QSeries([0] + list(eulerian_poly(r).coeffs), trunc=terms) * QSeries([1, -1], trunc=terms) ** -(r + 1)
        if lhs != rhs:
            return False
    return True


def pentagonal_structure(trunc: int = 500) -> bool:
    expected = {e: s for e, s in pentagonal_terms(trunc)}
    series = euler_product(1, trunc)
    return all(series.coeff(n) == expected.get(n, 0) for n in range(trunc))


def basis_triangular(k_max: int = 6, trunc: int = 60) -> bool:
    for k in range(1, k_max + 1):
        basis = build_basis(k, trunc)
        if basis.leading_exponents() != list(range(2 * k + 2)):
            return False
        if any(e.leading() != 1 for e in basis.elements):
            return False
    return True


def check_properties() -> CheckResult:
    def body():
        parts = {"ring": ring_axioms(), "eulerian": eulerian_identity(),
                 "pentagonal": pentagonal_structure(), "triangular": basis_triangular()}
        bad = [k for k, v in parts.items() if not v]
        return not bad, "failing " + ",".join(bad) if bad else "ring, eulerian, pentagonal, triangular"
    return _timed(12, "property suites", None, body)


def run_all(k_max: int = 6) -> list[CheckResult]:
    return [check_ramanujan(), check_hou_sun(), check_k3(), check_k1(),
            check_cusp_decomposition(max(2, k_max)), check_eis2(max(1, k_max)), check_lattice(),
            check_eta_lemma(), check_cm(min(3, k_max)), check_limits(), check_counts(min(3, k_max)),
            check_properties()]


def cm_rederived_summary(k_max: int = 3, r_values=(1, 2), prec: int = 256) -> mpmath.mpf:
    """Worst relative error of the recomputed closed form; informational."""
    return max(cmeval.cm_report(k, r, prec).rel_err_rederived
               for k in range(1, k_max + 1) for r in r_values)

