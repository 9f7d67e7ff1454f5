"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line; ``conftest.py`` prints them after the run,
and running this file directly prints them as well.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import mpmath

from betaq import analytics, cmeval
from betaq.basisdecomp import build_basis, cusp_conditions, decompose, t_cusp_series
from betaq.eisenstein import eis2_crosscheck, h_k_series
from betaq.etaq import eta_expand, f_quotient
from betaq.lambert import classical_sides, eulerian_poly, lambert_expand
from betaq.qseries import QSeries, euler_product, pentagonal_terms

PREC = 256
TWO_M240 = mpmath.ldexp(1, -240)
CM_TOL = mpmath.mpf(10) ** -15

RESULTS = {}


@contextmanager
def criterion(number, name, seconds=None):
    start = time.perf_counter()
    detail = []
    ok = False
    try:
        yield detail
        ok = True
    finally:
        took = time.perf_counter() - start
        if seconds is not None and took >= seconds:
            ok = False
            detail.append(f"took {took:.1f}s, limit {seconds}s")
        status = "PASS" if ok else "FAIL"
        RESULTS[number] = f"[{status}] criterion {number:2d}: {name} ({took:.2f}s) {' '.join(detail)}".rstrip()
    if seconds is not None:
        assert took < seconds, f"criterion {number} took {took:.1f}s"


def rel(a, b):
    return abs(a - b) / abs(b)


def test_c01_ramanujan_identity():
    with criterion(1, "Ramanujan q-series identity exact to q^500", seconds=10):
        lhs, rhs = classical_sides("ramanujan", 500)
        assert lhs.trunc == rhs.trunc == 500
        assert lhs.first_mismatch(rhs) is None


def test_c02_hou_sun_identity():
    with criterion(2, "Hou-Sun q-series identity exact to q^500", seconds=10):
        lhs, rhs = classical_sides("hou-sun", 500)
        assert lhs.trunc == rhs.trunc == 500
        assert lhs.first_mismatch(rhs) is None


def test_c03_weight_seven_identity():
    with criterion(3, "weight-7 Lambert / eta-quotient identity exact to q^300", seconds=30):
        lhs, rhs = classical_sides("k3", 300)
        assert lhs.trunc == rhs.trunc == 300
        assert lhs.first_mismatch(rhs) is None


def test_c04_k1_identically_equal():
    with criterion(4, "f_1 = H_1 = Lambert side exact to q^400"):
        f = eta_expand(f_quotient(1), 400)
        h = h_k_series(1, 400)
        lam = lambert_expand(1, 400)
        assert f.trunc == 400
        assert f == h == lam


def test_c05_cusp_component_k2_to_6():
    with criterion(5, "f_k - H_k in the eta basis with cusp conditions, k = 2..6, trunc 300", seconds=120) as note:
        for k in range(2, 7):
            d = decompose(t_cusp_series(k, 300), build_basis(k, 300))
            assert d.residual_zero
            assert cusp_conditions(d).all, f"k={k}: {cusp_conditions(d)}"
        note.append("k=2..6")


def test_c06_twisted_eisenstein_crosscheck():
    with criterion(6, "twisted Eisenstein series at 2tau against divisor sums, k <= 6, trunc 200"):
        for k in range(1, 7):
            assert eis2_crosscheck(k, 200), f"k={k}"


def test_c07_lattice_sum_closed_forms():
    with criterion(7, "L_1, L_2, L_3 against closed forms to 2^-240 at 256 bits", seconds=5) as note:
        worst = max(rel(cmeval.lattice_sum_L(l, PREC), cmeval.lattice_sum_closed_form(l, PREC)) for l in (1, 2, 3))
        note.append(f"max rel err {mpmath.nstr(worst, 3)}")
        assert worst < TWO_M240


def test_c08_eta_lemma():
    with criterion(8, "eta(2^k i) from lattice sums: direct k = 0..4, radicals k = 1..3") as note:
        direct = max(rel(cmeval.eta_pow2_lemma(k, PREC), cmeval.eta_direct(k, PREC)) for k in range(5))
        radical = max(rel(cmeval.eta_pow2_lemma(k, PREC), cmeval.eta_closed_form(k, PREC)) for k in (1, 2, 3))
        note.append(f"direct {mpmath.nstr(direct, 3)} radical {mpmath.nstr(radical, 3)}")
        assert direct < TWO_M240
        assert radical < TWO_M240


def test_c09_closed_form_at_cm_points():
    with criterion(9, "closed form of H_k(2^r i) vs direct summation to 1e-15, k = 1..3, r = 1..2",
                   seconds=30) as note:
        failing = []
        for k in (1, 2, 3):
            for r in (1, 2):
                ctx = cmeval.build_cm_context(k, r, PREC)
                err = rel(cmeval.hk_cm_closed(ctx, PREC), cmeval.hk_cm_direct(k, r, PREC))
                if not err < CM_TOL:
                    failing.append(f"(k={k},r={r}) rel err {mpmath.nstr(err, 3)}")
        if failing:
            note.append("failing " + "; ".join(failing))
        assert not failing, "; ".join(failing)


def test_c10_limit_at_one():
    with criterion(10, "Richardson limit of (1-q)^(2k+1) f_k against pi^(2k+1)/2^(4k+3)") as note:
        grid = analytics.default_grid(4, 12)
        for k, tol in ((1, 1e-3), (2, 1e-2), (3, 1e-2)):
            rep = analytics.limit_check(k, grid, order=3)
            note.append(f"k={k}:{mpmath.nstr(rep.rel_error, 3)}")
            assert rep.rel_error < tol
            assert analytics.limit_target(k) == analytics.lambert_limit_coefficient(k)


def test_c11_triangular_counts():
    with criterion(11, "t_k(n) equals f_k coefficients (k <= 3, n <= 100); main-term ratio at n = 500") as note:
        for k in (1, 2, 3):
            f = eta_expand(f_quotient(k), 2 * 100 + k + 2)
            for n in range(101):
                assert analytics.t_count(k, n) == f.coeff(2 * n + k + 1), f"k={k} n={n}"
        for k in (2, 3):
            row = analytics.asymptotic_report(k, 500, [500])[0]
            note.append(f"ratio k={k}: {row.ratio:.6f}")
            assert abs(row.ratio - 1) < 0.05


def _random_series(rng):
    trunc = rng.randint(3, 20)
    offset = rng.randint(0, 3)
    coeffs = [Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(trunc - offset)]
    return QSeries(coeffs, offset=offset, trunc=trunc)


def test_c12_property_suites():
    with criterion(12, "ring axioms (200 cases), Eulerian identity r <= 10, pentagonal structure, triangular basis"):
        rng = random.Random(7)
        for _ in range(200):
            a, b, c = (_random_series(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c) and a + b == b + a
            assert (a * b) * c == a * (b * c) and a * b == b * a
            assert (a * (b + c)).agrees_with(a * b + a * c)
            if not a.is_zero():
                u = QSeries([a.leading()], trunc=a.trunc) + a.shift(1).truncate(a.trunc)
                assert (u * u.inverse()).agrees_with(QSeries.one(u.trunc))
        for r in range(11):
            n = 40
            lhs = QSeries([0] + [l ** r for l in range(1, n)], trunc=n)
            rhs = QSeries([0] + list(eulerian_poly(r).coeffs), trunc=n) * QSeries([1, -1], trunc=n) ** -(r + 1)
            assert lhs == rhs, f"r={r}"
        trunc = 2000
        pent = dict(pentagonal_terms(trunc))
        e = euler_product(1, trunc)
        assert all(e.coeff(n) == pent.get(n, 0) for n in range(trunc))
        for k in range(1, 7):
            basis = build_basis(k, 60)
            assert basis.leading_exponents() == list(range(2 * k + 2))
            assert all(el.leading() == 1 for el in basis.elements)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
