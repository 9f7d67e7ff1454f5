from fractions import Fraction
from math import comb, factorial

import pytest

from betaq.eisenstein import h_k_series, sigma_chi
from betaq.etaq import eta_expand, f_quotient
from betaq.lambert import (K3_NUMERATOR, IntPolynomial, classical_sides, eulerian_poly, lambert_expand,
                           lambert_matches_eisenstein, p_k_poly, rational_lambert_sum, verify_classical,
                           verify_theorem2)
from betaq.qseries import QSeries


def eulerian_oracle(r):
    """Eulerian numbers by the descent recurrence A(n, m) = (m+1) A(n-1, m) + (n-m) A(n-1, m-1)."""
    if r == 0:
        return [1]
    row = [1]
    for n in range(2, r + 1):
        row = [(m + 1) * (row[m] if m < len(row) else 0) + (n - m) * (row[m - 1] if m >= 1 else 0)
               for m in range(n)]
    return row


def naive_lambert(numer, denom_step, power, trunc, step):
    total = QSeries.zero(trunc)
    for n in range(1, trunc):
        chi = 0 if n % 2 == 0 else (1 if n % 4 == 1 else -1)
        if not chi or step * n >= trunc:
            continue
        x = QSeries.monomial(step * n, trunc=trunc)
        num = QSeries.zero(trunc)
        for i, c in enumerate(numer.coeffs):
            if c and step * n * (i + 1) < trunc:
                num = num + QSeries.monomial(step * n * (i + 1), c, trunc)
        den = QSeries.one(trunc) - QSeries.monomial(step * n * denom_step, trunc=trunc)
        total = total + (num * den ** -power).scale(chi)
    return total


class TestIntPolynomial:
    def test_arithmetic(self):
        a = IntPolynomial.of([1, 1])
        assert (a * a).coeffs == (1, 2, 1)
        assert (a - a).coeffs == ()
        assert a(3) == 4

    def test_substitute_power(self):
        assert IntPolynomial.of([1, 2, 3]).substitute_power(2).coeffs == (1, 0, 2, 0, 3)

    def test_trailing_zeros_dropped(self):
        assert IntPolynomial.of([1, 0, 0]).degree == 0


class TestEulerian:
    def test_base_cases(self):
        assert eulerian_poly(0).coeffs == (1,)
        assert eulerian_poly(1).coeffs == (1,)

    def test_r4(self):
        assert eulerian_poly(4).coeffs == (1, 11, 11, 1)

    def test_r6(self):
        assert eulerian_poly(6) == K3_NUMERATOR

    @pytest.mark.parametrize("r", range(0, 13))
    def test_against_descent_recurrence(self, r):
        assert list(eulerian_poly(r).coeffs) == eulerian_oracle(r)

    @pytest.mark.parametrize("r", range(0, 11))
    def test_generating_function(self, r):
        terms = 40
        lhs = QSeries([0] + [l ** r for l in range(1, terms)], trunc=terms)
        num = QSeries([0] + list(eulerian_poly(r).coeffs), trunc=terms)
        assert num * QSeries([1, -1], trunc=terms) ** -(r + 1) == lhs

    @pytest.mark.parametrize("k", range(1, 7))
    def test_value_at_one(self, k):
        assert eulerian_poly(2 * k)(1) == factorial(2 * k)
        assert eulerian_poly(2 * k).is_palindromic()


class TestPk:
    @pytest.mark.parametrize("k", range(1, 7))
    def test_value_and_degree(self, k):
        p = p_k_poly(k)
        assert p(1) == 4 ** k * factorial(2 * k)
        assert p.degree == 4 * k

    def test_p1(self):
        assert p_k_poly(1).coeffs == (1, 0, 6, 0, 1)
        assert p_k_poly(1)(0) == 1

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            p_k_poly(0)


class TestLambertSums:
    @pytest.mark.parametrize("numer,denom_step,power,step", [
        ([1, 1], 1, 3, 2), ([1, 11, 11, 1], 1, 5, 2), ([1, 0, 6, 0, 1], 2, 5, 1), ([1], 1, 1, 1)])
    def test_against_naive_sum(self, numer, denom_step, power, step):
        poly = IntPolynomial.of(numer)
        fast = rational_lambert_sum(poly, denom_step, power, 80, step=step)
        assert fast == naive_lambert(poly, denom_step, power, 80, step)

    def test_k1_is_h1(self):
        assert lambert_expand(1, 300) == h_k_series(1, 300)
        assert lambert_expand(1, 400) == eta_expand(f_quotient(1), 400)

    def test_k2_leading_coefficient(self):
        s = lambert_expand(2, 20)
        assert s.coeff(0) == 0
        assert s.coeff(1) == Fraction(sigma_chi(1, 2), 80) == Fraction(1, 80)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_matches_eisenstein(self, k):
        assert lambert_matches_eisenstein(k, 200)

    @pytest.mark.parametrize("k", range(1, 5))
    def test_no_constant_term(self, k):
        assert lambert_expand(k, 10).coeff(0) == 0


class TestClassicalIdentities:
    def test_ramanujan(self):
        assert verify_classical("ramanujan", 500)

    def test_hou_sun(self):
        assert verify_classical("hou-sun", 500)

    def test_weight_seven(self):
        assert verify_classical("k3", 300)

    def test_ramanujan_low_terms(self):
        lhs, _ = classical_sides("ramanujan", 12)
        # 1 - q + 2q^2 ... from sum_{n} (-1)^n q^n / (1 - q^{2n+1})
        expected = [0] * 12
        for n in range(12):
            e = n
            while e < 12:
                expected[e] += (-1) ** n
                e += 2 * n + 1
        assert lhs.dense(0, 12) == expected

    def test_hou_sun_lhs_against_naive(self):
        lhs, _ = classical_sides("hou_sun", 60)
        naive = QSeries.zero(60)
        for n in range(30):
            m = 2 * n + 1
            term = QSeries.monomial(2 * n, (-1) ** n, 60) * (QSeries.one(60) + QSeries.monomial(m, trunc=60))
            naive = naive + term * (QSeries.one(60) - QSeries.monomial(m, trunc=60)) ** -3
        assert lhs == naive

    def test_binomial_coefficients_in_geometric(self):
        assert [comb(j + 2, 2) for j in range(4)] == [1, 3, 6, 10]

    def test_unknown_identity(self):
        with pytest.raises(ValueError):
            classical_sides("nope", 10)

    def test_mismatch_is_detected(self):
        lhs, rhs = classical_sides("ramanujan", 50)
        assert lhs.first_mismatch(rhs + QSeries.monomial(17, trunc=50)) == 17


class TestTheoremTwo:
    def test_k1_identical(self):
        rep = verify_theorem2(1, 400)
        assert rep.difference_zero and rep.passed

    @pytest.mark.parametrize("k", [2, 3])
    def test_cusp_difference(self, k):
        rep = verify_theorem2(k, 300)
        assert not rep.difference_zero
        assert rep.residual_zero and all(rep.conditions.values())
        assert rep.passed

    def test_report_dict(self):
        d = verify_theorem2(2, 100).to_dict()
        assert d["passed"] is True and d["first_nonzero"] == 1
