from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from betaq.analytics import euler_number
from betaq.eisenstein import (CHI_2, CHI_M4, TRIVIAL, CharacterTable, EisensteinSpec, ParityViolation,
                              char_value, constant_term, eis2_crosscheck, eisenstein_coefficients,
                              eisenstein_series, h_k_series, mobius, sigma_chi, sigma_chi_series)
from betaq.etaq import eta_expand, f_quotient


def sigma_oracle(n, k):
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            m = n // d
            total += (0 if m % 2 == 0 else (1 if m % 4 == 1 else -1)) * d ** (2 * k)
    return total


class TestCharacters:
    def test_values(self):
        assert char_value(CHI_M4, 5) == 1
        assert char_value(CHI_M4, 7) == -1
        assert char_value(CHI_M4, 6) == 0
        assert char_value(CHI_M4, -1) == -1

    def test_builtins(self):
        assert TRIVIAL.is_principal and CHI_2.is_principal and not CHI_M4.is_principal
        assert CHI_M4.conductor == 4
        assert CHI_2.conductor == 1
        assert TRIVIAL.conductor == 1

    def test_rejects_non_multiplicative(self):
        with pytest.raises(ValueError):
            CharacterTable(5, (0, 1, -1, 1, -1))

    def test_rejects_bad_zero_pattern(self):
        with pytest.raises(ValueError):
            CharacterTable(4, (0, 1, 1, -1))

    def test_mobius(self):
        assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


class TestSigma:
    def test_examples(self):
        assert sigma_chi(1, 1) == 1
        assert sigma_chi(2, 1) == 4
        assert sigma_chi(5, 1) == 26

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_against_oracle(self, k):
        for n in range(1, 120):
            assert sigma_chi(n, k) == sigma_oracle(n, k)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 300), st.integers(1, 300), st.integers(1, 4))
    def test_multiplicative(self, m, n, k):
        if gcd(m, n) == 1:
            assert sigma_chi(m * n, k) == sigma_chi(m, k) * sigma_chi(n, k)

    def test_positive(self):
        for k in (1, 2, 3):
            for n in range(1, 300):
                assert sigma_chi(n, k) > 0

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            sigma_chi(0, 1)


class TestEisensteinSeries:
    def test_weight_three_at_2tau(self):
        e = eisenstein_series(EisensteinSpec(3, CHI_M4, TRIVIAL), 12, scale=2)
        assert [e.coeff(2 * n) for n in range(1, 6)] == [1, 4, 8, 16, 26]

    @pytest.mark.parametrize("k", range(1, 7))
    def test_plain_series_is_divisor_sum(self, k):
        e = eisenstein_series(EisensteinSpec(2 * k + 1, CHI_M4, TRIVIAL), 401, scale=2)
        assert e == sigma_chi_series(k, 401, 2)

    def test_constant_term_vanishes_for_chi_m4(self):
        assert constant_term(EisensteinSpec(5, CHI_M4, TRIVIAL)) == 0
        assert eisenstein_series(EisensteinSpec(5, CHI_M4, CHI_2), 10, scale=2).coeff(0) == 0

    def test_inner_sum_trivial_psi(self):
        a = eisenstein_coefficients(EisensteinSpec(3, CHI_M4, TRIVIAL), 30)
        assert a[1:] == [sigma_chi(n, 1) for n in range(1, 31)]

    def test_parity_violation(self):
        with pytest.raises(ParityViolation):
            eisenstein_series(EisensteinSpec(4, CHI_M4, TRIVIAL), 10)

    def test_scale_must_clear_modulus(self):
        with pytest.raises(ValueError):
            eisenstein_series(EisensteinSpec(3, CHI_M4, CHI_2), 10, scale=1)

    def test_level_one_constant_term(self):
        # E_4 normalized with leading divisor-sum coefficient 1
        e = eisenstein_series(EisensteinSpec(4, TRIVIAL, TRIVIAL), 4)
        assert e.coeff(0) == Fraction(1, 240)
        assert e.dense(1, 4) == [1, 9, 28]


class TestHk:
    def test_h1_leading_terms(self):
        assert h_k_series(1, 8).dense(0, 8) == [0, 0, 1, 0, 4, 0, 8, 0]

    def test_h1_is_f1(self):
        assert h_k_series(1, 400) == eta_expand(f_quotient(1), 400)

    @pytest.mark.parametrize("k", [2, 4, 6])
    def test_even_odd_exponents(self, k):
        h = h_k_series(k, 200)
        e2k = euler_number(2 * k)
        for n in range(100):
            assert h.coeff(2 * n + 1) == Fraction(sigma_chi(2 * n + 1, k), 4 ** k * e2k)

    @pytest.mark.parametrize("k", [2, 4, 6])
    def test_routes_agree(self, k):
        assert h_k_series(k, 200) == h_k_series(k, 200, route="chi2")

    def test_unknown_route(self):
        with pytest.raises(ValueError):
            h_k_series(2, 10, route="nope")

    def test_k2_leading_coefficient(self):
        assert h_k_series(2, 10).coeff(1) == Fraction(1, 80)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_coefficients_positive(self, k):
        assert all(c > 0 for _, c in h_k_series(k, 120).terms())


class TestCrossCheck:
    @pytest.mark.parametrize("k", range(1, 7))
    def test_twisted_series(self, k):
        assert eis2_crosscheck(k, 200)

    def test_trivial_truncation(self):
        assert eis2_crosscheck(1, 3)
