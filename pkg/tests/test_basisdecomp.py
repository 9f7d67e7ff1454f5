from fractions import Fraction

import pytest

from betaq.basisdecomp import (NotInSpace, basis_quotient, build_basis, condition_values, cusp_conditions,
                               decompose, t_cusp_series)
from betaq.eisenstein import h_k_series
from betaq.etaq import eta_expand, f_quotient, ghn_check
from betaq.qseries import QSeries


class TestBasis:
    def test_k1_leading_exponents(self):
        assert build_basis(1, 40).leading_exponents() == [0, 1, 2, 3]

    def test_k2_size(self):
        b = build_basis(2, 40)
        assert len(b.elements) == 6 and b.leading_exponents() == list(range(6))

    @pytest.mark.parametrize("k", range(1, 7))
    def test_triangular(self, k):
        b = build_basis(k, 60)
        assert b.leading_exponents() == list(range(2 * k + 2))
        assert all(e.leading() == 1 and e.is_integral() for e in b.elements)

    def test_first_element_is_theta_power(self):
        b = build_basis(2, 40)
        assert b.elements[0].coeff(0) == 1
        assert b.provenance[0].exps == {2: -20, 4: 50, 8: -20}

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_elements_have_correct_weight(self, k):
        for ell in range(2 * k + 2):
            rep = ghn_check(basis_quotient(k, ell))
            assert rep.weight == 2 * k + 1
            assert rep.character_discriminant == -4

    def test_beta_element_is_f_k(self):
        for k in (1, 2, 3):
            assert basis_quotient(k, k + 1) == f_quotient(k)

    def test_index_range(self):
        with pytest.raises(ValueError):
            basis_quotient(2, 6)

    def test_truncation_too_small(self):
        with pytest.raises(ValueError):
            build_basis(3, 7)


class TestDecompose:
    def test_unit_vectors(self):
        b = build_basis(2, 60)
        for ell, e in enumerate(b.elements):
            d = decompose(e, b)
            assert d.coefficients == tuple(Fraction(int(i == ell)) for i in range(6))

    def test_zero(self):
        d = decompose(QSeries.zero(60), build_basis(2, 60))
        assert all(c == 0 for c in d.coefficients)
        assert cusp_conditions(d).all

    def test_f1_reconstruction(self):
        b = build_basis(1, 100)
        f1 = eta_expand(f_quotient(1), 100)
        d = decompose(f1, b)
        assert d.alpha == (0,)
        assert b.combine(d.coefficients) == f1.truncate(b.trunc)

    def test_not_in_space(self):
        b = build_basis(1, 40)
        with pytest.raises(NotInSpace) as err:
            decompose(QSeries.monomial(5, trunc=40), b)
        assert err.value.exponent == 5

    def test_non_strict_reports_residual(self):
        d = decompose(QSeries.monomial(5, trunc=40), build_basis(1, 40), strict=False)
        assert not d.residual_zero

    def test_rejects_negative_offset(self):
        with pytest.raises(ValueError):
            decompose(QSeries.monomial(-1, trunc=40), build_basis(1, 40))

    def test_decomposition_dict(self):
        d = decompose(t_cusp_series(2, 100), build_basis(2, 100)).to_dict()
        assert d["alpha"] == ["0", "-1/80"]
        assert d["beta"] == ["0", "1/5", "0"]
        assert d["gamma"] == "0"


class TestCuspConditions:
    @pytest.mark.parametrize("k", range(2, 7))
    def test_cusp_component(self, k):
        d = decompose(t_cusp_series(k, 300), build_basis(k, 300))
        assert d.residual_zero
        assert cusp_conditions(d).all
        assert condition_values(d) == (0, 0)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_f_k_is_not_cuspidal(self, k):
        d = decompose(eta_expand(f_quotient(k), 100), build_basis(k, 100))
        assert not cusp_conditions(d).all

    @pytest.mark.parametrize("k", [2, 3])
    def test_h_k_is_not_cuspidal(self, k):
        d = decompose(h_k_series(k, 100), build_basis(k, 100))
        assert not cusp_conditions(d).all

    def test_each_condition_can_fail(self):
        b = build_basis(2, 60)
        d = decompose(b.elements[0], b)
        assert not cusp_conditions(d).c1
        d = decompose(b.elements[2], b)
        rep = cusp_conditions(d)
        assert rep.c1 and not rep.c2 and not rep.c3


class TestCuspSeries:
    def test_k1_vanishes(self):
        assert t_cusp_series(1, 400).is_zero()

    @pytest.mark.parametrize("k", range(1, 7))
    def test_vanishes_at_infinity(self, k):
        assert t_cusp_series(k, 200).offset >= 1

    def test_k2_nonzero(self):
        t = t_cusp_series(2, 50)
        assert not t.is_zero() and t.coeff(1) == Fraction(-1, 80)
