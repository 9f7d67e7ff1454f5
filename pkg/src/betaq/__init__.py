"""Exact q-series, eta quotients and Eisenstein series for q-analogues of odd Dirichlet beta values."""

from .qseries import (QSeries, QSeriesError, UnknownCoefficient, ZeroLeadingCoefficient, euler_product,
                      pentagonal_terms, series_add, series_inv, series_mul, series_pow, series_rescale)
from .etaq import EtaQuotient, eta_expand, eta_product, f_quotient, ghn_check
from .eisenstein import CHI_2, CHI_M4, TRIVIAL, CharacterTable, EisensteinSpec, eisenstein_series, h_k_series, sigma_chi
from .lambert import eulerian_poly, lambert_expand, p_k_poly, verify_classical, verify_theorem2
from .basisdecomp import build_basis, cusp_conditions, decompose, t_cusp_series
from .analytics import beta_odd, euler_number, limit_check, t_count

__version__ = "0.1.0"

__all__ = [
    "QSeries", "QSeriesError", "UnknownCoefficient", "ZeroLeadingCoefficient", "euler_product",
    "pentagonal_terms", "series_add", "series_inv", "series_mul", "series_pow", "series_rescale",
    "EtaQuotient", "eta_expand", "eta_product", "f_quotient", "ghn_check",
    "CHI_2", "CHI_M4", "TRIVIAL", "CharacterTable", "EisensteinSpec", "eisenstein_series", "h_k_series",
    "sigma_chi", "eulerian_poly", "lambert_expand", "p_k_poly", "verify_classical", "verify_theorem2",
    "build_basis", "cusp_conditions", "decompose", "t_cusp_series",
    "beta_odd", "euler_number", "limit_check", "t_count",
]
