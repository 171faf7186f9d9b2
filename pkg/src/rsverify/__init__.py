"""Exact and numeric verification of the unramified Rankin-Selberg integral
for SL2 x GL2 against L(pi x tau, s + 1/2) / L(tau, Sym^2, 2s + 1)."""

from .algebra import LaurentPoly, PolyInX, RationalFunctionInX, TruncatedSeries, rf_expand, series_eq
from .padic import PAdicContext, PAdicElement, hilbert_symbol, psi_eval
from .report import VerificationReport
from .weil import SchwartzGridFn, gamma_psi, unit_integral, weil_action
from .whittaker import integral_series, l_ratio, verify_main_identity

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "PolyInX", "RationalFunctionInX", "TruncatedSeries", "rf_expand", "series_eq",
    "PAdicContext", "PAdicElement", "hilbert_symbol", "psi_eval", "VerificationReport",
    "SchwartzGridFn", "gamma_psi", "unit_integral", "weil_action",
    "integral_series", "l_ratio", "verify_main_identity",
]
