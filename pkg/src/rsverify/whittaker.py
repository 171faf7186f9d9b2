"""Unramified Whittaker values, the series form of the local integral, the
two L-factors, and the closed-form summations.

Symbols: ``A`` is chi(varpi) for the SL2 datum, ``a1, a2`` are
chi1(varpi), chi2(varpi) for the GL2 datum and ``X = q^-(s+1/2)``.  The
absolute-value prefactors |a| and |a|^(1/2) are already folded into X^k, so
every value here is a Laurent polynomial in (A, a1, a2).
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    A, A_INV, ONE, ZERO, LaurentPoly, PolyInX, RationalFunctionInX,
    TruncatedSeries, a1, a2, geom_expand, product, rf_expand, series_eq,
)
from .report import VerificationReport, make_report

DEFAULT_ORDER = 40

A_SUM = A + ONE + A_INV          # (A^2 + A + 1) / A
E1 = a1 + a2
E2 = a1 * a2


@dataclass(frozen=True)
class UnramifiedDatum:
    """A numeric specialization of (A, a1, a2); all three must be nonzero."""

    A: Fraction
    a1: Fraction
    a2: Fraction

    def __post_init__(self):
        for name in ("A", "a1", "a2"):
            v = Fraction(getattr(self, name))
            if v == 0:
                raise ValueError(f"{name} stands for a character value and must be nonzero")
            object.__setattr__(self, name, v)

    def apply(self, obj):
        """Specialize a LaurentPoly / PolyInX / series / rational function."""
        return obj.specialize(self.A, self.a1, self.a2)


def _nonneg(k: int, what: str):
    if k < 0:
        raise ValueError(f"{what} is supported on ord(a) >= 0; got k={k}")


@lru_cache(maxsize=None)
def hcp(k: int) -> LaurentPoly:
    """Complete homogeneous symmetric polynomial of degree k in a1, a2."""
    _nonneg(k, "hcp")
    return LaurentPoly({(0, i, k - i): 1 for i in range(k + 1)})


def gl2_whittaker_value(k: int) -> LaurentPoly:
    """GL2 spherical Whittaker value at diag(varpi^k, 1), |a|^(1/2) removed."""
    _nonneg(k, "the GL2 Whittaker value")
    return hcp(k)


@lru_cache(maxsize=None)
def sl2_whittaker_value(k: int) -> LaurentPoly:
    """SL2 spherical Whittaker value at diag(varpi^k, varpi^-k), |a| removed:
    sum of A^j for -k <= j <= k."""
    _nonneg(k, "the SL2 Whittaker value")
    return LaurentPoly({(j, 0, 0): 1 for j in range(-k, k + 1)})


def lattice_part_coeff(k: int) -> LaurentPoly:
    return gl2_whittaker_value(k)


def complement_part_coeff(k: int) -> LaurentPoly:
    """Coefficient of the O-complement part at valuation k >= 1.

    The accompanying factor q^-(s+1/2) is one extra power of X, added by the
    caller.  For k = 0 the contribution vanishes; asking for it is an error.
    """
    if k <= 0:
        raise ValueError(f"complement_part_coeff needs k >= 1 (it vanishes at k=0); got k={k}")
    return hcp(k - 1) * E2


def first_summation_terms(order: int) -> TruncatedSeries:
    return TruncatedSeries(order, [sl2_whittaker_value(k) * lattice_part_coeff(k) for k in range(order + 1)])


def second_summation_terms(order: int) -> TruncatedSeries:
    coeffs = [ZERO] * (order + 1)
    for k in range(1, order):
        coeffs[k + 1] = sl2_whittaker_value(k) * complement_part_coeff(k)
    return TruncatedSeries(order, coeffs)


def integral_series(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """The local integral as a series in X, assembled term by term."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return first_summation_terms(order) + second_summation_terms(order)


# -- L-factors ------------------------------------------------------------

def tensor_factors() -> list[PolyInX]:
    return [PolyInX.one_minus(c) for c in
            (A * a1, A * a2, a1, a2, A_INV * a1, A_INV * a2)]


def sym2_factors() -> list[PolyInX]:
    return [PolyInX.one_minus(c, 2) for c in (a1 * a1, a1 * a2, a2 * a2)]


def l_tensor_inverse() -> PolyInX:
    """1 / L(pi x tau, s+1/2) as a degree-6 polynomial in X."""
    return product(tensor_factors())


def l_sym2_inverse() -> PolyInX:
    """1 / L(tau, Sym^2, 2s+1) as an even degree-6 polynomial in X."""
    return product(sym2_factors())


def l_ratio() -> RationalFunctionInX:
    return RationalFunctionInX(l_sym2_inverse(), l_tensor_inverse())


def perturbed_l_ratio() -> RationalFunctionInX:
    """Negative control: (1 - A a1 X) replaced by (1 + A a1 X)."""
    factors = tensor_factors()
    factors[0] = PolyInX([ONE, A * a1])
    return RationalFunctionInX(l_sym2_inverse(), product(factors))


# -- closed forms ---------------------------------------------------------

def closed_form_denominator() -> PolyInX:
    return product(PolyInX.one_minus(c) for c in (A * a1, A * a2, A_INV * a1, A_INV * a2))


def closed_form_first() -> RationalFunctionInX:
    num = PolyInX([ONE, E1, -A_SUM * E2])
    return RationalFunctionInX(num, closed_form_denominator())


def closed_form_second() -> RationalFunctionInX:
    num = PolyInX([ZERO, ZERO, A_SUM * E2, -E2 * E1, -E2 * E2])
    return RationalFunctionInX(num, closed_form_denominator())


def factorization_lhs() -> PolyInX:
    return PolyInX([ONE, E1, ZERO, -E2 * E1, -E2 * E2])


def factorization_rhs() -> PolyInX:
    return PolyInX.one_minus(E2, 2) * PolyInX([ONE, a1]) * PolyInX([ONE, a2])


def verify_factorization(lhs: PolyInX | None = None) -> bool:
    """1 + (a1+a2)X - a1a2(a1+a2)X^3 - a1^2 a2^2 X^4 = (1 - a1a2X^2)(1+a1X)(1+a2X)."""
    lhs = factorization_lhs() if lhs is None else lhs
    return lhs == factorization_rhs()


def _poly_mismatch(left: PolyInX, right: PolyInX) -> int | None:
    for k in range(max(len(left.coeffs), len(right.coeffs))):
        if left.coeff(k) != right.coeff(k):
            return k
    return None


def factorization_report(lhs: PolyInX | None = None, check: str = "factorization") -> VerificationReport:
    t0 = time.perf_counter()
    lhs = factorization_lhs() if lhs is None else lhs
    rhs = factorization_rhs()
    k = _poly_mismatch(lhs, rhs)
    detail = ("(1 - a1 a2 X^2)(1 + a1 X)(1 + a2 X) matches exactly" if k is None else
              f"first mismatch at X^{k}: left={lhs.coeff(k)}; right={rhs.coeff(k)}")
    return make_report(check, {}, k is None, detail, started=t0)


def verify_main_identity(order: int = DEFAULT_ORDER,
                         ratio: RationalFunctionInX | None = None,
                         check: str = "main_identity") -> VerificationReport:
    """Integral series versus the expansion of the L-factor ratio, every order <= N.

    Truncation is a prefix, so comparing at order N decides every smaller
    order too; the report records the first mismatching degree if any.
    """
    t0 = time.perf_counter()
    if order < 0:
        raise ValueError("order must be >= 0")
    ratio = l_ratio() if ratio is None else ratio
    cmp = series_eq(integral_series(order), rf_expand(ratio, order))
    if cmp.equal:
        detail = f"exact agreement for every order 0..{order}"
    else:
        detail = f"agreement fails from order {cmp.degree} on; " + cmp.describe()
    return make_report(check, {"order": order}, cmp.equal, detail, started=t0)


def verify_partial_fractions(order: int = 12) -> VerificationReport:
    """The two partial-fraction evaluations, in A- and (A-1)-cleared form.

    (i)   A(1-a1X/A)(1-a2X/A) - (1-Aa1X)(1-Aa2X) = (A-1)[1 + (a1+a2)X - (A+1+1/A)a1a2X^2]
    (ii)  A^3 a1a2X^2(1-a1X/A)(1-a2X/A) - a1a2X^2(1-Aa1X)(1-Aa2X)
              = A(A-1)[(A+1+1/A)a1a2X^2 - a1a2(a1+a2)X^3 - a1^2a2^2X^4]
    Both are also checked multiplied through by A, where every power of A
    must be nonnegative.  At the series level the splitting of each sum into
    two geometric pieces is checked to ``order``.
    """
    t0 = time.perf_counter()
    am1 = A - ONE
    lo = PolyInX.one_minus(A_INV * a1) * PolyInX.one_minus(A_INV * a2)
    hi = PolyInX.one_minus(A * a1) * PolyInX.one_minus(A * a2)
    failures = []

    lhs1 = A * lo - hi
    expanded = PolyInX([A - ONE, -E1 + A * E1, A_INV * E2 - A * A * E2])
    rhs1 = am1 * closed_form_first().num
    if lhs1 != expanded:
        failures.append("(i) expanded numerator")
    if lhs1 != rhs1:
        failures.append("(i) Laurent form")
    if A * lhs1 != A * rhs1 or not _is_polynomial_in_A(A * rhs1):
        failures.append("(i) A-cleared form")

    lhs2 = PolyInX.monomial(E2 * A ** 3, 2) * lo - PolyInX.monomial(E2, 2) * hi
    rhs2 = A * am1 * closed_form_second().num
    if lhs2 != rhs2 or not _is_polynomial_in_A(rhs2):
        failures.append("(ii) A(A-1)-cleared form")

    # Series level: (A-1) * sum sl2_value(k) p_k X^k = A * sum p_k (AX)^k - sum p_k (X/A)^k.
    gf_hi = _hcp_series(order, A)
    gf_lo = _hcp_series(order, A_INV)
    first = first_summation_terms(order)
    if first * am1 != gf_hi * A - gf_lo:
        failures.append("first summation split")
    shift = PolyInX.monomial(E2, 2).truncate(order)
    second = second_summation_terms(order)
    if second * am1 != (gf_hi * shift) * (A ** 2) - (gf_lo * shift) * A_INV:
        failures.append("second summation split")

    passed = not failures
    detail = "all partial-fraction steps agree exactly" if passed else "failed: " + ", ".join(failures)
    return make_report("partial_fractions", {"order": order}, passed, detail, started=t0)


def _hcp_series(order: int, scale: LaurentPoly) -> TruncatedSeries:
    """sum_k p_k(a1, a2) scale^k X^k, built as a product of two geometric series."""
    return geom_expand(scale * a1, order) * geom_expand(scale * a2, order)


def _is_polynomial_in_A(p: PolyInX) -> bool:
    return all(e[0] >= 0 for c in p.coeffs for e in c.terms)


def verify_closed_forms(order: int = DEFAULT_ORDER) -> VerificationReport:
    t0 = time.perf_counter()
    first = series_eq(rf_expand(closed_form_first(), order), first_summation_terms(order))
    second = series_eq(rf_expand(closed_form_second(), order), second_summation_terms(order))
    total = series_eq(rf_expand(closed_form_first() + closed_form_second(), order),
                      integral_series(order))
    passed = bool(first and second and total)
    if passed:
        detail = f"both closed forms and their sum match term assembly through X^{order}"
    else:
        bad = next(c for c in (first, second, total) if not c)
        detail = bad.describe()
    return make_report("closed_forms", {"order": order}, passed, detail, started=t0)
