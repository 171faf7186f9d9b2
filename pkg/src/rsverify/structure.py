"""Structural checks on the exact algebra: ring laws, recursions, cleared
division identities, the generating function, symmetries, specialization,
and negative controls that must fail at a predicted place.
"""
from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from .algebra import (
    A, A_INV, ONE, ZERO, LaurentPoly, PolyInX, RationalFunctionInX, TruncatedSeries, a1, a2,
    rf_expand, series_eq,
)
from .report import VerificationReport, make_report
from .whittaker import (
    DEFAULT_ORDER, E1, E2, closed_form_denominator, closed_form_first, closed_form_second,
    gl2_whittaker_value, sl2_whittaker_value, factorization_lhs, factorization_report, hcp, integral_series,
    complement_part_coeff, l_ratio, l_sym2_inverse, l_tensor_inverse, perturbed_l_ratio, verify_main_identity,
)

STRUCTURE_DEPTH = 100


def random_laurent(rng: np.random.Generator, max_terms: int = 4, exp_range: int = 5,
                   coeff_bound: int = 9) -> LaurentPoly:
    """Random Laurent polynomial: exponents in [-exp_range, exp_range], small rational coefficients."""
    terms = {}
    for _ in range(int(rng.integers(0, max_terms + 1))):
        e = tuple(int(x) for x in rng.integers(-exp_range, exp_range + 1, size=3))
        c = Fraction(int(rng.integers(-coeff_bound, coeff_bound + 1)), int(rng.integers(1, coeff_bound + 1)))
        terms[e] = terms.get(e, 0) + c
    return LaurentPoly(terms)


def random_nonzero_fraction(rng: np.random.Generator, bound: int = 9) -> Fraction:
    while True:
        num = int(rng.integers(-bound, bound + 1))
        if num:
            return Fraction(num, int(rng.integers(1, bound + 1)))


def verify_ring_laws(trials: int, rng: np.random.Generator) -> VerificationReport:
    t0 = time.perf_counter()
    failures = []
    for _ in range(trials):
        x, y, z = (random_laurent(rng) for _ in range(3))
        checks = {
            "additive associativity": (x + y) + z == x + (y + z),
            "additive commutativity": x + y == y + x,
            "multiplicative associativity": (x * y) * z == x * (y * z),
            "multiplicative commutativity": x * y == y * x,
            "distributivity": x * (y + z) == x * y + x * z,
            "identities": x + ZERO == x and x * ONE == x and (x - x).is_zero(),
        }
        failures += [name for name, ok in checks.items() if not ok]
    passed = not failures
    detail = (f"associativity, commutativity, distributivity and identities on {trials} random triples"
              if passed else f"{len(failures)} failures, first: {failures[0]}")
    return make_report("algebra.ring_laws", {"trials": trials}, passed, detail, started=t0)


def verify_recursions(depth: int = STRUCTURE_DEPTH) -> VerificationReport:
    """hcp three-term recursion, the cs step identity and the A^k + A^-k recursion, k <= depth-1."""
    t0 = time.perf_counter()
    bad = []
    e_prev, e_cur = ONE + ONE, A + A_INV              # e_0, e_1
    for k in range(1, depth):
        if hcp(k + 1) != E1 * hcp(k) - E2 * hcp(k - 1):
            bad.append(f"hcp recursion k={k}")
        ek = A ** k + A ** -k
        if sl2_whittaker_value(k) - sl2_whittaker_value(k - 1) != ek:
            bad.append(f"cs step k={k}")
        if ek != e_cur:
            bad.append(f"e_k recursion k={k}")
        e_prev, e_cur = e_cur, (A + A_INV) * e_cur - e_prev
    passed = not bad
    detail = (f"hcp(k+1) = e1 hcp(k) - e2 hcp(k-1), sl2_value(k) - sl2_value(k-1) = A^k + A^-k "
              f"and e_(k+1) = (A + 1/A) e_k - e_(k-1) for 1 <= k <= {depth - 1}"
              if passed else "; ".join(bad[:5]))
    return make_report("structure.recursions", {"kmax": depth - 1}, passed, detail, started=t0)


def verify_cleared_identities(depth: int = STRUCTURE_DEPTH) -> VerificationReport:
    """(a1 - a2) hcp(k) = a1^(k+1) - a2^(k+1) and (A - 1) sl2_value(k) = A^(k+1) - A^-k, 0 <= k <= depth."""
    t0 = time.perf_counter()
    bad = []
    for k in range(depth + 1):
        if (a1 - a2) * gl2_whittaker_value(k) != a1 ** (k + 1) - a2 ** (k + 1):
            bad.append(f"GL2 k={k}")
        if (A - ONE) * sl2_whittaker_value(k) != A ** (k + 1) - A ** -k:
            bad.append(f"SL2 k={k}")
    passed = not bad
    detail = (f"both cross-multiplied Whittaker-value identities hold for 0 <= k <= {depth}"
              if passed else "; ".join(bad[:5]))
    return make_report("structure.cleared_identities", {"kmax": depth}, passed, detail, started=t0)


def verify_generating_function(order: int = DEFAULT_ORDER) -> VerificationReport:
    t0 = time.perf_counter()
    den = PolyInX.one_minus(a1) * PolyInX.one_minus(a2)
    lhs = rf_expand(RationalFunctionInX(PolyInX([ONE]), den), order)
    cmp = series_eq(TruncatedSeries(order, [hcp(k) for k in range(order + 1)]), lhs)
    detail = (f"sum hcp(k) X^k = 1/((1-a1X)(1-a2X)) through X^{order}" if cmp else cmp.describe())
    return make_report("structure.generating_function", {"order": order}, cmp.equal, detail, started=t0)


def verify_symmetries(order: int = DEFAULT_ORDER, depth: int = STRUCTURE_DEPTH) -> VerificationReport:
    t0 = time.perf_counter()
    bad = []
    for k in range(depth + 1):
        for name, v in (("hcp", hcp(k)), ("sl2_value", sl2_whittaker_value(k))):
            if v.swap_a() != v:
                bad.append(f"{name}({k}) not a1<->a2 symmetric")
        if sl2_whittaker_value(k).invert_A() != sl2_whittaker_value(k):
            bad.append(f"sl2_value({k}) not A<->1/A symmetric")
        if k >= 1 and complement_part_coeff(k).swap_a() != complement_part_coeff(k):
            bad.append(f"complement_part({k}) not a1<->a2 symmetric")
    series = integral_series(order)
    if any(c.swap_a() != c for c in series.coeffs):
        bad.append("integral series not a1<->a2 symmetric")
    if any(c.invert_A() != c for c in series.coeffs):
        bad.append("integral series not A<->1/A symmetric")
    polys = {
        "L(pi x tau)^-1": l_tensor_inverse(),
        "L(Sym2)^-1": l_sym2_inverse(),
        "closed-form denominator": closed_form_denominator(),
        "first closed-form numerator": closed_form_first().num,
        "second closed-form numerator": closed_form_second().num,
    }
    for name, poly in polys.items():
        if poly.swap_a() != poly:
            bad.append(f"{name} not a1<->a2 symmetric")
    for name in ("L(pi x tau)^-1", "closed-form denominator"):
        if polys[name].invert_A() != polys[name]:
            bad.append(f"{name} not A<->1/A symmetric")
    passed = not bad
    detail = ("a1<->a2 invariance of every emitted value; A<->1/A invariance of sl2_value, "
              "the integral series, L(pi x tau)^-1 and the closed-form denominator"
              if passed else "; ".join(bad[:5]))
    return make_report("structure.symmetries", {"order": order, "kmax": depth}, passed, detail, started=t0)


def _scalar_coefficient(k: int, A_: Fraction, x: Fraction, y: Fraction) -> Fraction:
    """X^k coefficient of the specialized integral, from scalar closed-form sums."""
    def h(n):
        return sum((x ** i * y ** (n - i) for i in range(n + 1)), Fraction(0)) if n >= 0 else Fraction(0)

    def cs(n):
        return sum((A_ ** j for j in range(-n, n + 1)), Fraction(0))
    out = cs(k) * h(k)
    if k >= 2:
        out += cs(k - 1) * h(k - 2) * x * y
    return out


def verify_specialization(order: int, trials: int, rng: np.random.Generator) -> VerificationReport:
    """Specializing the symbolic series equals the scalar sum of specialized terms,
    and the specialized L-ratio expands to the same numbers."""
    t0 = time.perf_counter()
    series = integral_series(order)
    bad = []
    for _ in range(trials):
        vals = tuple(random_nonzero_fraction(rng) for _ in range(3))
        spec = series.specialize(*vals)
        expect = [_scalar_coefficient(k, *vals) for k in range(order + 1)]
        if [c.coeff(0, 0, 0) for c in spec.coeffs] != expect or any(len(c) > 1 for c in spec.coeffs):
            bad.append(f"series at {vals}")
        if not series_eq(rf_expand(l_ratio().specialize(*vals), order), spec):
            bad.append(f"L-ratio at {vals}")
    passed = not bad
    detail = (f"specialization commutes with assembly and expansion on {trials} random nonzero triples"
              if passed else "; ".join(bad[:3]))
    return make_report("structure.specialization", {"order": order, "trials": trials},
                       passed, detail, started=t0)


def sign_flipped_factorization() -> PolyInX:
    """The left-hand quartic with the sign of its X^3 term flipped."""
    lhs = factorization_lhs()
    coeffs = list(lhs.coeffs)
    coeffs[3] = -coeffs[3]
    return PolyInX(coeffs)


def verify_negative_controls(order: int = DEFAULT_ORDER) -> list[VerificationReport]:
    """Each control must FAIL, and its first mismatch must be where predicted:
    1/(1 + cX) and 1/(1 - cX) first differ at X^1 by -2c with c = A a1, and
    the sign flip first shows at X^3 with difference 2 a1 a2 (a1 + a2)."""
    out = []
    t0 = time.perf_counter()
    inner = verify_main_identity(order, ratio=perturbed_l_ratio(), check="main_identity[perturbed]")
    cmp = series_eq(integral_series(order), rf_expand(perturbed_l_ratio(), order))
    located = (not cmp.equal and cmp.degree == 1 and cmp.right - cmp.left == -2 * (A * a1))
    ok = inner.status == "fail" and located
    detail = (f"perturbed L-factor fails as expected: {inner.detail}" if ok else
              f"control misbehaved (status={inner.status}): {inner.detail}")
    out.append(make_report("negative_control.perturbed_l_factor", {"order": order, "expected_degree": 1},
                           ok, detail, started=t0))

    t0 = time.perf_counter()
    flipped = sign_flipped_factorization()
    inner = factorization_report(flipped, check="factorization[sign_flipped]")
    diff = flipped - factorization_lhs()
    located = (inner.status == "fail" and "X^3" in inner.detail
               and all(diff.coeff(k).is_zero() for k in range(3)) and diff.coeff(3) == 2 * E2 * E1)
    detail = (f"sign-flipped factorization fails as expected: {inner.detail}" if located else
              f"control misbehaved (status={inner.status}): {inner.detail}")
    out.append(make_report("negative_control.sign_flipped_factorization", {"expected_degree": 3},
                           located, detail, started=t0))
    return out
