import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rsverify.padic import (
    PAdicContext, PAdicElement, PrecisionError, gauss_sum, hilbert_symbol,
    hilbert_symbol_bruteforce, is_odd_prime, legendre, psi_eval, smallest_nonresidue,
    square_class_representatives, verify_hilbert, verify_psi,
)

PRIMES = (3, 5, 7, 11)
rationals = st.fractions(min_value=-500, max_value=500, max_denominator=500).filter(bool)


def test_is_odd_prime():
    assert [p for p in range(20) if is_odd_prime(p)] == [3, 5, 7, 11, 13, 17, 19]
    assert not is_odd_prime(2) and not is_odd_prime(True) and not is_odd_prime(9)


def test_from_rational_valuation_and_unit():
    x = PAdicElement.from_rational(Fraction(18, 5), 3, 6)
    assert x.valuation == 2
    assert (x.unit * 5) % 3 ** 6 == 2
    assert PAdicElement.from_rational(0, 3).is_zero()


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, st.sampled_from(PRIMES))
def test_field_operations_match_rationals(x, y, p):
    X = PAdicElement.from_rational(x, p)
    Y = PAdicElement.from_rational(y, p)
    assert X * Y == PAdicElement.from_rational(x * y, p)
    assert X / Y == PAdicElement.from_rational(x / y, p)
    if x + y:
        assert X + Y == PAdicElement.from_rational(x + y, p)
    else:
        assert (X + Y).is_zero()


def test_cancellation_loses_relative_precision():
    p = 5
    x = PAdicElement.of(p, 0, 1 + 5 ** 3, 6)
    y = PAdicElement.of(p, 0, -1, 6)
    s = x + y
    assert s.valuation == 3 and s.prec == 3 and s.abs_precision == 6


def test_inverse_and_zero_division():
    x = PAdicElement.from_rational(Fraction(7, 9), 3)
    assert x * x.inverse() == PAdicElement.from_rational(1, 3)
    with pytest.raises(ZeroDivisionError):
        PAdicElement.zero(3).inverse()


def test_unit_part_must_be_unit():
    with pytest.raises(ValueError):
        PAdicElement.of(3, 0, 6)


def test_context_validation():
    with pytest.raises(ValueError):
        PAdicContext(4)
    with pytest.raises(ValueError):
        PAdicContext(2)
    assert PAdicContext(7).q == 7


def test_psi_examples():
    ctx = PAdicContext(5)
    assert psi_eval(ctx.element(Fraction(17, 3))) == 1
    assert abs(psi_eval(ctx.element(Fraction(1, 5))) - cmath.exp(2j * math.pi / 5)) < 1e-15
    assert abs(psi_eval(ctx.element(Fraction(-1, 25))) - cmath.exp(2j * math.pi * 24 / 25)) < 1e-15


def test_psi_rejects_missing_digits():
    ctx = PAdicContext(3, precision=4)
    with pytest.raises(PrecisionError):
        psi_eval(ctx.make(-5, 1))
    assert abs(psi_eval(ctx.make(-4, 1)) - cmath.exp(2j * math.pi / 81)) < 1e-15


@pytest.mark.parametrize("p", PRIMES)
def test_psi_character_suite(p):
    assert verify_psi(PAdicContext(p), 100, np.random.default_rng(p)).passed


def test_legendre_and_gauss_sum():
    assert legendre(4, 5) == 1
    assert legendre(2, 5) == -1
    squares = {(t * t) % 11 for t in range(1, 11)}
    assert all((legendre(u, 11) == 1) == (u in squares) for u in range(1, 11))
    assert abs(abs(gauss_sum(7)) - math.sqrt(7)) < 1e-9
    with pytest.raises(ValueError):
        legendre(10, 5)


def test_smallest_nonresidue():
    assert [smallest_nonresidue(p) for p in PRIMES] == [2, 2, 3, 2]


@pytest.mark.parametrize("p", PRIMES)
def test_hilbert_formula_matches_search_on_square_classes(p):
    reps = square_class_representatives(PAdicContext(p))
    for a in reps:
        for b in reps:
            assert hilbert_symbol(a, b) == hilbert_symbol_bruteforce(a, b)


@pytest.mark.parametrize("p", PRIMES)
def test_hilbert_examples(p):
    ctx = PAdicContext(p)
    n = ctx.nonresidue()
    assert hilbert_symbol(ctx.make(0, n), ctx.make(0, n + p)) == 1
    assert hilbert_symbol(ctx.make(1, 1), ctx.make(0, n)) == -1
    assert hilbert_symbol_bruteforce(ctx.make(1, 1), ctx.make(0, n)) == -1
    # (p, p) = (p, -1) = (-1/p)
    assert hilbert_symbol(ctx.make(1, 1), ctx.make(1, 1)) == legendre(-1, p)


def test_hilbert_rejects_zero():
    with pytest.raises(ValueError):
        hilbert_symbol(PAdicElement.zero(3), PAdicContext(3).element(1))


@pytest.mark.parametrize("p", PRIMES)
def test_hilbert_suite(p):
    reports = verify_hilbert(PAdicContext(p), 20, np.random.default_rng(p))
    assert all(r.passed for r in reports), [r.to_text() for r in reports]
