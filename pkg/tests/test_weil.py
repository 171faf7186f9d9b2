import cmath
import math

import numpy as np
import pytest

from rsverify.groups import HeisenbergElement, TorusElement, UnipotentElement
from rsverify.padic import PAdicContext, PAdicElement, hilbert_symbol, legendre, psi_eval
from rsverify.weil import (
    DIRECT, GridError, SchwartzGridFn, StabilizationError, calibrate, default_grid, gamma_psi,
    oscillator_table, unit_integral, unit_character_sum, verify_gamma_properties,
    verify_unit_integrals, verify_weil_relations, weil_action,
)

PRIMES = (3, 5, 7, 11)
TOL = 1e-9


def classical_gamma(p: int, v: int, u: int) -> complex:
    """Closed form for odd p: gamma(p^v u) = (eps_p (u/p))^(v mod 2), eps_p = 1 or i."""
    if v % 2 == 0:
        return 1
    eps = 1 if p % 4 == 1 else 1j
    return eps * legendre(u, p)


def gauss_oracle(p: int, u: int) -> complex:
    return sum(cmath.exp(2j * math.pi * u * t * t / p) for t in range(p))


def grid_context(p):
    reach, fine = default_grid(p)
    return PAdicContext(p, grid_reach=reach, grid_fine=fine)


@pytest.mark.parametrize("p", PRIMES)
def test_gamma_matches_gauss_sum_at_valuation_one(p):
    ctx = PAdicContext(p)
    for u in (1, ctx.nonresidue()):
        assert abs(gamma_psi(ctx.make(1, u)) - gauss_oracle(p, u) / math.sqrt(p)) < TOL


@pytest.mark.parametrize("p", PRIMES)
def test_gamma_matches_closed_form(p):
    ctx = PAdicContext(p)
    rng = np.random.default_rng(p)
    for _ in range(40):
        v = int(rng.integers(-4, 5))
        u = ctx.random_unit(rng)
        assert abs(gamma_psi(ctx.make(v, u)) - classical_gamma(p, v, u)) < TOL


def test_gamma_normalization_and_units():
    ctx = PAdicContext(7)
    assert gamma_psi(ctx.element(1)) == pytest.approx(1)
    assert abs(gamma_psi(ctx.make(0, 3)) - 1) < TOL


def test_gamma_rejects_zero():
    with pytest.raises(ValueError):
        gamma_psi(PAdicElement.zero(3))


def test_stabilization_budget():
    # for v = 6 the value keeps changing until M = 3
    with pytest.raises(StabilizationError):
        oscillator_table(3, 6, max_reach=2)
    assert oscillator_table(3, 6).reach == 4
    # for v < 0 the integral over O is already exact
    assert oscillator_table(3, -5).reach == 1


def test_calibration_records_branch():
    assert calibrate(3).branch == DIRECT and not calibrate(3).ambiguous
    # for p = 1 mod 4 gamma is real, so both conventions coincide
    assert calibrate(5).ambiguous


@pytest.mark.parametrize("p", PRIMES)
def test_gamma_property_suite(p):
    reports = verify_gamma_properties(grid_context(p), 15, np.random.default_rng(p))
    assert all(r.passed for r in reports), [r.to_text() for r in reports]


def oracle_unit_integral(p: int, m: int) -> complex:
    """Direct loop over units mod p^(m+2) using the closed-form gamma."""
    level = m + 2
    mod = p ** level
    total = 0j
    for u in range(1, mod):
        if u % p == 0:
            continue
        w = pow(u, -1, mod)
        total += cmath.exp(2j * math.pi * (u % p ** m) / p ** m) / classical_gamma(p, m, w)
    return total / mod


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)])
def test_unit_integral_against_loop(p, m):
    assert abs(unit_integral(p, m) - oracle_unit_integral(p, m)) < TOL


@pytest.mark.parametrize("p", PRIMES)
def test_unit_integral_value(p):
    assert abs(unit_integral(p, 1) - p ** -0.5) < TOL


@pytest.mark.parametrize("p,m", [(5, 2), (7, 3), (3, 4), (11, 2)])
def test_unit_integral_vanishes(p, m):
    assert abs(unit_integral(p, m)) < TOL


def test_unit_integral_errors():
    with pytest.raises(ValueError):
        unit_integral(3, 0)
    with pytest.raises(ValueError):
        unit_integral(9, 1)
    with pytest.raises(ValueError):
        unit_integral(3, 2, level=1)


def test_character_orthogonality():
    assert abs(unit_character_sum(5, 1) + 1) < TOL          # m = 1: sum of nontrivial characters
    for m in range(2, 5):
        assert abs(unit_character_sum(5, m)) < TOL


@pytest.mark.parametrize("p", (3, 7))
def test_unit_integral_suite(p):
    reports = verify_unit_integrals(p, 4)
    assert all(r.passed for r in reports), [r.to_text() for r in reports]


# -- Weil representation --------------------------------------------------------

def test_grid_function_basics():
    phi = SchwartzGridFn.indicator_O(3, 2, 3)
    assert phi.size == 3 ** 5
    assert phi.norm() == pytest.approx(1.0)         # vol(O) = 1
    assert phi.support_valuation() == 0
    with pytest.raises(ValueError):
        SchwartzGridFn(3, 2, 3, np.zeros(10))


def test_centre_acts_by_character():
    ctx = grid_context(5)
    phi = SchwartzGridFn.random(5, ctx.grid_reach, ctx.grid_fine, np.random.default_rng(0))
    z = ctx.make(-2, 7)
    zero = PAdicElement.zero(5)
    out = weil_action(HeisenbergElement(zero, zero, z), phi)
    assert np.allclose(out.values, psi_eval(z) * phi.values, atol=1e-12)


def test_integral_unipotent_fixes_indicator():
    ctx = grid_context(3)
    phi = SchwartzGridFn.indicator_O(3, ctx.grid_reach, ctx.grid_fine)
    for b in (ctx.make(0, 2), ctx.make(3, 5), PAdicElement.zero(3)):
        assert np.allclose(weil_action(UnipotentElement(b), phi).values, phi.values)


def test_torus_by_square_is_pure_dilation():
    ctx = grid_context(3)
    rng = np.random.default_rng(1)
    phi = SchwartzGridFn.random(3, ctx.grid_reach, ctx.grid_fine, rng)
    b = ctx.make(-1, 2)
    out = weil_action(TorusElement(b * b), phi)
    # phi(xi b^2) = phi(xi / 9 * 4); on the grid xi = 3^-M t, so index t -> t * u / 9
    t = np.arange(phi.size)
    P = phi.size
    u = 4
    expected = np.where(t % 9 == 0, phi.values[((t // 9) * u) % P], 0) * 3.0
    assert np.allclose(out.values, expected)


def test_torus_inverse_option_undoes_action():
    ctx = grid_context(5)
    phi = SchwartzGridFn.random(5, ctx.grid_reach, ctx.grid_fine, np.random.default_rng(2))
    a = ctx.make(1, 3)
    back = weil_action(TorusElement(a), weil_action(TorusElement(a), phi), inverse=True)
    assert (back - phi).norm() < TOL


def test_eps_is_a_global_sign():
    ctx = grid_context(3)
    phi = SchwartzGridFn.random(3, ctx.grid_reach, ctx.grid_fine, np.random.default_rng(3))
    g = UnipotentElement(ctx.make(-1, 1))
    assert (weil_action(g, phi, eps=-1) + weil_action(g, phi)).norm() < TOL
    with pytest.raises(ValueError):
        weil_action(g, phi, eps=2)


def test_grid_overflow_is_reported():
    ctx = grid_context(3)
    phi = SchwartzGridFn.indicator_O(3, ctx.grid_reach, ctx.grid_fine)
    zero = PAdicElement.zero(3)
    with pytest.raises(GridError):
        weil_action(HeisenbergElement(ctx.make(-ctx.grid_reach - 1, 1), zero, zero), phi)
    wide = SchwartzGridFn(3, ctx.grid_reach, ctx.grid_fine, np.ones(phi.size))
    with pytest.raises(GridError):
        weil_action(TorusElement(ctx.make(1, 1)), wide)
    with pytest.raises(GridError):
        weil_action(UnipotentElement(ctx.make(-2 * ctx.grid_fine - 1, 1)), wide)


def test_torus_rejects_zero():
    phi = SchwartzGridFn.indicator_O(3, 2, 3)
    with pytest.raises(ValueError):
        weil_action(TorusElement(PAdicElement.zero(3)), phi)


def test_torus_sign_for_p_and_nonresidue():
    ctx = grid_context(7)
    phi = SchwartzGridFn.random(7, ctx.grid_reach, ctx.grid_fine, np.random.default_rng(4))
    a, b = ctx.make(1, 1), ctx.make(0, ctx.nonresidue())
    lhs = weil_action(TorusElement(a), weil_action(TorusElement(b), phi))
    rhs = weil_action(TorusElement(a * b), phi)
    assert hilbert_symbol(a, b) == -1
    assert (lhs + rhs).norm() < TOL


def test_weil_relation_suite_small():
    reports = verify_weil_relations(grid_context(3), 5, np.random.default_rng(0))
    assert all(r.passed for r in reports), [r.to_text() for r in reports]
