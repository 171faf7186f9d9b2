import numpy as np

from rsverify.algebra import PolyInX
from rsverify.structure import (
    sign_flipped_factorization, verify_cleared_identities, verify_generating_function,
    verify_negative_controls, verify_recursions, verify_ring_laws, verify_specialization,
    verify_symmetries,
)
from rsverify.whittaker import factorization_lhs


def test_structural_suites_pass():
    rng = np.random.default_rng(0)
    reports = [
        verify_ring_laws(50, rng),
        verify_recursions(30),
        verify_cleared_identities(30),
        verify_generating_function(20),
        verify_symmetries(12, 20),
        verify_specialization(12, 2, rng),
    ]
    assert all(r.passed for r in reports), [r.to_text() for r in reports if not r.passed]


def test_sign_flip_touches_only_x3():
    d = sign_flipped_factorization() - factorization_lhs()
    assert [k for k in range(5) if not d.coeff(k).is_zero()] == [3]
    assert isinstance(d, PolyInX)


def test_negative_controls_locate_mismatch():
    reports = verify_negative_controls(8)
    assert [r.check for r in reports] == ["negative_control.perturbed_l_factor",
                                          "negative_control.sign_flipped_factorization"]
    assert all(r.passed for r in reports)
    assert "X^1" in reports[0].detail and "X^3" in reports[1].detail
