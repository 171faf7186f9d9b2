from fractions import Fraction

import numpy as np
import pytest

from rsverify.groups import (
    GAMMA, HeisenbergElement, TorusElement, UnipotentElement, centre_factorization,
    conjugated_centre, expected_conjugate, identity4, inverse_matrix, is_symplectic, matmul,
    nq_matrix, nq_to_heisenberg, verify_heisenberg_group, verify_matrix_identity,
)

F = Fraction


def test_heisenberg_identity_and_law():
    e = HeisenbergElement(F(0), F(0), F(0))
    g = HeisenbergElement(F(1), F(2), F(3))
    h = HeisenbergElement(F(-1, 2), F(5), F(0))
    assert g * e == g and e * g == g
    assert g * h == HeisenbergElement(F(1, 2), F(7), F(3) + F(1) * 5 - F(-1, 2) * 2)
    assert g * g.inverse() == e


def test_right_action_of_generators():
    h = HeisenbergElement(F(2), F(3), F(1))
    assert h.act(TorusElement(F(5))) == HeisenbergElement(F(10), F(3, 5), F(1))
    assert h.act(UnipotentElement(F(4))) == HeisenbergElement(F(2), F(11), F(1))
    # (h . g) . g^-1 = h
    g = UnipotentElement(F(-7, 3))
    assert h.act(g).act(g.inverse()) == h


def test_action_preserves_group_law():
    g = TorusElement(F(3, 4))
    h1 = HeisenbergElement(F(1), F(-2), F(5))
    h2 = HeisenbergElement(F(1, 3), F(4), F(-1))
    assert (h1 * h2).act(g) == h1.act(g) * h2.act(g)


def test_nq_round_trip_and_shape_check():
    u = nq_matrix(F(1), F(2), F(3))
    assert nq_to_heisenberg(u) == HeisenbergElement(F(1), F(2), F(3))
    bad = [row[:] for row in u]
    bad[2][3] = F(9)
    with pytest.raises(ValueError):
        nq_to_heisenberg(bad)


def test_inverse_matrix():
    assert matmul(GAMMA, inverse_matrix(GAMMA)) == identity4()
    with pytest.raises(ZeroDivisionError):
        inverse_matrix([[1, 2], [2, 4]])


def test_gamma_is_symplectic():
    assert is_symplectic(GAMMA)


@pytest.mark.parametrize("z", [F(1), F(-3, 7), F(5), F(-1, 100)])
def test_conjugated_centre(z):
    left, mid, right = centre_factorization(z)
    assert conjugated_centre(z) == expected_conjugate(z)
    assert matmul(matmul(left, mid), right) == expected_conjugate(z)


def test_matrix_identity_report():
    rep = verify_matrix_identity([1, F(-3, 7)])
    assert rep.passed and "z-cleared" in rep.detail
    with pytest.raises(ValueError):
        verify_matrix_identity([0])


def test_heisenberg_group_report():
    assert verify_heisenberg_group(50, np.random.default_rng(0)).passed
