"""The numba kernels and their numpy twins must agree."""
import numpy as np
import pytest

from rsverify import _accel, _kernels
from rsverify.padic import PAdicContext, hilbert_symbol_bruteforce, square_class_representatives

BACKENDS = ["numpy"] + (["numba"] if _accel.NUMBA_AVAILABLE else [])


@pytest.mark.parametrize("P", [1, 2, 9, 25, 3 ** 7, 11 ** 3])
def test_square_counts_parity(P):
    ref = np.zeros(P, dtype=np.int64)
    for t in range(P):
        ref[(t * t) % P] += 1
    for b in BACKENDS:
        assert np.array_equal(_kernels.square_counts(P, backend=b), ref)


@pytest.mark.parametrize("p,L,m,R", [(3, 4, 2, 1), (5, 3, 1, 2), (7, 3, 3, 0), (3, 6, 3, 3)])
def test_unit_phase_sum_parity(p, L, m, R):
    rng = np.random.default_rng(p * 100 + L)
    weights = rng.standard_normal(p ** R) + 1j * rng.standard_normal(p ** R)
    index = rng.integers(0, p ** R, size=p ** R)
    direct = sum(weights[index[u % p ** R]] * np.exp(2j * np.pi * (u % p ** m) / p ** m)
                 for u in range(p ** L) if u % p)
    for b in BACKENDS:
        assert abs(_kernels.unit_phase_sum(p, L, m, R, weights, index, backend=b) - direct) < 1e-9


@pytest.mark.parametrize("p", [3, 5, 7])
def test_primitive_zero_parity(p):
    for a in square_class_representatives(PAdicContext(p)):
        for b in square_class_representatives(PAdicContext(p)):
            results = {hilbert_symbol_bruteforce(a, b, backend=bk) for bk in BACKENDS}
            assert len(results) == 1


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.square_counts(9, backend="fortran")


def test_env_flag_parsing(monkeypatch):
    for value, disabled in [("", False), ("0", False), ("off", False), ("1", True), ("yes", True)]:
        monkeypatch.setenv("RSVERIFY_DISABLE_NUMBA", value)
        assert _accel._env_disabled() is disabled
