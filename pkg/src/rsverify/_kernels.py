"""Hot inner loops, each with a numba kernel and a numpy twin.

The public wrappers dispatch on ``_accel.USE_NUMBA`` unless an explicit
``backend`` is passed (the benchmark and the parity tests do that).  Both
paths must return identical integers / booleans and complex sums that agree
to rounding.
"""
from __future__ import annotations

import math

import numpy as np

from . import _accel
from ._accel import njit

_TWO_PI = 2.0 * math.pi


def _pick(backend):
    if backend is None:
        return "numba" if _accel.USE_NUMBA else "numpy"
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not _accel.NUMBA_AVAILABLE:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend


# ---------------------------------------------------------------------------
# Square counts modulo P (the input of an oscillator sum).

@njit(cache=True)
def _square_counts_numba(P):
    counts = np.zeros(P, dtype=np.int64)
    for t in range(P):
        counts[(t * t) % P] += 1
    return counts


def _square_counts_numpy(P):
    t = np.arange(P, dtype=np.int64)
    return np.bincount((t * t) % P, minlength=P).astype(np.int64)


def square_counts(P: int, backend=None) -> np.ndarray:
    """``counts[r] = #{0 <= t < P : t*t = r (mod P)}``; needs P < 3e9."""
    if _pick(backend) == "numba":
        return _square_counts_numba(np.int64(P))
    return _square_counts_numpy(P)


# ---------------------------------------------------------------------------
# Sum over units u mod p^L of weight[index[u mod p^R]] * e((u mod p^m) / p^m).
# The kernels bucket the weights by u mod p^m; the phases are applied after.

@njit(cache=True)
def _unit_phase_buckets_numba(p, L, m, R, w_re, w_im, index):
    pL = p ** L
    pm = p ** m
    pR = p ** R
    b_re = np.zeros(pm)
    b_im = np.zeros(pm)
    for u in range(pL):
        if u % p == 0:
            continue
        w = index[u % pR]
        j = u % pm
        b_re[j] += w_re[w]
        b_im[j] += w_im[w]
    return b_re, b_im


def _unit_phase_buckets_numpy(p, L, m, R, w_re, w_im, index, chunk=1 << 21):
    pL, pm, pR = p ** L, p ** m, p ** R
    b_re = np.zeros(pm)
    b_im = np.zeros(pm)
    for start in range(0, pL, chunk):
        u = np.arange(start, min(start + chunk, pL), dtype=np.int64)
        u = u[u % p != 0]
        w = index[u % pR]
        j = u % pm
        b_re += np.bincount(j, weights=w_re[w], minlength=pm)
        b_im += np.bincount(j, weights=w_im[w], minlength=pm)
    return b_re, b_im


def unit_phase_sum(p, L, m, R, weights, index, backend=None) -> complex:
    weights = np.asarray(weights, dtype=np.complex128)
    w_re = np.ascontiguousarray(weights.real)
    w_im = np.ascontiguousarray(weights.imag)
    index = np.asarray(index, dtype=np.int64)
    if _pick(backend) == "numba":
        b_re, b_im = _unit_phase_buckets_numba(np.int64(p), np.int64(L), np.int64(m),
                                               np.int64(R), w_re, w_im, index)
    else:
        b_re, b_im = _unit_phase_buckets_numpy(p, L, m, R, w_re, w_im, index)
    # weights are first gathered per phase class, so each phase is applied once
    phases = np.exp(1j * _TWO_PI * np.arange(p ** m) / p ** m)
    return complex(np.sum((b_re + 1j * b_im) * phases))


# ---------------------------------------------------------------------------
# Primitive zeros of z^2 - a x^2 - b y^2 modulo p^k.

@njit(cache=True)
def _primitive_zero_numba(a, b, p, k):
    P = p ** k
    sq_any = np.zeros(P, dtype=np.bool_)
    sq_unit = np.zeros(P, dtype=np.bool_)
    for z in range(P):
        r = (z * z) % P
        sq_any[r] = True
        if z % p != 0:
            sq_unit[r] = True
    for x in range(P):
        ax = (a * ((x * x) % P)) % P
        for y in range(P):
            r = (ax + b * ((y * y) % P)) % P
            if x % p != 0 or y % p != 0:
                if sq_any[r]:
                    return True
            elif sq_unit[r]:
                return True
    return False


def _primitive_zero_numpy(a, b, p, k):
    P = p ** k
    z = np.arange(P, dtype=np.int64)
    sq_any = np.zeros(P, dtype=bool)
    sq_any[(z * z) % P] = True
    sq_unit = np.zeros(P, dtype=bool)
    zu = z[z % p != 0]
    sq_unit[(zu * zu) % P] = True
    sq = (z * z) % P
    r = (a * sq[:, None] + b * sq[None, :]) % P
    primitive_xy = (z % p != 0)[:, None] | (z % p != 0)[None, :]
    return bool(np.any(np.where(primitive_xy, sq_any[r], sq_unit[r])))


def primitive_zero_exists(a: int, b: int, p: int, k: int, backend=None) -> bool:
    """Is there (x, y, z), not all divisible by p, with z^2 = a x^2 + b y^2 mod p^k?"""
    P = p ** k
    a %= P
    b %= P
    if _pick(backend) == "numba":
        return bool(_primitive_zero_numba(np.int64(a), np.int64(b), np.int64(p), np.int64(k)))
    return _primitive_zero_numpy(a, b, p, k)
