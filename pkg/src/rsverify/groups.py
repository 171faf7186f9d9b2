"""Group elements acting in the Weil representation, the Heisenberg group
law, its matrix model inside Sp4, and the 4x4 identity used to move the
Heisenberg centre past the Weyl element gamma.

Coordinates may be any exact ring elements that support + - * (Fraction or
PAdicElement).
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .report import VerificationReport, make_report


@dataclass(frozen=True)
class HeisenbergElement:
    x: Any
    y: Any
    z: Any

    def __mul__(self, other: "HeisenbergElement") -> "HeisenbergElement":
        return HeisenbergElement(
            self.x + other.x,
            self.y + other.y,
            self.z + other.z + self.x * other.y - other.x * self.y,
        )

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement(-self.x, -self.y, -self.z)

    def act(self, g) -> "HeisenbergElement":
        """Right action (x, y, z) . g = ((x, y) g, z) of an SL2 generator."""
        x, y = g.act_row(self.x, self.y)
        return HeisenbergElement(x, y, self.z)

    def __eq__(self, other):
        if not isinstance(other, HeisenbergElement):
            return NotImplemented
        return self.x == other.x and self.y == other.y and self.z == other.z

    __hash__ = None


@dataclass(frozen=True)
class TorusElement:
    """diag(a, 1/a)."""

    a: Any

    def inverse(self) -> "TorusElement":
        return TorusElement(self.a.inverse() if hasattr(self.a, "inverse") else 1 / self.a)

    def act_row(self, x, y):
        return x * self.a, y / self.a

    def matrix(self):
        return [[self.a, 0], [0, 1 / self.a]]


@dataclass(frozen=True)
class UnipotentElement:
    """[[1, b], [0, 1]]."""

    b: Any

    def inverse(self) -> "UnipotentElement":
        return UnipotentElement(-self.b)

    def act_row(self, x, y):
        return x, x * self.b + y

    def matrix(self):
        return [[1, self.b], [0, 1]]


# -- 4x4 exact matrices --------------------------------------------------------

def matmul(X, Y, zero=0):
    n, m, k = len(X), len(Y), len(Y[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = zero
            for t in range(m):
                acc = acc + X[i][t] * Y[t][j]
            row.append(acc)
        out.append(row)
    return out


def identity4():
    return [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]


def inverse_matrix(X):
    """Gauss-Jordan over Fractions."""
    n = len(X)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(X)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def transpose(X):
    return [list(col) for col in zip(*X)]


SYMPLECTIC_FORM = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]

GAMMA = [[0, 1, 0, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 0, 1, 0]]
WEYL_MIDDLE = [[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]]


def is_symplectic(g) -> bool:
    return matmul(matmul(transpose(g), SYMPLECTIC_FORM), g) == SYMPLECTIC_FORM


def nq_matrix(x, y, z):
    """u(x, y, z) in the unipotent radical of the Klingen parabolic."""
    return [[1, x, y, z], [0, 1, 0, y], [0, 0, 1, -x], [0, 0, 0, 1]]


def nq_to_heisenberg(u) -> HeisenbergElement:
    x, y, z = u[0][1], u[0][2], u[0][3]
    if nq_matrix(x, y, z) != u:
        raise ValueError("matrix is not of the shape u(x, y, z)")
    return HeisenbergElement(x, y, z)


def conjugated_centre(z):
    """gamma u(0,0,z) gamma^-1 computed by multiplication."""
    return matmul(matmul(GAMMA, nq_matrix(0, 0, z)), inverse_matrix(GAMMA))


def centre_factorization(z):
    """The three factors whose product should equal gamma u(0,0,z) gamma^-1."""
    zi = 1 / Fraction(z) if not hasattr(z, "inverse") else z.inverse()
    left = [[1, 0, 0, 0], [0, zi, -1, 0], [0, 0, z, 0], [0, 0, 0, 1]]
    right = [[1, 0, 0, 0], [0, 1, -zi, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    return left, WEYL_MIDDLE, right


def expected_conjugate(z):
    return [[1, 0, 0, 0], [0, 1, 0, 0], [0, -z, 1, 0], [0, 0, 0, 1]]


class _ZLaurent:
    """Laurent polynomial in a single variable z with integer coefficients."""

    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = {k: v for k, v in (c or {}).items() if v}

    @classmethod
    def lift(cls, v):
        return v if isinstance(v, _ZLaurent) else cls({0: v})

    def __add__(self, o):
        o = _ZLaurent.lift(o)
        out = dict(self.c)
        for k, v in o.c.items():
            out[k] = out.get(k, 0) + v
        return _ZLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return _ZLaurent({k: -v for k, v in self.c.items()})

    def __sub__(self, o):
        return self + (-_ZLaurent.lift(o))

    def __mul__(self, o):
        o = _ZLaurent.lift(o)
        out = {}
        for i, a in self.c.items():
            for j, b in o.c.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return _ZLaurent(out)

    __rmul__ = __mul__

    def __eq__(self, o):
        return self.c == _ZLaurent.lift(o).c

    __hash__ = None

    def is_polynomial(self):
        return all(k >= 0 for k in self.c)


def _symbolic_check() -> list[str]:
    z = _ZLaurent({1: 1})
    one, zero = _ZLaurent({0: 1}), _ZLaurent()
    lift = lambda M: [[_ZLaurent.lift(v) for v in row] for row in M]  # noqa: E731
    # clear z^-1 from the outer factors by multiplying each by z
    left = lift([[z, 0, 0, 0], [0, one, -z, 0], [0, 0, z * z, 0], [0, 0, 0, z]])
    right = lift([[z, 0, 0, 0], [0, z, -one, 0], [0, 0, z, 0], [0, 0, 0, z]])
    problems = []
    if not all(v.is_polynomial() for M in (left, right) for row in M for v in row):
        problems.append("cleared factors are not polynomial")
    prod = matmul(matmul(left, lift(WEYL_MIDDLE), zero), right, zero)
    z2 = z * z
    target = [[z2 * v for v in row] for row in lift(expected_conjugate(z))]
    centre = lift(nq_matrix(0, 0, z))
    conj = matmul(matmul(lift(GAMMA), centre, zero), lift(inverse_matrix(GAMMA)), zero)
    conj = [[z2 * v for v in row] for row in conj]
    if prod != target:
        problems.append("z^2 * (factor product) != z^2 * expected")
    if conj != target:
        problems.append("z^2 * gamma u gamma^-1 != z^2 * expected")
    return problems


def verify_matrix_identity(samples) -> VerificationReport:
    """gamma u(0,0,z) gamma^-1 = [[1],[z^-1,-1;0,z],[1]] * w * u'(-1/z), exactly."""
    t0 = time.perf_counter()
    samples = [Fraction(s) for s in samples]
    if any(s == 0 for s in samples):
        raise ValueError("z must be nonzero")
    problems = []
    if not is_symplectic(GAMMA):
        problems.append("gamma is not symplectic")
    for z in samples:
        conj = conjugated_centre(z)
        left, mid, right = centre_factorization(z)
        rhs = matmul(matmul(left, mid), right)
        if conj != expected_conjugate(z):
            problems.append(f"conjugate mismatch at z={z}")
        if rhs != conj:
            problems.append(f"factorization mismatch at z={z}")
        if not all(is_symplectic(M) for M in (left, mid, right)):
            problems.append(f"non-symplectic factor at z={z}")
    problems += _symbolic_check()
    passed = not problems
    detail = (f"exact for {len(samples)} rational samples and in z-cleared form"
              if passed else "; ".join(problems[:5]))
    return make_report("matrix_identity", {"samples": len(samples)}, passed, detail, started=t0)


def random_rational(rng: np.random.Generator, bound: int = 50) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def random_nonzero_rational(rng: np.random.Generator, bound: int = 50) -> Fraction:
    while True:
        r = random_rational(rng, bound)
        if r:
            return r


def verify_heisenberg_group(trials: int, rng: np.random.Generator) -> VerificationReport:
    t0 = time.perf_counter()
    rand_h = lambda: HeisenbergElement(*(random_rational(rng) for _ in range(3)))  # noqa: E731
    e = HeisenbergElement(Fraction(0), Fraction(0), Fraction(0))
    problems = []
    for _ in range(trials):
        g, h, k = rand_h(), rand_h(), rand_h()
        if (g * h) * k != g * (h * k):
            problems.append("associativity")
        if g * e != g or e * g != g or g * g.inverse() != e:
            problems.append("identity/inverse")
        prod = matmul(nq_matrix(g.x, g.y, g.z), nq_matrix(h.x, h.y, h.z))
        if nq_to_heisenberg(prod) != g * h:
            problems.append("N_Q homomorphism")
        if not is_symplectic(nq_matrix(g.x, g.y, g.z)):
            problems.append("u(x,y,z) not symplectic")
    passed = not problems
    detail = (f"associativity, identity, inverses and the N_Q -> H homomorphism hold on {trials} random triples"
              if passed else f"{len(problems)} failures, first: {problems[0]}")
    return make_report("heisenberg_group", {"trials": trials}, passed, detail, started=t0)
