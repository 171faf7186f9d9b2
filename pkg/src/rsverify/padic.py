"""Fixed-precision arithmetic in Q_p (p odd), the unramified additive
character, Legendre and Hilbert symbols.

The uniformizer is p itself and psi(x) = exp(2 pi i {x}_p), where {x}_p is
the p-adic fractional part, so psi is trivial exactly on Z_p.
"""
from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .report import make_report

DEFAULT_PRECISION = 12


class PrecisionError(ValueError):
    """An operation needs more p-adic digits than the operand carries."""


def is_odd_prime(p) -> bool:
    if not isinstance(p, int) or isinstance(p, bool) or p < 3 or p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True, eq=False)
class PAdicElement:
    """p^valuation * unit, the unit known modulo p^prec.

    The zero element has ``valuation=None``.  Sums that cancel leading
    digits lose relative precision, as in any capped-relative model.
    """

    p: int
    valuation: int | None
    unit: int = 0
    prec: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.valuation is None:
            object.__setattr__(self, "unit", 0)
            return
        if self.prec < 1:
            raise PrecisionError("no significant digits left")
        u = self.unit % self.p ** self.prec
        if u % self.p == 0:
            raise ValueError("unit part must be prime to p")
        object.__setattr__(self, "unit", u)

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, p: int) -> "PAdicElement":
        return cls(p, None)

    @classmethod
    def from_rational(cls, x, p: int, prec: int = DEFAULT_PRECISION) -> "PAdicElement":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        num, den = x.numerator, x.denominator
        vn, vd = _vp(num, p), _vp(den, p)
        num //= p ** vn
        den //= p ** vd
        mod = p ** prec
        return cls(p, vn - vd, num * pow(den, -1, mod) % mod, prec)

    @classmethod
    def of(cls, p: int, valuation: int, unit: int, prec: int = DEFAULT_PRECISION):
        return cls(p, valuation, unit, prec)

    # -- queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.valuation is None

    @property
    def abs_precision(self) -> float:
        """x is known modulo p^abs_precision."""
        return math.inf if self.valuation is None else self.valuation + self.prec

    def norm(self) -> float:
        """|x| with |p| = 1/p."""
        return 0.0 if self.valuation is None else float(self.p) ** (-self.valuation)

    def unit_mod(self, k: int) -> int:
        if k > self.prec:
            raise PrecisionError(f"need {k} unit digits, have {self.prec}")
        return self.unit % self.p ** k

    def residue(self) -> int:
        """Leading digit of the unit part (its class in F_p^x)."""
        return self.unit % self.p

    def fractional_part(self) -> Fraction:
        """The rational with p-power denominator in [0, 1) congruent to x mod Z_p."""
        if self.valuation is None or self.valuation >= 0:
            return Fraction(0)
        if self.abs_precision < 0:
            raise PrecisionError("digits below p^0 are not known; psi(x) is undetermined")
        n = -self.valuation
        return Fraction(self.unit % self.p ** n, self.p ** n)

    def to_fraction(self) -> Fraction:
        """Rational representative p^v * unit (unit in [0, p^prec))."""
        if self.valuation is None:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "PAdicElement":
        if isinstance(other, PAdicElement):
            if other.p != self.p:
                raise ValueError("elements of different Q_p")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return PAdicElement.from_rational(other, self.p, self.prec)
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return PAdicElement.zero(self.p)
        prec = min(self.prec, other.prec)
        return PAdicElement(self.p, self.valuation + other.valuation,
                            self.unit * other.unit, prec)

    __rmul__ = __mul__

    def __neg__(self):
        if self.is_zero():
            return self
        return PAdicElement(self.p, self.valuation, -self.unit, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        p = self.p
        v = min(self.valuation, other.valuation)
        top = min(self.abs_precision, other.abs_precision)
        digits = top - v
        n = (self.unit * p ** (self.valuation - v) + other.unit * p ** (other.valuation - v)) % p ** digits
        if n == 0:
            return PAdicElement.zero(p)
        j = _vp(n, p)
        return PAdicElement(p, v + j, n // p ** j, digits - j)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def inverse(self) -> "PAdicElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return PAdicElement(self.p, -self.valuation,
                            pow(self.unit, -1, self.p ** self.prec), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = PAdicElement.from_rational(1, self.p, self.prec)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.valuation != other.valuation:
            return False
        k = min(self.prec, other.prec)
        return (self.unit - other.unit) % self.p ** k == 0

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return f"PAdicElement(p={self.p}, 0)"
        return f"PAdicElement(p={self.p}, {self.p}^{self.valuation} * {self.unit} + O({self.p}^{self.abs_precision}))"


@dataclass(frozen=True)
class PAdicContext:
    """Prime, working precision and Schwartz-grid dimensions.

    Grid functions live on p^-M O / p^grid_fine O.
    """

    p: int
    precision: int = DEFAULT_PRECISION
    grid_reach: int = 2
    grid_fine: int = 3

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p!r}")
        if self.precision < 2:
            raise ValueError("precision must be >= 2")
        if self.grid_reach < 1 or self.grid_fine < 1:
            raise ValueError("grid parameters must be >= 1")

    @property
    def q(self) -> int:
        return self.p

    def element(self, x) -> PAdicElement:
        return PAdicElement.from_rational(x, self.p, self.precision)

    def make(self, valuation: int, unit: int) -> PAdicElement:
        return PAdicElement(self.p, valuation, unit, self.precision)

    def nonresidue(self) -> int:
        return smallest_nonresidue(self.p)

    def random_unit(self, rng: np.random.Generator) -> int:
        mod = self.p ** self.precision
        while True:
            u = int(rng.integers(1, mod))
            if u % self.p:
                return u

    def random_element(self, rng: np.random.Generator, vmin: int, vmax: int) -> PAdicElement:
        v = int(rng.integers(vmin, vmax + 1))
        return self.make(v, self.random_unit(rng))


def smallest_nonresidue(p: int) -> int:
    return next(n for n in range(2, p) if legendre(n, p) == -1)


# -- characters and symbols ------------------------------------------------

def psi_eval(x) -> complex:
    """psi(x) = exp(2 pi i {x}_p)."""
    if isinstance(x, PAdicElement):
        frac = x.fractional_part()
    else:
        raise TypeError("psi_eval takes a PAdicElement")
    if frac == 0:
        return 1 + 0j
    return cmath.exp(2j * math.pi * frac.numerator / frac.denominator)


def legendre(u: int, p: int) -> int:
    if u % p == 0:
        raise ValueError(f"{u} is divisible by {p}")
    return 1 if pow(u, (p - 1) // 2, p) == 1 else -1


def gauss_sum(p: int) -> complex:
    """sum over t mod p of exp(2 pi i t^2 / p)."""
    t = np.arange(p, dtype=np.int64)
    return complex(np.exp(2j * np.pi * ((t * t) % p) / p).sum())


def _nonzero(a: PAdicElement, what: str):
    if not isinstance(a, PAdicElement) or a.is_zero():
        raise ValueError(f"{what} needs a nonzero p-adic argument")


def hilbert_symbol(a: PAdicElement, b: PAdicElement) -> int:
    """(a, b)_p for odd p: (-1)^(v(a)v(b)(p-1)/2) (u/p)^v(b) (w/p)^v(a)."""
    _nonzero(a, "hilbert_symbol")
    _nonzero(b, "hilbert_symbol")
    p = a.p
    alpha, beta = a.valuation, b.valuation
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= legendre(a.residue(), p)
    if alpha % 2:
        sign *= legendre(b.residue(), p)
    return sign


HENSEL_LEVEL = 3


def hilbert_symbol_bruteforce(a: PAdicElement, b: PAdicElement, backend=None) -> int:
    """+1 iff z^2 = a x^2 + b y^2 has a nontrivial solution, by search.

    Valuations are first reduced mod 2 (rescaling x or y by a power of p).
    A primitive solution modulo p^3 then lifts by Hensel's lemma: some
    partial derivative (2z, 2ax or 2by) has valuation <= 1 < 3/2.
    """
    _nonzero(a, "hilbert_symbol_bruteforce")
    _nonzero(b, "hilbert_symbol_bruteforce")
    p = a.p
    k = HENSEL_LEVEL
    ra = a.unit_mod(k) * p ** (a.valuation % 2)
    rb = b.unit_mod(k) * p ** (b.valuation % 2)
    return 1 if _kernels.primitive_zero_exists(ra, rb, p, k, backend=backend) else -1


def square_class_representatives(ctx: PAdicContext) -> list[PAdicElement]:
    """{1, n, p, np} with n the smallest quadratic nonresidue."""
    n = ctx.nonresidue()
    return [ctx.make(v, u) for v in (0, 1) for u in (1, n)]


def verify_hilbert(ctx: PAdicContext, trials: int, rng: np.random.Generator, backend=None):
    """Formula vs exhaustive search on square classes, plus symmetry and
    bimultiplicativity on random elements."""
    p = ctx.p
    reports = []
    t0 = time.perf_counter()
    reps = square_class_representatives(ctx)
    randoms = [(ctx.random_element(rng, -3, 3), ctx.random_element(rng, -3, 3)) for _ in range(trials)]
    pairs = [(a, b) for a in reps for b in reps] + randoms
    bad = [(a, b) for a, b in pairs if hilbert_symbol(a, b) != hilbert_symbol_bruteforce(a, b, backend)]
    table = " ".join("".join("+" if hilbert_symbol(a, b) > 0 else "-" for b in reps) for a in reps)
    reports.append(make_report(
        "hilbert.oracle", {"p": p, "pairs": len(pairs)}, not bad,
        f"formula matches the norm-form search on all pairs; table over {{1,n,p,np}}: {table}"
        if not bad else f"{len(bad)} disagreements, first {bad[0]!r}", None, t0))

    t0 = time.perf_counter()
    sym = sum(hilbert_symbol(a, b) != hilbert_symbol(b, a) for a, b in randoms)
    reports.append(make_report("hilbert.symmetry", {"p": p, "trials": trials}, sym == 0,
                               f"(a,b) = (b,a); {sym} failures", None, t0))

    t0 = time.perf_counter()
    fails = 0
    for a, b in randoms:
        c = ctx.random_element(rng, -3, 3)
        fails += hilbert_symbol(a * c, b) != hilbert_symbol(a, b) * hilbert_symbol(c, b)
        fails += hilbert_symbol(a, b * c) != hilbert_symbol(a, b) * hilbert_symbol(a, c)
    reports.append(make_report("hilbert.bimultiplicativity", {"p": p, "trials": trials}, fails == 0,
                               f"(ac,b) = (a,b)(c,b) and (a,bc) = (a,b)(a,c); {fails} failures", None, t0))
    return reports


def verify_psi(ctx: PAdicContext, trials: int, rng: np.random.Generator, tol: float = 1e-12):
    """psi has modulus 1, is trivial on O and is additive."""
    t0 = time.perf_counter()
    res = []
    for _ in range(trials):
        x = ctx.random_element(rng, -4, 3)
        y = ctx.random_element(rng, -4, 3)
        o = ctx.random_element(rng, 0, 3)
        res.append(max(abs(psi_eval(x + y) - psi_eval(x) * psi_eval(y)),
                       abs(abs(psi_eval(x)) - 1), abs(psi_eval(o) - 1)))
    r = max(res)
    return make_report("psi.character", {"p": ctx.p, "trials": trials, "tolerance": tol}, r < tol,
                       "psi(x+y) = psi(x) psi(y), |psi| = 1, psi = 1 on O", r, t0)
