"""Exact Laurent polynomials in (A, a1, a2), polynomials and rational
functions in X over them, and truncated power series in X.

Coefficients are Python ints or ``fractions.Fraction``; no floats are
accepted anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

Exponent = tuple[int, int, int]
VARIABLES = ("A", "a1", "a2")


def _as_rational(c):
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _as_rational(Fraction(c.numerator, c.denominator))
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


def _sparse_mul(x: Mapping, y: Mapping) -> dict:
    out: dict = {}
    get = out.get
    for (i1, j1, k1), c1 in x.items():
        for (i2, j2, k2), c2 in y.items():
            e = (i1 + i2, j1 + j2, k1 + k2)
            out[e] = get(e, 0) + c1 * c2
    return out


class LaurentPoly:
    """Immutable Laurent polynomial in A, a1, a2 with rational coefficients.

    Stored as a map from exponent triples ``(e_A, e_a1, e_a2)`` to nonzero
    coefficients, so equality is equality of term maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = _as_rational(c)
            if c:
                clean[(int(e[0]), int(e[1]), int(e[2]))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = {e: (c.numerator if type(c) is Fraction and c.denominator == 1 else c)
                      for e, c in terms.items() if c}
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, e_A: int = 0, e_a1: int = 0, e_a2: int = 0, coeff=1) -> "LaurentPoly":
        return cls({(e_A, e_a1, e_a2): coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, e_A: int = 0, e_a1: int = 0, e_a2: int = 0):
        return self._terms.get((e_A, e_a1, e_a2), 0)

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._terms.values())

    # -- ring operations -------------------------------------------------
    @staticmethod
    def _coerce(other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        try:
            return LaurentPoly.const(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        x, y = self._terms, other._terms
        if not x or not y:
            return ZERO
        if len(y) == 1:
            x, y = y, x
        if len(x) == 1:
            ((i, j, k), c), = x.items()
            return LaurentPoly._raw({(i + a, j + b, k + d): c * v for (a, b, d), v in y.items()})
        return LaurentPoly._raw(_sparse_mul(x, y))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            ((i, j, k), c), = self._terms.items()
            return LaurentPoly({(i * n, j * n, k * n): Fraction(1) / Fraction(c) ** (-n)})
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitutions ---------------------------------------------------
    def swap_a(self) -> "LaurentPoly":
        """a1 <-> a2."""
        return LaurentPoly._raw({(i, k, j): c for (i, j, k), c in self._terms.items()})

    def invert_A(self) -> "LaurentPoly":
        """A -> A^-1."""
        return LaurentPoly._raw({(-i, j, k): c for (i, j, k), c in self._terms.items()})

    def specialize(self, A=None, a1=None, a2=None) -> "LaurentPoly":
        """Substitute rationals for any subset of the variables.

        Zero is allowed for a variable only if it never occurs with a
        negative exponent.
        """
        values = []
        for i, (name, v) in enumerate(zip(VARIABLES, (A, a1, a2))):
            if v is None:
                values.append(None)
                continue
            v = Fraction(_as_rational(v))
            if v == 0 and any(e[i] < 0 for e in self._terms):
                raise ValueError(f"{name}=0 is not allowed: {name} occurs with a negative exponent")
            values.append(v)
        out: dict = {}
        powers: list[dict] = [{} for _ in values]
        for e, c in self._terms.items():
            c = Fraction(c)
            kept = []
            for v, n, cache in zip(values, e, powers):
                if v is None:
                    kept.append(n)
                else:
                    if n not in cache:
                        cache[n] = v ** n
                    c *= cache[n]
                    kept.append(0)
            key = tuple(kept)
            out[key] = out.get(key, 0) + c
        return LaurentPoly._raw(out)

    def evaluate(self, A, a1, a2) -> Fraction:
        return Fraction(self.specialize(A, a1, a2).coeff(0, 0, 0))

    # -- text ------------------------------------------------------------
    def terms_text(self) -> list[str]:
        """Sorted ``"coeff * A^i a1^j a2^k"`` strings, exponent-lexicographic."""
        return [f"{c} * A^{i} a1^{j} a2^{k}" for (i, j, k), c in sorted(self._terms.items())]

    def __str__(self):
        return " + ".join(self.terms_text()) if self._terms else "0"

    def __repr__(self):
        return f"LaurentPoly({self})"


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
A = LaurentPoly.monomial(1, 0, 0)
A_INV = LaurentPoly.monomial(-1, 0, 0)
a1 = LaurentPoly.monomial(0, 1, 0)
a2 = LaurentPoly.monomial(0, 0, 1)


def _lp(c) -> LaurentPoly:
    return c if isinstance(c, LaurentPoly) else LaurentPoly.const(c)


class PolyInX:
    """Polynomial in X with LaurentPoly coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_lp(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[LaurentPoly, ...] = tuple(cs)

    @classmethod
    def monomial(cls, c, k: int) -> "PolyInX":
        return cls([ZERO] * k + [_lp(c)])

    @classmethod
    def one_minus(cls, c, k: int = 1) -> "PolyInX":
        """The factor ``1 - c X^k``."""
        return cls([ONE] + [ZERO] * (k - 1) + [-_lp(c)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> LaurentPoly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyInX(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return PolyInX(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return PolyInX()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            for j, d in enumerate(other.coeffs):
                if not d.is_zero():
                    out[i + j] = out[i + j] + c * d
        return PolyInX(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = _as_poly(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def map_coeffs(self, f: Callable[[LaurentPoly], LaurentPoly]) -> "PolyInX":
        return PolyInX(f(c) for c in self.coeffs)

    def swap_a(self):
        return self.map_coeffs(LaurentPoly.swap_a)

    def invert_A(self):
        return self.map_coeffs(LaurentPoly.invert_A)

    def specialize(self, A=None, a1=None, a2=None):
        return self.map_coeffs(lambda c: c.specialize(A, a1, a2))

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(order, [self.coeff(k) for k in range(order + 1)])

    def __repr__(self):
        return "PolyInX(" + ", ".join(f"X^{k}: {c}" for k, c in enumerate(self.coeffs) if c) + ")"


def _as_poly(x) -> PolyInX:
    if isinstance(x, PolyInX):
        return x
    if isinstance(x, LaurentPoly):
        return PolyInX([x])
    return PolyInX([LaurentPoly.const(x)])


def product(polys: Iterable[PolyInX]) -> PolyInX:
    out = PolyInX([ONE])
    for p in polys:
        out = out * p
    return out


class TruncatedSeries:
    """Power series in X known through X^order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence = ()):
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = [_lp(c) for c in coeffs][: order + 1]
        cs += [ZERO] * (order + 1 - len(cs))
        self.order = order
        self.coeffs: tuple[LaurentPoly, ...] = tuple(cs)

    def coeff(self, k: int) -> LaurentPoly:
        return self.coeffs[k]

    def _check(self, other: "TruncatedSeries"):
        if other.order != self.order:
            raise OrderMismatch(self.order, other.order)

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(self.order, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(self.order, [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncatedSeries(self.order, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (PolyInX, LaurentPoly, int, Fraction)):
            other = _as_poly(other).truncate(self.order)
        self._check(other)
        N = self.order
        out = [ZERO] * (N + 1)
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            for j in range(N + 1 - i):
                d = other.coeffs[j]
                if not d.is_zero():
                    out[i + j] = out[i + j] + c * d
        return TruncatedSeries(N, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    __hash__ = None

    def map_coeffs(self, f) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [f(c) for c in self.coeffs])

    def specialize(self, A=None, a1=None, a2=None):
        return self.map_coeffs(lambda c: c.specialize(A, a1, a2))

    def __repr__(self):
        body = ", ".join(f"X^{k}: {c}" for k, c in enumerate(self.coeffs) if c)
        return f"TruncatedSeries(order={self.order}; {body})"


class OrderMismatch(ValueError):
    def __init__(self, left: int, right: int):
        super().__init__(f"series orders differ: {left} vs {right}")
        self.left, self.right = left, right


@dataclass(frozen=True)
class RationalFunctionInX:
    num: PolyInX
    den: PolyInX

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("denominator is the zero polynomial")

    def __add__(self, other: "RationalFunctionInX") -> "RationalFunctionInX":
        if self.den == other.den:
            return RationalFunctionInX(self.num + other.num, self.den)
        return RationalFunctionInX(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RationalFunctionInX") -> "RationalFunctionInX":
        return RationalFunctionInX(self.num * other.num, self.den * other.den)

    def specialize(self, A=None, a1=None, a2=None) -> "RationalFunctionInX":
        return RationalFunctionInX(self.num.specialize(A, a1, a2), self.den.specialize(A, a1, a2))

    def expand(self, order: int) -> TruncatedSeries:
        return rf_expand(self, order)


def geom_expand(c, order: int) -> TruncatedSeries:
    """Series of 1/(1 - c X) through X^order."""
    c = _lp(c)
    coeffs = [ONE]
    for _ in range(order):
        coeffs.append(coeffs[-1] * c)
    return TruncatedSeries(order, coeffs)


def rf_expand(f: RationalFunctionInX, order: int, check: bool = False) -> TruncatedSeries:
    """Expand num/den as a power series through X^order.

    Requires the constant term of ``den`` to be 1, which makes the
    recursion ``c_n = num_n - sum_j den_j c_{n-j}`` exact without division.
    """
    if order < 0:
        raise ValueError("series order must be >= 0")
    den = f.den
    if den.coeff(0) != ONE:
        raise ValueError(f"denominator constant term must be 1, got {den.coeff(0)}")
    out: list[LaurentPoly] = []
    for n in range(order + 1):
        acc = f.num.coeff(n)
        for j in range(1, min(n, den.degree) + 1):
            d = den.coeffs[j]
            if not d.is_zero():
                acc = acc - d * out[n - j]
        out.append(acc)
    series = TruncatedSeries(order, out)
    if check and series * den.truncate(order) != f.num.truncate(order):
        raise AssertionError("rf_expand post-condition failed")
    return series


@dataclass(frozen=True)
class SeriesComparison:
    equal: bool
    degree: int | None = None
    left: LaurentPoly | None = None
    right: LaurentPoly | None = None

    def __bool__(self):
        return self.equal

    def describe(self) -> str:
        if self.equal:
            return "all coefficients agree"
        return f"first mismatch at X^{self.degree}: left={self.left}; right={self.right}"


def series_eq(u: TruncatedSeries, v: TruncatedSeries) -> SeriesComparison:
    if u.order != v.order:
        raise OrderMismatch(u.order, v.order)
    for k, (x, y) in enumerate(zip(u.coeffs, v.coeffs)):
        if x != y:
            return SeriesComparison(False, k, x, y)
    return SeriesComparison(True)
