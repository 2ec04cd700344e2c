"""Exact arithmetic: reduced rationals with a point at infinity, quadratic
surds, decimal intervals, Bezout helpers and the Farey sum/difference algebra.

Every real input ``x`` handled by the rest of the package is one of

* :class:`fractions.Fraction` (exact rational),
* :class:`QuadraticSurd` (``(a + b*sqrt(d)) / c``, exact sign/floor/compare),
* :class:`DecimalInterval` (``x`` known only to lie in ``[lo, hi]``).

The three types share the operator surface the algorithms need (``+ - *``,
``1/x``, ``abs``, ``math.floor`` and rich comparisons against rationals), so
generic code never branches on the representation.  Interval operations that
cannot be decided raise :class:`~farey_cf.errors.InsufficientPrecision`.
"""

from __future__ import annotations

import decimal
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import (
    InsufficientPrecision,
    NotInvertible,
    ParseError,
    ZeroDenominator,
    ZeroOverZero,
)

__all__ = [
    "BigRational",
    "INF",
    "RawFraction",
    "QuadraticSurd",
    "DecimalInterval",
    "Real",
    "reduce",
    "ext_gcd",
    "mod_inverse",
    "farey_sum",
    "farey_diff",
    "iterated_mediant",
    "floor_scaled",
    "as_real",
    "sign",
    "is_integer",
    "is_rational",
    "parse_real",
    "parse_rational",
    "format_real",
    "simplest_rational",
]


# ---------------------------------------------------------------------------
# Reduced rationals with infinity


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class BigRational:
    """A reduced fraction ``num/den``; ``1/0`` is the single value infinity."""

    num: int
    den: int

    def __post_init__(self):
        if self.den < 0:
            raise ValueError(f"denominator must be non-negative, got {self.den}")
        if self.den == 0:
            if self.num != 1:
                raise ValueError("infinity must be encoded as 1/0")
        elif math.gcd(self.num, self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not reduced")

    @classmethod
    def of(cls, value) -> BigRational:
        if isinstance(value, BigRational):
            return value
        if isinstance(value, (RawFraction, tuple)):
            return reduce(value[0], value[1])
        f = Fraction(value)
        return cls(f.numerator, f.denominator)

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def to_fraction(self) -> Fraction:
        if self.den == 0:
            raise ZeroDenominator("infinity has no finite value")
        return Fraction(self.num, self.den)

    def __str__(self):
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"BigRational({self.num}/{self.den})"

    def __eq__(self, other):
        if isinstance(other, BigRational):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den != 0 and Fraction(self.num, self.den) == other
        return NotImplemented

    def __hash__(self):
        if self.den == 0:
            return hash(("BigRational", "inf"))
        return hash(Fraction(self.num, self.den))

    def __lt__(self, other):
        other = BigRational.of(other)
        if self.den == 0:
            return False
        if other.den == 0:
            return True
        return self.num * other.den < other.num * self.den


INF = BigRational(1, 0)


def reduce(num: int, den: int) -> BigRational:
    """Canonical reduced form of ``num/den`` (sign carried by ``num``)."""
    num, den = int(num), int(den)
    if num == 0 and den == 0:
        raise ZeroOverZero("0/0 is undefined")
    if den == 0:
        return INF
    if den < 0:
        num, den = -num, -den
    g = math.gcd(num, den)
    return BigRational(num // g, den // g)


class RawFraction(NamedTuple):
    """An unreduced numerator/denominator pair, as produced by mediants."""

    num: int
    den: int

    def reduced(self) -> BigRational:
        return reduce(self.num, self.den)

    def __str__(self):
        return f"{self.num}/{self.den}"


def _parts(x) -> tuple[int, int]:
    if isinstance(x, (BigRational, RawFraction)):
        return x.num, x.den
    if isinstance(x, tuple):
        return int(x[0]), int(x[1])
    f = Fraction(x)
    return f.numerator, f.denominator


# ---------------------------------------------------------------------------
# Integer helpers


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) > 0`` and ``s*a + t*b = g``."""
    if a == 0 and b == 0:
        raise ZeroOverZero("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mod_inverse(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` as a residue in ``[1, p-1]``."""
    if math.gcd(a, p) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {p}")
    return pow(a, -1, p)


# ---------------------------------------------------------------------------
# Farey algebra on raw components (adjacency is the caller's business)


def farey_sum(r1, r2) -> RawFraction:
    a, b = _parts(r1)
    c, d = _parts(r2)
    return RawFraction(a + c, b + d)


def farey_diff(r2, r1) -> RawFraction:
    """``R2 (-) R1`` formed on components; ``s2 > s1`` gives a positive denominator."""
    a, b = _parts(r2)
    c, d = _parts(r1)
    if b == d:
        raise ZeroDenominator("Farey difference of equal denominators")
    return RawFraction(a - c, b - d)


def iterated_mediant(k: int, p, r) -> RawFraction:
    """``P (+) ... (+) P (+) R`` with ``P`` taken ``k`` times."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    u, v = _parts(p)
    a, b = _parts(r)
    return RawFraction(k * u + a, k * v + b)


# ---------------------------------------------------------------------------
# Quadratic surds


def _surd_sign(a: int, b: int, d: int) -> int:
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or sa == sb:
        return sa if sa else sb
    if sa == 0:
        return sb
    lhs, rhs = a * a, b * b * d
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def _square_free_split(d: int) -> tuple[int, int]:
    """Write ``d = k*k*f`` with ``f`` square-free; return ``(k, f)``."""
    k, f, q = 1, d, 2
    while q * q <= f:
        while f % (q * q) == 0:
            f //= q * q
            k *= q
        q += 1 if q == 2 else 2
    return k, f


def _surd(a: int, b: int, d: int, c: int):
    """Arithmetic result: a QuadraticSurd, or a Fraction once b cancels."""
    return Fraction(a, c) if b == 0 else QuadraticSurd(a, b, d, c)


@dataclass(frozen=True)
class QuadraticSurd:
    """``(a + b*sqrt(d)) / c`` with ``c > 0``, ``gcd(a, b, c) = 1`` and ``d`` square-free.

    Use :meth:`make` for untrusted input; the plain constructor assumes ``d``
    is already square-free and only normalises signs and common factors.
    """

    a: int
    b: int
    d: int
    c: int

    def __post_init__(self):
        if self.c == 0:
            raise ZeroDenominator("surd with zero denominator")
        if self.d < 2:
            raise ValueError("d must be a square-free integer >= 2")
        if self.b == 0:
            raise ValueError("b = 0 is a rational value; use QuadraticSurd.make")
        a, b, c = self.a, self.b, self.c
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", c // g)

    @classmethod
    def make(cls, a: int, b: int, d: int, c: int) -> Union[QuadraticSurd, Fraction]:
        """Normalise ``d`` to its square-free part; collapse rational values."""
        if c == 0:
            raise ZeroDenominator("surd with zero denominator")
        if d < 0:
            raise ValueError("d must be non-negative")
        k, f = _square_free_split(d) if d else (0, 1)
        b *= k
        if b == 0 or f == 1:
            return Fraction(a + b, c)
        return cls(a, b, f, c)

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise ValueError("surds with different radicands do not mix")
            return other.a, other.b, other.c
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return f.numerator, 0, f.denominator
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a2, b2, c2 = o
        return _surd(self.a * c2 + a2 * self.c, self.b * c2 + b2 * self.c, self.d, self.c * c2)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d, self.c)

    def __sub__(self, other):
        if self._lift(other) is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a2, b2, c2 = o
        return _surd(
            self.a * a2 + self.b * b2 * self.d,
            self.a * b2 + a2 * self.b,
            self.d,
            self.c * c2,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> QuadraticSurd:
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return _surd(self.c * self.a, -self.c * self.b, self.d, norm)

    def __truediv__(self, other):
        if isinstance(other, QuadraticSurd):
            return self * other.reciprocal()
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.reciprocal() * other
        return NotImplemented

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- exact predicates ---------------------------------------------------

    def sign(self) -> int:
        return _surd_sign(self.a, self.b, self.d)

    def is_integer(self) -> bool:
        return False

    def __floor__(self) -> int:
        m = math.isqrt(self.b * self.b * self.d)
        if self.b < 0:
            m = -m - 1
        return (self.a + m) // self.c

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            raise TypeError(f"cannot compare QuadraticSurd with {type(other).__name__}")
        return sign(diff)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    def __str__(self):
        return f"quad:{self.a},{self.b},{self.d},{self.c}"


# ---------------------------------------------------------------------------
# Decimal intervals


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class DecimalInterval:
    """An unknown real known to lie in the closed interval ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = _frac(self.lo), _frac(self.hi)
        if not lo < hi:
            raise ValueError("interval needs lo < hi")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def from_decimal(cls, digits: str, error: str) -> DecimalInterval:
        centre, err = Fraction(digits), abs(Fraction(error))
        if err == 0:
            raise ValueError("error bound must be positive")
        return cls(centre - err, centre + err)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def _lift(self, other):
        if isinstance(other, DecimalInterval):
            return other.lo, other.hi
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return f, f
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return DecimalInterval(self.lo + o[0], self.hi + o[1])

    __radd__ = __add__

    def __neg__(self):
        return DecimalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return DecimalInterval(self.lo - o[1], self.hi - o[0])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        products = [x * y for x in (self.lo, self.hi) for y in o]
        lo, hi = min(products), max(products)
        if lo == hi:
            return lo
        return DecimalInterval(lo, hi)

    __rmul__ = __mul__

    def reciprocal(self) -> DecimalInterval:
        if self.lo <= 0 <= self.hi:
            raise InsufficientPrecision(f"cannot invert an interval containing 0: {self}")
        return DecimalInterval(1 / self.hi, 1 / self.lo)

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.reciprocal() * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, DecimalInterval):
            return self * other.reciprocal()
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return DecimalInterval(Fraction(0), max(-self.lo, self.hi))

    def sign(self) -> int:
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        raise InsufficientPrecision(f"sign undecidable on {self}")

    def is_integer(self) -> bool:
        if math.ceil(self.lo) <= self.hi:
            raise InsufficientPrecision(f"integrality undecidable on {self}")
        return False

    def __floor__(self) -> int:
        f = math.floor(self.lo)
        if math.floor(self.hi) != f:
            raise InsufficientPrecision(f"floor undecidable on {self}")
        return f

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def __lt__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.hi < o[0]:
            return True
        if self.lo >= o[1]:
            return False
        raise InsufficientPrecision(f"comparison undecidable: {self} < {other}")

    def __le__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.hi <= o[0]:
            return True
        if self.lo > o[1]:
            return False
        raise InsufficientPrecision(f"comparison undecidable: {self} <= {other}")

    def __gt__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.lo > o[1]:
            return True
        if self.hi <= o[0]:
            return False
        raise InsufficientPrecision(f"comparison undecidable: {self} > {other}")

    def __ge__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.lo >= o[1]:
            return True
        if self.hi < o[0]:
            return False
        raise InsufficientPrecision(f"comparison undecidable: {self} >= {other}")

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __str__(self):
        return f"[{_fmt_decimal(self.lo)}, {_fmt_decimal(self.hi)}]"


def _fmt_decimal(f: Fraction, digits: int = 45) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        return str(decimal.Decimal(f.numerator) / decimal.Decimal(f.denominator))


# ---------------------------------------------------------------------------
# Generic real helpers

Real = Union[Fraction, QuadraticSurd, DecimalInterval]


def as_real(x) -> Real:
    if isinstance(x, (Fraction, QuadraticSurd, DecimalInterval)):
        return x
    if isinstance(x, BigRational):
        return x.to_fraction()
    if isinstance(x, str):
        return parse_real(x)
    return Fraction(x)


def sign(x) -> int:
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    return x.sign()


def is_integer(x) -> bool:
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    return x.is_integer()


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction, BigRational))


def floor_scaled(x, n: int) -> int:
    """``floor(n*x)``; intervals must not straddle an integer."""
    x = as_real(x)
    return math.floor(n * x)


def simplest_rational(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational of least denominator in the closed interval ``[lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational(-hi, -lo)
    # continued-fraction descent; both ends share the integer part at each level
    p0, q0, p1, q1 = 0, 1, 1, 0
    while True:
        a = math.floor(lo)
        if a == lo or math.floor(hi) > a:
            a = math.ceil(lo)
            return Fraction(a * p1 + p0, a * q1 + q0)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        lo, hi = 1 / (hi - a), 1 / (lo - a)


# ---------------------------------------------------------------------------
# Literal syntax: "num/den", "quad:a,b,d,c", "dec:<decimal>:<error-bound>"


def parse_rational(text: str) -> Fraction:
    try:
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            if int(den) == 0:
                raise ParseError("infinity is not a valid real input")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad rational literal {text!r}") from exc


def parse_real(text: str) -> Real:
    text = text.strip()
    try:
        if text.startswith("quad:"):
            parts = [int(t) for t in text[5:].split(",")]
            if len(parts) != 4:
                raise ParseError("quad literal needs a,b,d,c")
            a, b, d, c = parts
            return QuadraticSurd.make(a, b, d, c)
        if text.startswith("dec:"):
            _, digits, err = text.split(":")
            return DecimalInterval.from_decimal(digits, err)
    except ParseError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad real literal {text!r}: {exc}") from exc
    return parse_rational(text)


def format_real(x) -> str:
    if isinstance(x, BigRational):
        return str(x)
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}"
    return str(x)
