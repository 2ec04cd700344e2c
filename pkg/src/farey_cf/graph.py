"""The graph F_N (N = p^l): vertices, adjacency, regime classification of a
real input, and the decomposition of a rational outside the vertex set as a
Farey sum of two adjacent vertices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .errors import InsufficientPrecision, InX, NotAdjacent, NotAVertex
from .exact import (
    INF,
    BigRational,
    DecimalInterval,
    QuadraticSurd,
    as_real,
    iterated_mediant,
    reduce,
    simplest_rational,
)

DEFAULT_DEN_BOUND = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24, trial division below)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n >= 3_317_044_064_679_887_385_961_981:
        return all(n % q for q in range(43, math.isqrt(n) + 1, 2))
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Modulus:
    """The prime power N = p**l parameterising the graph."""

    p: int
    l: int = 1
    N: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.l < 1:
            raise ValueError(f"l must be >= 1, got {self.l}")
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        object.__setattr__(self, "N", self.p**self.l)

    @classmethod
    def from_prime_power(cls, n: int) -> Modulus:
        for p in range(2, n + 1):
            if n % p == 0:
                l = 0
                while n % p == 0:
                    n //= p
                    l += 1
                if n != 1:
                    break
                return cls(p, l)
        raise ValueError(f"{n} is not a prime power")


# ---------------------------------------------------------------------------
# Classification regimes


@dataclass(frozen=True)
class Vertex:
    kind = "Vertex"

    def describe(self) -> str:
        return "Vertex"


@dataclass(frozen=True)
class BSet:
    """x in (1/p^k)Z-dot (``half`` false) or (1/(2p^k))Z-dot (``half`` true)."""

    k: int
    half: bool
    kind = "B-set"

    def describe(self) -> str:
        return f"B-set k={self.k} half={str(self.half).lower()}"


@dataclass(frozen=True)
class MediantPoint:
    """x = t/N (+) (t+1)/N with both flanks coprime to p."""

    t: int
    kind = "MediantPoint"

    def describe(self) -> str:
        return f"MediantPoint t={self.t}"


@dataclass(frozen=True)
class GeneralRational:
    r1: BigRational
    r2: BigRational
    s1: int
    s2: int
    nx: int
    kind = "GeneralRational"

    def describe(self) -> str:
        return (
            f"GeneralRational R1={self.r1} R2={self.r2} "
            f"s1={self.s1} s2={self.s2} Nx={self.nx}"
        )


@dataclass(frozen=True)
class Irrational:
    kind = "Irrational"

    def describe(self) -> str:
        return "Irrational"


Classification = Union[Vertex, BSet, MediantPoint, GeneralRational, Irrational]


# ---------------------------------------------------------------------------
# Vertices and edges


def _vertex(x) -> BigRational:
    return x if isinstance(x, BigRational) else BigRational.of(x)


def is_vertex(x, m: Modulus) -> bool:
    x = _vertex(x)
    return x.is_infinite or x.den % m.N == 0


def are_adjacent(P, Q, m: Modulus) -> bool:
    P, Q = _vertex(P), _vertex(Q)
    for v in (P, Q):
        if not is_vertex(v, m):
            raise NotAVertex(f"{v} is not a vertex of F_{m.N}")
    return abs(Q.num * P.den - Q.den * P.num) == m.N


def p_adic_split(n: int, p: int) -> tuple[int, int]:
    """Return ``(k, s)`` with ``n = p**k * s`` and ``p`` not dividing ``s``."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def min_mediant_exit(P, R, m: Modulus) -> int:
    """Least k >= 1 with (k-fold P) (+) R outside the vertex set."""
    P, R = _vertex(P), _vertex(R)
    if not are_adjacent(P, R, m):
        raise NotAdjacent(f"{P} and {R} are not adjacent in F_{m.N}")
    k = 1
    while is_vertex(iterated_mediant(k, P, R).reduced(), m):
        k += 1
    return k


def vertex_neighbors(
    v,
    m: Modulus,
    den_bound: int,
    window: Optional[tuple[Fraction, Fraction]] = None,
) -> list[BigRational]:
    """Vertices adjacent to ``v`` with denominator at most ``den_bound``.

    Infinity has infinitely many neighbours b/N, so for ``v = 1/0`` a real
    ``window = (lo, hi)`` is required; numerators are scanned over
    ``[floor(N*lo) - 1, ceil(N*hi) + 1]``.
    """
    v = _vertex(v)
    if not is_vertex(v, m):
        raise NotAVertex(f"{v} is not a vertex of F_{m.N}")
    N, p = m.N, m.p
    found: set[BigRational] = set()
    if v.is_infinite:
        if window is None:
            raise ValueError("neighbours of infinity need a numerator window")
        if den_bound >= N:
            lo, hi = (Fraction(w) for w in window)
            for b in range(math.floor(N * lo) - 1, math.ceil(N * hi) + 2):
                if b % p:
                    found.add(BigRational(b, N))
    else:
        if v.den == N:
            found.add(INF)
        for w in range(N, den_bound + 1, N):
            for rhs in (N, -N):
                num = w * v.num + rhs
                if num % v.den == 0:
                    u = num // v.den
                    if math.gcd(u, w) == 1:
                        found.add(BigRational(u, w))
    return sorted(found, key=lambda r: (r.den, r.num))


# ---------------------------------------------------------------------------
# Decomposition and classification


class Decomposition(NamedTuple):
    r1: BigRational
    r2: BigRational
    adjacent: bool


def decompose(x, m: Modulus) -> Decomposition:
    """Split a rational outside X_N as R1 (+) R2.

    For x = r/(p^k s) with s >= 2 this is the unique adjacent pair with
    s1 <= s2 (s_i measured in units of N).  For s = 1 the returned flanks
    ``(p^(l-k) r -+ 1)/N`` are not adjacent, and ``adjacent`` is False.
    """
    x = Fraction(x) if not isinstance(x, BigRational) else x.to_fraction()
    N, p = m.N, m.p
    if x.denominator % N == 0:
        raise InX(f"{x} is a vertex of F_{N}")
    k, s = p_adic_split(x.denominator, p)
    R = p ** (m.l - k) * x.numerator
    if s == 1:
        return Decomposition(reduce(R - 1, N), reduce(R + 1, N), False)
    inv = pow(R, -1, s)
    t = (inv * R - 1) // s
    if inv <= s - inv:
        r1, s1 = t, inv
    else:
        r1, s1 = R - t, s - inv
    r2, s2 = R - r1, s - s1
    R1, R2 = BigRational(r1, N * s1), BigRational(r2, N * s2)
    return Decomposition(R1, R2, True)


def in_b_set(x: Fraction, m: Modulus) -> Optional[BSet]:
    """Membership in B_N; returns the regime or None."""
    if x.denominator % m.N == 0:
        return None
    k, s = p_adic_split(x.denominator, m.p)
    if s == 1:
        return BSet(k, False)
    if s == 2 and m.p != 2:
        return BSet(k, True)
    return None


def mediant_point_t(x: Fraction, m: Modulus) -> Optional[int]:
    """t when x = t/N (+) (t+1)/N with both flanks coprime to p, else None."""
    if m.p == 2 or x.denominator != 2 * m.N:
        return None
    t = x.numerator // 2
    if t % m.p and (t + 1) % m.p:
        return t
    return None


def classify(x, m: Modulus, den_bound: int = DEFAULT_DEN_BOUND) -> Classification:
    """Place ``x`` in exactly one regime.

    Interval inputs are reported Irrational only when they contain no
    rational of denominator <= ``den_bound``.
    """
    x = as_real(x)
    if isinstance(x, QuadraticSurd):
        return Irrational()
    if isinstance(x, DecimalInterval):
        if simplest_rational(x.lo, x.hi).denominator <= den_bound:
            raise InsufficientPrecision(
                f"interval {x} contains a rational of denominator <= {den_bound}"
            )
        return Irrational()
    if x.denominator % m.N == 0:
        t = mediant_point_t(x, m)
        return Vertex() if t is None else MediantPoint(t)
    b = in_b_set(x, m)
    if b is not None:
        return b
    from .expansion import outside_nx

    r1, r2, _ = decompose(x, m)
    nx = outside_nx(x, m)
    return GeneralRational(r1, r2, r1.den // m.N, r2.den // m.N, nx)
