"""Best X_N-approximations.

A vertex u/v is a best approximation of x when |v*x - u| is strictly smaller
than |v'*x - u'| for every other vertex u'/v' with 0 < v' <= v.  Two
independent routes are provided: a brute-force scan straight from that
definition, and a route through the convergents of the max-+1 expansions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .errors import NonIntegral
from .exact import BigRational, as_real, format_real, parse_real, sign
from .expansion import (
    choose_b,
    expand_max_plus_one,
    greedy_terms,
    iter_convergents,
)
from .graph import GeneralRational, Irrational, Modulus, Vertex, classify


@dataclass(frozen=True)
class ApproxRecord:
    frac: BigRational
    quality: object  # exact |v*x - u| in the arithmetic of x

    def to_json(self) -> dict:
        return {"u": self.frac.num, "v": self.frac.den, "quality": format_real(self.quality)}


@dataclass
class BestApproxReport:
    x: object
    modulus: Modulus
    method: str
    records: list[ApproxRecord]
    v_max: int
    agreement: Optional[bool] = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "x": format_real(self.x),
            "p": self.modulus.p,
            "l": self.modulus.l,
            "method": self.method,
            "v_max": self.v_max,
            "best": [r.to_json() for r in self.records],
            "agreement": self.agreement,
        }

    @classmethod
    def from_json(cls, data: dict) -> BestApproxReport:
        """Inverse of :meth:`to_json` for exact (rational or surd) inputs;
        interval inputs are printed with finite precision and do not
        round-trip."""
        records = [
            ApproxRecord(BigRational(int(r["u"]), int(r["v"])), parse_real(r["quality"]))
            for r in data["best"]
        ]
        return cls(
            parse_real(data["x"]),
            Modulus(int(data["p"]), int(data["l"])),
            data["method"],
            records,
            int(data["v_max"]),
            data.get("agreement"),
        )


def _quality(x, u: int, v: int):
    if isinstance(x, Fraction):
        return Fraction(abs(v * x.numerator - u * x.denominator), x.denominator)
    return abs(v * x - u)


def _cmp(a, b) -> int:
    """Exact three-way comparison; raises InsufficientPrecision for intervals
    that overlap."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return (a > b) - (a < b)
    return sign(a - b)


def _check_v_max(m: Modulus, v_max: int) -> None:
    if v_max < m.N:
        raise ValueError(f"v_max must be at least N = {m.N}, got {v_max}")


# ---------------------------------------------------------------------------
# Oracle


def _brute_force_rational(x: Fraction, m: Modulus, v_max: int) -> list[ApproxRecord]:
    # Integer-only version: distances are scaled by den(x).
    r, s = x.numerator, x.denominator
    best: Optional[int] = None
    out = []
    for v in range(m.N, v_max + 1, m.N):
        lo = (v * r) // s
        cands = [(abs(v * r - u * s), u) for u in {lo, lo + (v * r % s != 0)} if math.gcd(u, v) == 1]
        if not cands:
            continue
        cands.sort()
        d, u = cands[0]
        unique_here = len(cands) == 1 or cands[1][0] > d
        if unique_here and (best is None or d < best):
            out.append(ApproxRecord(BigRational(u, v), Fraction(d, s)))
        if best is None or d < best:
            best = d
    return out


def brute_force_best(x, m: Modulus, v_max: int) -> list[ApproxRecord]:
    """Scan every vertex with denominator <= ``v_max`` and keep the strict
    running-minimum records.  Ties disqualify."""
    _check_v_max(m, v_max)
    x = as_real(x)
    if isinstance(x, Fraction):
        return _brute_force_rational(x, m, v_max)
    best = None
    out = []
    for v in range(m.N, v_max + 1, m.N):
        vx = x * v
        cands = []
        for u in {math.floor(vx), math.ceil(vx)}:
            if math.gcd(u, v) == 1:
                cands.append((u, _quality(x, u, v)))
        if not cands:
            continue
        if len(cands) == 2 and _cmp(cands[1][1], cands[0][1]) < 0:
            cands.reverse()
        u, d = cands[0]
        unique_here = len(cands) == 1 or _cmp(cands[1][1], d) > 0
        improves = best is None or _cmp(d, best) < 0
        if unique_here and improves:
            out.append(ApproxRecord(BigRational(u, v), d))
        if improves:
            best = d
    return out


# ---------------------------------------------------------------------------
# Convergent route


def _bounded(pairs: Iterator[tuple[int, int]], v_max: int) -> list[tuple[int, int]]:
    return list(itertools.takewhile(lambda pq: pq[1] <= v_max, pairs))


def _greedy_convergents(x, m: Modulus) -> Iterator[tuple[int, int]]:
    b = choose_b(x, m)
    pp, qp, pc, qc = 1, 0, b, m.N
    yield pc, qc
    for eps, a in greedy_terms(x, m, b):
        pp, qp, pc, qc = pc, qc, a * pc + eps * pp, a * qc + eps * qp
        yield pc, qc


def best_via_convergents(x, m: Modulus, v_max: int) -> list[ApproxRecord]:
    """Convergents shared by every max-+1 expansion of ``x``, up to ``v_max``."""
    _check_v_max(m, v_max)
    x = as_real(x)
    cls = classify(x, m)
    if isinstance(cls, Irrational):
        # not limited by a term budget: stop on the denominator bound instead
        common = _bounded(_greedy_convergents(x, m), v_max)
    else:
        lists = [_bounded(iter_convergents(e), v_max) for e in expand_max_plus_one(x, m).expansions]
        shared = set(lists[0]).intersection(*lists[1:])
        common = [pq for pq in lists[0] if pq in shared]
    return [ApproxRecord(BigRational(u, v), _quality(x, u, v)) for u, v in common]


def basis_decompose(
    u: int, v: int, pn: tuple[int, int], pn1: tuple[int, int], m: Modulus
) -> tuple[int, int]:
    """Integers (alpha, beta) with (u, v) = alpha*(p_{n+1}, q_{n+1}) + beta*(p_n, q_n).

    The pair must be adjacent (determinant +-N); otherwise, or when the
    solution is not integral, NonIntegral is raised.
    """
    (p0, q0), (p1, q1) = pn, pn1
    det = p1 * q0 - p0 * q1
    if abs(det) != m.N:
        raise NonIntegral(f"{p0}/{q0} and {p1}/{q1} are not adjacent in F_{m.N}")
    a_num, b_num = u * q0 - v * p0, v * p1 - u * q1
    if a_num % det or b_num % det:
        raise NonIntegral(f"{u}/{v} has no integral coordinates in this basis")
    return a_num // det, b_num // det


def default_v_max(x, m: Modulus) -> Optional[int]:
    """A bound past which no best approximation can exist, None for irrationals."""
    cls = classify(x, m)
    if isinstance(cls, Irrational):
        return None
    x = as_real(x)
    if isinstance(cls, GeneralRational):
        return cls.r1.den
    if isinstance(cls, Vertex) or x.denominator % m.N == 0:
        return x.denominator
    return m.N


def verify_equivalence(x, m: Modulus, v_max: Optional[int] = None) -> BestApproxReport:
    """Run both routes and compare them, with the structural side checks."""
    x = as_real(x)
    if v_max is None:
        v_max = default_v_max(x, m)
        if v_max is None:
            raise ValueError("an irrational input needs an explicit v_max")
    oracle = brute_force_best(x, m, v_max)
    theorem = best_via_convergents(x, m, v_max)
    agree = [r.frac for r in oracle] == [r.frac for r in theorem] and all(
        _cmp(a.quality, b.quality) == 0 for a, b in zip(oracle, theorem)
    )
    report = BestApproxReport(x, m, "verify", oracle, v_max, agree)
    if isinstance(x, Fraction) and x.denominator % m.N == 0 and v_max >= x.denominator:
        last = oracle[-1] if oracle else None
        if last is None or last.frac != x or last.quality != 0:
            report.agreement = False
            report.notes.append("final record is not x itself")
        if isinstance(classify(x, m), Vertex):
            (e,) = expand_max_plus_one(x, m).expansions
            qs = [q for _, q in iter_convergents(e)]
            if len(qs) >= 2:
                gap = [r for r in oracle if qs[-2] < r.frac.den < qs[-1]]
                if gap:
                    report.agreement = False
                    report.notes.append(f"record strictly between q_(M-1) and q_M: {gap[0].frac}")
    if not agree:
        report.notes.append("oracle and convergent route disagree")
    return report


def best_report(x, m: Modulus, v_max: Optional[int], method: str = "theorem") -> BestApproxReport:
    x = as_real(x)
    if v_max is None:
        v_max = default_v_max(x, m)
        if v_max is None:
            raise ValueError("an irrational input needs an explicit v_max")
    fn = brute_force_best if method == "oracle" else best_via_convergents
    records = fn(x, m, v_max)
    report = BestApproxReport(x, m, method, records, v_max)
    if not records:
        report.notes.append("no best approximation")
    return report


__all__ = [
    "ApproxRecord",
    "BestApproxReport",
    "basis_decompose",
    "best_report",
    "best_via_convergents",
    "brute_force_best",
    "default_v_max",
    "verify_equivalence",
]
