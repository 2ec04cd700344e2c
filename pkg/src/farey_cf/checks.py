"""Cross-module invariants, random input generators and the seeded fuzz driver
used by the ``fuzz`` subcommand and the test suite."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .best import brute_force_best, best_via_convergents
from .exact import QuadraticSurd, as_real, is_rational
from .expansion import (
    CFExpansion,
    Term,
    choose_b,
    enumerate_all_expansions,
    evaluate,
    expand_max_plus_one,
    fins,
    iter_convergents,
    select_max_plus_one,
    validate,
)
from .graph import GeneralRational, MediantPoint, Modulus, classify

TAIL_LOOKAHEAD = 10


# ---------------------------------------------------------------------------
# Random inputs


def random_rational(rng: random.Random, max_den: int) -> Fraction:
    """Uniform over reduced a/d with 1 <= d <= max_den and 0 <= a/d < 2."""
    while True:
        d = rng.randint(1, max_den)
        a = rng.randrange(0, 2 * d)
        if math.gcd(a, d) == 1:
            return Fraction(a, d)


def random_vertex(rng: random.Random, m: Modulus, max_den: int) -> Fraction:
    while True:
        d = m.N * rng.randint(1, max(1, max_den // m.N))
        a = rng.randrange(-d, 2 * d)
        if math.gcd(a, d) == 1:
            return Fraction(a, d)


def random_outside(rng: random.Random, m: Modulus, max_den: int) -> Fraction:
    """A rational outside both X_N and B_N."""
    while True:
        x = random_rational(rng, max_den)
        if isinstance(classify(x, m), GeneralRational):
            return x


def random_mixed(rng: random.Random, m: Modulus, max_den: int) -> Fraction:
    """Cycle the regimes so that vertices, B-set points and mediant points
    are not drowned out by generic rationals."""
    kind = rng.randrange(4)
    if kind == 0:
        return random_vertex(rng, m, max_den)
    if kind == 1:
        k = rng.randrange(m.l)
        d = m.p**k * (1 if m.p == 2 or rng.random() < 0.5 else 2)
        while True:
            a = rng.randrange(-3 * d, 3 * d)
            if math.gcd(a, d) == 1:
                return Fraction(a, d)
    if kind == 2 and m.p != 2:
        while True:
            t = rng.randrange(-2 * m.N, 2 * m.N)
            if t % m.p and (t + 1) % m.p:
                return Fraction(2 * t + 1, 2 * m.N)
    return random_rational(rng, max_den)


def random_surd(rng: random.Random) -> QuadraticSurd:
    while True:
        d = rng.randint(2, 60)
        if math.isqrt(d) ** 2 != d:
            return QuadraticSurd.make(rng.randint(-5, 5), rng.choice([-3, -2, -1, 1, 2, 3]), d, rng.randint(1, 7))


# ---------------------------------------------------------------------------
# Single-expansion invariants


def outside_x(x, m: Modulus) -> bool:
    """True for rationals that are not vertices (the Q minus X_N case)."""
    return is_rational(x) and Fraction(x).denominator % m.N != 0


def structural_violations(e: CFExpansion, x, count: Optional[int] = None) -> list[str]:
    """Convergent and fin invariants of one expansion of ``x``.

    ``count`` bounds how many tail terms are inspected (default: the finite
    terms plus ``TAIL_LOOKAHEAD``).
    """
    m, out = e.modulus, []
    x = as_real(x)
    if count is None:
        count = len(e.terms) + (0 if e.is_finite or e.truncated else TAIL_LOOKAHEAD)
    out += [f"validate {v}" for v in validate(e)]
    pairs = list(itertools.islice(iter_convergents(e), count + 1))
    prev = (1, 0)
    for i, (p_i, q_i) in enumerate(pairs):
        if math.gcd(p_i, q_i) != 1:
            out.append(f"gcd(p_{i}, q_{i}) != 1")
        if q_i % m.N:
            out.append(f"N does not divide q_{i} = {q_i}")
        if i and q_i <= prev[1]:
            out.append(f"q_{i} not increasing")
        if abs(p_i * prev[1] - q_i * prev[0]) != m.N:
            out.append(f"determinant at {i} is not +-N")
        prev = (p_i, q_i)
    strict = not outside_x(x, m)
    for i, y in enumerate(fins(e, x, count), start=1):
        if abs(y) > 1 or (strict and abs(y) == 1):
            out.append(f"fin y_{i} = {y} out of range")
    if e.is_finite and evaluate(e) != x:
        out.append(f"evaluates to {evaluate(e)}, not {x}")
    if not e.is_finite and not e.truncated and evaluate(e) != x:
        out.append(f"tailed value {evaluate(e)} differs from {x}")
    return out


def tail_law_violations(x: Fraction, m: Modulus, lookahead: int = TAIL_LOOKAHEAD) -> list[str]:
    """|q_k x - p_k| = 1/s for N_x <= k <= N_x + lookahead.

    Here x = r/(p^k s) with p not dividing s, so s = s1 + s2 is the p-free
    part of den(x), not den(x) itself.
    """
    cls = classify(x, m)
    target = Fraction(1, cls.s1 + cls.s2)
    out = []
    for e in expand_max_plus_one(x, m).expansions:
        pairs = list(itertools.islice(iter_convergents(e), cls.nx + lookahead + 1))
        for k in range(cls.nx, cls.nx + lookahead + 1):
            p_k, q_k = pairs[k]
            if abs(q_k * x - p_k) != target:
                out.append(f"{e.tail.value}: |q_{k} x - p_{k}| = {abs(q_k * x - p_k)}")
    return out


def max_plus_one_violations(x: Fraction, m: Modulus) -> list[str]:
    """Fast expansion against the enumeration oracle for a vertex.

    Checked: containment in the oracle's max-+1 selection, and uniqueness of
    that selection once b is pinned to the first denominator nearest x.
    """
    out = []
    fast = expand_max_plus_one(x, m)
    sel = select_max_plus_one(enumerate_all_expansions(x, m))
    keys = {(s.b, s.terms) for s in sel}
    for e in fast.expansions:
        if (e.b, e.terms) not in keys:
            out.append(f"{e} not among the oracle's max-+1 expansions")
    b = choose_b(x, m)
    pinned = [s for s in sel if b is None or s.b == b]
    mediant = isinstance(fast.classification, MediantPoint)
    if mediant != (len(pinned) == 2) or len(pinned) not in (1, 2):
        out.append(f"{len(pinned)} max-+1 expansions with nearest b (mediant point: {mediant})")
    return out


def oracle_violations(x, m: Modulus, v_max: int) -> list[str]:
    a = brute_force_best(x, m, v_max)
    b = best_via_convergents(x, m, v_max)
    if [r.frac for r in a] != [r.frac for r in b]:
        return [f"oracle {[str(r.frac) for r in a]} != convergents {[str(r.frac) for r in b]}"]
    return []


# ---------------------------------------------------------------------------
# Driver


@dataclass
class FuzzSummary:
    modulus: Modulus
    seed: int
    trials: int = 0
    checks: int = 0
    failures: int = 0
    first: Optional[str] = None
    by_check: dict = field(default_factory=dict)

    def record(self, name: str, x, problems: list[str]) -> None:
        self.checks += 1
        self.by_check[name] = self.by_check.get(name, 0) + bool(problems)
        if problems:
            self.failures += 1
            if self.first is None:
                self.first = f"{name} at x={x}: {problems[0]}"

    def lines(self) -> list[str]:
        out = [
            f"modulus p={self.modulus.p} l={self.modulus.l} seed={self.seed} trials={self.trials}",
            f"checks={self.checks} failures={self.failures}",
        ]
        out += [f"  {k}: {v} failing" for k, v in sorted(self.by_check.items())]
        if self.first:
            out.append(f"first counterexample: {self.first}")
        return out


def run_fuzz(m: Modulus, trials: int, seed: int, max_den: int = 2000) -> FuzzSummary:
    """Deterministic given ``seed``; each trial draws one mixed-regime rational,
    one vertex and (every 50th trial) one quadratic surd."""
    rng = random.Random(seed)
    summary = FuzzSummary(m, seed)
    for t in range(trials):
        summary.trials += 1
        x = random_mixed(rng, m, max_den)
        for e in expand_max_plus_one(x, m).expansions:
            summary.record("structure", x, structural_violations(e, x))
        summary.record("oracle", x, oracle_violations(x, m, m.N * x.denominator))
        if isinstance(classify(x, m), GeneralRational):
            summary.record("tail-law", x, tail_law_violations(x, m))
        v = random_vertex(rng, m, max_den)
        summary.record("max-plus-one", v, max_plus_one_violations(v, m))
        if t % 50 == 0:
            s = random_surd(rng)
            (e,) = expand_max_plus_one(s, m, max_terms=12).expansions
            summary.record("structure", s, structural_violations(e, s))
            summary.record("oracle", s, oracle_violations(s, m, 40 * m.N))
    return summary


def corrupt(e: CFExpansion, rng: random.Random) -> tuple[CFExpansion, int]:
    """Bump one partial quotient so that p divides the matching convergent
    numerator (or a_i + e_i drops below 1); returns the corrupted copy and
    the index that was changed."""
    p = e.modulus.p
    if not e.terms:
        raise ValueError("nothing to corrupt in an expansion without terms")
    i = rng.randrange(len(e.terms))
    pairs = list(itertools.islice(iter_convergents(e), i + 1))
    pp = pairs[i][0]
    eps, a = e.terms[i]
    prev_p = pairs[i - 1][0] if i else 1
    # choose a' with a' * pp + eps * prev_p = 0 mod p, i.e. a new p | p_(i+1)
    target = (-eps * prev_p * pow(pp, -1, p)) % p
    new_a = a + ((target - a) % p or p)
    terms = list(e.terms)
    terms[i] = Term(eps, new_a)
    return CFExpansion(e.modulus, e.b, tuple(terms), e.tail, e.truncated), i + 1


def self_test(m: Modulus, seed: int) -> tuple[bool, str]:
    """Harness sanity: a deliberately corrupted expansion must be flagged at
    the index that was changed."""
    rng = random.Random(seed)
    while True:
        x = random_vertex(rng, m, 2000)
        (e,) = expand_max_plus_one(x, m).expansions
        if e.terms:
            break
    bad, index = corrupt(e, rng)
    found = [v for v in validate(bad) if v.index == index]
    msg = f"corrupted {e} at term {index}: " + (str(found[0]) if found else "not detected")
    return bool(found), msg


__all__ = [
    "FuzzSummary",
    "corrupt",
    "max_plus_one_violations",
    "oracle_violations",
    "random_mixed",
    "random_outside",
    "random_rational",
    "random_surd",
    "random_vertex",
    "run_fuzz",
    "self_test",
    "structural_violations",
    "tail_law_violations",
]
