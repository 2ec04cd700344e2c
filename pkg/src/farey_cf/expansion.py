"""F_N-continued fractions

    1/(0+) N/(b+) e1/(a1+) e2/(a2+) ...

their convergents and fins, the maximum-+1 expansion algorithm, exhaustive
enumeration of the finite expansions of a vertex, and the path view.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

from .errors import (
    CountExceedsLength,
    EmptyAfterFilter,
    NotInX,
    NotWellDirected,
    ParseError,
    SignMismatch,
)
from .exact import (
    INF,
    BigRational,
    DecimalInterval,
    as_real,
    is_integer,
    is_rational,
    reduce,
    sign,
)
from .graph import (
    BSet,
    Classification,
    Irrational,
    MediantPoint,
    Modulus,
    Vertex,
    are_adjacent,
    classify,
)

DEFAULT_MAX_TERMS = 64


class Tail(enum.Enum):
    """Symbolic infinite continuation appended after the finite terms.

    PLUS is (+1,2), (-1,2), (-1,2), ... (fin value +1);
    MINUS is (-1,2), (-1,2), ... (fin value -1).
    """

    NONE = "none"
    PLUS = "plus"
    MINUS = "minus"


class Term(NamedTuple):
    eps: int
    a: int


@dataclass(frozen=True)
class CFExpansion:
    modulus: Modulus
    b: int
    terms: tuple[Term, ...] = ()
    tail: Tail = Tail.NONE
    truncated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(Term(*t) for t in self.terms))

    @property
    def is_finite(self) -> bool:
        return self.tail is Tail.NONE and not self.truncated

    def iter_terms(self) -> Iterator[Term]:
        yield from self.terms
        if self.tail is Tail.PLUS:
            yield Term(1, 2)
        if self.tail is not Tail.NONE:
            yield from itertools.repeat(Term(-1, 2))

    def plus_count(self) -> int:
        """Number of +1 partial numerators among e2, e3, ... of the finite part."""
        return sum(1 for t in self.terms[1:] if t.eps == 1)

    def text(self) -> str:
        pieces = ["1/0", f"{self.modulus.N}/{self.b}"]
        pieces += [f"{t.eps}/{t.a}" for t in self.terms]
        out = "+ ".join(pieces)
        if self.tail is Tail.PLUS:
            out += "+ tail:+"
        elif self.tail is Tail.MINUS:
            out += "+ tail:-"
        if self.truncated:
            out += "+ ..."
        return out

    def __str__(self):
        return self.text()

    def to_json(self) -> dict:
        out = {
            "p": self.modulus.p,
            "l": self.modulus.l,
            "b": self.b,
            "terms": [[t.eps, t.a] for t in self.terms],
            "tail": self.tail.value,
        }
        if self.truncated:
            out["truncated"] = True
        return out

    @classmethod
    def from_json(cls, data: dict) -> CFExpansion:
        return cls(
            Modulus(int(data["p"]), int(data["l"])),
            int(data["b"]),
            tuple(Term(int(e), int(a)) for e, a in data["terms"]),
            Tail(data.get("tail", "none")),
            bool(data.get("truncated", False)),
        )


def parse_expansion(text: str, m: Modulus) -> CFExpansion:
    """Inverse of :meth:`CFExpansion.text`."""
    pieces = [s.strip() for s in text.strip().split("+ ")]
    if len(pieces) < 2 or pieces[0] != "1/0":
        raise ParseError(f"expansion must start with '1/0+ N/b': {text!r}")
    truncated = pieces[-1] == "..."
    if truncated:
        pieces.pop()
    tail = Tail.NONE
    if pieces[-1] in ("tail:+", "tail:-"):
        tail = Tail.PLUS if pieces.pop() == "tail:+" else Tail.MINUS
    try:
        n, b = (int(v) for v in pieces[1].split("/"))
        terms = tuple(Term(*(int(v) for v in t.split("/"))) for t in pieces[2:])
    except ValueError as exc:
        raise ParseError(f"bad expansion literal {text!r}") from exc
    if n != m.N:
        raise ParseError(f"expansion is for N={n}, expected {m.N}")
    return CFExpansion(m, b, terms, tail, truncated)


# ---------------------------------------------------------------------------
# Validation, convergents, values, fins


class Violation(NamedTuple):
    index: int
    rule: str

    def __str__(self):
        return f"i={self.index}: {self.rule}"


def iter_convergents(e: CFExpansion) -> Iterator[tuple[int, int]]:
    """Yield (p_i, q_i) for i = 0, 1, ...; infinite when a tail is present."""
    pp, qp, pc, qc = 1, 0, e.b, e.modulus.N
    yield pc, qc
    for eps, a in e.iter_terms():
        pp, qp, pc, qc = pc, qc, a * pc + eps * pp, a * qc + eps * qp
        yield pc, qc


def convergents(e: CFExpansion, count: Optional[int] = None) -> list[tuple[int, int]]:
    """The first ``count`` convergents (all of them for a finite expansion)."""
    available = None if e.tail is not Tail.NONE else len(e.terms) + 1
    if count is None:
        if available is None:
            raise CountExceedsLength("a tailed expansion needs an explicit count")
        count = available
    if available is not None and count > available:
        raise CountExceedsLength(f"asked for {count} convergents, have {available}")
    return list(itertools.islice(iter_convergents(e), count))


def validate(e: CFExpansion) -> list[Violation]:
    """Check the defining conditions; an empty list means the expansion is valid.

    Tail convergents are checked for p-coprimality through one full period
    mod p, after which the numerators repeat mod p.
    """
    p, out = e.modulus.p, []
    if math.gcd(e.b, p) != 1:
        out.append(Violation(0, f"gcd(b, p) = gcd({e.b}, {p}) != 1"))
    n = len(e.terms)
    horizon = n + (p + 2 if e.tail is not Tail.NONE else 0)
    terms = list(itertools.islice(e.iter_terms(), horizon))
    for i, (eps, a) in enumerate(terms, start=1):
        if eps not in (1, -1):
            out.append(Violation(i, f"eps_{i} = {eps} not in {{1, -1}}"))
        if a < 1:
            out.append(Violation(i, f"a_{i} = {a} < 1"))
        if a + eps < 1:
            out.append(Violation(i, f"a_{i} + eps_{i} = {a + eps} < 1"))
        if i < len(terms) and a + terms[i].eps < 1:
            out.append(Violation(i, f"a_{i} + eps_{i + 1} = {a + terms[i].eps} < 1"))
    pairs = list(itertools.islice(iter_convergents(e), horizon + 1))
    for i, (pi, qi) in enumerate(pairs):
        if i and pi % p == 0:
            out.append(Violation(i, f"p divides p_{i} = {pi}"))
        if i and qi <= pairs[i - 1][1]:
            out.append(Violation(i, f"q_{i} = {qi} does not exceed q_{i - 1}"))
    return out


def evaluate(e: CFExpansion):
    """Exact value (BigRational) or, for a truncated expansion, an enclosure."""
    pairs = convergents(e, len(e.terms) + 1) if e.tail is not Tail.NONE else convergents(e)
    pn, qn = pairs[-1]
    pp, qp = pairs[-2] if len(pairs) > 1 else (1, 0)
    if e.tail is not Tail.NONE:
        s = 1 if e.tail is Tail.PLUS else -1
        return reduce(pn + s * pp, qn + s * qp)
    if not e.truncated:
        return reduce(pn, qn)
    ends = [Fraction(pn, qn), Fraction(pn + pp, qn + qp), Fraction(pn - pp, qn - qp)]
    return DecimalInterval(min(ends), max(ends))


def fins(e: CFExpansion, x, count: Optional[int] = None) -> list:
    """The fins y_1, ..., y_{count+1} of ``e`` read off from the real ``x``.

    ``count`` defaults to the number of finite terms; a finite expansion of
    its own value must end with a zero fin.
    """
    x = as_real(x)
    if count is None:
        count = len(e.terms)
    y = e.modulus.N * x - e.b
    out = [y]
    for i, (eps, a) in enumerate(itertools.islice(e.iter_terms(), count), start=1):
        if sign(y) != eps:
            raise SignMismatch(f"fin y_{i} has sign {sign(y)}, term says {eps}")
        y = 1 / abs(y) - a
        out.append(y)
    if e.is_finite and count >= len(e.terms) and sign(y) != 0:
        raise SignMismatch(f"finite expansion leaves non-zero fin {y}")
    return out


# ---------------------------------------------------------------------------
# Maximum +1 expansion


def choose_b(x, m: Modulus) -> Optional[int]:
    """First partial denominator of the max-+1 expansion, None on a tie
    with the mediant of the two flanking b/N."""
    N, p = m.N, m.p
    f = math.floor(N * x)
    if (f + 1) % p == 0:
        return f
    if f % p == 0:
        return f + 1
    mediant = Fraction(2 * f + 1, 2 * N)
    if x < mediant:
        return f
    if x > mediant:
        return f + 1
    return None


def greedy_terms(x, m: Modulus, b: int) -> Iterator[Term]:
    """Max-+1 partial quotients of ``x`` after ``b``.

    a_i is floor(1/|y_i|) unless that makes p | p_i, in which case the next
    integer is used.  When 1/|y_i| is an integer, a_i = 1/|y_i| is taken if
    it is admissible (the expansion then closes on x, which is a vertex);
    otherwise a_i = 1/|y_i| - 1.  Stops at a zero fin, or at a fin of
    absolute value 1, which for a rational outside X_N marks the start of the
    symbolic tail.
    """
    p, N = m.p, m.N
    pp, pc = 1, b
    y = N * x - b
    while True:
        s = sign(y)
        if s == 0 or (is_rational(y) and abs(y) == 1):
            return
        inv = 1 / abs(y)
        forbidden = (-s * pp * pow(pc, -1, p)) % p
        if is_integer(inv):
            a = int(inv)
            if a % p == forbidden:
                a -= 1
        else:
            a = math.floor(inv)
            if a % p == forbidden:
                a += 1
        yield Term(s, a)
        pp, pc = pc, a * pc + s * pp
        y = inv - a


class ExpansionResult(NamedTuple):
    expansions: tuple[CFExpansion, ...]
    classification: Classification


def _order(exps) -> tuple[CFExpansion, ...]:
    unique = {(e.b, e.terms, e.tail): e for e in exps}.values()
    return tuple(sorted(unique, key=lambda e: (e.b, e.tail is Tail.PLUS, e.terms)))


def _outside_pair(x: Fraction, m: Modulus) -> tuple[CFExpansion, ...]:
    """The two expansions of a rational outside X_N (and outside B_N).

    The greedy run on x reaches a fin equal to +1 right after the convergent
    R2; the fin is then realised either as the PLUS tail or, equivalently,
    by raising the last partial quotient by 2 and continuing with MINUS.
    """
    b = choose_b(x, m)
    terms = tuple(greedy_terms(x, m, b))
    eps, a = terms[-1]
    return _order(
        [
            CFExpansion(m, b, terms, Tail.PLUS),
            CFExpansion(m, b, terms[:-1] + (Term(eps, a + 2),), Tail.MINUS),
        ]
    )


def outside_nx(x: Fraction, m: Modulus) -> int:
    """N_x: index of R1 among the convergents of x's max-+1 expansions."""
    return len(tuple(greedy_terms(x, m, choose_b(x, m)))) - 1


def expand_max_plus_one(x, m: Modulus, max_terms: int = DEFAULT_MAX_TERMS) -> ExpansionResult:
    """The max-+1 expansion(s) of ``x`` together with its regime.

    Vertices (other than mediant points) and irrationals have exactly one;
    mediant points, B-set points and the other rationals outside the vertex
    set have two.  Irrational expansions stop after ``max_terms`` terms and
    are flagged ``truncated``.
    """
    x = as_real(x)
    cls = classify(x, m)
    N = m.N
    if isinstance(cls, (Vertex, Irrational)):
        b = choose_b(x, m)
        gen = greedy_terms(x, m, b)
        if isinstance(cls, Vertex):
            return ExpansionResult((CFExpansion(m, b, tuple(gen)),), cls)
        terms = tuple(itertools.islice(gen, max_terms))
        return ExpansionResult((CFExpansion(m, b, terms, truncated=True),), cls)
    if isinstance(cls, MediantPoint):
        t = cls.t
        pair = (CFExpansion(m, t, (Term(1, 2),)), CFExpansion(m, t + 1, (Term(-1, 2),)))
        return ExpansionResult(pair, cls)
    if isinstance(cls, BSet):
        f = math.floor(N * x)
        if cls.half:
            pair = (
                CFExpansion(m, f, (Term(1, 3),), Tail.MINUS),
                CFExpansion(m, f + 1, (Term(-1, 3),), Tail.MINUS),
            )
        else:
            pair = (CFExpansion(m, f - 1, (), Tail.PLUS), CFExpansion(m, f + 1, (), Tail.MINUS))
        return ExpansionResult(pair, cls)
    return ExpansionResult(_outside_pair(x, m), cls)


# ---------------------------------------------------------------------------
# Exhaustive enumeration for vertices


def enumerate_all_expansions(x, m: Modulus) -> list[CFExpansion]:
    """Every finite F_N-continued fraction with value ``x`` (a vertex).

    Depth-first over partial quotients with |1/|y_i| - a_i| <= 1; the
    convergent denominators strictly increase and the last one is den(x),
    which bounds the search.
    """
    x = Fraction(x) if not isinstance(x, BigRational) else x.to_fraction()
    N, p = m.N, m.p
    if x.denominator % N:
        raise NotInX(f"{x} is not a vertex of F_{N}")
    cap = x.denominator
    found: list[CFExpansion] = []

    def dfs(b, pp, qp, pc, qc, y, terms):
        if y == 0:
            found.append(CFExpansion(m, b, tuple(terms)))
            return
        eps = 1 if y > 0 else -1
        inv = 1 / abs(y)
        for a in range(max(1, math.ceil(inv - 1)), math.floor(inv + 1) + 1):
            if a + eps < 1:
                continue
            ny = inv - a
            if a == 1 and ny < 0:
                continue
            pn, qn = a * pc + eps * pp, a * qc + eps * qp
            if pn % p == 0 or qn <= qc or qn > cap:
                continue
            terms.append(Term(eps, a))
            dfs(b, pc, qc, pn, qn, ny, terms)
            terms.pop()

    for b in range(math.floor(N * x) - 1, math.ceil(N * x) + 2):
        y = N * x - b
        if b % p and abs(y) <= 1:
            dfs(b, 1, 0, b, N, y, [])
    return sorted(found, key=lambda e: (e.b, e.terms))


def select_max_plus_one(expansions) -> list[CFExpansion]:
    """Drop expansions ending in +1/1, keep those with the most e_i = +1 (i >= 2)."""
    kept = [e for e in expansions if not e.terms or e.terms[-1] != (1, 1)]
    if not kept:
        raise EmptyAfterFilter("every expansion ends with +1/1")
    best = max(e.plus_count() for e in kept)
    return [e for e in kept if e.plus_count() == best]


# ---------------------------------------------------------------------------
# Path view


class EdgeKind(enum.Enum):
    START = "start"  # the vertex infinity itself
    FIRST = "first"  # infinity -> P_0 and P_0 -> P_1: no direction is defined
    CHANGING = "changing"
    RETAINING = "retaining"


class PathStep(NamedTuple):
    vertex: BigRational
    kind: EdgeKind


def _between(a: BigRational, mid: BigRational, b: BigRational) -> bool:
    return min(a, b) < mid < max(a, b)


def to_path(e: CFExpansion, count: Optional[int] = None) -> list[PathStep]:
    """Vertices infinity, P_0, ..., P_n with the kind of the edge entering each.

    ``count`` limits the number of convergents (required with a tail).
    Raises NotWellDirected when the path breaks a well-directedness rule.
    """
    m = e.modulus
    verts = [reduce(pi, qi) for pi, qi in convergents(e, count)]
    raw = convergents(e, count)
    for (pi, qi), v in zip(raw, verts):
        if v.den != qi:
            raise NotWellDirected(f"convergent {pi}/{qi} is not reduced")
    path = [PathStep(INF, EdgeKind.START)]
    chain = [INF] + verts
    for j in range(1, len(chain)):
        prev, cur = chain[j - 1], chain[j]
        if not are_adjacent(prev, cur, m):
            raise NotWellDirected(f"{prev} and {cur} are not adjacent")
        if j <= 2:
            path.append(PathStep(cur, EdgeKind.FIRST))
            continue
        before = chain[j - 2]
        if _between(before, cur, prev):
            kind = EdgeKind.CHANGING
        elif _between(before, prev, cur):
            kind = EdgeKind.RETAINING
        else:
            raise NotWellDirected(f"edge {prev} -> {cur} doubles back past {before}")
        path.append(PathStep(cur, kind))
    # P_{i-1} ~ P_{i+1} forces P_{i+1} -> P_{i+2} to change direction
    for j in range(1, len(chain) - 2):
        if are_adjacent(chain[j - 1], chain[j + 1], m) and path[j + 2].kind is not EdgeKind.CHANGING:
            raise NotWellDirected(
                f"{chain[j - 1]} ~ {chain[j + 1]} but edge into {chain[j + 2]} retains direction"
            )
    return path
