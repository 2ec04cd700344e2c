import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from farey_cf.errors import (
    InsufficientPrecision,
    NotInvertible,
    ParseError,
    ZeroDenominator,
    ZeroOverZero,
)
from farey_cf.exact import (
    INF,
    BigRational,
    DecimalInterval,
    QuadraticSurd,
    ext_gcd,
    farey_diff,
    farey_sum,
    floor_scaled,
    iterated_mediant,
    mod_inverse,
    parse_real,
    reduce,
    simplest_rational,
)

mpmath.mp.dps = 110


def test_reduce_cancels_gcd():
    assert reduce(22, 40) == BigRational(11, 20)
    assert reduce(33, 120) == BigRational(11, 40)


def test_reduce_infinity_and_signs():
    assert reduce(1, 0) is INF or reduce(1, 0) == INF
    assert reduce(-5, 0) == INF
    assert reduce(-6, -10) == BigRational(3, 5)
    assert reduce(6, -10) == BigRational(-3, 5)


def test_reduce_zero_over_zero():
    with pytest.raises(ZeroOverZero):
        reduce(0, 0)


def test_bigrational_rejects_unreduced():
    with pytest.raises(ValueError):
        BigRational(2, 4)
    with pytest.raises(ValueError):
        BigRational(2, 0)


def test_bigrational_orders_infinity_last_and_hashes_like_fraction():
    assert BigRational(7, 2) < INF
    assert not INF < BigRational(10**9, 1)
    assert hash(BigRational(3, 10)) == hash(Fraction(3, 10))
    assert BigRational(3, 10) == Fraction(3, 10)
    with pytest.raises(ZeroDenominator):
        INF.to_fraction()


@pytest.mark.parametrize("a,b", [(35, 27), (10, 5), (55, 34), (0, 7), (-12, 18)])
def test_ext_gcd_bezout(a, b):
    g, s, t = ext_gcd(a, b)
    assert g == math.gcd(a, b) and s * a + t * b == g


def test_ext_gcd_known_coefficients():
    assert ext_gcd(10, 5) == (5, 0, 1)
    # 55*13 + 34*(-21) = 1
    assert ext_gcd(55, 34) == (1, 13, -21)


@given(st.integers(-(10**12), 10**12), st.integers(-(10**12), 10**12))
def test_ext_gcd_random(a, b):
    if a == 0 and b == 0:
        return
    g, s, t = ext_gcd(a, b)
    assert g > 0 and s * a + t * b == g and g == math.gcd(a, b)


@pytest.mark.parametrize("a,p,inv", [(3, 5, 2), (4, 5, 4), (7, 5, 3)])
def test_mod_inverse_examples(a, p, inv):
    assert mod_inverse(a, p) == inv


def test_mod_inverse_all_small_primes():
    for p in (2, 3, 5, 7, 11, 13):
        for a in range(1, p):
            assert a * mod_inverse(a, p) % p == 1
    with pytest.raises(NotInvertible):
        mod_inverse(10, 5)


def test_farey_sum_raw_and_reduced():
    assert farey_sum(BigRational(1, 5), BigRational(2, 5)).reduced() == Fraction(3, 10)
    raw = farey_sum(BigRational(4, 25), BigRational(6, 25))
    assert (raw.num, raw.den) == (10, 50) and raw.reduced() == Fraction(1, 5)
    raw = farey_sum(BigRational(13, 50), BigRational(22, 85))
    assert (raw.num, raw.den) == (35, 135) and raw.reduced() == Fraction(7, 27)


def test_farey_diff():
    assert farey_diff(BigRational(11, 40), BigRational(4, 15)).reduced() == Fraction(7, 25)
    assert farey_diff(BigRational(3, 10), BigRational(1, 5)).reduced() == Fraction(2, 5)
    with pytest.raises(ZeroDenominator):
        farey_diff(BigRational(3, 10), BigRational(3, 10))


@given(st.fractions(), st.fractions())
def test_farey_diff_inverts_sum(p, r):
    if p.denominator == r.denominator:
        return
    s = farey_sum(p, r)
    back = farey_diff(s, p)
    assert (back.num, back.den) == (r.numerator, r.denominator)


@pytest.mark.parametrize("k,expected", [(1, Fraction(3, 10)), (2, Fraction(4, 15)), (4, Fraction(6, 25))])
def test_iterated_mediant(k, expected):
    assert iterated_mediant(k, BigRational(1, 5), BigRational(2, 5)).reduced() == expected


def test_floor_scaled_rationals():
    assert floor_scaled(Fraction(11, 40), 5) == 1
    assert floor_scaled(Fraction(7, 27), 5) == 1


def test_floor_scaled_interval_against_mpmath():
    digits = mpmath.nstr(1 / mpmath.pi, 35, strip_zeros=False)
    x = DecimalInterval.from_decimal(digits, "1e-30")
    assert floor_scaled(x, 5) == int(mpmath.floor(5 / mpmath.pi)) == 1


def test_interval_straddling_an_integer_is_undecidable():
    x = DecimalInterval(Fraction(199, 1000), Fraction(201, 1000))
    with pytest.raises(InsufficientPrecision):
        floor_scaled(x, 5)
    with pytest.raises(InsufficientPrecision):
        _ = x < Fraction(1, 5)


def test_surd_normalisation_is_structural():
    assert QuadraticSurd.make(2, 2, 8, 4) == QuadraticSurd.make(1, 2, 2, 2)
    assert QuadraticSurd.make(3, 0, 5, 6) == Fraction(1, 2)
    assert QuadraticSurd.make(0, 1, 9, 1) == 3


def test_surd_floor_and_arithmetic():
    s2 = QuadraticSurd.make(0, 1, 2, 1)
    assert math.floor(s2) == 1 and math.ceil(s2) == 2
    assert s2 * s2 == 2 and isinstance(s2 * s2, Fraction)
    inv = 1 / (s2 - 1)  # sqrt(2) + 1
    assert inv == s2 + 1
    assert math.floor(-s2) == -2


@settings(max_examples=300)
@given(
    st.integers(-50, 50), st.integers(-20, 20).filter(bool), st.integers(2, 200), st.integers(1, 40),
    st.integers(-50, 50), st.integers(-20, 20).filter(bool), st.integers(1, 40),
)
def test_surd_comparison_matches_100_digit_decimal(a, b, d, c, a2, b2, c2):
    x, y = QuadraticSurd.make(a, b, d, c), QuadraticSurd.make(a2, b2, d, c2)
    fx = (a + b * mpmath.sqrt(d)) / c
    fy = (a2 + b2 * mpmath.sqrt(d)) / c2
    if fx == fy:
        assert x == y
        return
    assert (x < y) == (fx < fy)
    if isinstance(x, QuadraticSurd):
        assert math.floor(x) == int(mpmath.floor(fx))


def test_simplest_rational():
    assert simplest_rational(Fraction(3, 10), Fraction(1, 3)) == Fraction(1, 3)
    assert simplest_rational(Fraction(31, 100), Fraction(32, 100)) == Fraction(5, 16)
    assert simplest_rational(Fraction(-1, 3), Fraction(1, 3)) == 0


def test_parse_real_forms():
    assert parse_real("11/40") == Fraction(11, 40)
    assert parse_real("-3") == -3
    assert isinstance(parse_real("quad:0,1,2,1"), QuadraticSurd)
    x = parse_real("dec:0.25:1e-3")
    assert Fraction(1, 4) in x
    for bad in ("1/0", "abc", "quad:1,2", "dec:0.1:0", "1/2/3"):
        with pytest.raises(ParseError):
            parse_real(bad)
