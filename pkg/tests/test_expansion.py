import itertools
import json
from fractions import Fraction

import pytest

from farey_cf.errors import CountExceedsLength, NotInX, NotWellDirected, ParseError, SignMismatch
from farey_cf.exact import INF, BigRational, QuadraticSurd, parse_real
from farey_cf.expansion import (
    CFExpansion,
    EdgeKind,
    Tail,
    Term,
    convergents,
    enumerate_all_expansions,
    evaluate,
    expand_max_plus_one,
    fins,
    iter_convergents,
    parse_expansion,
    select_max_plus_one,
    to_path,
    validate,
)
from farey_cf.graph import BSet, GeneralRational, MediantPoint, Modulus

F5 = Modulus(5, 1)
F25 = Modulus(5, 2)

ELEVEN_FORTIETHS = {
    "1/0+ 5/1+ 1/2+ 1/1+ 1/1+ 1/1",
    "1/0+ 5/1+ 1/2+ 1/2+ -1/2",
    "1/0+ 5/1+ 1/2+ 1/1+ 1/2",
    "1/0+ 5/1+ 1/3+ -1/2+ 1/1",
    "1/0+ 5/1+ 1/3+ -1/3",
    "1/0+ 5/2+ -1/2+ -1/2+ 1/2",
    "1/0+ 5/2+ -1/2+ -1/3+ -1/2",
    "1/0+ 5/2+ -1/2+ -1/2+ 1/1+ 1/1",
}


def e5(text):
    return parse_expansion(text, F5)


def fracs(pairs):
    return [Fraction(p, q) for p, q in pairs]


def test_text_round_trip():
    for text in ELEVEN_FORTIETHS | {"1/0+ 5/1+ 1/3+ 1/2+ 1/1+ 1/3+ tail:-", "1/0+ 5/2+ ..."}:
        assert e5(text).text() == text
    with pytest.raises(ParseError):
        e5("1/0+ 25/1+ 1/2")
    with pytest.raises(ParseError):
        e5("5/1+ 1/2")


def test_json_round_trip():
    for text in ELEVEN_FORTIETHS:
        e = e5(text)
        assert CFExpansion.from_json(json.loads(json.dumps(e.to_json()))) == e
    e = CFExpansion(F25, 4, (), Tail.PLUS)
    assert e.to_json() == {"p": 5, "l": 2, "b": 4, "terms": [], "tail": "plus"}


def test_validate_accepts_a_listed_expansion():
    assert validate(e5("1/0+ 5/1+ 1/2+ 1/1+ 1/1+ 1/1")) == []


def test_validate_reports_index_and_rule():
    bad = CFExpansion(F5, 1, (Term(1, 1), Term(-1, 2)))
    assert any(v.index == 1 and "eps_2" in v.rule for v in validate(bad))
    assert any(v.index == 0 and "gcd(b, p)" in v.rule for v in validate(CFExpansion(F5, 10)))
    # a_1 = 4 makes p_1 = 4*1 + 1 = 5
    assert any(v.index == 1 and "p divides" in v.rule for v in validate(CFExpansion(F5, 1, (Term(1, 4),))))


def test_convergents_examples():
    (e,) = expand_max_plus_one(Fraction(11, 40), F5).expansions
    assert fracs(convergents(e, 4)) == [Fraction(1, 5), Fraction(3, 10), Fraction(4, 15), Fraction(11, 40)]
    assert convergents(e, 1) == [(1, 5)]
    with pytest.raises(CountExceedsLength):
        convergents(e, 6)
    tailed = e5("1/0+ 5/1+ 1/3+ tail:-")
    with pytest.raises(CountExceedsLength):
        convergents(tailed)
    assert len(convergents(tailed, 12)) == 12


def test_evaluate_examples():
    for text in ELEVEN_FORTIETHS:
        assert evaluate(e5(text)) == Fraction(11, 40)
    assert evaluate(e5("1/0+ 5/2+ -1/2")) == Fraction(3, 10)
    for e in expand_max_plus_one(Fraction(7, 27), F5).expansions:
        assert evaluate(e) == Fraction(7, 27)


def test_evaluate_truncated_encloses_value():
    x = QuadraticSurd.make(0, 1, 2, 1)
    (e,) = expand_max_plus_one(x, F5, max_terms=8).expansions
    box = evaluate(e)
    assert e.truncated and box.lo < x < box.hi


def test_fins_of_eleven_fortieths():
    (e,) = expand_max_plus_one(Fraction(11, 40), F5).expansions
    assert fins(e, Fraction(11, 40)) == [Fraction(3, 8), Fraction(2, 3), Fraction(1, 2), 0]


def test_fins_detect_a_wrong_sign():
    with pytest.raises(SignMismatch):
        fins(e5("1/0+ 5/1+ -1/2"), Fraction(11, 40))
    with pytest.raises(SignMismatch):
        fins(e5("1/0+ 5/1+ 1/2+ 1/1"), Fraction(11, 40))


def test_tailed_fins_become_unit():
    x = Fraction(7, 27)
    for e in expand_max_plus_one(x, F5).expansions:
        ys = fins(e, x, len(e.terms) + 6)
        assert all(abs(y) == 1 for y in ys[len(e.terms):])
        assert all(abs(y) < 1 for y in ys[:3])


def test_expand_eleven_fortieths():
    res = expand_max_plus_one(Fraction(11, 40), F5)
    assert [e.text() for e in res.expansions] == ["1/0+ 5/1+ 1/2+ 1/1+ 1/2"]


def test_expand_seven_twentysevenths():
    res = expand_max_plus_one(Fraction(7, 27), F5)
    assert [e.text() for e in res.expansions] == [
        "1/0+ 5/1+ 1/3+ 1/2+ 1/1+ 1/3+ tail:-",
        "1/0+ 5/1+ 1/3+ 1/2+ 1/1+ 1/1+ tail:+",
    ]
    minus, plus = res.expansions
    assert fracs(convergents(minus, 5)) == [Fraction(1, 5), Fraction(4, 15), Fraction(9, 35), Fraction(13, 50), Fraction(48, 185)]
    assert fracs(convergents(plus, 5))[-1] == Fraction(22, 85)
    assert isinstance(res.classification, GeneralRational) and res.classification.nx == 3


def test_expand_inverse_pi():
    x = parse_real("dec:0.3183098861837906715377675267450287240689:1e-40")
    (e,) = expand_max_plus_one(x, F5, max_terms=8).expansions
    assert e.b == 2
    assert e.terms[:5] == ((-1, 2), (1, 2), (1, 5), (-1, 2), (-1, 2))


def test_expand_b_set_and_mediant_points():
    res = expand_max_plus_one(Fraction(1, 5), F25)
    assert res.classification == BSet(1, False) and len(res.expansions) == 2
    assert all(evaluate(e) == Fraction(1, 5) for e in res.expansions)
    res = expand_max_plus_one(Fraction(3, 10), F5)
    assert res.classification == MediantPoint(1)
    assert [e.text() for e in res.expansions] == ["1/0+ 5/1+ 1/2", "1/0+ 5/2+ -1/2"]
    half = expand_max_plus_one(Fraction(1, 2), F5)
    assert all(evaluate(e) == Fraction(1, 2) and validate(e) == [] for e in half.expansions)


def test_enumerate_eleven_fortieths():
    got = enumerate_all_expansions(Fraction(11, 40), F5)
    assert {e.text() for e in got} == ELEVEN_FORTIETHS and len(got) == 8
    assert [e.text() for e in select_max_plus_one(got)] == ["1/0+ 5/1+ 1/2+ 1/1+ 1/2"]


def test_enumerate_small_cases():
    assert {e.text() for e in enumerate_all_expansions(Fraction(3, 10), F5)} == {"1/0+ 5/1+ 1/2", "1/0+ 5/2+ -1/2"}
    assert len(select_max_plus_one(enumerate_all_expansions(Fraction(3, 10), F5))) == 2
    (only,) = enumerate_all_expansions(Fraction(1, 5), F5)
    assert only.terms == ()
    assert select_max_plus_one([only]) == [only]
    with pytest.raises(NotInX):
        enumerate_all_expansions(Fraction(7, 27), F5)


def test_to_path_eleven_fortieths():
    (e,) = expand_max_plus_one(Fraction(11, 40), F5).expansions
    path = to_path(e)
    assert [s.vertex for s in path] == [INF, Fraction(1, 5), Fraction(3, 10), Fraction(4, 15), Fraction(11, 40)]
    assert path[0].kind is EdgeKind.START and path[1].kind is EdgeKind.FIRST
    assert to_path(CFExpansion(F5, 2)) == [(INF, EdgeKind.START), (BigRational(2, 5), EdgeKind.FIRST)]


def test_to_path_through_both_flanks():
    _, plus = expand_max_plus_one(Fraction(7, 27), F5).expansions
    verts = [s.vertex for s in to_path(plus, 6)]
    assert Fraction(13, 50) in verts and Fraction(22, 85) in verts


def test_to_path_rejects_backtracking():
    with pytest.raises(NotWellDirected):
        to_path(CFExpansion(F5, 1, (Term(1, 4),)))


def test_every_enumerated_expansion_is_a_valid_path():
    for x in (Fraction(11, 40), Fraction(37, 120), Fraction(-13, 45)):
        for e in enumerate_all_expansions(x, F5):
            assert validate(e) == []
            to_path(e)


def test_tail_convergents_match_closed_form():
    e = e5("1/0+ 5/1+ 1/3+ tail:-")
    value = evaluate(e).to_fraction()
    pairs = list(itertools.islice(iter_convergents(e), 40))
    errors = [abs(Fraction(p, q) - value) for p, q in pairs[2:]]
    assert all(b < a for a, b in zip(errors, errors[1:]))
