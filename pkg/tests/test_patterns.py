from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from wordify.errors import (
    AmbiguousClassification,
    EmptyPattern,
    IllegalCharacter,
    NoLiteral,
    UnitOutOfRange,
)
from wordify.patterns import (
    ItemKind,
    classify_unit,
    named_patterns,
    parse_pattern,
    pattern_matches,
    render_pattern,
)

from conftest import LONG_I_PATTERNS, LONG_O_PATTERNS
from oracles import oracle_pattern_matches


def kinds(p):
    return [item.kind for item in p.items]


def test_parse_oce():
    p = parse_pattern("oCe")
    assert kinds(p) == [ItemKind.LITERAL, ItemKind.ANY_CONSONANT, ItemKind.LITERAL]
    assert p.items[0].letter == "o"
    assert p.items[2].letter == "e"


def test_parse_igh_all_literals():
    p = parse_pattern("igh")
    assert kinds(p) == [ItemKind.LITERAL] * 3
    assert [item.letter for item in p.items] == ["i", "g", "h"]


def test_parse_vowel_wildcard():
    p = parse_pattern("Vt")
    assert kinds(p) == [ItemKind.ANY_VOWEL, ItemKind.LITERAL]


@pytest.mark.parametrize("bad, exc", [
    ("", EmptyPattern),
    ("o!e", IllegalCharacter),
    ("oXe", IllegalCharacter),
    ("o e", IllegalCharacter),
    ("CV", NoLiteral),
    ("C", NoLiteral),
])
def test_parse_errors(bad, exc):
    with pytest.raises(exc):
        parse_pattern(bad)


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyzCV", min_size=1, max_size=8))
def test_round_trip(source):
    try:
        p = parse_pattern(source)
    except NoLiteral:
        return
    assert render_pattern(p) == source
    assert parse_pattern(render_pattern(p)) == p


def test_matches_home_oce(by_spelling):
    home = by_spelling["home"]
    assert pattern_matches(parse_pattern("oCe"), home, 1) is True


def test_matches_boat_oa(by_spelling):
    boat = by_spelling["boat"]
    assert pattern_matches(parse_pattern("oa"), boat, 1) is True


def test_no_match_boat_oce(by_spelling):
    boat = by_spelling["boat"]
    # Frozen from the span-enumeration oracle: no span of "boat" satisfies oCe.
    assert oracle_pattern_matches("oCe", "boat", [1, 2]) is False
    assert pattern_matches(parse_pattern("oCe"), boat, 1) is False


def test_wildcard_must_be_outside_unit(by_spelling):
    # light's igh unit contains the g, so iCe cannot claim g as its consonant
    light = by_spelling["light"]
    assert pattern_matches(parse_pattern("iCe"), light, 1) is False


def test_unit_out_of_range(by_spelling):
    with pytest.raises(UnitOutOfRange):
        pattern_matches(parse_pattern("oa"), by_spelling["boat"], 9)


def test_matcher_agrees_with_oracle_on_seed(seed_lex):
    """Every (pattern, word, unit) triple over the seed and the six pattern sets."""
    sources = list(LONG_O_PATTERNS + LONG_I_PATTERNS)
    checks = 0
    for word in seed_lex.all_words():
        for unit_idx, unit in enumerate(word.units):
            for source in sources:
                expected = oracle_pattern_matches(source, word.spelling, list(unit.letter_indices))
                got = pattern_matches(parse_pattern(source), word, unit_idx)
                assert got == expected, (word.spelling, unit_idx, source)
                checks += 1
    assert checks >= 300


@pytest.mark.parametrize("spelling, unit_idx, sources, expected", [
    ("boat", 1, LONG_O_PATTERNS, "oa"),
    ("know", 1, LONG_O_PATTERNS, "ow"),
    ("home", 1, LONG_O_PATTERNS, "oCe"),
    ("light", 1, LONG_I_PATTERNS, "igh"),
    ("sky", 2, LONG_I_PATTERNS, "y"),
    ("rice", 1, LONG_I_PATTERNS, "iCe"),
    ("hide", 1, LONG_I_PATTERNS, "iCe"),
])
def test_classification_reproduces_patterns(by_spelling, spelling, unit_idx, sources, expected):
    word = by_spelling[spelling]
    assert classify_unit(word, unit_idx, named_patterns(sources)) == expected


def test_classify_none_when_no_pattern_fits(by_spelling):
    comb = by_spelling["comb"]
    assert classify_unit(comb, 1, named_patterns(LONG_O_PATTERNS)) is None


def test_classify_ambiguous_raises(by_spelling):
    home = by_spelling["home"]
    with pytest.raises(AmbiguousClassification):
        classify_unit(home, 1, named_patterns([("first", "oCe"), ("second", "oCe")]))


def test_classification_unique_across_seed(seed_lex):
    """The paper's pattern sets never produce two matches on any seed unit."""
    pattern_sets = [named_patterns(LONG_O_PATTERNS), named_patterns(LONG_I_PATTERNS)]
    for word in seed_lex.all_words():
        for unit_idx in range(len(word.units)):
            for patterns in pattern_sets:
                classify_unit(word, unit_idx, patterns)  # must not raise
