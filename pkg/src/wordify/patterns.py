"""The grapheme-pattern notation and its matcher.

A pattern is a short string such as ``oa``, ``igh`` or ``oCe``. Lowercase
letters are literals, ``C`` matches any consonant letter and ``V`` any vowel
letter. Literals describe the grapheme itself; wildcard positions describe
foreign letters interleaved with it, which is how a discontinuous grapheme
like the o..e of "home" is written down (``oCe``).

Matching is always asked about one alignment unit of one word: the pattern
fits the unit when some contiguous span of the spelling lines up so that the
literal positions are exactly the unit's letters (in order) and every wildcard
position holds a letter of the right class from outside the unit. Because the
literals must enumerate the unit's letters in order, the span's start is fully
determined by the unit, so at most one span can ever qualify.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import (
    AmbiguousClassification,
    EmptyPattern,
    IllegalCharacter,
    NoLiteral,
    UnitOutOfRange,
)
from .phonemes import is_consonant_letter, is_vowel_letter


class ItemKind(Enum):
    LITERAL = "literal"
    ANY_CONSONANT = "any_consonant"
    ANY_VOWEL = "any_vowel"


@dataclass(frozen=True)
class PatternItem:
    kind: ItemKind
    letter: str | None = None  # set only for literals


@dataclass(frozen=True)
class GraphemePattern:
    source: str
    items: tuple[PatternItem, ...]

    def __len__(self) -> int:
        return len(self.items)


def parse_pattern(text: str) -> GraphemePattern:
    """Parse pattern source text.

    Raises EmptyPattern, IllegalCharacter or NoLiteral; guarantees the result
    renders back to the input.
    """
    if text == "":
        raise EmptyPattern("pattern text is empty")
    items: list[PatternItem] = []
    for ch in text:
        if ch == "C":
            items.append(PatternItem(ItemKind.ANY_CONSONANT))
        elif ch == "V":
            items.append(PatternItem(ItemKind.ANY_VOWEL))
        elif "a" <= ch <= "z":
            items.append(PatternItem(ItemKind.LITERAL, ch))
        else:
            raise IllegalCharacter(f"illegal character {ch!r} in pattern {text!r}")
    if not any(item.kind is ItemKind.LITERAL for item in items):
        raise NoLiteral(f"pattern {text!r} contains no literal letter")
    return GraphemePattern(source=text, items=tuple(items))


def render_pattern(p: GraphemePattern) -> str:
    """Inverse of parse_pattern."""
    out = []
    for item in p.items:
        if item.kind is ItemKind.LITERAL:
            out.append(item.letter)
        elif item.kind is ItemKind.ANY_CONSONANT:
            out.append("C")
        else:
            out.append("V")
    return "".join(out)


def _span_matches(p: GraphemePattern, spelling: str, unit_positions: Sequence[int], start: int) -> bool:
    """Check one candidate span against the three matching conditions."""
    if start < 0 or start + len(p.items) > len(spelling):
        return False
    unit_set = set(unit_positions)
    literal_positions: list[int] = []
    for offset, item in enumerate(p.items):
        pos = start + offset
        ch = spelling[pos]
        if item.kind is ItemKind.LITERAL:
            if ch != item.letter or pos not in unit_set:
                return False
            literal_positions.append(pos)
        elif item.kind is ItemKind.ANY_CONSONANT:
            if not is_consonant_letter(ch) or pos in unit_set:
                return False
        else:
            if not is_vowel_letter(ch) or pos in unit_set:
                return False
    return literal_positions == sorted(unit_positions)


def pattern_matches(p: GraphemePattern, word, unit_idx: int) -> bool:
    """True when the pattern fits the given alignment unit of the word.

    The first literal item must land on the unit's lowest letter index, which
    pins the only possible span; everything else is verification.
    """
    if unit_idx < 0 or unit_idx >= len(word.units):
        raise UnitOutOfRange(f"unit {unit_idx} out of range for {word.spelling!r}")
    unit = word.units[unit_idx]
    first_literal = next(i for i, item in enumerate(p.items) if item.kind is ItemKind.LITERAL)
    start = min(unit.letter_indices) - first_literal
    return _span_matches(p, word.spelling, unit.letter_indices, start)


@dataclass(frozen=True)
class NamedPattern:
    name: str
    pattern: GraphemePattern


def named_patterns(sources: Iterable[str | tuple[str, str]]) -> tuple[NamedPattern, ...]:
    """Build named patterns from plain sources (name = source) or (name, source) pairs."""
    out = []
    for entry in sources:
        if isinstance(entry, str):
            out.append(NamedPattern(entry, parse_pattern(entry)))
        else:
            name, source = entry
            out.append(NamedPattern(name, parse_pattern(source)))
    return tuple(out)


def classify_unit(word, unit_idx: int, patterns: Sequence[NamedPattern]) -> str | None:
    """Name of the unique matching pattern, or None when nothing matches.

    Two matching patterns mean the pattern set itself is misconfigured, so that
    raises AmbiguousClassification rather than picking a winner.
    """
    hits = [np.name for np in patterns if pattern_matches(np.pattern, word, unit_idx)]
    if len(hits) > 1:
        raise AmbiguousClassification(
            f"unit {unit_idx} of {word.spelling!r} matches {hits!r}"
        )
    return hits[0] if hits else None
