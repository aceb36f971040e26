"""Phoneme inventory and sound categories.

The shipped inventory is the 39-symbol ARPAbet set without stress digits.
A sound category is a named, non-empty set of inventory symbols; categories
are what the sorting and matching games discriminate between (for example a
"long-o" category containing only OW).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .errors import MalformedRecord, UnknownCategory

# ARPAbet, no stress markers.
ARPABET: frozenset[str] = frozenset({
    "AA", "AE", "AH", "AO", "AW", "AY",
    "B", "CH", "D", "DH",
    "EH", "ER", "EY",
    "F", "G", "HH",
    "IH", "IY", "JH",
    "K", "L", "M", "N", "NG",
    "OW", "OY", "P", "R",
    "S", "SH", "T", "TH",
    "UH", "UW", "V", "W", "Y", "Z", "ZH",
})

VOWEL_LETTERS = frozenset("aeiou")


def is_vowel_letter(ch: str) -> bool:
    return ch in VOWEL_LETTERS


def is_consonant_letter(ch: str) -> bool:
    """True for any lowercase letter outside a/e/i/o/u. `y` counts as a consonant."""
    return ch.isalpha() and ch.islower() and ch not in VOWEL_LETTERS


@dataclass(frozen=True)
class SoundCategory:
    """A named set of phoneme symbols used as a sorting target."""

    name: str
    members: frozenset[str]

    def __post_init__(self):
        if not self.name:
            raise ValueError("category name must be non-empty")
        if not self.members:
            raise ValueError(f"category {self.name!r} has no members")
        bad = set(self.members) - ARPABET
        if bad:
            raise ValueError(f"category {self.name!r} uses unknown phonemes: {sorted(bad)}")


class CategoryRegistry:
    """Lookup table of sound categories, keyed by unique name."""

    def __init__(self, categories: Iterable[SoundCategory] = ()):
        self._by_name: dict[str, SoundCategory] = {}
        for cat in categories:
            self.add(cat)

    def add(self, category: SoundCategory) -> None:
        if category.name in self._by_name:
            raise ValueError(f"duplicate category name {category.name!r}")
        self._by_name[category.name] = category

    def get(self, name: str) -> SoundCategory:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownCategory(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __iter__(self):
        return iter(self._by_name.values())

    def __len__(self) -> int:
        return len(self._by_name)

    def names(self) -> list[str]:
        return sorted(self._by_name)

    def as_dict(self) -> dict[str, list[str]]:
        return {c.name: sorted(c.members) for c in self}


def load_categories(source: str | Path | Mapping[str, list[str]]) -> CategoryRegistry:
    """Build a registry from a JSON file (name -> list of phoneme codes) or a mapping."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = dict(source)
    if not isinstance(data, dict):
        raise MalformedRecord(0, "category registry must be a JSON object")
    reg = CategoryRegistry()
    for name, members in data.items():
        reg.add(SoundCategory(name=name, members=frozenset(members)))
    return reg
