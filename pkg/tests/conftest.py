from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wordify import seed_categories_path, seed_lexicon_path
from wordify.lexicon import load_lexicon_file
from wordify.phonemes import load_categories

# The paper's two example pattern sets.
LONG_O_PATTERNS = ("oa", "ow", "oCe")
LONG_I_PATTERNS = ("igh", "y", "iCe")

SEED_SPELLINGS = [
    "cane", "comb", "cucumber", "cent", "cinch", "kite", "luck", "tax", "phone",
    "rope", "ripe", "boat", "know", "home", "light", "sky", "rice", "hide",
]


@pytest.fixture(scope="session")
def seed_lex():
    lex, problems = load_lexicon_file(seed_lexicon_path(), load_categories(seed_categories_path()))
    assert problems == []
    return lex


@pytest.fixture(scope="session")
def by_spelling(seed_lex):
    return {w.spelling: w for w in seed_lex.all_words()}


def sorting_config_dict(word_ids, seed=7):
    return {
        "category_a": "long-o",
        "category_b": "long-i",
        "patterns_by_category": {
            "long-o": list(LONG_O_PATTERNS),
            "long-i": list(LONG_I_PATTERNS),
        },
        "word_ids": list(word_ids),
        "rng_seed": seed,
    }


def matching_config_dict(seed=42, cards=2):
    return {
        "contrast": ["long-o", "long-i"],
        "cards_per_category": cards,
        "word_pool": {
            "long-o": ["w010", "w012", "w013", "w014"],
            "long-i": ["w006", "w011", "w016", "w018"],
        },
        "rng_seed": seed,
    }
