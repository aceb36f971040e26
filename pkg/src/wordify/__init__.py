"""Wordify: a grapheme-phoneme lexicon engine, two spelling games, and a REST backend.

The library models English words as aligned grapheme-phoneme sequences,
matches them against a small spelling-pattern notation, runs word sorting and
word matching games as pure state machines, aggregates play into progress
reports, and serves all of it over HTTP. See the README for the file formats,
the CLI, and the API surface.
"""

from importlib import resources

__version__ = "0.1.0"


def seed_lexicon_path():
    """Path to the packaged seed lexicon (line-delimited JSON)."""
    return resources.files("wordify").joinpath("data/seed_lexicon.jsonl")


def seed_categories_path():
    """Path to the packaged category registry."""
    return resources.files("wordify").joinpath("data/categories.json")


def seed_audio_dir():
    """Directory holding the packaged audio assets."""
    return resources.files("wordify").joinpath("data/audio")
