"""HTTP/JSON API over the lexicon, games and roster."""

from .app import create_app

__all__ = ["create_app"]
