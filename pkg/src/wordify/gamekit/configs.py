"""Build game configs from plain JSON dicts (API payloads, sim scripts)."""

from __future__ import annotations

from typing import Any, Mapping

from ..errors import ConfigInvalid
from ..patterns import NamedPattern, parse_pattern
from .matching import MatchingGameConfig
from .sorting import SortingGameConfig


def _named_pattern(entry: Any) -> NamedPattern:
    try:
        if isinstance(entry, str):
            return NamedPattern(entry, parse_pattern(entry))
        return NamedPattern(str(entry["name"]), parse_pattern(str(entry["source"])))
    except ConfigInvalid:
        raise
    except Exception as exc:
        raise ConfigInvalid(f"bad pattern entry {entry!r}: {exc}") from exc


def sorting_config_from_dict(data: Mapping[str, Any]) -> SortingGameConfig:
    try:
        return SortingGameConfig(
            category_a=str(data["category_a"]),
            category_b=str(data["category_b"]),
            patterns_by_category={
                str(cat): tuple(_named_pattern(p) for p in pats)
                for cat, pats in data["patterns_by_category"].items()
            },
            word_ids=tuple(str(w) for w in data["word_ids"]),
            rng_seed=int(data["rng_seed"]),
        )
    except ConfigInvalid:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ConfigInvalid(f"bad sorting config: {exc!r}") from exc


def matching_config_from_dict(data: Mapping[str, Any]) -> MatchingGameConfig:
    try:
        return MatchingGameConfig(
            contrast=tuple(str(c) for c in data["contrast"]),
            cards_per_category=int(data["cards_per_category"]),
            word_pool={
                str(cat): tuple(str(w) for w in ids)
                for cat, ids in data["word_pool"].items()
            },
            rng_seed=int(data["rng_seed"]),
        )
    except ConfigInvalid:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ConfigInvalid(f"bad matching config: {exc!r}") from exc


def config_from_dict(kind: str, data: Mapping[str, Any]):
    if kind == "sorting":
        return sorting_config_from_dict(data)
    if kind == "matching":
        return matching_config_from_dict(data)
    raise ConfigInvalid(f"unknown game kind {kind!r}")
