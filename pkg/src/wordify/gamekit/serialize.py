"""Serialized game documents (schema version 1).

A document is plain JSON carrying the config, the full machine state and the
event log, so a game can be persisted after every action and resumed later:

    {"schema_version": 1, "kind": "sorting" | "matching", "game_id": ...,
     "config": {...}, "state": {...}, "events": [...]}

Field names are part of the storage contract; bump schema_version to change
them. Documents are validated structurally on the way in, then word ids are
resolved against the lexicon.
"""

from __future__ import annotations

import json

import jsonschema

from ..errors import SchemaMismatch, UnknownWordId
from ..lexicon import Lexicon
from ..patterns import NamedPattern, parse_pattern
from .events import event_from_dict
from .matching import Card, CardStatus, MatchingGameConfig, MatchingGameState
from .sorting import AnswerEntry, SortingGameConfig, SortingGameState, SortingStage

SCHEMA_VERSION = 1

_EVENT_SCHEMA = {
    "type": "object",
    "required": ["timestamp", "kind"],
    "properties": {
        "timestamp": {"type": "number"},
        "kind": {"type": "string"},
        "word_id": {"type": "string"},
        "submitted": {},
        "correct": {"type": "boolean"},
        "stage_attempt_no": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}

_NAMED_PATTERN_SCHEMA = {
    "type": "object",
    "required": ["name", "source"],
    "properties": {"name": {"type": "string"}, "source": {"type": "string"}},
    "additionalProperties": False,
}

_SORTING_CONFIG_SCHEMA = {
    "type": "object",
    "required": ["category_a", "category_b", "patterns_by_category", "word_ids", "rng_seed"],
    "properties": {
        "category_a": {"type": "string"},
        "category_b": {"type": "string"},
        "patterns_by_category": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": _NAMED_PATTERN_SCHEMA},
        },
        "word_ids": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "rng_seed": {"type": "integer"},
    },
    "additionalProperties": False,
}

_SORTING_STATE_SCHEMA = {
    "type": "object",
    "required": ["word_order", "answers", "cursor", "stage", "attempts_this_stage", "paused", "version"],
    "properties": {
        "word_order": {"type": "array", "items": {"type": "string"}},
        "answers": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["category", "unit_index", "pattern_name", "spelling"],
                "properties": {
                    "category": {"type": "string"},
                    "unit_index": {"type": "integer"},
                    "pattern_name": {"type": "string"},
                    "spelling": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "cursor": {"type": "integer", "minimum": 0},
        "stage": {"enum": [s.value for s in SortingStage]},
        "attempts_this_stage": {"type": "integer", "minimum": 0},
        "paused": {"type": "boolean"},
        "version": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

_MATCHING_CONFIG_SCHEMA = {
    "type": "object",
    "required": ["contrast", "cards_per_category", "word_pool", "rng_seed"],
    "properties": {
        "contrast": {"type": "array", "items": {"type": "string"}, "minItems": 2},
        "cards_per_category": {"type": "integer"},
        "word_pool": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "string"}},
        },
        "rng_seed": {"type": "integer"},
    },
    "additionalProperties": False,
}

_MATCHING_STATE_SCHEMA = {
    "type": "object",
    "required": ["cards", "face_up", "paused", "version"],
    "properties": {
        "cards": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["word_id", "category", "status"],
                "properties": {
                    "word_id": {"type": "string"},
                    "category": {"type": "string"},
                    "status": {"enum": [s.value for s in CardStatus]},
                },
                "additionalProperties": False,
            },
        },
        "face_up": {"type": "array", "items": {"type": "integer"}, "maxItems": 2},
        "paused": {"type": "boolean"},
        "version": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

GAME_DOCUMENT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "kind", "game_id", "config", "state", "events"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"enum": ["sorting", "matching"]},
        "game_id": {"type": "string"},
        "config": {"type": "object"},
        "state": {"type": "object"},
        "events": {"type": "array", "items": _EVENT_SCHEMA},
    },
    "additionalProperties": False,
}


def serialize_game(s: SortingGameState | MatchingGameState) -> dict:
    """State value -> JSON-ready document."""
    if isinstance(s, SortingGameState):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "sorting",
            "game_id": s.game_id,
            "config": {
                "category_a": s.config.category_a,
                "category_b": s.config.category_b,
                "patterns_by_category": {
                    cat: [{"name": np.name, "source": np.pattern.source} for np in pats]
                    for cat, pats in s.config.patterns_by_category.items()
                },
                "word_ids": list(s.config.word_ids),
                "rng_seed": s.config.rng_seed,
            },
            "state": {
                "word_order": list(s.word_order),
                "answers": {
                    wid: {
                        "category": a.category,
                        "unit_index": a.unit_index,
                        "pattern_name": a.pattern_name,
                        "spelling": a.spelling,
                    }
                    for wid, a in s.answers.items()
                },
                "cursor": s.cursor,
                "stage": s.stage.value,
                "attempts_this_stage": s.attempts_this_stage,
                "paused": s.paused,
                "version": s.version,
            },
            "events": [e.as_dict() for e in s.events],
        }
    if isinstance(s, MatchingGameState):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "matching",
            "game_id": s.game_id,
            "config": {
                "contrast": list(s.config.contrast),
                "cards_per_category": s.config.cards_per_category,
                "word_pool": {cat: list(ids) for cat, ids in s.config.word_pool.items()},
                "rng_seed": s.config.rng_seed,
            },
            "state": {
                "cards": [
                    {"word_id": c.word_id, "category": c.category, "status": c.status.value}
                    for c in s.cards
                ],
                "face_up": list(s.face_up),
                "paused": s.paused,
                "version": s.version,
            },
            "events": [e.as_dict() for e in s.events],
        }
    raise TypeError(f"not a game state: {type(s)!r}")


def _check_word_ids(ids, lex: Lexicon) -> None:
    for wid in ids:
        if wid not in lex:
            raise UnknownWordId(f"word id {wid!r} not in lexicon")


def deserialize_game(doc: dict, lex: Lexicon) -> SortingGameState | MatchingGameState:
    """Document -> state value. Raises SchemaMismatch or UnknownWordId."""
    try:
        jsonschema.validate(doc, GAME_DOCUMENT_SCHEMA)
        if doc["kind"] == "sorting":
            jsonschema.validate(doc["config"], _SORTING_CONFIG_SCHEMA)
            jsonschema.validate(doc["state"], _SORTING_STATE_SCHEMA)
        else:
            jsonschema.validate(doc["config"], _MATCHING_CONFIG_SCHEMA)
            jsonschema.validate(doc["state"], _MATCHING_STATE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaMismatch(exc.message) from exc

    events = tuple(event_from_dict(e) for e in doc["events"])
    cfg = doc["config"]
    state = doc["state"]

    if doc["kind"] == "sorting":
        _check_word_ids(cfg["word_ids"], lex)
        _check_word_ids(state["word_order"], lex)
        try:
            patterns = {
                cat: tuple(NamedPattern(p["name"], parse_pattern(p["source"])) for p in pats)
                for cat, pats in cfg["patterns_by_category"].items()
            }
        except Exception as exc:
            raise SchemaMismatch(f"bad pattern in document: {exc}") from exc
        config = SortingGameConfig(
            category_a=cfg["category_a"],
            category_b=cfg["category_b"],
            patterns_by_category=patterns,
            word_ids=tuple(cfg["word_ids"]),
            rng_seed=cfg["rng_seed"],
        )
        return SortingGameState(
            game_id=doc["game_id"],
            config=config,
            word_order=tuple(state["word_order"]),
            answers={
                wid: AnswerEntry(a["category"], a["unit_index"], a["pattern_name"], a["spelling"])
                for wid, a in state["answers"].items()
            },
            cursor=state["cursor"],
            stage=SortingStage(state["stage"]),
            attempts_this_stage=state["attempts_this_stage"],
            paused=state["paused"],
            events=events,
            version=state["version"],
        )

    _check_word_ids((wid for pool in cfg["word_pool"].values() for wid in pool), lex)
    _check_word_ids((c["word_id"] for c in state["cards"]), lex)
    config = MatchingGameConfig(
        contrast=tuple(cfg["contrast"]),
        cards_per_category=cfg["cards_per_category"],
        word_pool={cat: tuple(ids) for cat, ids in cfg["word_pool"].items()},
        rng_seed=cfg["rng_seed"],
    )
    return MatchingGameState(
        game_id=doc["game_id"],
        config=config,
        cards=tuple(
            Card(c["word_id"], c["category"], CardStatus(c["status"])) for c in state["cards"]
        ),
        face_up=tuple(state["face_up"]),
        paused=state["paused"],
        events=events,
        version=state["version"],
    )


def to_json(s) -> str:
    return json.dumps(serialize_game(s), separators=(",", ":"), sort_keys=True)


def from_json(text: str, lex: Lexicon):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaMismatch(f"not valid JSON: {exc.msg}") from exc
    return deserialize_game(doc, lex)
