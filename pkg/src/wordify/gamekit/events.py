"""Append-only game event log entries.

Each event kind carries a fixed field set; construction rejects anything else
so the log stays schema-stable for progress aggregation and persistence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..errors import SchemaMismatch

# kind -> names of the optional fields that must be present (all others must be absent)
EVENT_KINDS: dict[str, frozenset[str]] = {
    "sound_choice": frozenset({"word_id", "submitted", "correct", "stage_attempt_no"}),
    "pattern_choice": frozenset({"word_id", "submitted", "correct", "stage_attempt_no"}),
    "spelling_attempt": frozenset({"word_id", "submitted", "correct", "stage_attempt_no"}),
    "card_flip": frozenset({"word_id", "submitted"}),
    "pair_resolved": frozenset({"submitted", "correct"}),
    "pause": frozenset(),
    "resume": frozenset(),
    "complete": frozenset(),
}

_OPTIONAL_FIELDS = ("word_id", "submitted", "correct", "stage_attempt_no")


@dataclass(frozen=True)
class GameEvent:
    timestamp: float
    kind: str
    word_id: str | None = None
    submitted: Any = None
    correct: bool | None = None
    stage_attempt_no: int | None = None

    def __post_init__(self):
        allowed = EVENT_KINDS.get(self.kind)
        if allowed is None:
            raise SchemaMismatch(f"unknown event kind {self.kind!r}")
        for name in _OPTIONAL_FIELDS:
            value = getattr(self, name)
            if name in allowed and value is None:
                raise SchemaMismatch(f"event {self.kind!r} requires field {name!r}")
            if name not in allowed and value is not None:
                raise SchemaMismatch(f"event {self.kind!r} forbids field {name!r}")

    def as_dict(self) -> dict:
        out: dict[str, Any] = {"timestamp": self.timestamp, "kind": self.kind}
        for name in _OPTIONAL_FIELDS:
            value = getattr(self, name)
            if value is not None:
                out[name] = list(value) if isinstance(value, tuple) else value
        return out


def make_event(kind: str, timestamp: float, **fields: Any) -> GameEvent:
    return GameEvent(timestamp=timestamp, kind=kind, **fields)


def event_from_dict(data: dict) -> GameEvent:
    if not isinstance(data, dict) or "kind" not in data or "timestamp" not in data:
        raise SchemaMismatch("event object needs kind and timestamp")
    kind = data["kind"]
    extras = set(data) - {"timestamp", "kind", *_OPTIONAL_FIELDS}
    if extras:
        raise SchemaMismatch(f"event {kind!r} has unknown fields {sorted(extras)}")
    submitted = data.get("submitted")
    if isinstance(submitted, list):
        submitted = tuple(submitted)
    return GameEvent(
        timestamp=data["timestamp"],
        kind=kind,
        word_id=data.get("word_id"),
        submitted=submitted,
        correct=data.get("correct"),
        stage_attempt_no=data.get("stage_attempt_no"),
    )
