"""Game state machines: word sorting and word matching.

Every operation is a pure transition taking a state value and returning a new
one plus an outcome; nothing here mutates in place, performs I/O, or touches a
clock other than the one passed in. That keeps games serializable, replayable
and safe to drive from any number of threads as long as each game's actions
are serialized by the caller (the service does this with optimistic versions).
"""

from .events import EVENT_KINDS, GameEvent, make_event
from .sorting import (
    SortingGameConfig,
    SortingGameState,
    SortingStage,
    new_sorting_game,
    submit_pattern_choice,
    submit_sound_choice,
    submit_spelling,
)
from .matching import (
    Card,
    CardStatus,
    MatchingGameConfig,
    MatchingGameState,
    flip_card,
    new_matching_game,
)
from .common import is_finished, pause_game, resume_game
from .serialize import deserialize_game, serialize_game
from .actions import apply_action

__all__ = [
    "EVENT_KINDS",
    "GameEvent",
    "make_event",
    "SortingGameConfig",
    "SortingGameState",
    "SortingStage",
    "new_sorting_game",
    "submit_sound_choice",
    "submit_pattern_choice",
    "submit_spelling",
    "Card",
    "CardStatus",
    "MatchingGameConfig",
    "MatchingGameState",
    "new_matching_game",
    "flip_card",
    "pause_game",
    "resume_game",
    "is_finished",
    "serialize_game",
    "deserialize_game",
    "apply_action",
]
