"""Uniform action dispatch over both game kinds.

The service's action endpoint and the headless simulator share this entry
point, so a scripted action file and an HTTP action payload are the same
shape: {"type": ..., "value": ...}.
"""

from __future__ import annotations

import time
from typing import Any, Callable

from ..errors import WrongStage
from .common import pause_game, resume_game
from .matching import MatchingGameState, flip_card
from .sorting import (
    SortingGameState,
    submit_pattern_choice,
    submit_sound_choice,
    submit_spelling,
)

ACTION_TYPES = ("sound_choice", "pattern_choice", "spelling", "flip", "pause", "resume")


def apply_action(
    state: SortingGameState | MatchingGameState,
    action: dict[str, Any],
    clock: Callable[[], float] = time.time,
):
    """Apply one action dict; returns (new_state, outcome | None).

    Pause and resume have no outcome. Raises WrongStage when the action type
    does not exist or does not apply to the game kind.
    """
    kind = action.get("type")
    value = action.get("value")
    if kind == "pause":
        return pause_game(state, clock), None
    if kind == "resume":
        return resume_game(state, clock), None

    if isinstance(state, SortingGameState):
        if kind == "sound_choice":
            return submit_sound_choice(state, _text(value), clock)
        if kind == "pattern_choice":
            return submit_pattern_choice(state, _text(value), clock)
        if kind == "spelling":
            return submit_spelling(state, _text(value), clock)
        raise WrongStage(f"action {kind!r} does not apply to a sorting game")

    if isinstance(state, MatchingGameState):
        if kind == "flip":
            if not isinstance(value, int) or isinstance(value, bool):
                raise WrongStage("flip action needs an integer card index")
            return flip_card(state, value, clock)
        raise WrongStage(f"action {kind!r} does not apply to a matching game")

    raise TypeError(f"not a game state: {type(state)!r}")


def _text(value: Any) -> str:
    if not isinstance(value, str):
        raise WrongStage("this action needs a string value")
    return value
