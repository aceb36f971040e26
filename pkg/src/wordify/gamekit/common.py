"""Pause and resume, shared by both game kinds."""

from __future__ import annotations

import time
from dataclasses import replace
from typing import Callable, Union

from ..errors import AlreadyPaused, GameFinished, NotPaused
from .events import make_event
from .matching import MatchingGameState
from .sorting import SortingGameState

GameState = Union[SortingGameState, MatchingGameState]
Clock = Callable[[], float]


def is_finished(s: GameState) -> bool:
    return s.finished


def pause_game(s: GameState, clock: Clock = time.time) -> GameState:
    if is_finished(s):
        raise GameFinished(f"game {s.game_id} is finished")
    if s.paused:
        raise AlreadyPaused(f"game {s.game_id} is already paused")
    return replace(
        s,
        paused=True,
        events=s.events + (make_event("pause", clock()),),
        version=s.version + 1,
    )


def resume_game(s: GameState, clock: Clock = time.time) -> GameState:
    if not s.paused:
        raise NotPaused(f"game {s.game_id} is not paused")
    return replace(
        s,
        paused=False,
        events=s.events + (make_event("resume", clock()),),
        version=s.version + 1,
    )
