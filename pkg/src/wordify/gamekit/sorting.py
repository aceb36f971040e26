"""The word sorting game: sound sort, then pattern identification, then spelling.

One word at a time moves through the three stages. Wrong answers are retried
without limit; every submission lands in the event log so progress reports can
see where a student struggled. Correctness is resolved against an answer key
computed once at game creation, which keeps every transition free of lexicon
lookups (and keeps the serialized document self-contained).
"""

from __future__ import annotations

import time
import uuid
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable

from ..errors import (
    AmbiguousClassification,
    ConfigInvalid,
    EmptyAnswer,
    GameFinished,
    GamePaused,
    UnknownCategory,
    UnknownPattern,
    WrongStage,
)
from ..lexicon import Lexicon, target_unit
from ..patterns import NamedPattern, classify_unit
from ..rng import Lcg64
from .events import GameEvent, make_event

Clock = Callable[[], float]


class SortingStage(Enum):
    SOUND_SORT = "sound_sort"
    PATTERN_CHOICE = "pattern_choice"
    SPELLING = "spelling"
    FINISHED = "finished"


@dataclass
class SortingGameConfig:
    category_a: str
    category_b: str
    patterns_by_category: dict[str, tuple[NamedPattern, ...]]
    word_ids: tuple[str, ...]
    rng_seed: int


@dataclass(frozen=True)
class AnswerEntry:
    """Resolved per-word answers: the word's category, target unit, pattern and spelling."""

    category: str
    unit_index: int
    pattern_name: str
    spelling: str


@dataclass
class SortingGameState:
    game_id: str
    config: SortingGameConfig
    word_order: tuple[str, ...]
    answers: dict[str, AnswerEntry]
    cursor: int = 0
    stage: SortingStage = SortingStage.SOUND_SORT
    attempts_this_stage: int = 0
    paused: bool = False
    events: tuple[GameEvent, ...] = ()
    version: int = 0

    @property
    def current_word_id(self) -> str | None:
        if self.stage is SortingStage.FINISHED:
            return None
        return self.word_order[self.cursor]

    @property
    def finished(self) -> bool:
        return self.stage is SortingStage.FINISHED


@dataclass(frozen=True)
class SortOutcome:
    correct: bool
    stage_after: SortingStage
    attempt_no: int
    finished: bool = False


def resolve_answers(cfg: SortingGameConfig, lex: Lexicon) -> dict[str, AnswerEntry]:
    """Validate the config against the lexicon and build the answer key.

    Raises ConfigInvalid naming the first offending word, category or pattern.
    """
    if cfg.category_a == cfg.category_b:
        raise ConfigInvalid("the two sound categories must differ")
    if not cfg.word_ids:
        raise ConfigInvalid("word list is empty")
    if len(set(cfg.word_ids)) != len(cfg.word_ids):
        raise ConfigInvalid("word list contains duplicates")
    try:
        cat_a = lex.categories.get(cfg.category_a)
        cat_b = lex.categories.get(cfg.category_b)
    except Exception as exc:
        raise ConfigInvalid(str(exc)) from exc
    for name in (cfg.category_a, cfg.category_b):
        if name not in cfg.patterns_by_category or not cfg.patterns_by_category[name]:
            raise ConfigInvalid(f"no patterns configured for category {name!r}")

    answers: dict[str, AnswerEntry] = {}
    for wid in cfg.word_ids:
        word = lex.get(wid)
        if word is None:
            raise ConfigInvalid(f"word id {wid!r} not in lexicon")
        hit_a = target_unit(word, cat_a)
        hit_b = target_unit(word, cat_b)
        if (hit_a is None) == (hit_b is None):
            which = "both" if hit_a is not None else "neither"
            raise ConfigInvalid(
                f"word {word.spelling!r} must contain exactly one of the two sounds ({which} matched)"
            )
        category = cfg.category_a if hit_a is not None else cfg.category_b
        unit_idx = hit_a if hit_a is not None else hit_b
        try:
            pattern_name = classify_unit(word, unit_idx, cfg.patterns_by_category[category])
        except AmbiguousClassification as exc:
            raise ConfigInvalid(f"word {word.spelling!r}: {exc.detail}") from exc
        if pattern_name is None:
            raise ConfigInvalid(
                f"word {word.spelling!r} does not match any configured {category!r} pattern"
            )
        answers[wid] = AnswerEntry(category, unit_idx, pattern_name, word.spelling)
    return answers


def new_sorting_game(
    cfg: SortingGameConfig,
    lex: Lexicon,
    game_id: str | None = None,
) -> SortingGameState:
    answers = resolve_answers(cfg, lex)
    order = tuple(Lcg64(cfg.rng_seed).shuffled(cfg.word_ids))
    return SortingGameState(
        game_id=game_id or f"g-{uuid.uuid4().hex[:12]}",
        config=cfg,
        word_order=order,
        answers=answers,
    )


def _guard(s: SortingGameState, expected: SortingStage) -> None:
    if s.finished:
        raise GameFinished(f"game {s.game_id} is finished")
    if s.paused:
        raise GamePaused(f"game {s.game_id} is paused")
    if s.stage is not expected:
        raise WrongStage(f"expected stage {expected.value}, game is at {s.stage.value}")


def _advance(
    s: SortingGameState,
    event: GameEvent,
    correct: bool,
    next_stage: SortingStage,
) -> tuple[SortingGameState, SortOutcome]:
    attempt_no = s.attempts_this_stage + 1
    if correct:
        new = replace(
            s,
            stage=next_stage,
            attempts_this_stage=0,
            events=s.events + (event,),
            version=s.version + 1,
        )
    else:
        new = replace(
            s,
            attempts_this_stage=attempt_no,
            events=s.events + (event,),
            version=s.version + 1,
        )
    return new, SortOutcome(correct, new.stage, attempt_no, finished=new.finished)


def submit_sound_choice(
    s: SortingGameState, chosen: str, clock: Clock = time.time
) -> tuple[SortingGameState, SortOutcome]:
    _guard(s, SortingStage.SOUND_SORT)
    if chosen not in (s.config.category_a, s.config.category_b):
        raise UnknownCategory(f"{chosen!r} is not one of this game's categories")
    answer = s.answers[s.current_word_id]
    correct = chosen == answer.category
    event = make_event(
        "sound_choice",
        clock(),
        word_id=s.current_word_id,
        submitted=chosen,
        correct=correct,
        stage_attempt_no=s.attempts_this_stage + 1,
    )
    return _advance(s, event, correct, SortingStage.PATTERN_CHOICE if correct else s.stage)


def submit_pattern_choice(
    s: SortingGameState, chosen: str, clock: Clock = time.time
) -> tuple[SortingGameState, SortOutcome]:
    _guard(s, SortingStage.PATTERN_CHOICE)
    answer = s.answers[s.current_word_id]
    valid = {np.name for np in s.config.patterns_by_category[answer.category]}
    if chosen not in valid:
        raise UnknownPattern(f"{chosen!r} is not a configured {answer.category!r} pattern")
    correct = chosen == answer.pattern_name
    event = make_event(
        "pattern_choice",
        clock(),
        word_id=s.current_word_id,
        submitted=chosen,
        correct=correct,
        stage_attempt_no=s.attempts_this_stage + 1,
    )
    return _advance(s, event, correct, SortingStage.SPELLING if correct else s.stage)


def submit_spelling(
    s: SortingGameState, text: str, clock: Clock = time.time
) -> tuple[SortingGameState, SortOutcome]:
    _guard(s, SortingStage.SPELLING)
    normalized = text.strip().lower()
    if not normalized:
        raise EmptyAnswer("spelling answer is empty")
    answer = s.answers[s.current_word_id]
    correct = normalized == answer.spelling
    word_id = s.current_word_id
    attempt_no = s.attempts_this_stage + 1
    now = clock()
    events = [
        make_event(
            "spelling_attempt",
            now,
            word_id=word_id,
            submitted=normalized,
            correct=correct,
            stage_attempt_no=attempt_no,
        )
    ]
    if not correct:
        new = replace(
            s,
            attempts_this_stage=attempt_no,
            events=s.events + tuple(events),
            version=s.version + 1,
        )
        return new, SortOutcome(False, new.stage, attempt_no)

    cursor = s.cursor + 1
    if cursor == len(s.word_order):
        stage = SortingStage.FINISHED
        events.append(make_event("complete", now))
    else:
        stage = SortingStage.SOUND_SORT
    new = replace(
        s,
        cursor=cursor,
        stage=stage,
        attempts_this_stage=0,
        events=s.events + tuple(events),
        version=s.version + 1,
    )
    return new, SortOutcome(True, stage, attempt_no, finished=new.finished)
