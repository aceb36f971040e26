"""The word matching game: flip cards, find same-category pairs.

Cards are dealt by drawing an even number of words per category from the
configured pools and shuffling the deck, all through the seeded generator so a
layout is reproducible from (config, seed). A mismatched pair flips back within
the same operation; the client is responsible for animating the delay.
"""

from __future__ import annotations

import time
import uuid
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable

from ..errors import (
    CardIndexOutOfRange,
    CardNotFaceDown,
    ConfigInvalid,
    GamePaused,
    PoolTooSmall,
)
from ..lexicon import Lexicon, target_unit
from ..rng import Lcg64
from .events import GameEvent, make_event

Clock = Callable[[], float]


class CardStatus(Enum):
    FACE_DOWN = "face_down"
    FACE_UP = "face_up"
    MATCHED = "matched"


@dataclass(frozen=True)
class Card:
    word_id: str
    category: str
    status: CardStatus = CardStatus.FACE_DOWN


@dataclass
class MatchingGameConfig:
    contrast: tuple[str, ...]
    cards_per_category: int
    word_pool: dict[str, tuple[str, ...]]
    rng_seed: int


@dataclass
class MatchingGameState:
    game_id: str
    config: MatchingGameConfig
    cards: tuple[Card, ...]
    face_up: tuple[int, ...] = ()
    paused: bool = False
    events: tuple[GameEvent, ...] = ()
    version: int = 0

    @property
    def finished(self) -> bool:
        return all(c.status is CardStatus.MATCHED for c in self.cards)

    @property
    def matched_count(self) -> int:
        return sum(1 for c in self.cards if c.status is CardStatus.MATCHED)


@dataclass(frozen=True)
class FlipOutcome:
    flipped: int
    # set when this flip completed a pair: (first index, second index, matched?)
    resolved: tuple[int, int] | None = None
    matched: bool | None = None
    finished: bool = False


def validate_matching_config(cfg: MatchingGameConfig, lex: Lexicon) -> None:
    if len(cfg.contrast) < 2:
        raise ConfigInvalid("a matching game contrasts at least two categories")
    if len(set(cfg.contrast)) != len(cfg.contrast):
        raise ConfigInvalid("contrast lists a category twice")
    if cfg.cards_per_category <= 0 or cfg.cards_per_category % 2 != 0:
        raise ConfigInvalid("cards_per_category must be a positive even number")
    seen: dict[str, str] = {}
    for name in cfg.contrast:
        try:
            category = lex.categories.get(name)
        except Exception as exc:
            raise ConfigInvalid(str(exc)) from exc
        pool = cfg.word_pool.get(name, ())
        if len(set(pool)) != len(pool):
            raise ConfigInvalid(f"pool for {name!r} lists a word twice")
        if len(pool) < cfg.cards_per_category:
            raise PoolTooSmall(name)
        for wid in pool:
            if wid in seen:
                raise ConfigInvalid(f"word {wid!r} appears in pools {seen[wid]!r} and {name!r}")
            seen[wid] = name
            word = lex.get(wid)
            if word is None:
                raise ConfigInvalid(f"word id {wid!r} not in lexicon")
            if target_unit(word, category) is None:
                raise ConfigInvalid(f"word {word.spelling!r} has no {name!r} sound")


def new_matching_game(
    cfg: MatchingGameConfig,
    lex: Lexicon,
    game_id: str | None = None,
) -> MatchingGameState:
    """Deal and shuffle the deck. One generator drives the whole layout:

    first a draw from each category's pool in contrast order, then one
    shuffle of the combined deck.
    """
    validate_matching_config(cfg, lex)
    rng = Lcg64(cfg.rng_seed)
    deck: list[Card] = []
    for name in cfg.contrast:
        for wid in rng.sample(cfg.word_pool[name], cfg.cards_per_category):
            deck.append(Card(word_id=wid, category=name))
    deck = rng.shuffled(deck)
    return MatchingGameState(
        game_id=game_id or f"g-{uuid.uuid4().hex[:12]}",
        config=cfg,
        cards=tuple(deck),
    )


def flip_card(
    s: MatchingGameState, idx: int, clock: Clock = time.time
) -> tuple[MatchingGameState, FlipOutcome]:
    if s.paused:
        raise GamePaused(f"game {s.game_id} is paused")
    if idx < 0 or idx >= len(s.cards):
        raise CardIndexOutOfRange(f"card {idx} out of range 0..{len(s.cards) - 1}")
    card = s.cards[idx]
    if card.status is not CardStatus.FACE_DOWN:
        raise CardNotFaceDown(f"card {idx} is {card.status.value}")

    now = clock()
    events = [make_event("card_flip", now, word_id=card.word_id, submitted=idx)]
    cards = list(s.cards)
    cards[idx] = replace(card, status=CardStatus.FACE_UP)
    face_up = s.face_up + (idx,)

    resolved: tuple[int, int] | None = None
    matched: bool | None = None
    if len(face_up) == 2:
        first, second = face_up
        matched = cards[first].category == cards[second].category
        resolved = (first, second)
        status = CardStatus.MATCHED if matched else CardStatus.FACE_DOWN
        cards[first] = replace(cards[first], status=status)
        cards[second] = replace(cards[second], status=status)
        events.append(make_event("pair_resolved", now, submitted=resolved, correct=matched))
        face_up = ()
        if all(c.status is CardStatus.MATCHED for c in cards):
            events.append(make_event("complete", now))

    new = replace(
        s,
        cards=tuple(cards),
        face_up=face_up,
        events=s.events + tuple(events),
        version=s.version + 1,
    )
    return new, FlipOutcome(idx, resolved, matched, finished=new.finished)
