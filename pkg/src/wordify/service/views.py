"""Client-facing projections of game state.

Views are strict whitelists: a pending word is represented only by its opaque
id and audio key, face-down cards carry nothing but index and status, and no
view ever includes the answer key (correct category, correct pattern, or the
spelling of an unfinished word). Choice lists exist so clients can render
buttons; their order is fixed by configuration, never by correctness.
"""

from __future__ import annotations

from ..gamekit.matching import CardStatus, MatchingGameState
from ..gamekit.sorting import SortingGameState, SortingStage
from ..lexicon import Lexicon


def _word_face(lex: Lexicon, word_id: str) -> dict:
    word = lex.get(word_id)
    return {
        "word_id": word_id,
        "spelling": word.spelling if word else "",
        "audio": word.audio_ref if word else None,
    }


def sorting_state_view(s: SortingGameState, lex: Lexicon) -> dict:
    choices: dict = {}
    current = None
    if not s.finished:
        word = lex.get(s.current_word_id)
        current = {
            "word_id": s.current_word_id,
            "audio": word.audio_ref if word else None,
        }
        if s.stage is SortingStage.SOUND_SORT:
            choices = {"categories": sorted((s.config.category_a, s.config.category_b))}
        elif s.stage is SortingStage.PATTERN_CHOICE:
            category = s.answers[s.current_word_id].category
            choices = {"patterns": [np.name for np in s.config.patterns_by_category[category]]}

    completed = []
    for wid in s.word_order[: s.cursor]:
        word = lex.get(wid)
        completed.append({
            "word_id": wid,
            "spelling": word.spelling if word else "",
            "sentence": word.sentence if word else "",
            "audio": word.audio_ref if word else None,
        })

    return {
        "game_id": s.game_id,
        "kind": "sorting",
        "version": s.version,
        "paused": s.paused,
        "finished": s.finished,
        "stage": s.stage.value,
        "word_position": s.cursor,
        "word_count": len(s.word_order),
        "attempts_this_stage": s.attempts_this_stage,
        "current": current,
        "choices": choices,
        "completed": completed,
    }


def matching_state_view(s: MatchingGameState, lex: Lexicon) -> dict:
    cards = []
    for idx, card in enumerate(s.cards):
        if card.status is CardStatus.FACE_DOWN:
            cards.append({"index": idx, "status": card.status.value})
        elif card.status is CardStatus.FACE_UP:
            cards.append({"index": idx, "status": card.status.value, **_word_face(lex, card.word_id)})
        else:
            cards.append({
                "index": idx,
                "status": card.status.value,
                **_word_face(lex, card.word_id),
                "category": card.category,
            })
    return {
        "game_id": s.game_id,
        "kind": "matching",
        "version": s.version,
        "paused": s.paused,
        "finished": s.finished,
        "card_count": len(s.cards),
        "matched_count": s.matched_count,
        "cards": cards,
    }


def state_view(state, lex: Lexicon) -> dict:
    if isinstance(state, SortingGameState):
        return sorting_state_view(state, lex)
    return matching_state_view(state, lex)


def sort_outcome_view(outcome) -> dict:
    return {
        "correct": outcome.correct,
        "stage": outcome.stage_after.value,
        "attempt_no": outcome.attempt_no,
        "finished": outcome.finished,
    }


def flip_outcome_view(outcome, before: MatchingGameState, lex: Lexicon) -> dict:
    """The flip outcome reveals the face of the card(s) involved in this action
    so the client can animate a mismatch before the cards go dark again."""
    flipped_card = before.cards[outcome.flipped]
    view: dict = {
        "flipped": {"index": outcome.flipped, **_word_face(lex, flipped_card.word_id)},
        "resolution": None,
        "finished": outcome.finished,
    }
    if outcome.resolved is not None:
        first, second = outcome.resolved
        resolution = {
            "indices": [first, second],
            "matched": outcome.matched,
            "cards": [
                {"index": i, **_word_face(lex, before.cards[i].word_id)}
                for i in (first, second)
            ],
        }
        if outcome.matched:
            resolution["category"] = before.cards[first].category
        view["resolution"] = resolution
    return view


def game_summary_view(stored) -> dict:
    return {
        "game_id": stored.id,
        "kind": stored.kind,
        "version": stored.version,
        "finished": stored.finished,
        "owner_id": stored.owner_id,
    }


def word_summary_view(word) -> dict:
    return {
        "id": word.id,
        "spelling": word.spelling,
        "grade": word.grade_level,
        "sentence": word.sentence,
        "audio": word.audio_ref,
        "pronunciation": list(word.pronunciation),
        "units": [
            {
                "letters": list(u.letter_indices),
                "phonemes": list(u.phonemes),
                "grapheme": u.grapheme_text(word.spelling),
            }
            for u in word.units
        ],
    }


def user_view(user) -> dict:
    # Never include credential material.
    return {
        "id": user.id,
        "name": user.display_name,
        "role": user.role.value,
        "teacher_id": user.teacher_id,
        "school_id": user.school_id,
    }
