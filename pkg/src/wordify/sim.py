"""Headless game simulation for testing and operator smoke checks.

A sim script names the game kind, its config, and a player policy:

    {"kind": "sorting",
     "config": {...},
     "policy": {"type": "always_correct"}}

Policies: "always_correct" plays perfectly (it may read the answer key),
"uniform_random" fumbles around with its own seeded generator, and "scripted"
replays an explicit action list. Simulated clocks tick 0, 1, 2, ... per event,
so identical scripts produce identical event logs, timestamps included.

Every transition runs under an invariant monitor; a violated engine invariant
fails the simulation rather than producing quietly wrong analytics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from .errors import WordifyError
from .gamekit.actions import apply_action
from .gamekit.configs import config_from_dict
from .gamekit.matching import CardStatus, MatchingGameState, new_matching_game
from .gamekit.sorting import SortingGameState, SortingStage, new_sorting_game
from .lexicon import Lexicon
from .rng import Lcg64
from .roster import ProgressRecord, build_progress


class SimulationError(WordifyError):
    code = "simulation_failed"


class InvariantViolation(WordifyError):
    code = "invariant_violation"


class StepClock:
    """Deterministic clock: 0, 1, 2, ... per call."""

    def __init__(self):
        self.t = -1

    def __call__(self) -> float:
        self.t += 1
        return float(self.t)


_COUNTED_EVENTS = ("sound_choice", "pattern_choice", "spelling_attempt", "card_flip")


class InvariantMonitor:
    """Checks the engine's cross-cutting invariants after every accepted action."""

    def __init__(self, initial):
        self.accepted: dict[str, int] = {}
        self.prev = initial

    def observe(self, action_type: str, new_state) -> None:
        prev = self.prev
        if new_state.version != prev.version + 1:
            raise InvariantViolation(
                f"version jumped {prev.version} -> {new_state.version} on {action_type}"
            )
        if new_state.events[: len(prev.events)] != prev.events:
            raise InvariantViolation("event log was rewritten, not appended")
        if isinstance(new_state, SortingGameState):
            if new_state.cursor < prev.cursor:
                raise InvariantViolation("cursor decreased")
        if isinstance(new_state, MatchingGameState):
            if new_state.matched_count < prev.matched_count:
                raise InvariantViolation("matched count decreased")
            for old, new in zip(prev.cards, new_state.cards):
                if old.status is CardStatus.MATCHED and new.status is not CardStatus.MATCHED:
                    raise InvariantViolation("a matched card changed status")
        self.accepted[action_type] = self.accepted.get(action_type, 0) + 1
        self.prev = new_state

    def final_checks(self) -> None:
        state = self.prev
        by_kind: dict[str, int] = {}
        for e in state.events:
            by_kind[e.kind] = by_kind.get(e.kind, 0) + 1
        expect = {
            "sound_choice": self.accepted.get("sound_choice", 0),
            "pattern_choice": self.accepted.get("pattern_choice", 0),
            "spelling_attempt": self.accepted.get("spelling", 0),
            "card_flip": self.accepted.get("flip", 0),
        }
        for kind, n in expect.items():
            if by_kind.get(kind, 0) != n:
                raise InvariantViolation(
                    f"{kind} events ({by_kind.get(kind, 0)}) != accepted calls ({n})"
                )
        if isinstance(state, MatchingGameState):
            for e in state.events:
                if e.kind == "pair_resolved" and e.correct:
                    a, b = e.submitted
                    if state.cards[a].category != state.cards[b].category:
                        raise InvariantViolation("pair_resolved(correct) across categories")
            has_complete = any(e.kind == "complete" for e in state.events)
            if has_complete != state.finished:
                raise InvariantViolation("complete event does not line up with finished state")
        if isinstance(state, SortingGameState):
            pattern_done: set[str] = set()
            for e in state.events:
                if e.kind == "pattern_choice" and e.correct:
                    pattern_done.add(e.word_id)
                if e.kind == "spelling_attempt" and e.word_id not in pattern_done:
                    raise InvariantViolation(
                        f"spelling attempt for {e.word_id} before its pattern was identified"
                    )


def _sorting_policy_action(state: SortingGameState, policy: Mapping[str, Any], rng: Lcg64 | None):
    answer = state.answers[state.current_word_id]
    if policy["type"] == "always_correct":
        if state.stage is SortingStage.SOUND_SORT:
            return {"type": "sound_choice", "value": answer.category}
        if state.stage is SortingStage.PATTERN_CHOICE:
            return {"type": "pattern_choice", "value": answer.pattern_name}
        return {"type": "spelling", "value": answer.spelling}
    if state.stage is SortingStage.SOUND_SORT:
        options = [state.config.category_a, state.config.category_b]
        return {"type": "sound_choice", "value": options[rng.below(2)]}
    if state.stage is SortingStage.PATTERN_CHOICE:
        names = [np.name for np in state.config.patterns_by_category[answer.category]]
        return {"type": "pattern_choice", "value": names[rng.below(len(names))]}
    spellings = sorted({a.spelling for a in state.answers.values()})
    return {"type": "spelling", "value": spellings[rng.below(len(spellings))]}


def _matching_policy_action(state: MatchingGameState, policy: Mapping[str, Any], rng: Lcg64 | None):
    face_down = [i for i, c in enumerate(state.cards) if c.status is CardStatus.FACE_DOWN]
    if policy["type"] == "always_correct":
        if state.face_up:
            held = state.cards[state.face_up[0]]
            mate = next(i for i in face_down if state.cards[i].category == held.category)
            return {"type": "flip", "value": mate}
        return {"type": "flip", "value": face_down[0]}
    return {"type": "flip", "value": face_down[rng.below(len(face_down))]}


@dataclass
class SimResult:
    state: SortingGameState | MatchingGameState
    progress: ProgressRecord
    steps: int
    accepted: dict[str, int] = field(default_factory=dict)

    @property
    def finished(self) -> bool:
        return self.state.finished


def run_simulation(
    script: Mapping[str, Any],
    lex: Lexicon,
    game_id: str = "sim-game",
    student_id: str = "sim-student",
    max_steps: int = 100_000,
) -> SimResult:
    """Run one game to completion (or to the end of a scripted action list)."""
    kind = script.get("kind")
    cfg = config_from_dict(kind, script.get("config", {}))
    policy = script.get("policy", {"type": "always_correct"})
    ptype = policy.get("type")
    if ptype not in ("always_correct", "uniform_random", "scripted"):
        raise SimulationError(f"unknown policy {ptype!r}")

    clock = StepClock()
    if kind == "sorting":
        state = new_sorting_game(cfg, lex, game_id=game_id)
    else:
        state = new_matching_game(cfg, lex, game_id=game_id)
    monitor = InvariantMonitor(state)
    rng = Lcg64(int(policy.get("seed", 0))) if ptype == "uniform_random" else None

    steps = 0
    if ptype == "scripted":
        for action in policy.get("actions", []):
            try:
                state, _ = apply_action(state, action, clock)
            except WordifyError as exc:
                raise SimulationError(f"scripted action {action!r} rejected: {exc}") from exc
            monitor.observe(action["type"], state)
            steps += 1
    else:
        while not state.finished:
            if steps >= max_steps:
                raise SimulationError(f"no completion within {max_steps} steps")
            if isinstance(state, SortingGameState):
                action = _sorting_policy_action(state, policy, rng)
            else:
                action = _matching_policy_action(state, policy, rng)
            state, _ = apply_action(state, action, clock)
            monitor.observe(action["type"], state)
            steps += 1

    monitor.final_checks()
    progress = build_progress(state, lex, script.get("student_id", student_id))
    return SimResult(state=state, progress=progress, steps=steps, accepted=dict(monitor.accepted))


def randomness_free_logs(events) -> list[dict]:
    """Event log projection with timestamps dropped, for determinism comparisons."""
    return [{k: v for k, v in e.as_dict().items() if k != "timestamp"} for e in events]


def standard_contrast_config(lex: Lexicon, kind: str, seed: int, cards_per_category: int = 2) -> dict:
    """A ready-to-play config over the shipped long-o / long-i contrast.

    Word lists are derived from the lexicon: only words that fit the contrast
    (exactly one of the two sounds, classifiable under its pattern set) are
    used, so the config is valid by construction.
    """
    patterns = {"long-o": ["oa", "ow", "oCe"], "long-i": ["igh", "y", "iCe"]}
    pools: dict[str, list[str]] = {"long-o": [], "long-i": []}
    for word in lex.all_words():
        for category in pools:
            probe = {
                "category_a": category,
                "category_b": "long-i" if category == "long-o" else "long-o",
                "patterns_by_category": patterns,
                "word_ids": [word.id],
                "rng_seed": 0,
            }
            try:
                cfg = config_from_dict("sorting", probe)
                from .gamekit.sorting import resolve_answers

                answers = resolve_answers(cfg, lex)
                if answers[word.id].category == category:
                    pools[category].append(word.id)
            except WordifyError:
                continue
    if kind == "sorting":
        return {
            "category_a": "long-o",
            "category_b": "long-i",
            "patterns_by_category": patterns,
            "word_ids": sorted(pools["long-o"] + pools["long-i"]),
            "rng_seed": seed,
        }
    return {
        "contrast": ["long-o", "long-i"],
        "cards_per_category": cards_per_category,
        "word_pool": {cat: sorted(ids) for cat, ids in pools.items()},
        "rng_seed": seed,
    }


def random_actions_playthrough(
    lex: Lexicon,
    kind: str,
    seed: int,
    max_actions: int,
    config: Mapping[str, Any] | None = None,
    game_id: str = "fuzz-game",
):
    """Play up to max_actions randomized actions (including pauses and wrong
    answers) and return the resulting state, wherever it landed."""
    cfg_dict = dict(config) if config is not None else standard_contrast_config(lex, kind, seed)
    cfg = config_from_dict(kind, cfg_dict)
    clock = StepClock()
    if kind == "sorting":
        state = new_sorting_game(cfg, lex, game_id=game_id)
    else:
        state = new_matching_game(cfg, lex, game_id=game_id)
    rng = Lcg64(seed ^ 0x5DEECE66D)

    for _ in range(max_actions):
        if state.finished:
            break
        if state.paused:
            action = {"type": "resume"}
        elif rng.below(10) == 0:
            action = {"type": "pause"}
        elif isinstance(state, SortingGameState):
            action = _sorting_policy_action(state, {"type": "uniform_random"}, rng)
        else:
            action = _matching_policy_action(state, {"type": "uniform_random"}, rng)
        state, _ = apply_action(state, action, clock)
    return state
