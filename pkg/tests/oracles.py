"""Independent oracles the test suite checks the implementation against.

These deliberately re-derive results from first principles with different
algorithms than the production code: the matcher oracle enumerates every
contiguous span instead of computing the one candidate span, the generator
oracle re-implements the documented LCG recipe from scratch, and the recount
oracle tallies raw event dicts without going through the roster module.
"""

from __future__ import annotations

VOWELS = set("aeiou")


def oracle_pattern_matches(source: str, spelling: str, unit_letters: list[int]) -> bool:
    """Exhaustive span enumeration for a pattern given as source text.

    For every possible span of len(source) letters, check directly:
    (a) literals hold their exact letter at a position inside the unit,
    (b) wildcards hold a consonant (C) or vowel (V) outside the unit,
    (c) the literal positions are exactly the unit's letters in order.
    """
    n = len(source)
    unit_sorted = sorted(unit_letters)
    for start in range(0, len(spelling) - n + 1):
        ok = True
        literal_positions = []
        for offset, ch in enumerate(source):
            pos = start + offset
            letter = spelling[pos]
            if ch == "C":
                if letter in VOWELS or pos in unit_letters:
                    ok = False
                    break
            elif ch == "V":
                if letter not in VOWELS or pos in unit_letters:
                    ok = False
                    break
            else:
                if letter != ch or pos not in unit_letters:
                    ok = False
                    break
                literal_positions.append(pos)
        if ok and literal_positions == unit_sorted:
            return True
    return False


class OracleLcg:
    """Reference implementation of the documented generator recipe."""

    A = 6364136223846793005
    C = 1442695040888963407
    M = 1 << 64

    def __init__(self, seed: int):
        self.state = seed % self.M

    def next_u31(self) -> int:
        self.state = (self.A * self.state + self.C) % self.M
        return self.state >> 33

    def below(self, n: int) -> int:
        return self.next_u31() % n


def oracle_shuffle(items, seed: int):
    rng = OracleLcg(seed)
    out = list(items)
    i = len(out) - 1
    while i > 0:
        j = rng.below(i + 1)
        out[i], out[j] = out[j], out[i]
        i -= 1
    return out


def oracle_deal_matching(contrast, cards_per_category, word_pool, seed):
    """Re-derive a matching game layout: per-category draw then full shuffle,
    one generator, in contrast order."""
    rng = OracleLcg(seed)
    deck = []
    for category in contrast:
        pool = list(word_pool[category])
        n = len(pool)
        for i in range(cards_per_category):
            j = i + rng.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        for wid in pool[:cards_per_category]:
            deck.append((wid, category))
    i = len(deck) - 1
    while i > 0:
        j = rng.below(i + 1)
        deck[i], deck[j] = deck[j], deck[i]
        i -= 1
    return deck


def oracle_recount(event_dicts: list[dict], card_categories: list[str] | None = None):
    """Recount progress tallies from raw event dicts.

    Returns (per_word, per_pattern, per_category) where tallies are
    {"correct": n, "incorrect": n} dicts.
    """
    stage_of = {
        "sound_choice": "sound",
        "pattern_choice": "pattern",
        "spelling_attempt": "spell",
        "card_flip": "flip",
    }
    per_word: dict[str, dict[str, int]] = {}
    per_pattern: dict[str, dict[str, int]] = {}
    per_category: dict[str, dict[str, int]] = {}

    def bump(table, key, correct):
        tally = table.setdefault(key, {"correct": 0, "incorrect": 0})
        tally["correct" if correct else "incorrect"] += 1

    for event in event_dicts:
        kind = event["kind"]
        if kind in stage_of and "word_id" in event:
            counts = per_word.setdefault(event["word_id"], {})
            stage = stage_of[kind]
            counts[stage] = counts.get(stage, 0) + 1
        if kind == "sound_choice":
            bump(per_category, event["submitted"], event["correct"])
        elif kind == "pattern_choice":
            bump(per_pattern, event["submitted"], event["correct"])
        elif kind == "pair_resolved" and card_categories is not None:
            first = event["submitted"][0]
            bump(per_category, card_categories[first], event["correct"])
    return per_word, per_pattern, per_category
