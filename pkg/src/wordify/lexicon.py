"""Words as aligned grapheme-phoneme sequences, plus ingestion and analysis.

A word record carries its spelling and an ordered list of alignment units.
Each unit owns a strictly increasing set of letter positions (possibly
discontinuous, as in the o..e of "home") and the phoneme sequence those
letters realize. Together the units cover every letter exactly once, and their
concatenated phonemes are the word's pronunciation.

Lexicon files are line-delimited JSON, one record per line:

    {"id": "w014", "spelling": "home",
     "units": [{"letters": [0], "phonemes": ["HH"]},
               {"letters": [1, 3], "phonemes": ["OW"]},
               {"letters": [2], "phonemes": ["M"]}],
     "grade": 1, "sentence": "We walked home.", "audio": "a014.wav"}
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping, Sequence

from .errors import UnknownPattern, UnreadableStream
from .patterns import GraphemePattern, NamedPattern, parse_pattern, pattern_matches
from .phonemes import ARPABET, CategoryRegistry, SoundCategory

GRADE_MIN, GRADE_MAX = 1, 12

RECORD_FIELDS = {"id", "spelling", "units", "grade", "sentence", "audio"}


@dataclass(frozen=True)
class AlignmentUnit:
    """One grapheme with its realized phonemes. Empty phonemes mark a silent grapheme."""

    letter_indices: tuple[int, ...]
    phonemes: tuple[str, ...]

    def grapheme_text(self, spelling: str) -> str:
        """Letters of the unit with '_' marking each discontinuity, e.g. 'o_e'."""
        parts = []
        prev = None
        for idx in self.letter_indices:
            if prev is not None and idx != prev + 1:
                parts.append("_")
            parts.append(spelling[idx])
            prev = idx
        return "".join(parts)


@dataclass(frozen=True)
class Word:
    id: str
    spelling: str
    units: tuple[AlignmentUnit, ...]
    grade_level: int
    sentence: str
    audio_ref: str | None = None
    # When set, validate_word checks it against the units' concatenation.
    declared_pronunciation: tuple[str, ...] | None = None

    @property
    def pronunciation(self) -> tuple[str, ...]:
        return tuple(ph for unit in self.units for ph in unit.phonemes)


@dataclass(frozen=True)
class Violation:
    """A broken word invariant. Violations are data, not exceptions."""

    kind: str
    detail: str
    indices: tuple[int, ...] = ()


def validate_word(word: Word, inventory: frozenset[str] = ARPABET) -> list[Violation]:
    """Check every Word invariant; empty list means the record is well formed."""
    violations: list[Violation] = []

    if not word.id:
        violations.append(Violation("EmptyId", "word id must be non-empty"))
    if not word.spelling or not all("a" <= ch <= "z" for ch in word.spelling):
        violations.append(Violation("BadSpelling", f"spelling {word.spelling!r} must be lowercase letters"))
    if not (GRADE_MIN <= word.grade_level <= GRADE_MAX):
        violations.append(Violation("BadGrade", f"grade {word.grade_level} outside {GRADE_MIN}..{GRADE_MAX}"))

    seen: dict[int, int] = {}
    for ui, unit in enumerate(word.units):
        if not unit.letter_indices:
            violations.append(Violation("EmptyUnit", f"unit {ui} has no letters", (ui,)))
            continue
        if list(unit.letter_indices) != sorted(set(unit.letter_indices)):
            violations.append(Violation("UnsortedIndices", f"unit {ui} indices not strictly increasing", (ui,)))
        for idx in unit.letter_indices:
            if idx in seen:
                violations.append(Violation("OverlappingUnits", f"letter {idx} claimed by units {seen[idx]} and {ui}", (idx,)))
            seen[idx] = ui
            if idx < 0 or idx >= len(word.spelling):
                violations.append(Violation("IndexOutOfBounds", f"unit {ui} references letter {idx}", (idx,)))
        for ph in unit.phonemes:
            if ph not in inventory:
                violations.append(Violation("UnknownPhoneme", f"unit {ui} uses {ph!r}", (ui,)))

    missing = set(range(len(word.spelling))) - set(seen)
    for idx in sorted(missing):
        violations.append(Violation("CoverageGap", f"letter {idx} ({word.spelling[idx]!r}) not covered", (idx,)))

    mins = [min(u.letter_indices) for u in word.units if u.letter_indices]
    if mins != sorted(mins):
        violations.append(Violation("UnorderedUnits", "units not ordered by minimum letter index"))

    if word.declared_pronunciation is not None and word.declared_pronunciation != word.pronunciation:
        violations.append(Violation(
            "PronunciationMismatch",
            f"declared {word.declared_pronunciation} != concatenated {word.pronunciation}",
        ))

    return violations


@dataclass
class Lexicon:
    """Immutable-by-convention collection of validated words plus the category registry."""

    words: dict[str, Word] = field(default_factory=dict)
    categories: CategoryRegistry = field(default_factory=CategoryRegistry)

    def __len__(self) -> int:
        return len(self.words)

    def get(self, word_id: str) -> Word | None:
        return self.words.get(word_id)

    def __contains__(self, word_id: str) -> bool:
        return word_id in self.words

    def all_words(self) -> list[Word]:
        return sorted(self.words.values(), key=lambda w: (w.spelling, w.id))


def _parse_record(line_no: int, raw: str) -> Word | Violation:
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        return Violation("MalformedRecord", f"line {line_no}: {exc.msg}")
    if not isinstance(data, dict):
        return Violation("MalformedRecord", f"line {line_no}: record is not an object")
    if set(data) != RECORD_FIELDS:
        extra = sorted(set(data) - RECORD_FIELDS)
        missing = sorted(RECORD_FIELDS - set(data))
        return Violation("MalformedRecord", f"line {line_no}: extra fields {extra}, missing fields {missing}")
    try:
        units = tuple(
            AlignmentUnit(tuple(int(i) for i in u["letters"]), tuple(str(p) for p in u["phonemes"]))
            for u in data["units"]
        )
        return Word(
            id=str(data["id"]),
            spelling=str(data["spelling"]),
            units=units,
            grade_level=int(data["grade"]),
            sentence=str(data["sentence"]),
            audio_ref=None if data["audio"] is None else str(data["audio"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        return Violation("MalformedRecord", f"line {line_no}: {exc}")


def ingest_lexicon(
    stream: IO[str] | str,
    categories: CategoryRegistry | None = None,
    inventory: frozenset[str] = ARPABET,
) -> tuple[Lexicon, list[tuple[int, Violation]]]:
    """Load a line-delimited lexicon stream.

    Valid records are loaded; invalid ones are reported with their line number
    and skipped. Duplicate spellings are fine (homographs get distinct ids),
    duplicate ids are not.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    lex = Lexicon(categories=categories or CategoryRegistry())
    problems: list[tuple[int, Violation]] = []
    try:
        lines = list(stream)
    except (OSError, UnicodeDecodeError) as exc:
        raise UnreadableStream(str(exc)) from exc

    for line_no, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        parsed = _parse_record(line_no, raw)
        if isinstance(parsed, Violation):
            problems.append((line_no, parsed))
            continue
        word_violations = validate_word(parsed, inventory)
        if word_violations:
            problems.extend((line_no, v) for v in word_violations)
            continue
        if parsed.id in lex.words:
            problems.append((line_no, Violation("DuplicateId", f"id {parsed.id!r} already loaded")))
            continue
        lex.words[parsed.id] = parsed
    return lex, problems


def load_lexicon_file(path, categories: CategoryRegistry | None = None):
    """ingest_lexicon over a file path."""
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise UnreadableStream(str(exc)) from exc
    with fh:
        return ingest_lexicon(fh, categories)


def target_unit(word: Word, category: SoundCategory) -> int | None:
    """Index of the first unit realizing any of the category's sounds, else None."""
    for idx, unit in enumerate(word.units):
        if set(unit.phonemes) & category.members:
            return idx
    return None


def _pattern_filter(name: str) -> GraphemePattern:
    # Pattern names are their own source text ("oa", "oCe", ...).
    try:
        return parse_pattern(name)
    except Exception as exc:
        raise UnknownPattern(f"{name!r} is not a valid pattern: {exc}") from exc


def query_words(
    lex: Lexicon,
    grade_level: int | None = None,
    category: str | None = None,
    pattern_name: str | None = None,
) -> list[str]:
    """Ids of words passing every present filter, ordered by (spelling, id).

    The category filter keeps words whose target unit exists; the pattern
    filter then requires the pattern to match that target unit. A pattern
    filter without a category matches against any unit of the word.
    """
    cat = lex.categories.get(category) if category is not None else None
    pattern = _pattern_filter(pattern_name) if pattern_name is not None else None

    out: list[Word] = []
    for word in lex.all_words():
        if grade_level is not None and word.grade_level != grade_level:
            continue
        unit_idx: int | None = None
        if cat is not None:
            unit_idx = target_unit(word, cat)
            if unit_idx is None:
                continue
        if pattern is not None:
            if unit_idx is not None:
                if not pattern_matches(pattern, word, unit_idx):
                    continue
            elif not any(pattern_matches(pattern, word, ui) for ui in range(len(word.units))):
                continue
        out.append(word)
    return [w.id for w in out]


@dataclass
class PrincipleWitnesses:
    """Witness lists for the four transparency principles.

    i   same symbol, several sounds: grapheme text -> its distinct realizations
    ii  same sound, several symbols: phoneme -> the graphemes writing it
    iii one symbol, several sounds at once: units whose phoneme sequence has >= 2 symbols
    iv  one sound, several letters: units spanning >= 2 letters
    """

    one_symbol_many_sounds: dict[str, list[tuple[str, ...]]] = field(default_factory=dict)
    one_sound_many_symbols: dict[str, list[str]] = field(default_factory=dict)
    multi_phoneme_units: list[tuple[str, int, str, tuple[str, ...]]] = field(default_factory=list)
    multi_letter_units: list[tuple[str, int, str, int]] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        return {
            "i": len(self.one_symbol_many_sounds),
            "ii": len(self.one_sound_many_symbols),
            "iii": len(self.multi_phoneme_units),
            "iv": len(self.multi_letter_units),
        }


@dataclass
class ConsistencyReport:
    grapheme_to_phonemes: dict[str, set[tuple[str, ...]]]
    phoneme_to_graphemes: dict[str, set[str]]
    principle_violations: PrincipleWitnesses

    def as_dict(self) -> dict:
        return {
            "grapheme_to_phonemes": {
                g: sorted(list(seq) for seq in seqs)
                for g, seqs in sorted(self.grapheme_to_phonemes.items())
            },
            "phoneme_to_graphemes": {
                p: sorted(gs) for p, gs in sorted(self.phoneme_to_graphemes.items())
            },
            "principle_violations": {
                "counts": self.principle_violations.counts(),
                "i": {
                    g: sorted(list(seq) for seq in seqs)
                    for g, seqs in sorted(self.principle_violations.one_symbol_many_sounds.items())
                },
                "ii": {
                    p: sorted(gs) for p, gs in sorted(self.principle_violations.one_sound_many_symbols.items())
                },
                "iii": [
                    {"word_id": wid, "unit": ui, "grapheme": g, "phonemes": list(seq)}
                    for wid, ui, g, seq in self.principle_violations.multi_phoneme_units
                ],
                "iv": [
                    {"word_id": wid, "unit": ui, "grapheme": g, "letters": n}
                    for wid, ui, g, n in self.principle_violations.multi_letter_units
                ],
            },
        }


def consistency_report(lex: Lexicon) -> ConsistencyReport:
    """Quantify how far the lexicon strays from a transparent writing system."""
    g2p: dict[str, set[tuple[str, ...]]] = {}
    p2g: dict[str, set[str]] = {}
    multi_ph: list[tuple[str, int, str, tuple[str, ...]]] = []
    multi_lt: list[tuple[str, int, str, int]] = []

    for word in lex.all_words():
        for ui, unit in enumerate(word.units):
            text = unit.grapheme_text(word.spelling)
            g2p.setdefault(text, set()).add(unit.phonemes)
            for ph in unit.phonemes:
                p2g.setdefault(ph, set()).add(text)
            if len(unit.phonemes) >= 2:
                multi_ph.append((word.id, ui, text, unit.phonemes))
            if len(unit.letter_indices) >= 2:
                multi_lt.append((word.id, ui, text, len(unit.letter_indices)))

    witnesses = PrincipleWitnesses(
        one_symbol_many_sounds={g: sorted(seqs) for g, seqs in g2p.items() if len(seqs) >= 2},
        one_sound_many_symbols={p: sorted(gs) for p, gs in p2g.items() if len(gs) >= 2},
        multi_phoneme_units=multi_ph,
        multi_letter_units=multi_lt,
    )
    return ConsistencyReport(g2p, p2g, witnesses)


def build_named_patterns(sources: Iterable[str]) -> tuple[NamedPattern, ...]:
    """Parse a list of pattern sources into named patterns (name = source)."""
    out = []
    for src in sources:
        try:
            out.append(NamedPattern(src, parse_pattern(src)))
        except Exception as exc:
            raise UnknownPattern(f"{src!r}: {exc}") from exc
    return tuple(out)


def patterns_by_category(config: Mapping[str, Sequence[str]]) -> dict[str, tuple[NamedPattern, ...]]:
    return {cat: build_named_patterns(sources) for cat, sources in config.items()}
