"""Users, roles, and aggregation of game events into progress reports.

Progress is a pure function of a game's event log: attempt counts per word and
stage, and correct/incorrect tallies keyed by grapheme pattern and by sound
category. Spelling trouble clusters around specific patterns, so the
per-pattern tallies are what a teacher dashboard highlights.
"""

from __future__ import annotations

import csv
import hashlib
import io
import secrets
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .errors import DuplicateName, InvalidRole, OrphanGame, UnknownTeacher
from .gamekit.matching import MatchingGameState
from .gamekit.sorting import SortingGameState


class Role(Enum):
    STUDENT = "student"
    TEACHER = "teacher"
    ADMINISTRATOR = "administrator"
    DEVELOPER = "developer"
    SYSTEM_ADMINISTRATOR = "system_administrator"


@dataclass(frozen=True)
class User:
    id: str
    display_name: str
    role: Role
    credential_hash: str
    teacher_id: str | None = None
    school_id: str | None = None


_PBKDF2_ITERATIONS = 50_000


def hash_credential(credential: str, salt: str | None = None) -> str:
    """Salted PBKDF2 hash, stored as pbkdf2$<iterations>$<salt>$<hex>."""
    salt = salt or secrets.token_hex(16)
    digest = hashlib.pbkdf2_hmac(
        "sha256", credential.encode(), bytes.fromhex(salt), _PBKDF2_ITERATIONS
    ).hex()
    return f"pbkdf2${_PBKDF2_ITERATIONS}${salt}${digest}"


def verify_credential(credential: str, stored: str) -> bool:
    try:
        scheme, iterations, salt, digest = stored.split("$")
        if scheme != "pbkdf2":
            return False
        recomputed = hashlib.pbkdf2_hmac(
            "sha256", credential.encode(), bytes.fromhex(salt), int(iterations)
        ).hex()
        return secrets.compare_digest(recomputed, digest)
    except (ValueError, TypeError):
        return False


def create_user(
    existing: Iterable[User],
    name: str,
    role: Role | str,
    credential: str,
    user_id: str,
    teacher_id: str | None = None,
    school_id: str | None = None,
) -> User:
    """Build a new User against the current user set.

    The caller supplies the id (storage owns id allocation). Students must
    reference an existing teacher; names are unique within a school.
    """
    if isinstance(role, str):
        try:
            role = Role(role)
        except ValueError:
            raise InvalidRole(f"unknown role {role!r}") from None
    if not name.strip():
        raise InvalidRole("display name must be non-empty")

    users = list(existing)
    if teacher_id is not None and role is not Role.STUDENT:
        raise InvalidRole(f"role {role.value} cannot be registered under a teacher")
    if role is Role.STUDENT and teacher_id is not None:
        teacher = next((u for u in users if u.id == teacher_id), None)
        if teacher is None or teacher.role is not Role.TEACHER:
            raise UnknownTeacher(f"teacher {teacher_id!r} not found")
    for u in users:
        if u.display_name == name and u.school_id == school_id:
            raise DuplicateName(f"name {name!r} already taken in this school")

    return User(
        id=user_id,
        display_name=name,
        role=role,
        credential_hash=hash_credential(credential),
        teacher_id=teacher_id if role is Role.STUDENT else None,
        school_id=school_id,
    )


@dataclass
class Tally:
    correct: int = 0
    incorrect: int = 0

    def add(self, correct: bool) -> None:
        if correct:
            self.correct += 1
        else:
            self.incorrect += 1

    def as_dict(self) -> dict:
        return {"correct": self.correct, "incorrect": self.incorrect}


@dataclass
class ProgressRecord:
    student_id: str
    game_id: str
    game_kind: str
    started_at: float | None
    finished_at: float | None
    per_word: dict[str, dict[str, int]] = field(default_factory=dict)
    per_pattern: dict[str, Tally] = field(default_factory=dict)
    per_category: dict[str, Tally] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "student_id": self.student_id,
            "game_id": self.game_id,
            "game_kind": self.game_kind,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "per_word": {w: dict(stages) for w, stages in sorted(self.per_word.items())},
            "per_pattern": {p: t.as_dict() for p, t in sorted(self.per_pattern.items())},
            "per_category": {c: t.as_dict() for c, t in sorted(self.per_category.items())},
        }


_STAGE_OF_EVENT = {
    "sound_choice": "sound",
    "pattern_choice": "pattern",
    "spelling_attempt": "spell",
    "card_flip": "flip",
}


def build_progress(
    game: SortingGameState | MatchingGameState,
    lex,
    student_id: str | None,
) -> ProgressRecord:
    """Aggregate a game's event log. The lexicon parameter is accepted for
    symmetry with reporting callers; aggregation itself only needs the log."""
    if not student_id:
        raise OrphanGame(f"game {game.game_id} has no owning student")

    kind = "sorting" if isinstance(game, SortingGameState) else "matching"
    record = ProgressRecord(
        student_id=student_id,
        game_id=game.game_id,
        game_kind=kind,
        started_at=game.events[0].timestamp if game.events else None,
        finished_at=next((e.timestamp for e in game.events if e.kind == "complete"), None),
    )

    for event in game.events:
        stage = _STAGE_OF_EVENT.get(event.kind)
        if stage is not None and event.word_id is not None:
            counts = record.per_word.setdefault(event.word_id, {})
            counts[stage] = counts.get(stage, 0) + 1
        if event.kind == "sound_choice":
            record.per_category.setdefault(event.submitted, Tally()).add(event.correct)
        elif event.kind == "pattern_choice":
            record.per_pattern.setdefault(event.submitted, Tally()).add(event.correct)
        elif event.kind == "pair_resolved" and isinstance(game, MatchingGameState):
            # Attributed to the first card of the pair; one tally per resolution
            # keeps category totals equal to the resolution count.
            first_idx = event.submitted[0]
            category = game.cards[first_idx].category
            record.per_category.setdefault(category, Tally()).add(event.correct)
    return record


@dataclass
class StudentSummary:
    student_id: str
    student_name: str
    games: int
    finished_games: int
    per_word: dict[str, dict[str, int]]
    per_pattern: dict[str, Tally]
    per_category: dict[str, Tally]

    def as_dict(self) -> dict:
        return {
            "student_id": self.student_id,
            "student_name": self.student_name,
            "games": self.games,
            "finished_games": self.finished_games,
            "per_word": {w: dict(s) for w, s in sorted(self.per_word.items())},
            "per_pattern": {p: t.as_dict() for p, t in sorted(self.per_pattern.items())},
            "per_category": {c: t.as_dict() for c, t in sorted(self.per_category.items())},
        }


@dataclass
class ClassReport:
    teacher_id: str
    students: list[StudentSummary]
    totals_per_pattern: dict[str, Tally]
    totals_per_category: dict[str, Tally]
    totals_per_word: dict[str, dict[str, int]]

    def as_dict(self) -> dict:
        return {
            "teacher_id": self.teacher_id,
            "students": [s.as_dict() for s in self.students],
            "totals": {
                "per_word": {w: dict(s) for w, s in sorted(self.totals_per_word.items())},
                "per_pattern": {p: t.as_dict() for p, t in sorted(self.totals_per_pattern.items())},
                "per_category": {c: t.as_dict() for c, t in sorted(self.totals_per_category.items())},
            },
        }


def _merge_words(into: dict[str, dict[str, int]], source: Mapping[str, Mapping[str, int]]) -> None:
    for wid, stages in source.items():
        counts = into.setdefault(wid, {})
        for stage, n in stages.items():
            counts[stage] = counts.get(stage, 0) + n


def _merge_tallies(into: dict[str, Tally], source: Mapping[str, Tally]) -> None:
    for key, tally in source.items():
        agg = into.setdefault(key, Tally())
        agg.correct += tally.correct
        agg.incorrect += tally.incorrect


def aggregate_records(
    records: Iterable[ProgressRecord],
) -> tuple[dict[str, dict[str, int]], dict[str, Tally], dict[str, Tally]]:
    """Element-wise sum of records: (per_word, per_pattern, per_category)."""
    per_word: dict[str, dict[str, int]] = {}
    per_pattern: dict[str, Tally] = {}
    per_category: dict[str, Tally] = {}
    for rec in records:
        _merge_words(per_word, rec.per_word)
        _merge_tallies(per_pattern, rec.per_pattern)
        _merge_tallies(per_category, rec.per_category)
    return per_word, per_pattern, per_category


def class_report(
    teacher_id: str,
    users: Iterable[User],
    records_by_student: Mapping[str, list[ProgressRecord]],
) -> ClassReport:
    """Element-wise sum of the teacher's students' records, students ordered by name."""
    users = list(users)
    teacher = next((u for u in users if u.id == teacher_id), None)
    if teacher is None or teacher.role is not Role.TEACHER:
        raise UnknownTeacher(f"teacher {teacher_id!r} not found")

    students = sorted(
        (u for u in users if u.role is Role.STUDENT and u.teacher_id == teacher_id),
        key=lambda u: (u.display_name, u.id),
    )
    summaries: list[StudentSummary] = []
    totals_words: dict[str, dict[str, int]] = {}
    totals_patterns: dict[str, Tally] = {}
    totals_categories: dict[str, Tally] = {}

    for student in students:
        records = records_by_student.get(student.id, [])
        per_word, per_pattern, per_category = aggregate_records(records)
        summaries.append(StudentSummary(
            student_id=student.id,
            student_name=student.display_name,
            games=len(records),
            finished_games=sum(1 for r in records if r.finished_at is not None),
            per_word=per_word,
            per_pattern=per_pattern,
            per_category=per_category,
        ))
        _merge_words(totals_words, per_word)
        _merge_tallies(totals_patterns, per_pattern)
        _merge_tallies(totals_categories, per_category)

    return ClassReport(teacher_id, summaries, totals_patterns, totals_categories, totals_words)


def class_report_csv(report: ClassReport) -> str:
    """One row per (student, word, stage)."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["student_id", "student_name", "word_id", "stage", "attempts"])
    for summary in report.students:
        for wid in sorted(summary.per_word):
            for stage in sorted(summary.per_word[wid]):
                writer.writerow([
                    summary.student_id,
                    summary.student_name,
                    wid,
                    stage,
                    summary.per_word[wid][stage],
                ])
    return buf.getvalue()
