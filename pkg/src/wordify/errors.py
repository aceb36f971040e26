"""Exception types shared across the lexicon, game engine, roster and service layers.

Every error that a caller is expected to branch on gets its own class; the
service layer maps these onto HTTP status codes in one place.
"""

from __future__ import annotations


class WordifyError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def __init__(self, detail: str = ""):
        self.detail = detail
        super().__init__(detail or self.code)


# --- pattern DSL ---

class PatternError(WordifyError):
    code = "pattern_error"


class EmptyPattern(PatternError):
    code = "empty_pattern"


class IllegalCharacter(PatternError):
    code = "illegal_character"


class NoLiteral(PatternError):
    code = "no_literal"


class UnitOutOfRange(WordifyError):
    code = "unit_out_of_range"


class AmbiguousClassification(WordifyError):
    code = "ambiguous_classification"


# --- lexicon ---

class UnknownCategory(WordifyError):
    code = "unknown_category"


class UnknownPattern(WordifyError):
    code = "unknown_pattern"


class UnreadableStream(WordifyError):
    code = "unreadable_stream"


class MalformedRecord(WordifyError):
    code = "malformed_record"

    def __init__(self, line_no: int, detail: str = ""):
        self.line_no = line_no
        super().__init__(detail)


# --- game engine ---

class ConfigInvalid(WordifyError):
    code = "config_invalid"


class PoolTooSmall(ConfigInvalid):
    code = "pool_too_small"

    def __init__(self, category: str, detail: str = ""):
        self.category = category
        super().__init__(detail or f"pool too small for category {category!r}")


class WrongStage(WordifyError):
    code = "wrong_stage"


class GamePaused(WordifyError):
    code = "game_paused"


class GameFinished(WordifyError):
    code = "game_finished"


class AlreadyPaused(WordifyError):
    code = "already_paused"


class NotPaused(WordifyError):
    code = "not_paused"


class EmptyAnswer(WordifyError):
    code = "empty_answer"


class CardNotFaceDown(WordifyError):
    code = "card_not_face_down"


class CardIndexOutOfRange(WordifyError):
    code = "index_out_of_range"


class SchemaMismatch(WordifyError):
    code = "schema_mismatch"


class UnknownWordId(WordifyError):
    code = "unknown_word_id"


# --- roster ---

class UnknownTeacher(WordifyError):
    code = "unknown_teacher"


class InvalidRole(WordifyError):
    code = "invalid_role"


class DuplicateName(WordifyError):
    code = "duplicate_name"


class OrphanGame(WordifyError):
    code = "orphan_game"


# --- storage / service ---

class StorageError(WordifyError):
    code = "storage_error"


class VersionConflict(WordifyError):
    code = "version_conflict"

    def __init__(self, current_version: int, detail: str = ""):
        self.current_version = current_version
        super().__init__(detail or f"stored version is {current_version}")


class NotFound(WordifyError):
    code = "not_found"


class AuthenticationFailed(WordifyError):
    code = "invalid_credentials"


class Forbidden(WordifyError):
    code = "forbidden"
