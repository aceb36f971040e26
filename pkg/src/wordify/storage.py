"""Embedded datastore: words, users, games, tokens and audio in one SQLite file.

Several service replicas may share the file (WAL journal, short transactions).
Game rows carry the document version; updates are compare-and-set on that
version, which is what makes optimistic concurrency on the action endpoint
safe across processes.

Ids and tokens are derived from per-store counters and a per-store secret
rather than process-local randomness, so two replicas serving the same store
allocate the same sequences. Tokens stay unguessable from outside: they are
HMACs under the store secret and are only valid while their row is unexpired.
"""

from __future__ import annotations

import hmac
import hashlib
import json
import secrets
import sqlite3
import time
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

from .errors import NotFound, StorageError
from .lexicon import Lexicon, ingest_lexicon
from .phonemes import CategoryRegistry, SoundCategory
from .roster import Role, User

_SCHEMA = """
CREATE TABLE IF NOT EXISTS meta (key TEXT PRIMARY KEY, value TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS words (id TEXT PRIMARY KEY, record TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS categories (name TEXT PRIMARY KEY, members TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS users (
    id TEXT PRIMARY KEY,
    name TEXT NOT NULL,
    role TEXT NOT NULL,
    credential_hash TEXT NOT NULL,
    teacher_id TEXT,
    school_id TEXT
);
CREATE UNIQUE INDEX IF NOT EXISTS users_name_school
    ON users (name, COALESCE(school_id, ''));
CREATE TABLE IF NOT EXISTS games (
    id TEXT PRIMARY KEY,
    owner_id TEXT NOT NULL,
    kind TEXT NOT NULL,
    doc TEXT NOT NULL,
    version INTEGER NOT NULL,
    finished INTEGER NOT NULL DEFAULT 0,
    created_by TEXT
);
CREATE INDEX IF NOT EXISTS games_owner ON games (owner_id);
CREATE TABLE IF NOT EXISTS tokens (
    token TEXT PRIMARY KEY,
    user_id TEXT NOT NULL,
    role TEXT NOT NULL,
    expires_at REAL NOT NULL
);
CREATE TABLE IF NOT EXISTS audio (
    key TEXT PRIMARY KEY,
    media_type TEXT NOT NULL,
    data BLOB NOT NULL
);
"""


@dataclass(frozen=True)
class StoredGame:
    id: str
    owner_id: str
    kind: str
    doc: dict
    version: int
    finished: bool
    created_by: str | None


@dataclass(frozen=True)
class TokenInfo:
    token: str
    user_id: str
    role: Role
    expires_at: float


class Store:
    def __init__(self, path: str | Path, create: bool = False):
        self.path = Path(path)
        if not create and not self.path.exists():
            raise StorageError(f"datastore {self.path} does not exist")
        init = create and not self.path.exists()
        with self._connect() as conn:
            conn.executescript(_SCHEMA)
            if init or self._get_meta(conn, "secret") is None:
                conn.execute(
                    "INSERT OR IGNORE INTO meta (key, value) VALUES ('secret', ?)",
                    (secrets.token_hex(32),),
                )

    @contextmanager
    def _connect(self):
        conn = sqlite3.connect(self.path, timeout=10.0)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA journal_mode=WAL")
        conn.execute("PRAGMA busy_timeout=10000")
        try:
            yield conn
            conn.commit()
        except Exception:
            conn.rollback()
            raise
        finally:
            conn.close()

    @staticmethod
    def _get_meta(conn, key: str) -> str | None:
        row = conn.execute("SELECT value FROM meta WHERE key = ?", (key,)).fetchone()
        return row["value"] if row else None

    def _next_seq(self, name: str) -> int:
        with self._connect() as conn:
            conn.execute("BEGIN IMMEDIATE")
            row = conn.execute("SELECT value FROM meta WHERE key = ?", (name,)).fetchone()
            value = int(row["value"]) + 1 if row else 1
            conn.execute(
                "INSERT INTO meta (key, value) VALUES (?, ?) "
                "ON CONFLICT(key) DO UPDATE SET value = excluded.value",
                (name, str(value)),
            )
            return value

    @property
    def secret(self) -> str:
        with self._connect() as conn:
            return self._get_meta(conn, "secret")

    # --- lexicon ---

    def replace_lexicon(self, records: list[dict], categories: dict[str, list[str]]) -> None:
        """Swap in a new word set atomically."""
        with self._connect() as conn:
            conn.execute("BEGIN IMMEDIATE")
            conn.execute("DELETE FROM words")
            conn.execute("DELETE FROM categories")
            conn.executemany(
                "INSERT INTO words (id, record) VALUES (?, ?)",
                [(r["id"], json.dumps(r, sort_keys=True)) for r in records],
            )
            conn.executemany(
                "INSERT INTO categories (name, members) VALUES (?, ?)",
                [(name, json.dumps(sorted(members))) for name, members in categories.items()],
            )

    def load_lexicon(self) -> Lexicon:
        """Rebuild the immutable lexicon snapshot; stored records must be valid."""
        with self._connect() as conn:
            cat_rows = conn.execute("SELECT name, members FROM categories ORDER BY name").fetchall()
            word_rows = conn.execute("SELECT record FROM words ORDER BY id").fetchall()
        registry = CategoryRegistry(
            SoundCategory(row["name"], frozenset(json.loads(row["members"]))) for row in cat_rows
        )
        stream = "\n".join(row["record"] for row in word_rows)
        lex, problems = ingest_lexicon(stream, registry)
        if problems:
            raise StorageError(f"stored lexicon is corrupt: {problems[:3]}")
        return lex

    def lexicon_fingerprint(self) -> str:
        with self._connect() as conn:
            rows = conn.execute("SELECT id, record FROM words ORDER BY id").fetchall()
        digest = hashlib.sha256()
        for row in rows:
            digest.update(row["record"].encode())
        return digest.hexdigest()[:16]

    # --- audio ---

    def put_audio(self, key: str, media_type: str, data: bytes) -> None:
        with self._connect() as conn:
            conn.execute(
                "INSERT INTO audio (key, media_type, data) VALUES (?, ?, ?) "
                "ON CONFLICT(key) DO UPDATE SET media_type = excluded.media_type, data = excluded.data",
                (key, media_type, data),
            )

    def get_audio(self, key: str) -> tuple[str, bytes] | None:
        with self._connect() as conn:
            row = conn.execute("SELECT media_type, data FROM audio WHERE key = ?", (key,)).fetchone()
        return (row["media_type"], row["data"]) if row else None

    # --- users ---

    def next_user_id(self) -> str:
        return f"u-{self._next_seq('user_seq'):04d}"

    def put_user(self, user: User) -> None:
        with self._connect() as conn:
            try:
                conn.execute(
                    "INSERT INTO users (id, name, role, credential_hash, teacher_id, school_id) "
                    "VALUES (?, ?, ?, ?, ?, ?)",
                    (user.id, user.display_name, user.role.value, user.credential_hash,
                     user.teacher_id, user.school_id),
                )
            except sqlite3.IntegrityError as exc:
                raise StorageError(f"cannot store user {user.id}: {exc}") from exc

    @staticmethod
    def _row_to_user(row) -> User:
        return User(
            id=row["id"],
            display_name=row["name"],
            role=Role(row["role"]),
            credential_hash=row["credential_hash"],
            teacher_id=row["teacher_id"],
            school_id=row["school_id"],
        )

    def get_user(self, user_id: str) -> User | None:
        with self._connect() as conn:
            row = conn.execute("SELECT * FROM users WHERE id = ?", (user_id,)).fetchone()
        return self._row_to_user(row) if row else None

    def find_users_by_name(self, name: str) -> list[User]:
        with self._connect() as conn:
            rows = conn.execute("SELECT * FROM users WHERE name = ? ORDER BY id", (name,)).fetchall()
        return [self._row_to_user(r) for r in rows]

    def list_users(self) -> list[User]:
        with self._connect() as conn:
            rows = conn.execute("SELECT * FROM users ORDER BY id").fetchall()
        return [self._row_to_user(r) for r in rows]

    def students_of(self, teacher_id: str) -> list[User]:
        with self._connect() as conn:
            rows = conn.execute(
                "SELECT * FROM users WHERE role = 'student' AND teacher_id = ? ORDER BY name, id",
                (teacher_id,),
            ).fetchall()
        return [self._row_to_user(r) for r in rows]

    # --- games ---

    def next_game_id(self) -> str:
        return f"g-{self._next_seq('game_seq'):06d}"

    def create_game(self, game_id: str, owner_id: str, kind: str, doc: dict,
                    finished: bool, created_by: str | None = None) -> None:
        with self._connect() as conn:
            conn.execute(
                "INSERT INTO games (id, owner_id, kind, doc, version, finished, created_by) "
                "VALUES (?, ?, ?, ?, ?, ?, ?)",
                (game_id, owner_id, kind, json.dumps(doc, sort_keys=True),
                 doc["state"]["version"], int(finished), created_by),
            )

    def get_game(self, game_id: str) -> StoredGame:
        with self._connect() as conn:
            row = conn.execute("SELECT * FROM games WHERE id = ?", (game_id,)).fetchone()
        if row is None:
            raise NotFound(f"game {game_id!r} not found")
        return StoredGame(
            id=row["id"],
            owner_id=row["owner_id"],
            kind=row["kind"],
            doc=json.loads(row["doc"]),
            version=row["version"],
            finished=bool(row["finished"]),
            created_by=row["created_by"],
        )

    def update_game_cas(self, game_id: str, expected_version: int, doc: dict, finished: bool) -> bool:
        """Compare-and-set on the stored version. False means a concurrent write won."""
        new_version = doc["state"]["version"]
        with self._connect() as conn:
            cur = conn.execute(
                "UPDATE games SET doc = ?, version = ?, finished = ? WHERE id = ? AND version = ?",
                (json.dumps(doc, sort_keys=True), new_version, int(finished),
                 game_id, expected_version),
            )
            return cur.rowcount == 1

    def games_of(self, owner_id: str) -> list[StoredGame]:
        with self._connect() as conn:
            rows = conn.execute(
                "SELECT id FROM games WHERE owner_id = ? ORDER BY id", (owner_id,)
            ).fetchall()
        return [self.get_game(row["id"]) for row in rows]

    # --- tokens ---

    def issue_token(self, user: User, ttl_seconds: float, now: float | None = None) -> TokenInfo:
        now = time.time() if now is None else now
        seq = self._next_seq("token_seq")
        token = hmac.new(
            self.secret.encode(), f"tok:{user.id}:{seq}".encode(), hashlib.sha256
        ).hexdigest()
        info = TokenInfo(token=token, user_id=user.id, role=user.role, expires_at=now + ttl_seconds)
        with self._connect() as conn:
            conn.execute(
                "INSERT INTO tokens (token, user_id, role, expires_at) VALUES (?, ?, ?, ?)",
                (info.token, info.user_id, info.role.value, info.expires_at),
            )
        return info

    def check_token(self, token: str, now: float | None = None) -> TokenInfo | None:
        now = time.time() if now is None else now
        with self._connect() as conn:
            row = conn.execute("SELECT * FROM tokens WHERE token = ?", (token,)).fetchone()
        if row is None or row["expires_at"] <= now:
            return None
        return TokenInfo(row["token"], row["user_id"], Role(row["role"]), row["expires_at"])

    # --- stats ---

    def counts(self) -> dict:
        with self._connect() as conn:
            users = conn.execute(
                "SELECT role, COUNT(*) AS n FROM users GROUP BY role ORDER BY role"
            ).fetchall()
            games = conn.execute(
                "SELECT kind, COUNT(*) AS n FROM games GROUP BY kind ORDER BY kind"
            ).fetchall()
            finished = conn.execute("SELECT COUNT(*) AS n FROM games WHERE finished = 1").fetchone()
            words = conn.execute("SELECT COUNT(*) AS n FROM words").fetchone()
        return {
            "users_by_role": {r["role"]: r["n"] for r in users},
            "games_by_kind": {r["kind"]: r["n"] for r in games},
            "finished_games": finished["n"],
            "words": words["n"],
        }
