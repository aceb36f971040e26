"""The stateless HTTP/JSON API.

Every request carries everything needed to serve it (a bearer token plus the
payload); replicas share nothing but the datastore, so any process can serve
any request. Game actions are serialized per game by optimistic versioning:
the client echoes the version it saw, the store applies the transition with a
compare-and-set, and a stale echo gets 409 plus the current state instead of a
double-applied action.
"""

from __future__ import annotations

import hashlib
import json
import logging
import sys
import time
from typing import Any

from fastapi import FastAPI, Header, Query, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ..errors import (
    AuthenticationFailed,
    ConfigInvalid,
    Forbidden,
    NotFound,
    StorageError,
    WordifyError,
)
from ..gamekit import deserialize_game, serialize_game
from ..gamekit.actions import apply_action
from ..gamekit.configs import matching_config_from_dict, sorting_config_from_dict
from ..gamekit.matching import MatchingGameState, new_matching_game
from ..gamekit.sorting import new_sorting_game
from ..lexicon import Lexicon, ingest_lexicon, query_words
from ..roster import Role, aggregate_records, build_progress, class_report, class_report_csv, create_user, verify_credential
from ..storage import Store
from .auth import AuthContext, authenticate, can_view_student, require_role
from .views import (
    flip_outcome_view,
    game_summary_view,
    sort_outcome_view,
    state_view,
    user_view,
    word_summary_view,
)

DEFAULT_TOKEN_TTL = 8 * 3600.0

log = logging.getLogger("wordify.access")


class LoginRequest(BaseModel):
    name: str
    credential: str


class CreateUserRequest(BaseModel):
    name: str
    role: str
    credential: str
    teacher_id: str | None = None
    school_id: str | None = None


class CreateGameRequest(BaseModel):
    kind: str
    config: dict
    assignee: str | None = None


class ActionRequest(BaseModel):
    expected_version: int = Field(ge=0)
    action: dict


class LexiconUpload(BaseModel):
    records: list[dict]
    categories: dict[str, list[str]]


class _LexiconHolder:
    """Immutable snapshot, swapped atomically on re-ingest."""

    def __init__(self, lexicon: Lexicon, fingerprint: str):
        self.current = lexicon
        self.fingerprint = fingerprint


def _error_status(exc: WordifyError) -> int:
    if isinstance(exc, AuthenticationFailed):
        return 401
    if isinstance(exc, Forbidden):
        return 403
    if isinstance(exc, NotFound):
        return 404
    if isinstance(exc, StorageError):
        return 500
    return 400


def _etag_response(request: Request, body: dict, etag: str) -> Response:
    if request.headers.get("if-none-match") == etag:
        return Response(status_code=304, headers={"ETag": etag})
    return JSONResponse(body, headers={"ETag": etag, "Cache-Control": "private, max-age=60"})


def create_app(store: Store, token_ttl: float = DEFAULT_TOKEN_TTL) -> FastAPI:
    app = FastAPI(title="wordify", docs_url=None, redoc_url=None)
    holder = _LexiconHolder(store.load_lexicon(), store.lexicon_fingerprint())

    from fastapi.middleware.cors import CORSMiddleware

    # browser clients are served from their own origin; tokens, not cookies
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["ETag"],
    )

    if not log.handlers:
        handler = logging.StreamHandler(sys.stdout)
        handler.setFormatter(logging.Formatter("%(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.INFO)
        log.propagate = False

    @app.middleware("http")
    async def access_log(request: Request, call_next):
        started = time.monotonic()
        response = await call_next(request)
        log.info(json.dumps({
            "method": request.method,
            "path": request.url.path,
            "status": response.status_code,
            "duration_ms": round((time.monotonic() - started) * 1000, 2),
        }, sort_keys=True))
        return response

    @app.exception_handler(WordifyError)
    async def wordify_error(_request: Request, exc: WordifyError):
        return JSONResponse(
            {"error": exc.code, "detail": exc.detail}, status_code=_error_status(exc)
        )

    def _auth(authorization: str | None) -> AuthContext:
        return authenticate(store, authorization)

    def _load_state(stored):
        return deserialize_game(stored.doc, holder.current)

    # --- sessions ---

    @app.post("/api/v1/sessions")
    def login(body: LoginRequest):
        for candidate in store.find_users_by_name(body.name):
            if verify_credential(body.credential, candidate.credential_hash):
                info = store.issue_token(candidate, token_ttl)
                return {"token": info.token}
        raise AuthenticationFailed("name or credential not recognized")

    @app.get("/api/v1/users/me")
    def whoami(authorization: str | None = Header(default=None)):
        ctx = _auth(authorization)
        return user_view(ctx.user)

    # --- users ---

    @app.post("/api/v1/users", status_code=201)
    def create_user_route(body: CreateUserRequest, authorization: str | None = Header(default=None)):
        ctx = _auth(authorization)
        require_role(ctx, Role.ADMINISTRATOR, Role.SYSTEM_ADMINISTRATOR)
        user = create_user(
            store.list_users(),
            name=body.name,
            role=body.role,
            credential=body.credential,
            user_id=store.next_user_id(),
            teacher_id=body.teacher_id,
            school_id=body.school_id,
        )
        store.put_user(user)
        return user_view(user)

    # --- lexicon ---

    @app.get("/api/v1/words")
    def words(
        request: Request,
        grade: int | None = Query(default=None),
        category: str | None = Query(default=None),
        pattern: str | None = Query(default=None),
        authorization: str | None = Header(default=None),
    ):
        _auth(authorization)
        lex = holder.current
        ids = query_words(lex, grade_level=grade, category=category, pattern_name=pattern)
        body = {"words": [word_summary_view(lex.get(i)) for i in ids]}
        raw = f"{holder.fingerprint}:{grade}:{category}:{pattern}"
        etag = 'W/"' + hashlib.sha256(raw.encode()).hexdigest()[:16] + '"'
        return _etag_response(request, body, etag)

    @app.post("/api/v1/lexicon")
    def replace_lexicon(body: LexiconUpload, authorization: str | None = Header(default=None)):
        ctx = _auth(authorization)
        require_role(ctx, Role.SYSTEM_ADMINISTRATOR)
        stream = "\n".join(json.dumps(r, sort_keys=True) for r in body.records)
        try:
            from ..phonemes import load_categories

            registry = load_categories(body.categories)
        except Exception as exc:
            raise ConfigInvalid(f"bad category registry: {exc}") from exc
        lex, problems = ingest_lexicon(stream, registry)
        if problems:
            return JSONResponse(
                {
                    "error": "invalid_records",
                    "problems": [
                        {"line": line, "kind": v.kind, "detail": v.detail} for line, v in problems
                    ],
                },
                status_code=400,
            )
        store.replace_lexicon(body.records, body.categories)
        holder.current = lex
        holder.fingerprint = store.lexicon_fingerprint()
        return {"words": len(lex)}

    # --- games ---

    def _build_game(kind: str, config: dict, game_id: str):
        lex = holder.current
        if kind == "sorting":
            return new_sorting_game(sorting_config_from_dict(config), lex, game_id=game_id)
        if kind == "matching":
            return new_matching_game(matching_config_from_dict(config), lex, game_id=game_id)
        raise ConfigInvalid(f"unknown game kind {kind!r}")

    @app.post("/api/v1/games", status_code=201)
    def create_game(body: CreateGameRequest, authorization: str | None = Header(default=None)):
        ctx = _auth(authorization)
        if ctx.role is Role.STUDENT:
            if body.assignee not in (None, ctx.user_id):
                raise Forbidden("students create games only for themselves")
            owner = ctx.user
        elif ctx.role is Role.TEACHER:
            if body.assignee is None:
                raise ConfigInvalid("teachers must name the student the game is for")
            owner = store.get_user(body.assignee)
            if owner is None or owner.role is not Role.STUDENT or owner.teacher_id != ctx.user_id:
                raise Forbidden("assignee is not one of this teacher's students")
        else:
            raise Forbidden("only students and teachers start games")

        game_id = store.next_game_id()
        state = _build_game(body.kind, body.config, game_id)
        store.create_game(
            game_id, owner.id, body.kind, serialize_game(state),
            finished=state.finished, created_by=ctx.user_id,
        )
        return {"game_id": game_id, "state": state_view(state, holder.current)}

    @app.get("/api/v1/games")
    def list_games(
        student: str | None = Query(default=None),
        authorization: str | None = Header(default=None),
    ):
        ctx = _auth(authorization)
        if student is None:
            if ctx.role is Role.STUDENT:
                student = ctx.user_id
            elif ctx.role is Role.TEACHER:
                games = []
                for pupil in store.students_of(ctx.user_id):
                    games.extend(store.games_of(pupil.id))
                return {"games": [game_summary_view(g) for g in games]}
            else:
                raise ConfigInvalid("student query parameter required")
        target = store.get_user(student)
        if target is None:
            raise NotFound(f"student {student!r} not found")
        if not can_view_student(ctx, target):
            raise Forbidden("not allowed to list this student's games")
        return {"games": [game_summary_view(g) for g in store.games_of(student)]}

    @app.get("/api/v1/games/{game_id}")
    def get_game(game_id: str, authorization: str | None = Header(default=None)):
        ctx = _auth(authorization)
        stored = store.get_game(game_id)
        owner = store.get_user(stored.owner_id)
        if owner is None or not can_view_student(ctx, owner):
            raise Forbidden("not allowed to view this game")
        return {"game_id": game_id, "state": state_view(_load_state(stored), holder.current)}

    @app.post("/api/v1/games/{game_id}/actions")
    def act(game_id: str, body: ActionRequest, authorization: str | None = Header(default=None)):
        ctx = _auth(authorization)
        stored = store.get_game(game_id)
        if stored.owner_id != ctx.user_id:
            raise Forbidden("only the owning student plays this game")

        def conflict(current) -> JSONResponse:
            return JSONResponse(
                {
                    "error": "version_conflict",
                    "detail": f"stored version is {current.version}",
                    "current_version": current.version,
                    "state": state_view(_load_state(current), holder.current),
                },
                status_code=409,
            )

        if body.expected_version != stored.version:
            return conflict(stored)
        state = _load_state(stored)
        before = state
        state, outcome = apply_action(state, body.action)
        if not store.update_game_cas(game_id, body.expected_version, serialize_game(state), state.finished):
            return conflict(store.get_game(game_id))

        if outcome is None:
            outcome_body: Any = None
        elif isinstance(before, MatchingGameState):
            outcome_body = flip_outcome_view(outcome, state, holder.current)
        else:
            outcome_body = sort_outcome_view(outcome)
        return {"outcome": outcome_body, "state": state_view(state, holder.current)}

    # --- progress ---

    def _records_for(student_id: str):
        lex = holder.current
        records = []
        for stored in store.games_of(student_id):
            game_state = deserialize_game(stored.doc, lex)
            records.append(build_progress(game_state, lex, student_id))
        return records

    @app.get("/api/v1/students/{student_id}/progress")
    def student_progress(student_id: str, authorization: str | None = Header(default=None)):
        ctx = _auth(authorization)
        target = store.get_user(student_id)
        if target is None or target.role is not Role.STUDENT:
            raise NotFound(f"student {student_id!r} not found")
        if not can_view_student(ctx, target):
            raise Forbidden("not allowed to read this student's progress")
        records = _records_for(student_id)
        per_word, per_pattern, per_category = aggregate_records(records)
        return {
            "student_id": student_id,
            "games": [r.as_dict() for r in records],
            "totals": {
                "per_word": {w: dict(s) for w, s in sorted(per_word.items())},
                "per_pattern": {p: t.as_dict() for p, t in sorted(per_pattern.items())},
                "per_category": {c: t.as_dict() for c, t in sorted(per_category.items())},
            },
        }

    @app.get("/api/v1/teachers/{teacher_id}/class-report")
    def teacher_class_report(
        teacher_id: str,
        format: str = Query(default="json"),
        authorization: str | None = Header(default=None),
    ):
        ctx = _auth(authorization)
        teacher = store.get_user(teacher_id)
        if teacher is None or teacher.role is not Role.TEACHER:
            raise NotFound(f"teacher {teacher_id!r} not found")
        if ctx.user_id != teacher_id and ctx.role not in (Role.ADMINISTRATOR, Role.SYSTEM_ADMINISTRATOR):
            raise Forbidden("not allowed to read this class report")
        records_by_student = {
            pupil.id: _records_for(pupil.id) for pupil in store.students_of(teacher_id)
        }
        report = class_report(teacher_id, store.list_users(), records_by_student)
        if format == "csv":
            return Response(class_report_csv(report), media_type="text/csv")
        return report.as_dict()

    # --- audio ---

    @app.get("/api/v1/audio/{asset_key}")
    def audio(asset_key: str, request: Request, authorization: str | None = Header(default=None)):
        _auth(authorization)
        found = store.get_audio(asset_key)
        if found is None:
            raise NotFound(f"audio asset {asset_key!r} not found")
        media_type, data = found
        etag = '"' + hashlib.sha256(data).hexdigest()[:16] + '"'
        if request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        return Response(
            data,
            media_type=media_type,
            headers={"ETag": etag, "Cache-Control": "private, max-age=3600"},
        )

    # --- operational ---

    @app.get("/api/v1/stats")
    def stats(authorization: str | None = Header(default=None)):
        ctx = _auth(authorization)
        require_role(ctx, Role.DEVELOPER, Role.ADMINISTRATOR, Role.SYSTEM_ADMINISTRATOR)
        return store.counts()

    @app.get("/healthz")
    def healthz():
        return {"ok": True, "words": len(holder.current)}

    return app
