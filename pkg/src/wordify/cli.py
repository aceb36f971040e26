"""The wordify command line: ingest, report, query, simulate, serve, user, seed.

Exit codes are a stable contract for CI: 0 success, 1 validation or simulation
failure, 2 environment or I/O failure.
"""

from __future__ import annotations

import argparse
import json
import mimetypes
import sys
from pathlib import Path

from . import seed_audio_dir, seed_categories_path, seed_lexicon_path
from .errors import StorageError, WordifyError
from .gamekit import serialize_game
from .lexicon import consistency_report, load_lexicon_file, query_words
from .phonemes import load_categories
from .report import format_report_text, render_report_figures, write_report_csv
from .roster import create_user
from .sim import run_simulation
from .storage import Store

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_ENV = 2


def _open_store(path: str, create: bool = False) -> Store:
    return Store(path, create=create)


def _load_records(path: Path) -> list[dict]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(json.loads(line))
    return records


def cmd_ingest(args) -> int:
    lexicon_path = Path(args.file)
    categories_path = Path(args.categories) if args.categories else seed_categories_path()
    try:
        registry = load_categories(categories_path)
        lex, problems = load_lexicon_file(lexicon_path, registry)
    except (OSError, WordifyError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_ENV
    except json.JSONDecodeError as exc:
        print(f"error: bad category registry: {exc}", file=sys.stderr)
        return EXIT_ENV

    if problems:
        print(f"{len(problems)} violation(s):")
        print(f"{'line':>6}  {'kind':24}  detail")
        for line_no, violation in problems:
            print(f"{line_no:>6}  {violation.kind:24}  {violation.detail}")

    try:
        store = _open_store(args.out, create=True)
        records = [r for r in _load_records(lexicon_path) if r.get("id") in lex.words]
        store.replace_lexicon(records, registry.as_dict())
    except (OSError, json.JSONDecodeError, WordifyError) as exc:
        print(f"error: cannot write store: {exc}", file=sys.stderr)
        return EXIT_ENV

    audio_dir = Path(args.audio_dir) if args.audio_dir else lexicon_path.parent / "audio"
    loaded_audio = 0
    for word in lex.all_words():
        if not word.audio_ref:
            continue
        asset = audio_dir / word.audio_ref
        if asset.is_file():
            media_type = mimetypes.guess_type(asset.name)[0] or "application/octet-stream"
            store.put_audio(word.audio_ref, media_type, asset.read_bytes())
            loaded_audio += 1
        else:
            print(f"warning: audio asset {asset} not found", file=sys.stderr)

    print(f"{len(lex)} words loaded ({loaded_audio} audio assets)")
    return EXIT_FAILURE if problems else EXIT_OK


def cmd_report(args) -> int:
    try:
        store = _open_store(args.store)
        lex = store.load_lexicon()
    except (StorageError, WordifyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    report = consistency_report(lex)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
    else:
        print(format_report_text(report), end="")
    if args.out:
        paths = write_report_csv(report, args.out)
        paths += render_report_figures(report, args.out)
        for path in paths:
            print(f"wrote {path}")
    return EXIT_OK


def cmd_query(args) -> int:
    try:
        store = _open_store(args.store)
        lex = store.load_lexicon()
    except (StorageError, WordifyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    try:
        ids = query_words(lex, grade_level=args.grade, category=args.category, pattern_name=args.pattern)
    except WordifyError as exc:
        print(f"error: {exc.code}: {exc.detail}", file=sys.stderr)
        return EXIT_FAILURE
    if args.json:
        print(json.dumps({"words": [
            {"id": i, "spelling": lex.get(i).spelling, "grade": lex.get(i).grade_level}
            for i in ids
        ]}, indent=2))
    else:
        for i in ids:
            print(f"{i}  {lex.get(i).spelling}")
        print(f"{len(ids)} word(s)")
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        with open(args.script, encoding="utf-8") as fh:
            script = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read script: {exc}", file=sys.stderr)
        return EXIT_ENV
    except json.JSONDecodeError as exc:
        print(f"error: script is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    try:
        store = _open_store(args.store)
        lex = store.load_lexicon()
    except (StorageError, WordifyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV

    try:
        result = run_simulation(script, lex)
    except WordifyError as exc:
        print(f"error: {exc.code}: {exc.detail}", file=sys.stderr)
        return EXIT_FAILURE

    if args.json:
        print(json.dumps({
            "finished": result.finished,
            "steps": result.steps,
            "accepted": result.accepted,
            "game": serialize_game(result.state),
            "progress": result.progress.as_dict(),
        }, indent=2, sort_keys=True))
    else:
        print(f"finished={result.finished} steps={result.steps}")
        print(f"events={len(result.state.events)} version={result.state.version}")
        for word_id, stages in sorted(result.progress.per_word.items()):
            rendered = " ".join(f"{k}={v}" for k, v in sorted(stages.items()))
            print(f"  {word_id}: {rendered}")
    return EXIT_OK if result.finished or script.get("policy", {}).get("type") == "scripted" else EXIT_FAILURE


def cmd_serve(args) -> int:
    try:
        store = _open_store(args.store)
    except StorageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV

    if args.lexicon:
        rc = cmd_ingest(argparse.Namespace(
            file=args.lexicon, out=args.store, categories=args.categories, audio_dir=None,
        ))
        if rc != EXIT_OK:
            return rc

    try:
        lex = store.load_lexicon()
    except (StorageError, WordifyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    if len(lex) == 0:
        print("warning: store has no words; ingest a lexicon first", file=sys.stderr)

    from .service import create_app
    import uvicorn

    host, _, port = args.listen.rpartition(":")
    app = create_app(store, token_ttl=args.token_ttl)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
    return EXIT_OK


def cmd_user_add(args) -> int:
    try:
        store = _open_store(args.store)
    except StorageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    try:
        user = create_user(
            store.list_users(),
            name=args.name,
            role=args.role,
            credential=args.credential,
            user_id=store.next_user_id(),
            teacher_id=args.teacher,
            school_id=args.school,
        )
        store.put_user(user)
    except WordifyError as exc:
        print(f"error: {exc.code}: {exc.detail}", file=sys.stderr)
        return EXIT_FAILURE
    print(user.id)
    return EXIT_OK


def cmd_user_list(args) -> int:
    try:
        store = _open_store(args.store)
    except StorageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    users = store.list_users()
    if args.json:
        print(json.dumps({"users": [
            {"id": u.id, "name": u.display_name, "role": u.role.value,
             "teacher_id": u.teacher_id, "school_id": u.school_id}
            for u in users
        ]}, indent=2))
    else:
        for u in users:
            print(f"{u.id}  {u.role.value:20}  {u.display_name}")
    return EXIT_OK


def cmd_seed(args) -> int:
    """Copy the packaged seed lexicon, categories and audio into a directory."""
    out = Path(args.out)
    try:
        (out / "audio").mkdir(parents=True, exist_ok=True)
        (out / "seed_lexicon.jsonl").write_bytes(seed_lexicon_path().read_bytes())
        (out / "categories.json").write_bytes(seed_categories_path().read_bytes())
        count = 0
        for entry in seed_audio_dir().iterdir():
            (out / "audio" / entry.name).write_bytes(entry.read_bytes())
            count += 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENV
    print(f"seed files written to {out} ({count} audio assets)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wordify")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load and validate a lexicon file into a store")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="datastore path")
    p.add_argument("--categories", help="category registry JSON (default: packaged seed)")
    p.add_argument("--audio-dir", help="directory of audio assets (default: <lexicon dir>/audio)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("report", help="print the sound-spelling consistency report")
    p.add_argument("store")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write CSV tables and PNG figures into this directory")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("query", help="list words by grade, category and pattern")
    p.add_argument("store")
    p.add_argument("--grade", type=int)
    p.add_argument("--category")
    p.add_argument("--pattern")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("simulate", help="run a game headlessly from a script file")
    p.add_argument("script")
    p.add_argument("--store", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("serve", help="boot the HTTP service")
    p.add_argument("--store", required=True)
    p.add_argument("--listen", default="127.0.0.1:8570")
    p.add_argument("--lexicon", help="ingest this lexicon file before serving")
    p.add_argument("--categories", help="category registry used with --lexicon")
    p.add_argument("--token-ttl", type=float, default=8 * 3600.0)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("user", help="manage users in a store")
    user_sub = p.add_subparsers(dest="user_command", required=True)
    pa = user_sub.add_parser("add")
    pa.add_argument("--store", required=True)
    pa.add_argument("--name", required=True)
    pa.add_argument("--role", required=True)
    pa.add_argument("--credential", required=True)
    pa.add_argument("--teacher")
    pa.add_argument("--school")
    pa.set_defaults(func=cmd_user_add)
    pl = user_sub.add_parser("list")
    pl.add_argument("--store", required=True)
    pl.add_argument("--json", action="store_true")
    pl.set_defaults(func=cmd_user_list)

    p = sub.add_parser("seed", help="copy the packaged seed lexicon to a directory")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_seed)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
