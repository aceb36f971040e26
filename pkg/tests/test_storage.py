from __future__ import annotations

import json
import threading

import pytest

from wordify import seed_categories_path, seed_lexicon_path
from wordify.errors import NotFound, StorageError
from wordify.roster import Role, create_user
from wordify.storage import Store


def seed_records():
    return [json.loads(line) for line in seed_lexicon_path().read_text().splitlines() if line.strip()]


def seed_categories():
    return json.loads(seed_categories_path().read_text())


@pytest.fixture
def store(tmp_path):
    s = Store(tmp_path / "store.db", create=True)
    s.replace_lexicon(seed_records(), seed_categories())
    return s


def test_missing_store_rejected(tmp_path):
    with pytest.raises(StorageError):
        Store(tmp_path / "nope.db")


def test_lexicon_round_trip(store):
    lex = store.load_lexicon()
    assert len(lex) == 18
    assert lex.categories.get("long-o").members == frozenset({"OW"})


def test_lexicon_fingerprint_tracks_content(store):
    before = store.lexicon_fingerprint()
    records = seed_records()[:5]
    store.replace_lexicon(records, seed_categories())
    assert store.lexicon_fingerprint() != before
    assert len(store.load_lexicon()) == 5


def test_replace_lexicon_is_atomic_swap(store):
    store.replace_lexicon(seed_records()[:3], seed_categories())
    assert len(store.load_lexicon()) == 3


def test_user_round_trip(store):
    user = create_user([], "Ada", Role.TEACHER, "pw", store.next_user_id())
    store.put_user(user)
    assert store.get_user(user.id) == user
    assert store.find_users_by_name("Ada") == [user]
    assert store.get_user("u-404") is None


def test_user_ids_sequential(store):
    assert store.next_user_id() == "u-0001"
    assert store.next_user_id() == "u-0002"


def test_duplicate_name_school_rejected_at_db(store):
    a = create_user([], "Ada", Role.TEACHER, "pw", "u-1")
    store.put_user(a)
    clone = create_user([], "Ada", Role.TEACHER, "pw", "u-2")
    with pytest.raises(StorageError):
        store.put_user(clone)


def test_students_of(store):
    teacher = create_user([], "T", Role.TEACHER, "pw", "t-1")
    store.put_user(teacher)
    for i, name in enumerate(["Zoe", "Abe"]):
        store.put_user(create_user([teacher], name, Role.STUDENT, "pw", f"s-{i}", teacher_id="t-1"))
    assert [u.display_name for u in store.students_of("t-1")] == ["Abe", "Zoe"]


def fake_doc(version=0):
    return {"schema_version": 1, "kind": "sorting", "game_id": "g-1",
            "config": {}, "state": {"version": version}, "events": []}


def test_game_create_and_get(store):
    store.create_game("g-1", "s-1", "sorting", fake_doc(), finished=False)
    stored = store.get_game("g-1")
    assert stored.owner_id == "s-1" and stored.version == 0 and not stored.finished
    with pytest.raises(NotFound):
        store.get_game("g-404")


def test_cas_update(store):
    store.create_game("g-1", "s-1", "sorting", fake_doc(), finished=False)
    assert store.update_game_cas("g-1", 0, fake_doc(1), finished=False) is True
    assert store.get_game("g-1").version == 1
    # stale expected version loses
    assert store.update_game_cas("g-1", 0, fake_doc(2), finished=False) is False
    assert store.get_game("g-1").version == 1


def test_cas_serializes_racing_writers(store):
    store.create_game("g-1", "s-1", "sorting", fake_doc(), finished=False)
    wins = []

    def racer(n):
        ok = store.update_game_cas("g-1", 0, fake_doc(1), finished=False)
        wins.append(ok)

    threads = [threading.Thread(target=racer, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sum(wins) == 1
    assert store.get_game("g-1").version == 1


def test_version_linearity(store):
    store.create_game("g-1", "s-1", "sorting", fake_doc(), finished=False)
    for v in range(5):
        assert store.update_game_cas("g-1", v, fake_doc(v + 1), finished=False)
    assert store.get_game("g-1").version == 5


def test_game_ids_sequential(store):
    assert store.next_game_id() == "g-000001"
    assert store.next_game_id() == "g-000002"


def test_tokens_lifecycle(store):
    user = create_user([], "Ada", Role.STUDENT, "pw", "s-1",)
    store.put_user(user)
    info = store.issue_token(user, ttl_seconds=60, now=1000.0)
    assert store.check_token(info.token, now=1030.0).user_id == "s-1"
    assert store.check_token(info.token, now=1061.0) is None  # expired
    assert store.check_token("bogus", now=0.0) is None


def test_tokens_deterministic_per_store_sequence(tmp_path, store):
    """Two stores copied from the same file issue identical token strings."""
    import shutil

    user = create_user([], "Ada", Role.STUDENT, "pw", "s-1")
    store.put_user(user)
    clone_path = tmp_path / "clone.db"
    shutil.copyfile(store.path, clone_path)
    clone = Store(clone_path)
    t1 = store.issue_token(user, 60, now=0.0)
    t2 = clone.issue_token(user, 60, now=0.0)
    assert t1.token == t2.token


def test_audio_round_trip(store):
    store.put_audio("a1.wav", "audio/x-wav", b"RIFFdata")
    assert store.get_audio("a1.wav") == ("audio/x-wav", b"RIFFdata")
    assert store.get_audio("missing.wav") is None


def test_counts(store):
    store.put_user(create_user([], "T", Role.TEACHER, "pw", "t-1"))
    store.create_game("g-1", "s-1", "matching", fake_doc(), finished=True)
    counts = store.counts()
    assert counts["users_by_role"] == {"teacher": 1}
    assert counts["games_by_kind"] == {"matching": 1}
    assert counts["finished_games"] == 1
    assert counts["words"] == 18
