from __future__ import annotations

import pytest

from wordify.errors import DuplicateName, InvalidRole, OrphanGame, UnknownTeacher
from wordify.gamekit import flip_card, new_matching_game, new_sorting_game
from wordify.gamekit.actions import apply_action
from wordify.gamekit.configs import matching_config_from_dict, sorting_config_from_dict
from wordify.gamekit.matching import CardStatus
from wordify.roster import (
    Role,
    build_progress,
    class_report,
    class_report_csv,
    create_user,
    hash_credential,
    verify_credential,
)
from wordify.sim import StepClock, run_simulation

from conftest import matching_config_dict, sorting_config_dict
from oracles import oracle_recount


def make_teacher(uid="t-1", name="Ms. Q"):
    return create_user([], name, Role.TEACHER, "pw", uid)


class TestCreateUser:
    def test_student_under_teacher(self):
        teacher = make_teacher()
        student = create_user([teacher], "Pat", "student", "pw", "s-1", teacher_id="t-1")
        assert student.role is Role.STUDENT
        assert student.teacher_id == "t-1"

    def test_teacher_has_no_teacher(self):
        teacher = make_teacher()
        assert teacher.teacher_id is None

    def test_unknown_teacher(self):
        with pytest.raises(UnknownTeacher):
            create_user([], "Pat", "student", "pw", "s-1", teacher_id="missing")

    def test_teacher_reference_must_be_teacher(self):
        teacher = make_teacher()
        student = create_user([teacher], "Pat", "student", "pw", "s-1", teacher_id="t-1")
        with pytest.raises(UnknownTeacher):
            create_user([teacher, student], "Sam", "student", "pw", "s-2", teacher_id="s-1")

    def test_invalid_role(self):
        with pytest.raises(InvalidRole):
            create_user([], "Pat", "wizard", "pw", "u-1")

    def test_five_roles_accepted(self):
        for i, role in enumerate(["student", "teacher", "administrator", "developer", "system_administrator"]):
            user = create_user([], f"user{i}", role, "pw", f"u-{i}")
            assert user.role.value == role

    def test_teacher_id_only_for_students(self):
        teacher = make_teacher()
        with pytest.raises(InvalidRole):
            create_user([teacher], "Dev", "developer", "pw", "d-1", teacher_id="t-1")

    def test_duplicate_name_same_school(self):
        teacher = make_teacher()
        a = create_user([teacher], "Pat", "student", "pw", "s-1", teacher_id="t-1", school_id="sch-1")
        with pytest.raises(DuplicateName):
            create_user([teacher, a], "Pat", "student", "pw", "s-2", teacher_id="t-1", school_id="sch-1")

    def test_same_name_other_school_ok(self):
        teacher = make_teacher()
        a = create_user([teacher], "Pat", "student", "pw", "s-1", teacher_id="t-1", school_id="sch-1")
        b = create_user([teacher, a], "Pat", "student", "pw", "s-2", teacher_id="t-1", school_id="sch-2")
        assert b.id == "s-2"

    def test_credential_stored_hashed_and_salted(self):
        user = create_user([], "Pat", "teacher", "hunter2", "t-9")
        assert "hunter2" not in user.credential_hash
        assert verify_credential("hunter2", user.credential_hash)
        assert not verify_credential("hunter3", user.credential_hash)
        assert hash_credential("hunter2") != hash_credential("hunter2")  # fresh salt each time


class TestBuildProgress:
    def test_spec_example_recount(self, seed_lex):
        """sound wrong, sound right, pattern right, spelling right -> 2/1/1."""
        cfg = sorting_config_from_dict(sorting_config_dict(["w018"]))
        state = new_sorting_game(cfg, seed_lex, game_id="g-p")
        clock = StepClock()
        for action in (
            {"type": "sound_choice", "value": "long-o"},
            {"type": "sound_choice", "value": "long-i"},
            {"type": "pattern_choice", "value": "iCe"},
            {"type": "spelling", "value": "hide"},
        ):
            state, _ = apply_action(state, action, clock)
        record = build_progress(state, seed_lex, "s-1")
        assert record.per_word["w018"] == {"sound": 2, "pattern": 1, "spell": 1}
        assert record.per_category["long-o"].incorrect == 1
        assert record.per_category["long-i"].correct == 1
        assert record.per_pattern["iCe"].correct == 1
        assert record.finished_at is not None

    def test_incorrect_pattern_attributed_to_submitted(self, seed_lex):
        cfg = sorting_config_from_dict(sorting_config_dict(["w018"]))
        state = new_sorting_game(cfg, seed_lex, game_id="g-p2")
        clock = StepClock()
        for action in (
            {"type": "sound_choice", "value": "long-i"},
            {"type": "pattern_choice", "value": "igh"},
            {"type": "pattern_choice", "value": "iCe"},
        ):
            state, _ = apply_action(state, action, clock)
        record = build_progress(state, seed_lex, "s-1")
        assert record.per_pattern["igh"].incorrect == 1
        assert record.per_pattern["igh"].correct == 0
        assert record.per_pattern["iCe"].correct == 1
        assert record.per_pattern["iCe"].incorrect == 0

    def test_empty_log_all_zero(self, seed_lex):
        cfg = sorting_config_from_dict(sorting_config_dict(["w018"]))
        state = new_sorting_game(cfg, seed_lex, game_id="g-p3")
        record = build_progress(state, seed_lex, "s-1")
        assert record.per_word == {} and record.per_pattern == {} and record.per_category == {}
        assert record.started_at is None and record.finished_at is None

    def test_matching_pair_totals(self, seed_lex):
        """3 incorrect + 2 correct resolutions tally to exactly those totals."""
        cfg = matching_config_from_dict(matching_config_dict(seed=4))
        state = new_matching_game(cfg, seed_lex, game_id="g-m")
        clock = StepClock()

        def flip_pair(state, same):
            down = [i for i, c in enumerate(state.cards) if c.status is CardStatus.FACE_DOWN]
            for i in down:
                for j in down:
                    if i < j and (state.cards[i].category == state.cards[j].category) == same:
                        state, _ = flip_card(state, i, clock)
                        state, _ = flip_card(state, j, clock)
                        return state
            raise AssertionError

        for _ in range(3):
            state = flip_pair(state, same=False)
        state = flip_pair(state, same=True)
        state = flip_pair(state, same=True)
        record = build_progress(state, seed_lex, "s-1")
        totals = [t.as_dict() for t in record.per_category.values()]
        assert sum(t["incorrect"] for t in totals) == 3
        assert sum(t["correct"] for t in totals) == 2

    def test_orphan_game(self, seed_lex):
        cfg = sorting_config_from_dict(sorting_config_dict(["w018"]))
        state = new_sorting_game(cfg, seed_lex, game_id="g-p4")
        with pytest.raises(OrphanGame):
            build_progress(state, seed_lex, None)

    def test_totals_match_recount_oracle(self, seed_lex):
        script = {
            "kind": "matching",
            "config": matching_config_dict(seed=77, cards=4),
            "policy": {"type": "uniform_random", "seed": 8},
        }
        result = run_simulation(script, seed_lex)
        record = result.progress
        per_word, _, per_category = oracle_recount(
            [e.as_dict() for e in result.state.events],
            [c.category for c in result.state.cards],
        )
        assert record.per_word == per_word
        assert {c: t.as_dict() for c, t in record.per_category.items()} == per_category


class TestClassReport:
    def build_class(self, seed_lex):
        teacher = make_teacher("t-1", "Ms. Q")
        users = [teacher]
        records = {}
        for i, name in enumerate(["Zoe", "Abe"]):
            student = create_user(users, name, "student", "pw", f"s-{i}", teacher_id="t-1")
            users.append(student)
            script = {
                "kind": "sorting",
                "config": sorting_config_dict(["w010", "w018"], seed=i),
                "policy": {"type": "uniform_random", "seed": i * 7 + 1},
                "student_id": student.id,
            }
            records[student.id] = [run_simulation(script, seed_lex).progress]
        return users, records

    def test_sums_equal_bruteforce(self, seed_lex):
        users, records = self.build_class(seed_lex)
        report = class_report("t-1", users, records)
        for pattern, tally in report.totals_per_pattern.items():
            manual_correct = sum(
                rec.per_pattern[pattern].correct
                for recs in records.values() for rec in recs if pattern in rec.per_pattern
            )
            assert tally.correct == manual_correct

    def test_students_ordered_by_name(self, seed_lex):
        users, records = self.build_class(seed_lex)
        report = class_report("t-1", users, records)
        assert [s.student_name for s in report.students] == ["Abe", "Zoe"]

    def test_teacher_with_no_students(self):
        teacher = make_teacher()
        report = class_report("t-1", [teacher], {})
        assert report.students == [] and report.totals_per_pattern == {}

    def test_unknown_teacher(self):
        with pytest.raises(UnknownTeacher):
            class_report("t-404", [], {})

    def test_csv_one_row_per_student_word_stage(self, seed_lex):
        users, records = self.build_class(seed_lex)
        report = class_report("t-1", users, records)
        lines = class_report_csv(report).strip().splitlines()
        assert lines[0] == "student_id,student_name,word_id,stage,attempts"
        expected_rows = sum(
            len(stages) for s in report.students for stages in s.per_word.values()
        )
        assert len(lines) - 1 == expected_rows

    def test_no_credentials_in_outputs(self, seed_lex):
        users, records = self.build_class(seed_lex)
        report = class_report("t-1", users, records)
        text = str(report.as_dict()) + class_report_csv(report)
        assert "pbkdf2" not in text
