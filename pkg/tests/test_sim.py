from __future__ import annotations

import pytest

from wordify.sim import (
    SimulationError,
    randomness_free_logs,
    run_simulation,
    standard_contrast_config,
)

from conftest import matching_config_dict, sorting_config_dict


def test_always_correct_sorting_three_events_per_word(seed_lex):
    script = {
        "kind": "sorting",
        "config": sorting_config_dict(["w010", "w011"]),
        "policy": {"type": "always_correct"},
    }
    result = run_simulation(script, seed_lex)
    assert result.finished
    correct = [e for e in result.state.events if e.correct]
    assert len(correct) == 6  # 3 stages x 2 words
    assert result.steps == 6


def test_uniform_random_sorting_completes(seed_lex):
    script = {
        "kind": "sorting",
        "config": sorting_config_dict(["w010", "w018"], seed=3),
        "policy": {"type": "uniform_random", "seed": 11},
    }
    result = run_simulation(script, seed_lex)
    assert result.finished
    # some attempts should be wrong under a random player over enough steps
    assert result.steps >= 6


def test_uniform_random_matching_completes(seed_lex):
    script = {
        "kind": "matching",
        "config": matching_config_dict(seed=9, cards=4),
        "policy": {"type": "uniform_random", "seed": 2},
    }
    assert run_simulation(script, seed_lex).finished


def test_identical_seed_identical_event_log(seed_lex):
    script = {
        "kind": "matching",
        "config": matching_config_dict(seed=100),
        "policy": {"type": "uniform_random", "seed": 100},
    }
    a = run_simulation(script, seed_lex)
    b = run_simulation(script, seed_lex)
    assert a.state.events == b.state.events
    assert a.state == b.state


def test_scripted_playthrough(seed_lex):
    script = {
        "kind": "sorting",
        "config": sorting_config_dict(["w018"]),
        "policy": {"type": "scripted", "actions": [
            {"type": "sound_choice", "value": "long-o"},
            {"type": "sound_choice", "value": "long-i"},
            {"type": "pause"},
            {"type": "resume"},
            {"type": "pattern_choice", "value": "iCe"},
            {"type": "spelling", "value": "hide"},
        ]},
    }
    result = run_simulation(script, seed_lex)
    assert result.finished
    assert result.progress.per_word["w018"] == {"sound": 2, "pattern": 1, "spell": 1}


def test_scripted_wrong_stage_fails(seed_lex):
    script = {
        "kind": "sorting",
        "config": sorting_config_dict(["w018"]),
        "policy": {"type": "scripted", "actions": [
            {"type": "spelling", "value": "hide"},
        ]},
    }
    with pytest.raises(SimulationError):
        run_simulation(script, seed_lex)


def test_unknown_policy(seed_lex):
    script = {"kind": "sorting", "config": sorting_config_dict(["w018"]), "policy": {"type": "psychic"}}
    with pytest.raises(SimulationError):
        run_simulation(script, seed_lex)


def test_standard_config_covers_contrast_words(seed_lex):
    cfg = standard_contrast_config(seed_lex, "sorting", 1)
    spellings = sorted(seed_lex.get(w).spelling for w in cfg["word_ids"])
    assert spellings == [
        "boat", "hide", "home", "kite", "know", "light",
        "phone", "rice", "ripe", "rope", "sky",
    ]
    mcfg = standard_contrast_config(seed_lex, "matching", 1)
    assert set(mcfg["word_pool"]) == {"long-o", "long-i"}


def test_event_logs_comparable_without_timestamps(seed_lex):
    script = {
        "kind": "sorting",
        "config": sorting_config_dict(["w010"]),
        "policy": {"type": "always_correct"},
    }
    a = run_simulation(script, seed_lex)
    b = run_simulation(script, seed_lex)
    assert randomness_free_logs(a.state.events) == randomness_free_logs(b.state.events)
