from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from wordify.rng import Lcg64

from oracles import OracleLcg, oracle_shuffle


def test_stream_matches_reference():
    ours = Lcg64(12345)
    reference = OracleLcg(12345)
    assert [ours.next_u31() for _ in range(50)] == [reference.next_u31() for _ in range(50)]


def test_first_values_frozen():
    # Frozen from the documented recipe: state' = (A*seed + C) mod 2^64, output = state' >> 33.
    rng = Lcg64(0)
    assert rng.next_u31() == (1442695040888963407 >> 33)
    rng = Lcg64(1)
    assert rng.next_u31() == ((6364136223846793005 + 1442695040888963407) % 2**64) >> 33


def test_seed_wraps_to_64_bits():
    assert Lcg64(2**64 + 5).next_u31() == Lcg64(5).next_u31()


def test_shuffle_matches_reference():
    items = list(range(20))
    assert Lcg64(99).shuffled(items) == oracle_shuffle(items, 99)
    assert items == list(range(20))  # input untouched


def test_below_rejects_nonpositive():
    with pytest.raises(ValueError):
        Lcg64(1).below(0)


@given(st.lists(st.integers(), min_size=1, max_size=40), st.integers(min_value=0, max_value=2**64 - 1))
def test_shuffle_is_permutation(items, seed):
    assert sorted(Lcg64(seed).shuffled(items)) == sorted(items)


@given(
    st.lists(st.integers(), min_size=1, max_size=30, unique=True),
    st.integers(min_value=0, max_value=2**63),
    st.data(),
)
def test_sample_draws_distinct_members(items, seed, data):
    k = data.draw(st.integers(min_value=0, max_value=len(items)))
    picked = Lcg64(seed).sample(items, k)
    assert len(picked) == k
    assert len(set(picked)) == k
    assert set(picked) <= set(items)


def test_sample_bounds():
    with pytest.raises(ValueError):
        Lcg64(1).sample([1, 2], 3)
