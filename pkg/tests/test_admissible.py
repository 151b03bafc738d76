import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pyramids.admissible import (
    Factor,
    NoComposition,
    all_compositions,
    check_composition,
    closed_walks,
    compose_admissible,
    composition_profile,
    factorize_walk,
)


def test_simple_positive_walk():
    assert factorize_walk("100", 3) == [Factor("P", 0, 0, "100")]


def test_negative_after_positive():
    fs = factorize_walk("100001", 3)
    assert [f.kind for f in fs] == ["P", "N"]
    assert compose_admissible(fs, 3) == "100001"


def test_u_deletes_trailing_left_steps():
    fs = [Factor("P", 0, 0, "100"), Factor("U", 0, 1)]
    assert compose_admissible(fs, 3) == "10"
    assert factorize_walk("10", 3) == fs


def test_forbidden_pairs_rejected():
    with pytest.raises(ValueError):
        check_composition([Factor("P", 0, 0, "100"), Factor("P", 0, 0, "100")], 3)
    with pytest.raises(ValueError):
        check_composition([Factor("U", 0, 1)], 3)
    with pytest.raises(ValueError):
        check_composition([Factor("T", 1, 0, "0")], 3)


def test_some_left_starting_walks_have_no_composition():
    assert all_compositions("01", 3) == []
    with pytest.raises(NoComposition):
        factorize_walk("01", 3)


def test_endpoint_out_of_range():
    with pytest.raises(ValueError):
        factorize_walk("1", 3)


def test_needs_a_at_least_3():
    with pytest.raises(ValueError):
        factorize_walk("10", 2)


@pytest.mark.parametrize("a,m", [(3, 1), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2)])
def test_unique_factorisation_of_closed_walks(a, m):
    for bits in closed_walks(a, m):
        fs = factorize_walk(bits, a)
        assert all_compositions(bits, a) == [fs]
        assert compose_admissible(fs, a) == bits
        r, sizes = composition_profile(fs)
        assert sum(sizes) == m and r == len(sizes)


@pytest.mark.parametrize("a", [3, 4])
def test_factorize_agrees_with_oracle_on_all_short_walks(a):
    for n in range(1, 9):
        for tup in itertools.product("01", repeat=n):
            bits = "".join(tup)
            ones = bits.count("1")
            end = (a - 1) * ones - (n - ones)
            if not 0 <= end <= a - 2:
                continue
            found = all_compositions(bits, a)
            assert len(found) <= 1
            if found:
                assert factorize_walk(bits, a) == found[0]
            else:
                with pytest.raises(NoComposition):
                    factorize_walk(bits, a)


@given(st.sampled_from([3, 4]), st.data())
def test_random_compositions_round_trip(a, data):
    m = data.draw(st.integers(1, 5))
    n = a * m
    ones = data.draw(st.lists(st.integers(1, n - 1), min_size=m - 1, max_size=m - 1, unique=True))
    bits = "".join("1" if i == 0 or i in ones else "0" for i in range(n))
    fs = factorize_walk(bits, a)
    check_composition(fs, a)
    assert compose_admissible(fs, a) == bits


def test_factor_json_round_trip():
    f = Factor("T", 2, 0, "00")
    assert Factor.from_json(f.to_json()) == f
