import math

import pytest

from pyramids import BudgetExceeded
from pyramids.enumeration import (
    PyramidClass,
    count_pyramids,
    enumerate_pyramids,
    enumerate_pyramids_bruteforce,
)
from pyramids.heap import decompose, recompose


@pytest.mark.parametrize("a,m", [(2, 1), (2, 3), (2, 6), (3, 2), (3, 4), (4, 3)])
def test_matches_bruteforce(a, m):
    fast = list(enumerate_pyramids(a, m))
    assert len(fast) == len(set(fast))
    assert set(fast) == enumerate_pyramids_bruteforce(a, m)


def test_anchor_values():
    assert count_pyramids(2, 3) == 10
    assert count_pyramids(2, 3, PyramidClass("right", 0)) == 5
    assert count_pyramids(2, 1) == 1


@pytest.mark.parametrize("a,m", [(2, 5), (3, 4), (4, 3)])
def test_right_and_left_classes(a, m):
    want = math.comb(a * m, m) // ((a - 1) * m + 1)
    for s in (0, 2):
        rights = list(enumerate_pyramids(a, m, PyramidClass("right", s)))
        assert len(rights) == want
        assert all(p.is_right(s) for p in rights)
        lefts = list(enumerate_pyramids(a, m, PyramidClass("left", s)))
        assert len(lefts) == want
        assert all(p.is_left(s) for p in lefts)


def test_every_enumerated_pyramid_recomposes():
    for p in enumerate_pyramids(3, 5):
        assert recompose(decompose(p)) == p


def test_threads_agree():
    assert count_pyramids(3, 6, threads=2) == count_pyramids(3, 6) == math.comb(17, 5)


def test_enumeration_order_is_deterministic():
    assert list(enumerate_pyramids(2, 4)) == list(enumerate_pyramids(2, 4))


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        count_pyramids(2, 30, budget=1000)
    with pytest.raises(BudgetExceeded):
        next(enumerate_pyramids(3, 20, budget=10))


def test_unknown_class():
    with pytest.raises(ValueError):
        PyramidClass("middle")
