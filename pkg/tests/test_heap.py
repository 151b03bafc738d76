import pytest
from hypothesis import given
from hypothesis import strategies as st

from pyramids.heap import (
    LEFT,
    RIGHT,
    DecompositionFactor,
    Heap,
    Pyramid,
    check_decomposition,
    decompose,
    drop_piece,
    from_drops,
    is_pyramid,
    left_width,
    make_pyramid,
    pyramid_from_json,
    recompose,
    render_ascii,
    single_piece,
    width,
)


def test_drop_onto_overlapping_piece_goes_up():
    h = drop_piece(single_piece(2), 1)
    assert h.pieces == {(0, 1), (1, 2)}
    assert isinstance(h, Pyramid)


def test_drop_far_away_lands_on_floor():
    h = drop_piece(single_piece(2), 2)
    assert h.pieces == {(0, 1), (2, 1)}
    assert not is_pyramid(h)


def test_heap_rejects_same_level_overlap():
    with pytest.raises(ValueError):
        Heap(2, [(0, 1), (1, 1)])


def test_heap_rejects_floating_piece():
    with pytest.raises(ValueError):
        Heap(3, [(0, 1), (5, 2)])


def test_pyramid_needs_single_bottom():
    with pytest.raises(ValueError):
        Pyramid(2, [(0, 1), (2, 1), (1, 2)])


def test_piece_length_validated():
    with pytest.raises(ValueError):
        single_piece(1)
    with pytest.raises(TypeError):
        Heap(2.5)


def test_all_ten_dimer_pyramids_are_pyramids(dimer_pyramids_3):
    assert len(dimer_pyramids_3) == 10
    assert len(set(dimer_pyramids_3)) == 10
    assert all(is_pyramid(p) and p.is_normalized for p in dimer_pyramids_3)


def test_left_width_and_width():
    p = make_pyramid(2, [(0, 1), (-1, 2), (-2, 3)])
    assert left_width(p) == 2
    assert width(p) == 4
    with pytest.raises(ValueError):
        left_width(p.translate(1))


def test_right_and_left_classes():
    p = make_pyramid(3, [(0, 1), (2, 2)])
    assert p.is_right(0) and not p.is_left()
    q = p.mirror(about=0)
    assert q.is_left(0)
    assert q.bottom.offset == -3


def test_decomposition_of_two_factor_pyramid():
    # bits 1100 then 01: a stack of two, then a piece hanging to the left
    p = make_pyramid(2, [(0, 1), (1, 2), (-1, 2)])
    fs = decompose(p)
    assert [(f.side, f.s, f.size) for f in fs] == [(RIGHT, 0, 2), (LEFT, 1, 1)]
    check_decomposition(fs)
    assert recompose(fs) == p


def test_three_factor_decomposition():
    p = make_pyramid(2, [(0, 1), (-1, 2), (0, 3)])
    fs = decompose(p)
    assert [f.size for f in fs] == [1, 1, 1]
    assert [f.s for f in fs] == [0, 1, 0]


def test_check_decomposition_rejects_bad_steps():
    right = single_piece(3)
    left = single_piece(3, -3 + 5)
    with pytest.raises(ValueError):
        check_decomposition([DecompositionFactor(RIGHT, 0, right), DecompositionFactor(LEFT, 5, left)])
    with pytest.raises(ValueError):
        check_decomposition([])


def test_render_ascii_shows_levels():
    p = make_pyramid(3, [(0, 1), (2, 2)])
    assert render_ascii(p) == "  [=]\n[=]"


def test_json_round_trip_sorted():
    p = make_pyramid(2, [(0, 1), (1, 2), (-1, 2)])
    obj = p.to_json()
    assert obj["pieces"] == [[0, 1], [-1, 2], [1, 2]]
    assert obj["schema_version"] == 1
    assert pyramid_from_json(obj) == p


@given(st.integers(2, 4), st.lists(st.integers(-3, 3), min_size=1, max_size=9))
def test_random_drops_decompose_and_recompose(a, offsets):
    h = from_drops(a, [0] + [o for o in offsets])
    if not is_pyramid(h):
        return
    p = h.translate(-h.bottom.offset)
    fs = decompose(p)
    check_decomposition(fs)
    assert sum(f.size for f in fs) == len(p)
    assert recompose(fs) == p
