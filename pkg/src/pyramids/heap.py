"""Heaps of one-dimensional pieces and pyramids.

A piece of length ``a`` with offset ``s`` occupies the open interval
``]s, s + a[`` at an integer level (the bottom level is 1).  Two pieces
overlap when their offsets differ by less than ``a``.  A heap is what you
get by dropping pieces onto the horizontal axis; a pyramid is a heap with a
single piece at level 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from ._validation import check_piece_length

RIGHT = "R"
LEFT = "L"


class Piece(NamedTuple):
    offset: int
    level: int


def _overlap(o1, o2, a):
    return abs(o1 - o2) < a


@dataclass(frozen=True)
class Heap:
    """Immutable set of ``(offset, level)`` pieces of common length ``a``.

    Equality is by ``a`` and the piece set only.
    """

    a: int
    pieces: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        check_piece_length(self.a)
        pieces = frozenset(Piece(int(o), int(lv)) for o, lv in self.pieces)
        object.__setattr__(self, "pieces", pieces)
        self._check_invariants()

    @classmethod
    def _trusted(cls, a, pieces):
        # skip validation; callers guarantee the invariants
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "pieces", frozenset(pieces))
        return obj

    def _check_invariants(self):
        a = self.a
        by_level = {}
        for p in self.pieces:
            if p.level < 1:
                raise ValueError(f"piece {tuple(p)} has level < 1")
            by_level.setdefault(p.level, []).append(p.offset)
        for level, offsets in by_level.items():
            offsets.sort()
            for left, right in zip(offsets, offsets[1:]):
                if right - left < a:
                    raise ValueError(f"pieces at offsets {left} and {right} overlap on level {level}")
            if level > 1:
                below = by_level.get(level - 1, ())
                for o in offsets:
                    if not any(_overlap(o, b, a) for b in below):
                        raise ValueError(f"piece ({o}, {level}) is not supported from below")

    def __len__(self):
        return len(self.pieces)

    def __iter__(self):
        return iter(self.sorted_pieces())

    def sorted_pieces(self):
        """Pieces ordered by (level, offset)."""
        return sorted(self.pieces, key=lambda p: (p.level, p.offset))

    @cached_property
    def skyline(self):
        """Map unit cell ``c`` (the interval ``]c, c+1[``) to the highest level covering it."""
        sky = {}
        for o, lv in self.pieces:
            for c in range(o, o + self.a):
                if sky.get(c, 0) < lv:
                    sky[c] = lv
        return sky

    def drop_level(self, offset):
        sky = self.skyline
        return 1 + max(sky.get(c, 0) for c in range(offset, offset + self.a))

    @property
    def min_offset(self):
        return min(p.offset for p in self.pieces)

    @property
    def max_offset(self):
        return max(p.offset for p in self.pieces)

    def translate(self, shift):
        return type(self)._trusted(self.a, (Piece(o + shift, lv) for o, lv in self.pieces))

    def mirror(self, about=0):
        """Reflect every piece through the point ``about`` (levels unchanged)."""
        a = self.a
        return type(self)._trusted(a, (Piece(2 * about - o - a, lv) for o, lv in self.pieces))

    def to_json(self):
        return {"schema_version": 1, "type": "pyramid" if is_pyramid(self) else "heap",
                "a": self.a, "pieces": [[p.offset, p.level] for p in self.sorted_pieces()]}


class Pyramid(Heap):
    """A heap with exactly one piece on level 1."""

    def _check_invariants(self):
        super()._check_invariants()
        if sum(1 for p in self.pieces if p.level == 1) != 1:
            raise ValueError("a pyramid needs exactly one piece on level 1")

    @property
    def bottom(self):
        return next(p for p in self.pieces if p.level == 1)

    @property
    def is_normalized(self):
        return self.bottom.offset == 0

    def is_right(self, s=None):
        """True if the bottom piece is a leftmost piece (a right s-pyramid)."""
        b = self.bottom.offset
        return (s is None or b == s) and self.min_offset == b

    def is_left(self, s=None):
        """True if the bottom piece is a rightmost piece (a left s-pyramid)."""
        b = self.bottom.offset
        return (s is None or b + self.a == s) and self.max_offset == b


def single_piece(a, offset=0):
    return Pyramid._trusted(check_piece_length(a), [Piece(offset, 1)])


def from_drops(a, offsets):
    """Build a heap by dropping pieces at ``offsets`` in order."""
    h = Heap(a)
    for o in offsets:
        h = drop_piece(h, o)
    return as_pyramid(h) if is_pyramid(h) else h


def drop_piece(h, offset):
    """Drop a new piece at ``offset`` onto ``h`` and return the new heap."""
    level = h.drop_level(offset)
    pieces = set(h.pieces)
    pieces.add(Piece(offset, level))
    cls = Pyramid if (level > 1 and isinstance(h, Pyramid)) else Heap
    return cls._trusted(h.a, pieces)


def is_pyramid(h):
    return sum(1 for p in h.pieces if p.level == 1) == 1


def as_pyramid(h):
    if isinstance(h, Pyramid):
        return h
    if not is_pyramid(h):
        raise ValueError("heap does not have a unique bottom piece")
    return Pyramid._trusted(h.a, h.pieces)


def left_width(p):
    """Left width ``n``: the leftmost piece covers ``]-n, a-n[``."""
    p = as_pyramid(p)
    if not p.is_normalized:
        raise ValueError("left width is defined for pyramids whose bottom piece is at offset 0")
    return -p.min_offset


def width(p):
    """Length of the projection of ``p`` onto the horizontal axis."""
    return p.max_offset + p.a - p.min_offset


def _redrop(a, pieces):
    # pieces form an up-set of a heap; dropping them in level order gives the standalone heap
    sky = {}
    out = []
    for o, lv in sorted(pieces, key=lambda p: (p.level, p.offset)):
        level = 1 + max(sky.get(c, 0) for c in range(o, o + a))
        for c in range(o, o + a):
            sky[c] = level
        out.append(Piece(o, level))
    return out


def _up_closure(pieces, start, a):
    above = {start}
    stack = [start]
    while stack:
        q = stack.pop()
        for r in pieces:
            if r.level > q.level and r not in above and _overlap(r.offset, q.offset, a):
                above.add(r)
                stack.append(r)
    return above


class DecompositionFactor(NamedTuple):
    side: str  # RIGHT or LEFT
    s: int
    pyramid: Pyramid

    @property
    def size(self):
        return len(self.pyramid)


def decompose(p):
    """Split a normalised pyramid into alternating right/left sub-pyramids.

    Returns a list of ``DecompositionFactor``; odd positions (1-based) are right
    ``s_i``-pyramids, even positions left ``s_i``-pyramids, with ``s_1 = 0`` and
    ``1 <= |s_{i+1} - s_i| <= a - 1``.
    """
    p = as_pyramid(p)
    if not p.is_normalized:
        raise ValueError("decompose expects a pyramid with bottom piece at offset 0")
    a = p.a
    out = []
    side, s = RIGHT, 0
    pieces = set(p.pieces)
    while True:
        b = next(q for q in pieces if q.level == 1).offset
        if side == RIGHT:
            bad = [q for q in pieces if q.offset < b]
        else:
            bad = [q for q in pieces if q.offset > b]
        if not bad:
            out.append(DecompositionFactor(side, s, Pyramid._trusted(a, pieces)))
            return out
        q = min(bad, key=lambda r: r.level)
        upper = _up_closure(pieces, q, a)
        out.append(DecompositionFactor(side, s, Pyramid._trusted(a, pieces - upper)))
        pieces = set(_redrop(a, upper))
        if side == RIGHT:
            side, s = LEFT, q.offset + a
        else:
            side, s = RIGHT, q.offset


def check_decomposition(factors):
    """Raise ``ValueError`` unless ``factors`` satisfies the alternation and offset rules."""
    if not factors:
        raise ValueError("empty decomposition")
    a = factors[0].pyramid.a
    for i, (side, s, pyr) in enumerate(factors):
        pyr = as_pyramid(pyr)
        if pyr.a != a:
            raise ValueError("mixed piece lengths")
        expected = RIGHT if i % 2 == 0 else LEFT
        if side != expected:
            raise ValueError(f"factor {i + 1} must be {'right' if expected == RIGHT else 'left'}")
        if side == RIGHT and not pyr.is_right(s):
            raise ValueError(f"factor {i + 1} is not a right {s}-pyramid")
        if side == LEFT and not pyr.is_left(s):
            raise ValueError(f"factor {i + 1} is not a left {s}-pyramid")
    if factors[0].s != 0:
        raise ValueError("first factor must be a right 0-pyramid")
    for i in range(len(factors) - 1):
        step = factors[i + 1].s - factors[i].s
        if i % 2 == 1:
            step = -step
        if not 1 <= step <= a - 1:
            raise ValueError(f"offset step between factors {i + 1} and {i + 2} out of range")


def recompose(factors):
    """Inverse of :func:`decompose`: stack the factors on top of each other."""
    check_decomposition(factors)
    a = factors[0].pyramid.a
    sky = {}
    out = []
    for f in factors:
        for o, _ in sorted(f.pyramid.pieces, key=lambda q: (q.level, q.offset)):
            level = 1 + max(sky.get(c, 0) for c in range(o, o + a))
            for c in range(o, o + a):
                sky[c] = level
            out.append(Piece(o, level))
    return Pyramid._trusted(a, out)


def render_ascii(h):
    """Draw a heap one text row per level, top level first.

    Each piece is drawn as ``[`` + ``=`` * (a - 2) + ``]`` so neighbouring pieces
    on a level stay distinguishable.
    """
    if not h.pieces:
        return ""
    a = h.a
    lo = h.min_offset
    span = h.max_offset + a - lo
    top = max(p.level for p in h.pieces)
    rows = [[" "] * span for _ in range(top)]
    glyph = "[" + "=" * (a - 2) + "]"
    for o, lv in h.pieces:
        row = rows[top - lv]
        row[o - lo:o - lo + a] = glyph
    return "\n".join("".join(r).rstrip() for r in rows)


def pyramid_from_json(obj):
    a = check_piece_length(obj["a"])
    return as_pyramid(Heap(a, [tuple(p) for p in obj["pieces"]]))


def pieces_of(h) -> list[tuple[int, int]]:
    return [tuple(p) for p in h.sorted_pieces()]


def make_pyramid(a, pieces: Iterable) -> Pyramid:
    return Pyramid(a, frozenset(tuple(p) for p in pieces))
