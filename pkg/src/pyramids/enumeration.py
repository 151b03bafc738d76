"""Exhaustive generation of pyramids.

The main generator walks the alternating right/left decomposition: each
factor is produced from a positive string and its pieces are dropped straight
onto a skyline, so every pyramid appears exactly once without any hashing.
A slow breadth-first generator with explicit de-duplication serves as an
independent check.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb

from ._validation import DEFAULT_BUDGET, check_budget, check_piece_length, check_positive
from .heap import LEFT, RIGHT, Piece, Pyramid


@dataclass(frozen=True)
class PyramidClass:
    """``general`` (bottom at offset 0), ``right`` s-pyramids or ``left`` s-pyramids."""

    kind: str = "general"
    s: int = 0

    def __post_init__(self):
        if self.kind not in ("general", "right", "left"):
            raise ValueError(f"unknown pyramid class {self.kind!r}")

    def expected_count(self, a, m):
        a = check_piece_length(a)
        m = check_positive(m, "m")
        if self.kind == "general":
            return comb(a * m - 1, m - 1)
        return comb(a * m, m) // ((a - 1) * m + 1)

    def contains(self, p):
        if self.kind == "general":
            return p.is_normalized
        if self.kind == "right":
            return p.is_right(self.s)
        return p.is_left(self.s)


GENERAL = PyramidClass()


def _as_class(cls):
    if cls is None:
        return GENERAL
    if isinstance(cls, str):
        return PyramidClass(cls)
    return cls


class _Builder:
    """Depth-first generator over decomposition sequences with an undoable skyline."""

    def __init__(self, a, m):
        self.a = a
        self.base = a * (m + 1)
        self.sky = [0] * (2 * self.base + a * (m + 1))
        self.pieces = []

    def _drop(self, offset):
        a, sky = self.a, self.sky
        c = offset + self.base
        saved = sky[c:c + a]
        level = 1 + max(saved)
        sky[c:c + a] = [level] * a
        self.pieces.append((offset, level))
        return saved

    def _undo(self, offset, saved):
        c = offset + self.base
        self.sky[c:c + len(saved)] = saved
        self.pieces.pop()

    def factors(self, remaining, side, s, first_size=None):
        sizes = range(remaining, 0, -1) if first_size is None else (first_size,)
        for size in sizes:
            yield from self._string(size, remaining - size, side, s)

    def _string(self, size, rest, side, s):
        a = self.a
        n = a * size

        def rec(pos, t, ones):
            if pos == n:
                if rest == 0:
                    yield
                elif side == RIGHT:
                    for s2 in range(s + 1, s + a):
                        yield from self.factors(rest, LEFT, s2)
                else:
                    for s2 in range(s - a + 1, s):
                        yield from self.factors(rest, RIGHT, s2)
                return
            if ones < size:
                offset = s + t if side == RIGHT else s - t - a
                saved = self._drop(offset)
                yield from rec(pos + 1, t + a - 1, ones + 1)
                self._undo(offset, saved)
            if t >= 1 and n - pos - 1 >= size - ones:
                yield from rec(pos + 1, t - 1, ones)

        yield from rec(0, 0, 0)


def _leaves(a, m, cls, first_size=None):
    b = _Builder(a, m)
    if cls.kind == "general":
        gen = b.factors(m, RIGHT, 0, first_size)
    elif cls.kind == "right":
        gen = b.factors(m, RIGHT, cls.s, m)
    else:
        gen = b.factors(m, LEFT, cls.s, m)
    for _ in gen:
        yield b.pieces


def enumerate_pyramids(a, m, cls=None, budget=DEFAULT_BUDGET):
    """Yield every pyramid of size ``m`` in the class exactly once.

    Order: decomposition factors left to right; for each factor larger sizes
    first, then its positive string in decreasing lexicographic order, then the
    next offset in increasing order.
    """
    a = check_piece_length(a)
    m = check_positive(m, "m")
    cls = _as_class(cls)
    check_budget(cls.expected_count(a, m), budget)
    for pieces in _leaves(a, m, cls):
        yield Pyramid._trusted(a, [Piece(o, lv) for o, lv in pieces])


def _count_first(args):
    a, m, first_size = args
    return sum(1 for _ in _leaves(a, m, GENERAL, first_size))


def count_pyramids(a, m, cls=None, budget=DEFAULT_BUDGET, threads=1):
    """Number of pyramids produced by :func:`enumerate_pyramids`.

    With ``threads > 1`` the general class is split by the size of the first
    factor and counted in worker processes.
    """
    a = check_piece_length(a)
    m = check_positive(m, "m")
    cls = _as_class(cls)
    check_budget(cls.expected_count(a, m), budget)
    if threads > 1 and cls.kind == "general" and m > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(_count_first, [(a, m, k) for k in range(m, 0, -1)]))
    return sum(1 for _ in _leaves(a, m, cls))


def enumerate_pyramids_bruteforce(a, m, budget=10**6):
    """All normalised pyramids of size ``m``, grown one dropped piece at a time with de-duplication.

    Every pyramid of size ``m >= 2`` arises by dropping a piece onto a pyramid
    of size ``m - 1`` (remove any maximal piece), so breadth-first growth from
    the single piece reaches all of them.
    """
    a = check_piece_length(a)
    m = check_positive(m, "m")
    check_budget(comb(a * m - 1, m - 1), budget)
    layer = {frozenset([(0, 1)])}
    for _ in range(m - 1):
        nxt = set()
        for pieces in layer:
            sky = {}
            for o, lv in pieces:
                for c in range(o, o + a):
                    if sky.get(c, 0) < lv:
                        sky[c] = lv
            lo = min(o for o, _ in pieces) - a + 1
            hi = max(o for o, _ in pieces) + a - 1
            for o in range(lo, hi + 1):
                level = 1 + max(sky.get(c, 0) for c in range(o, o + a))
                nxt.add(pieces | {(o, level)})
        layer = nxt
    return {Pyramid._trusted(a, [Piece(o, lv) for o, lv in p]) for p in layer}
