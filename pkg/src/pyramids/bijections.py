"""Strings, walks, lattice paths and trees attached to right pyramids.

A bit string ``x_1 ... x_n`` is read as a walk on the integers: ``1`` is a
right-step of length ``a - 1`` and ``0`` a left-step of length 1, so the
``s``-th site is ``t_s = sum(a * x_u - 1 for u <= s)``.  Bits are stored as
``str`` in reading order (``"1100"`` means ``x_1 = 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterator, Optional

from ._validation import check_bits, check_piece_length, check_positive
from .heap import LEFT, RIGHT, DecompositionFactor, Piece, Pyramid, as_pyramid, decompose, recompose


def running_values(bits, a):
    """The sites ``t_1, ..., t_n`` visited by the walk of ``bits`` from 0."""
    return list(accumulate(a - 1 if c == "1" else -1 for c in bits))


@dataclass(frozen=True)
class Walk:
    """Walk with right-steps ``+(a-1)`` (bit ``1``) and left-steps ``-1`` (bit ``0``)."""

    a: int
    bits: str
    start: int = 0

    def __post_init__(self):
        check_piece_length(self.a)
        object.__setattr__(self, "bits", check_bits(self.bits))

    @property
    def sites(self):
        """Visited sites after each step (the start is not included)."""
        return [self.start + t for t in running_values(self.bits, self.a)]

    @property
    def all_sites(self):
        return [self.start] + self.sites

    @property
    def end(self):
        ones = self.bits.count("1")
        return self.start + (self.a - 1) * ones - (len(self.bits) - ones)

    @property
    def right_steps(self):
        return self.bits.count("1")

    def inverse(self):
        """Reflect in the end point and traverse backwards."""
        return Walk(self.a, self.bits[::-1], self.end)

    def is_positive(self):
        """``end >= start`` and padding with left-steps back to ``start`` stays ``>= start``."""
        return self.end >= self.start and all(x >= self.start for x in self.all_sites)

    def is_negative(self):
        return self.inverse().is_positive()


def string_to_walk(bits, a):
    return Walk(a, check_bits(bits), 0)


def walk_to_string(walk):
    if walk.start != 0:
        raise ValueError("only walks from 0 correspond to strings")
    return walk.bits


def is_positive(bits, m, a):
    """Whether ``bits`` is a positive ``(am, m)``-string."""
    bits = check_bits(bits)
    a = check_piece_length(a)
    if len(bits) != a * m:
        raise ValueError(f"expected a string of length {a * m}, got {len(bits)}")
    return bits.count("1") == m and all(t >= 0 for t in running_values(bits, a))


def is_positive_string(bits, a):
    """Positive ``(am, m)``-string for whatever ``m`` the length implies."""
    if not bits or len(bits) % a:
        return False
    return is_positive(bits, len(bits) // a, a)


def positive_strings(a, m) -> Iterator[str]:
    """All positive ``(am, m)``-strings in decreasing lexicographic order."""
    a = check_piece_length(a)
    m = check_positive(m, "m")
    n = a * m
    buf = []

    def rec(pos, t, ones):
        if pos == n:
            yield "".join(buf)
            return
        if ones < m:
            buf.append("1")
            yield from rec(pos + 1, t + a - 1, ones + 1)
            buf.pop()
        # left-step; stay non-negative and leave room for the remaining ones
        if t >= 1 and (n - pos - 1) >= (m - ones):
            buf.append("0")
            yield from rec(pos + 1, t - 1, ones)
            buf.pop()

    yield from rec(0, 0, 0)


# right pyramids <-> positive strings

def string_to_right_pyramid(bits, a):
    """Drop a piece at offset ``t_{s-1}`` for every ``x_s = 1`` (``t_0 = 0``)."""
    bits = check_bits(bits)
    a = check_piece_length(a)
    if not is_positive_string(bits, a):
        raise ValueError(f"{bits!r} is not a positive string for a={a}")
    sky = {}
    pieces = []
    t = 0
    for c in bits:
        if c == "1":
            level = 1 + max(sky.get(x, 0) for x in range(t, t + a))
            for x in range(t, t + a):
                sky[x] = level
            pieces.append(Piece(t, level))
            t += a - 1
        else:
            t -= 1
    return Pyramid._trusted(a, pieces)


def right_pyramid_to_string(p):
    """Greedy scan turning a right 0-pyramid into its positive string.

    Keep a growing sub-pyramid and the running value ``t``.  At each step, if
    the piece of ``p`` at offset ``t`` can be added next (everything of ``p``
    below it and overlapping it is already present) emit ``1`` and add it,
    otherwise emit ``0``.
    """
    p = as_pyramid(p)
    a = p.a
    if not p.is_right(0):
        raise ValueError("expected a right 0-pyramid")
    m = len(p)
    by_offset = {}
    below = {}
    for q in p.pieces:
        by_offset.setdefault(q.offset, []).append(q)
        below[q] = [r for r in p.pieces if r.level < q.level and abs(r.offset - q.offset) < a]
    for lst in by_offset.values():
        lst.sort(key=lambda q: q.level)

    placed = {p.bottom}
    out = ["1"]
    t = a - 1
    for _ in range(a * m - 1):
        cand = next((q for q in by_offset.get(t, ()) if q not in placed), None)
        if cand is not None and all(r in placed for r in below[cand]):
            placed.add(cand)
            out.append("1")
            t += a - 1
        else:
            out.append("0")
            t -= 1
    if len(placed) != m:
        raise ValueError("greedy scan did not consume the pyramid")
    return "".join(out)


# lattice paths and a-ary trees

@dataclass(frozen=True)
class LatticePath:
    """Path of up-steps ``(1, a-1)`` (``U``) and down-steps ``(1, -1)`` (``D``) from the origin."""

    a: int
    steps: str

    def __post_init__(self):
        check_piece_length(self.a)
        if any(c not in "UD" for c in self.steps):
            raise ValueError("path steps must be U or D")

    @property
    def heights(self):
        return [0] + list(accumulate(self.a - 1 if c == "U" else -1 for c in self.steps))

    def is_dyck(self):
        h = self.heights
        return h[-1] == 0 and min(h) >= 0

    @property
    def up_steps(self):
        return self.steps.count("U")


def walk_to_path(walk):
    if walk.start != 0:
        raise ValueError("paths start at the origin")
    return LatticePath(walk.a, walk.bits.replace("1", "U").replace("0", "D"))


def path_to_walk(path):
    return Walk(path.a, path.steps.replace("U", "1").replace("D", "0"), 0)


@dataclass(frozen=True)
class AryTree:
    """Planar a-ary tree; ``children`` holds ``a`` subtrees, ``None`` marks a leaf."""

    children: tuple

    @property
    def arity(self):
        return len(self.children)

    @property
    def nodes(self):
        return 1 + sum(c.nodes for c in self.children if c is not None)

    def to_json(self):
        return [None if c is None else c.to_json() for c in self.children]

    @classmethod
    def from_json(cls, obj):
        if obj is None:
            return None
        return cls(tuple(cls.from_json(c) for c in obj))


def tree_nodes(tree):
    return 0 if tree is None else tree.nodes


def dyck_to_tree(path) -> Optional[AryTree]:
    """Generalised Dyck path to a-ary tree (``None`` for the empty path).

    The path splits as ``U w_a D w_{a-1} D ... D w_1`` with every ``w_k`` a
    (translated) generalised Dyck path; the ``w_k`` become the subtrees in
    that order.
    """
    if not path.is_dyck():
        raise ValueError("not a generalised Dyck path")
    a, steps = path.a, path.steps
    pos = 0

    def parse():
        nonlocal pos
        if pos == len(steps) or steps[pos] == "D":
            return None
        pos += 1  # the up-step
        kids = [parse()]
        for _ in range(a - 1):
            if pos == len(steps) or steps[pos] != "D":
                raise ValueError("malformed Dyck path")
            pos += 1
            kids.append(parse())
        return AryTree(tuple(kids))

    tree = parse()
    if pos != len(steps):
        raise ValueError("malformed Dyck path")
    return tree


def tree_to_dyck(tree, a):
    a = check_piece_length(a)

    def emit(t):
        if t is None:
            return ""
        if t.arity != a:
            raise ValueError(f"node with {t.arity} children in an {a}-ary tree")
        return "U" + "D".join(emit(c) for c in t.children)

    return LatticePath(a, emit(tree))


def ary_trees(a, m):
    """All a-ary trees with ``m`` nodes (direct recursive construction)."""
    if m == 0:
        return [None]
    out = []

    def splits(k, total):
        if k == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in splits(k - 1, total - first):
                yield (first,) + rest

    for sizes in splits(a, m - 1):
        combos = [[]]
        for s in sizes:
            combos = [c + [t] for c in combos for t in ary_trees(a, s)]
        out.extend(AryTree(tuple(c)) for c in combos)
    return out


# full codec for dimers

def _left_to_string(pyr, s):
    # left s-pyramid -> mirrored right 0-pyramid -> reversed positive string
    right = pyr.mirror(about=s).translate(-s)
    return right_pyramid_to_string(right)[::-1]


def pyramid_to_string_a2(p):
    """Bijection from pyramids (a=2) to ``(2m, m)``-strings starting with 1.

    Odd factors of the decomposition are encoded by their positive strings,
    even factors by reversed positive strings; the pieces are juxtaposed.
    """
    p = as_pyramid(p)
    if p.a != 2:
        raise ValueError("the full pyramid/string correspondence is only defined for a = 2")
    parts = []
    for side, s, pyr in decompose(p):
        if side == RIGHT:
            parts.append(right_pyramid_to_string(pyr.translate(-s)))
        else:
            parts.append(_left_to_string(pyr, s))
    return "".join(parts)


def split_signed_excursions(bits):
    """Cut a closed dimer walk into maximal alternating non-negative / non-positive pieces."""
    sites = [0] + running_values(bits, 2)
    if sites[-1] != 0:
        raise ValueError("walk does not return to 0")
    parts = []
    cut = seg_start = 0
    sign = None
    for i in range(1, len(sites)):
        if sites[i] == 0:
            seg_sign = 1 if sites[seg_start + 1] > 0 else -1
            if sign is not None and seg_sign != sign:
                parts.append(bits[cut:seg_start])
                cut = seg_start
            sign = seg_sign
            seg_start = i
    parts.append(bits[cut:])
    return parts


def string_to_pyramid_a2(bits):
    """Inverse of :func:`pyramid_to_string_a2`."""
    bits = check_bits(bits)
    m = len(bits) // 2
    if len(bits) != 2 * m or bits.count("1") != m or not bits.startswith("1"):
        raise ValueError("expected a (2m, m)-string starting with 1")
    factors = []
    for i, w in enumerate(split_signed_excursions(bits)):
        if i % 2 == 0:
            factors.append(DecompositionFactor(RIGHT, 0, string_to_right_pyramid(w, 2)))
        else:
            right = string_to_right_pyramid(w[::-1], 2)
            factors.append(DecompositionFactor(LEFT, 1, right.translate(1).mirror(about=1)))
    return recompose(factors)
