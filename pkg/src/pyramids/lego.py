"""Flat LEGO structures: exhaustive counts, Monte Carlo estimates and bounds.

A flat structure is a finite set of ``(offset, level)`` pieces with no two
pieces overlapping on a level, connected through vertically adjacent
overlapping pieces, and with a unique lowest piece.  Unlike pyramids, pieces
may hang below pieces of the level above.  Structures are stored translated
so the lowest piece is ``(0, 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._validation import DEFAULT_BUDGET, BudgetExceeded, check_piece_length, check_positive

BOTTOM = (0, 1)


# structures

def _adjacent(p, q, a):
    return abs(p[1] - q[1]) == 1 and abs(p[0] - q[0]) < a


def is_connected(pieces, a, without=None):
    pieces = [p for p in pieces if p != without]
    if not pieces:
        return True
    seen = {pieces[0]}
    stack = [pieces[0]]
    while stack:
        p = stack.pop()
        for q in pieces:
            if q not in seen and _adjacent(p, q, a):
                seen.add(q)
                stack.append(q)
    return len(seen) == len(pieces)


def is_flat_structure(pieces, a):
    pieces = set(pieces)
    if not pieces:
        return False
    low = min(lv for _, lv in pieces)
    if sum(1 for _, lv in pieces if lv == low) != 1:
        return False
    for p in pieces:
        for q in pieces:
            if p != q and p[1] == q[1] and abs(p[0] - q[0]) < a:
                return False
    return is_connected(pieces, a)


def canonical(pieces):
    """Translate so the unique lowest piece sits at ``(0, 1)``."""
    o, lv = min(pieces, key=lambda p: p[1])
    return frozenset((x - o, y - lv + 1) for x, y in pieces)


@dataclass(frozen=True)
class FlatStructure:
    a: int
    pieces: frozenset

    def __post_init__(self):
        check_piece_length(self.a)
        if not is_flat_structure(self.pieces, self.a):
            raise ValueError("not a flat structure with a unique lowest piece")
        object.__setattr__(self, "pieces", canonical(self.pieces))

    def __len__(self):
        return len(self.pieces)


def _attachments(pieces, a):
    """Empty positions (level >= 2) adjacent to the structure that do not clash on their level."""
    by_level = {}
    for o, lv in pieces:
        by_level.setdefault(lv, []).append(o)
    out = set()
    for o, lv in pieces:
        for nl in (lv - 1, lv + 1):
            if nl < 2:
                continue
            row = by_level.get(nl, ())
            for no in range(o - a + 1, o + a):
                if all(abs(no - x) >= a for x in row):
                    out.add((no, nl))
    return out


def _canonical_removable(pieces, a):
    best = None
    for p in pieces:
        if p == BOTTOM:
            continue
        if (best is None or (p[1], p[0]) > (best[1], best[0])) and is_connected(pieces, a, without=p):
            best = p
    return best


def flat_structures_orderly(a, m):
    """Generate every flat structure of size ``m`` once by canonical augmentation.

    A child ``S + x`` is kept only when ``x`` is the largest (by level, then
    offset) piece whose removal leaves ``S + x`` connected, so each structure
    has exactly one accepted parent.  No global set of structures is kept.
    """
    a = check_piece_length(a)
    m = check_positive(m, "m")

    def grow(pieces):
        if len(pieces) == m:
            yield pieces
            return
        for x in sorted(_attachments(pieces, a), key=lambda p: (p[1], p[0])):
            child = pieces | {x}
            if _canonical_removable(child, a) == x:
                yield from grow(child)

    yield from grow(frozenset([BOTTOM]))


def _rows(window, a, size, start=0):
    """Non-overlapping offset tuples of the given size, increasing."""
    if size == 0:
        yield ()
        return
    for i in range(start, len(window)):
        o = window[i]
        j = i + 1
        while j < len(window) and window[j] - o < a:
            j += 1
        for rest in _rows(window, a, size - 1, j):
            yield (o,) + rest


def flat_structures_by_levels(a, m):
    """Generate flat structures of size ``m`` level by level, checking connectivity at the end.

    Rows are chosen bottom-up from a window of offsets.  Consecutive rows must
    touch, and a piece that touches neither neighbouring row is rejected as
    soon as the row above it is fixed.
    """
    a = check_piece_length(a)
    m = check_positive(m, "m")
    reach = (a - 1) * (m - 1)
    window = list(range(-reach, reach + 1))

    def touches(o, row):
        return any(abs(o - x) < a for x in row)

    def rec(rows, left):
        top = rows[-1]
        below = rows[-2] if len(rows) > 1 else ()
        lonely = [o for o in top if not touches(o, below)] if len(rows) > 1 else []
        if left == 0:
            if not lonely:
                pieces = frozenset((o, lv) for lv, row in enumerate(rows, start=1) for o in row)
                if is_connected(pieces, a):
                    yield pieces
            return
        for size in range(1, left + 1):
            for row in _rows(window, a, size):
                if not any(touches(o, top) for o in row):
                    continue
                if any(not touches(o, row) for o in lonely):
                    continue
                yield from rec(rows + [row], left - size)

    yield from rec([(0,)], m - 1)


def count_flat_exhaustive(a, m, method="orderly", budget=DEFAULT_BUDGET):
    """Exact number ``L^a_m`` of flat structures with ``m`` pieces."""
    a = check_piece_length(a)
    m = check_positive(m, "m")
    if method == "orderly":
        gen = flat_structures_orderly(a, m)
    elif method == "levels":
        gen = flat_structures_by_levels(a, m)
    else:
        raise ValueError(f"unknown method {method!r}")
    n = 0
    for _ in gen:
        n += 1
        if budget is not None and n > budget:
            raise BudgetExceeded(f"more than {budget} flat structures of size {m}")
    return n


# bounds

def growth_lower_bound(a):
    """``a^a / (a-1)^(a-1)``, the exponential growth of the pyramid counts."""
    a = check_piece_length(a)
    return Fraction(a**a, (a - 1) ** (a - 1))


def conjectured_growth(a):
    return Fraction(5, 4) * growth_lower_bound(a)


def klarner_coefficients(a):
    """Coefficients of ``x^5, x^4, x^3, x^2`` of the depth-1 polynomial, as printed."""
    a = Fraction(check_piece_length(a))
    F = Fraction
    c5 = F(1, 4) * a**9 - F(4, 5) * a**8 + F(21, 8) * a**7 - 3 * a**6 + 2 * a**5 - F(3, 4) * a**4 + F(1, 8) * a**3
    c4 = (-3 * a**8 + F(77, 4) * a**7 - F(105, 2) * a**6 + F(159, 2) * a**5 - 73 * a**4
          + F(165, 4) * a**3 - F(27, 2) * a**2 + 2 * a)
    c3 = (-F(47, 8) * a**7 + 27 * a**6 - F(195, 4) * a**5 + F(85, 2) * a**4 - F(135, 8) * a**3
          + F(3, 2) * a**2 + F(1, 2) * a)
    c2 = a**6 - 4 * a**5 + 6 * a**4 - 4 * a**3 + a**2
    return c5, c4, c3, c2


def _peval(coeffs, x):
    # coeffs highest degree first
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _derivative(coeffs):
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def _sign(v):
    return (v > 0) - (v < 0)


def real_roots(coeffs, tol=Fraction(1, 2**70)):
    """Real roots of a polynomial with exact coefficients, by isolating with critical points and bisecting."""
    coeffs = list(coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) <= 1:
        return []
    if len(coeffs) == 2:
        return [Fraction(-coeffs[1]) / coeffs[0]]
    bound = 1 + max(abs(Fraction(c) / coeffs[0]) for c in coeffs[1:])
    marks = [-bound] + [x for x in real_roots(_derivative(coeffs), tol) if -bound < x < bound] + [bound]
    roots = []
    for lo, hi in zip(marks, marks[1:]):
        flo, fhi = _sign(_peval(coeffs, lo)), _sign(_peval(coeffs, hi))
        if flo == 0:
            if not roots or roots[-1] != lo:
                roots.append(lo)
            continue
        if fhi == 0 or flo == fhi:
            continue
        while hi - lo > tol:
            mid = (lo + hi) / 2
            fm = _sign(_peval(coeffs, mid))
            if fm == 0:
                lo = hi = mid
                break
            if fm == flo:
                lo = mid
            else:
                hi = mid
        roots.append((lo + hi) / 2)
    if _sign(_peval(coeffs, bound)) == 0:
        roots.append(bound)
    return roots


def klarner_depth1_bound(a, rtol=1e-12):
    """Largest real root of the depth-1 polynomial (``x = 0`` is a double root)."""
    c5, c4, c3, c2 = klarner_coefficients(a)
    cubic = [c5, c4, c3, c2]
    roots = real_roots(cubic)
    if not roots:
        raise ArithmeticError(f"no real root found for a={a}")
    x = max(max(roots), Fraction(0))
    scale = sum(abs(c) * abs(x) ** k for c, k in zip(cubic, (3, 2, 1, 0)))
    if scale and abs(_peval(cubic, x)) > rtol * scale:
        raise ArithmeticError("root refinement did not reach the requested residual")
    return float(x)


# Monte Carlo

@dataclass
class GrowthEstimate:
    estimate: float
    stderr: float
    samples: int
    seed: int | None = None
    params: dict = field(default_factory=dict)

    @property
    def A(self):
        return self.params.get("A")

    @property
    def H(self):
        return self.params.get("H")

    @property
    def C(self):
        return self.params.get("C")

    @property
    def stderr_available(self):
        return math.isfinite(self.stderr)

    def to_json(self):
        return {"schema_version": 1, "estimate": self.estimate,
                "stderr": self.stderr if self.stderr_available else None,
                "samples": self.samples, "seed": self.seed, **self.params}


def linear_extensions(pieces, a):
    """Orders of adding the pieces so each piece comes after everything below it that it overlaps."""
    pieces = list(pieces)
    n = len(pieces)
    need = []
    for p in pieces:
        mask = 0
        for j, q in enumerate(pieces):
            if q[1] < p[1] and abs(q[0] - p[0]) < a:
                mask |= 1 << j
        need.append(mask)
    return _count_orders(n, lambda mask, i: need[i] & mask == need[i], 0)


def connected_orders(pieces, a):
    """Orders starting with the lowest piece in which every prefix is connected."""
    pieces = sorted(pieces, key=lambda p: (p[1], p[0]))
    n = len(pieces)
    nbr = [sum(1 << j for j, q in enumerate(pieces) if _adjacent(p, q, a)) for p in pieces]
    return _count_orders(n, lambda mask, i: nbr[i] & mask != 0, 1)


def _count_orders(n, allowed, start_mask):
    full = (1 << n) - 1
    memo = {full: 1}

    def f(mask):
        if mask in memo:
            return memo[mask]
        total = 0
        for i in range(n):
            if not mask >> i & 1 and allowed(mask, i):
                total += f(mask | 1 << i)
        memo[mask] = total
        return total

    return f(start_mask)


def _sample_pyramid(a, m, rng):
    sky = {c: 1 for c in range(a)}
    pieces = [(0, 1)]
    lo, hi = 0, 0
    weight = 1
    for _ in range(m - 1):
        k = hi - lo + 2 * a - 1
        weight *= k
        o = lo - a + 1 + int(rng.integers(k))
        level = 1 + max(sky.get(c, 0) for c in range(o, o + a))
        for c in range(o, o + a):
            sky[c] = level
        pieces.append((o, level))
        lo, hi = min(lo, o), max(hi, o)
    return weight / linear_extensions(pieces, a)


def _sample_flat(a, m, rng):
    pieces = frozenset([BOTTOM])
    weight = 1
    for _ in range(m - 1):
        options = sorted(_attachments(pieces, a))
        weight *= len(options)
        pieces = pieces | {options[int(rng.integers(len(options)))]}
    return weight / connected_orders(pieces, a)


MAX_MC_SIZE = 18


def mc_estimate(a, m, samples, seed=0, mode="pyramid"):
    """Rosenbluth-style sequential growth estimate of the number of structures of size ``m``.

    Each sample grows a structure by ``m - 1`` uniformly chosen attachments and
    scores ``prod(number of choices) / (number of growth orders of the result)``,
    an unbiased estimate of the pyramid count (``mode='pyramid'``) or of
    ``L^a_m`` (``mode='flat'``).
    """
    a = check_piece_length(a)
    m = check_positive(m, "m")
    samples = check_positive(samples, "samples")
    if m > MAX_MC_SIZE:
        raise BudgetExceeded(f"exact order counting is limited to m <= {MAX_MC_SIZE}")
    if mode == "pyramid":
        draw = _sample_pyramid
    elif mode == "flat":
        draw = _sample_flat
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    xs = np.array([draw(a, m, rng) for _ in range(samples)], dtype=float)
    mean = float(xs.mean())
    stderr = float(xs.std(ddof=1) / math.sqrt(samples)) if samples > 1 else math.inf
    return GrowthEstimate(mean, stderr, samples, seed, {"a": a, "m": m, "mode": mode})


CITED_CONTEXT = [
    "cited: h_2 >= 9/2",
    "cited: h_2 >= 4.607",
    "cited: h_a <= 6.356 a - 4.375 (large a)",
    "cited: k_a between 1.238 and 1.264",
    "cited: H = 5.0012 from A H^n n^C on L^2_16..L^2_20",
    "conjectured: h_2 = 5",
]


def growth_report(a_values, mc_sizes=None, samples=0, seed=0):
    """Per-``a`` table of growth bounds, the conjectured value and optional Monte Carlo fits.

    With ``samples > 0`` flat structures of the sizes in ``mc_sizes`` are
    estimated and fitted with ``A H^n n^C``; the fitted ``H`` and the ratio
    ``k_a = H / lower bound`` are reported.
    """
    from .growth import fit_growth

    rows = []
    for a in a_values:
        lb = growth_lower_bound(a)
        row = {"a": a, "lower_bound": float(lb), "lower_bound_exact": str(lb),
               "klarner_depth1_root": klarner_depth1_bound(a),
               "conjecture": float(conjectured_growth(a))}
        if samples and mc_sizes:
            est = [mc_estimate(a, n, samples, seed + n, mode="flat") for n in mc_sizes]
            fit = fit_growth([e.estimate for e in est], list(mc_sizes))
            row.update({"mc_sizes": list(mc_sizes), "mc_estimates": [e.estimate for e in est],
                        "mc_stderr": [e.stderr for e in est], "fit_H": fit.H, "k_a": fit.H / float(lb)})
        rows.append(row)
    return {"schema_version": 1, "rows": rows, "context": CITED_CONTEXT}
