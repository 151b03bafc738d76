"""Unique factorisation of walks into P/N/T/U factors (piece length a >= 3).

Factor kinds, for indices in ``0 .. a-2``:

* ``P`` (i -> i): positive walk, all sites >= i, at least one right-step;
* ``N`` (i -> i): negative walk, its reversal is positive, all sites <= i;
* ``T`` (i -> j, j < i): ``i - j`` left-steps;
* ``U`` (i -> k, i < k): deletes the last ``k - i`` left-steps of the
  preceding ``P``.

A composition is admissible when every pair of neighbouring letters is one
of ``PN NP PT TP NT TN PU UN``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate

from ._validation import check_bits, check_piece_length

ALLOWED_PAIRS = frozenset({"PN", "NP", "PT", "TP", "NT", "TN", "PU", "UN"})


class NoComposition(ValueError):
    """The walk admits no admissible composition."""


@dataclass(frozen=True)
class Factor:
    kind: str
    start: int
    end: int
    bits: str = ""

    @property
    def right_steps(self):
        return self.bits.count("1")

    def to_json(self):
        return {"kind": self.kind, "start": self.start, "end": self.end, "bits": self.bits}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["kind"], int(obj["start"]), int(obj["end"]), obj.get("bits", ""))


def _sites(bits, a, start=0):
    return [start] + [start + t for t in accumulate(a - 1 if c == "1" else -1 for c in bits)]


def _check_factor(f, a):
    top = a - 2
    if f.kind == "P":
        w = _sites(f.bits, a, f.start)
        if not (0 <= f.start <= top and f.end == f.start and f.right_steps >= 1
                and w[-1] == f.start and min(w) >= f.start):
            raise ValueError(f"invalid P factor {f}")
    elif f.kind == "N":
        w = _sites(f.bits, a, f.start)
        if not (0 <= f.start <= top and f.end == f.start and f.right_steps >= 1
                and w[-1] == f.start and max(w) <= f.start):
            raise ValueError(f"invalid N factor {f}")
    elif f.kind == "T":
        if not (0 <= f.end < f.start <= top and f.bits == "0" * (f.start - f.end)):
            raise ValueError(f"invalid T factor {f}")
    elif f.kind == "U":
        if not (0 <= f.start < f.end <= top and f.bits == ""):
            raise ValueError(f"invalid U factor {f}")
    else:
        raise ValueError(f"unknown factor kind {f.kind!r}")


def check_composition(factors, a):
    """Raise ``ValueError`` unless ``factors`` is an admissible composition from 0."""
    a = check_piece_length(a, minimum=3)
    prev = None
    pos = 0
    for f in factors:
        _check_factor(f, a)
        if f.start != pos:
            raise ValueError(f"factor {f} does not start where the previous one ended ({pos})")
        if prev is not None and prev.kind + f.kind not in ALLOWED_PAIRS:
            raise ValueError(f"pair {prev.kind}{f.kind} is not admissible")
        if prev is None and f.kind == "U":
            raise ValueError("a composition cannot start with U")
        pos = f.end
        prev = f


def compose_admissible(factors, a):
    """Concatenate the factors into a walk from 0 (returned as a bit string)."""
    check_composition(factors, a)
    out = []
    for f in factors:
        if f.kind == "U":
            k = f.end - f.start
            tail = out[-1]
            if len(tail) < k or tail[-k:] != "0" * k:
                raise ValueError("U needs enough trailing left-steps in the preceding P")
            out[-1] = tail[:-k]
        else:
            out.append(f.bits)
    return "".join(out)


def _peel_after(bits, w, pos, end):
    """Factor the part after the step alpha: it stays >= 0 and alternates T and P."""
    out = []
    cur = w[pos]
    while pos < end:
        if bits[pos] == "0":
            e = pos
            while e < end and bits[e] == "0":
                e += 1
            out.append(Factor("T", cur, w[e], bits[pos:e]))
            pos, cur = e, w[e]
            continue
        # longest positive walk from cur back to cur
        k = pos
        while k < end and w[k + 1] >= cur:
            k += 1
        if k < end:
            out.append(Factor("P", cur, cur, bits[pos:k]))
            pos = k
        elif w[end] == cur:
            out.append(Factor("P", cur, cur, bits[pos:end]))
            pos = end
        else:
            extra = w[end] - cur
            out.append(Factor("P", cur, cur, bits[pos:end] + "0" * extra))
            out.append(Factor("U", cur, w[end]))
            pos = end
    return out


def factorize_walk(bits, a):
    """The admissible composition of a walk from 0 to ``j``, ``0 <= j <= a-2``.

    Factors are stripped from the right.  A trailing right-step means the walk
    ends with a negative factor ``N_jj``, cut at the earliest point after which
    the walk stays ``<= j``.  A trailing left-step means the walk ends with a
    run of alternating ``T``/``P`` factors (possibly closed by a ``U``) after
    the last right-step from a negative site to a non-negative one; if there is
    no such step the walk is a single ``P`` (plus ``U``).

    Raises ``NoComposition`` when the walk has no admissible composition
    (e.g. some walks that begin with a left-step).
    """
    a = check_piece_length(a, minimum=3)
    bits = check_bits(getattr(bits, "bits", bits))
    w = _sites(bits, a)
    target = w[-1]
    if not 0 <= target <= a - 2:
        raise ValueError(f"walk ends at {target}, outside 0..{a - 2}")
    rev = []
    end = len(bits)
    while end > 0:
        if bits[end - 1] == "1":
            k = end - 1
            split = None
            while k >= 0 and w[k] <= target:
                if w[k] == target:
                    split = k
                k -= 1
            if split is None or split == end or (split > 0 and bits[split - 1] != "0"):
                raise NoComposition(f"no negative factor ends the walk {bits!r}")
            rev.append(Factor("N", target, target, bits[split:end]))
            end = split
            continue
        alpha = None
        for q in range(end - 1, -1, -1):
            if bits[q] == "1" and w[q] < 0 <= w[q + 1]:
                alpha = q
                break
        if alpha is None:
            if min(w[:end + 1]) < 0:
                raise NoComposition(f"walk {bits!r} dips below 0 without coming back")
            if target == 0:
                rev.append(Factor("P", 0, 0, bits[:end]))
            else:
                rev.append(Factor("U", 0, target))
                rev.append(Factor("P", 0, 0, bits[:end] + "0" * target))
            end = 0
            continue
        rev.extend(reversed(_peel_after(bits, w, alpha + 1, end)))
        end = alpha + 1
        target = w[end]
    rev.reverse()
    return rev


def all_compositions(bits, a):
    """Every admissible composition of the walk, by exhaustive parsing.

    Independent of :func:`factorize_walk`; used to confirm uniqueness.
    """
    a = check_piece_length(a, minimum=3)
    bits = check_bits(bits)
    w = _sites(bits, a)
    n = len(bits)
    top = a - 2
    found = []

    def rec(pos, prev, acc):
        if pos == n:
            if acc:
                found.append(list(acc))
            return
        i = w[pos]
        if not 0 <= i <= top:
            return
        for e in range(pos + 1, n + 1):
            seg = w[pos:e + 1]
            # positive segment: plain P, or P followed by U
            if min(seg) >= i and bits[pos] == "1" and (prev is None or prev + "P" in ALLOWED_PAIRS):
                if w[e] == i:
                    acc.append(Factor("P", i, i, bits[pos:e]))
                    rec(e, "P", acc)
                    acc.pop()
                elif i < w[e] <= top:
                    k = w[e] - i
                    acc.append(Factor("P", i, i, bits[pos:e] + "0" * k))
                    acc.append(Factor("U", i, w[e]))
                    rec(e, "U", acc)
                    acc.pop()
                    acc.pop()
            if w[e] == i and max(seg) <= i and (prev is None or prev + "N" in ALLOWED_PAIRS):
                acc.append(Factor("N", i, i, bits[pos:e]))
                rec(e, "N", acc)
                acc.pop()
        if prev is not None and prev + "T" in ALLOWED_PAIRS:
            e = pos
            while e < n and bits[e] == "0" and w[e + 1] >= 0:
                e += 1
                acc.append(Factor("T", i, w[e], bits[pos:e]))
                rec(e, "T", acc)
                acc.pop()

    rec(0, None, [])
    return found


def composition_profile(factors):
    """``(r, sizes)``: number of P/N factors and their right-step counts."""
    sizes = [f.right_steps for f in factors if f.kind in "PN"]
    return len(sizes), sizes


def closed_walks(a, m, first_right=True):
    """All walks of length ``am`` with ``m`` right-steps (hence from 0 to 0)."""
    from itertools import combinations

    n = a * m
    if first_right:
        for rest in combinations(range(1, n), m - 1):
            s = ["0"] * n
            s[0] = "1"
            for r in rest:
                s[r] = "1"
            yield "".join(s)
    else:
        for ones in combinations(range(n), m):
            s = ["0"] * n
            for r in ones:
                s[r] = "1"
            yield "".join(s)
