"""Named property suites shared by ``verify`` and the acceptance tests.

Each suite returns a list of :class:`Check` records; a suite passes when all
of its checks pass.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from . import admissible, bijections, enumeration, lego, series, transfer
from .heap import decompose, left_width, recompose

# The ten dimer pyramids of size 3 as signed-excursion segments of their strings.
DIMER_SIZE3_SEGMENTS = frozenset({
    ("111000",), ("110100",), ("110010",), ("101100",), ("101010",),
    ("1100", "01"), ("1010", "01"), ("10", "01", "10"), ("10", "0101"), ("10", "0011"),
})

COUNT_GRID = {2: 10, 3: 8, 4: 7, 5: 6}


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def to_json(self):
        return {"suite": self.suite, "name": self.name, "ok": bool(self.ok), "detail": self.detail}


def pyramid_counts(grid=None, threads=1):
    out = []
    for a, mmax in (grid or COUNT_GRID).items():
        for m in range(1, mmax + 1):
            got = enumeration.count_pyramids(a, m, threads=threads)
            want = math.comb(a * m - 1, m - 1)
            out.append(Check("counts", f"a={a} m={m}", got == want, f"{got} vs {want}"))
    return out


def right_pyramids(grid=None):
    out = []
    for a, mmax in (grid or COUNT_GRID).items():
        for m in range(1, mmax + 1):
            got = enumeration.count_pyramids(a, m, cls=enumeration.PyramidClass("right", 0))
            want = math.factorial(a * m) // (math.factorial(m) * math.factorial((a - 1) * m + 1))
            out.append(Check("right", f"a={a} m={m}", got == want, f"{got} vs {want}"))
    return out


def roundtrips(a_values=(2, 3, 4), max_string=16, max_up=4, right_m=None):
    out = []
    right_m = right_m or {2: 8, 3: 6, 4: 5, 5: 4}
    cls = enumeration.PyramidClass("right", 0)
    for a in a_values:
        bad = total = 0
        for p in enumeration.enumerate_pyramids(a, right_m.get(a, 4), cls):
            total += 1
            bad += bijections.string_to_right_pyramid(bijections.right_pyramid_to_string(p), a) != p
        out.append(Check("roundtrips", f"right pyramid codec a={a}", bad == 0, f"{total} pyramids"))
        bad = total = 0
        for m in range(1, max_string // a + 1):
            for s in bijections.positive_strings(a, m):
                total += 1
                bad += bijections.right_pyramid_to_string(bijections.string_to_right_pyramid(s, a)) != s
        out.append(Check("roundtrips", f"positive string codec a={a}", bad == 0, f"{total} strings"))
        bad = total = 0
        for m in range(0, max_up + 1):
            for s in bijections.positive_strings(a, m) if m else [""]:
                path = bijections.walk_to_path(bijections.Walk(a, s))
                tree = bijections.dyck_to_tree(path)
                total += 1
                bad += bijections.tree_to_dyck(tree, a) != path or bijections.tree_nodes(tree) != m
            trees = bijections.ary_trees(a, m)
            bad += len({bijections.tree_to_dyck(t, a).steps for t in trees}) != len(trees)
        out.append(Check("roundtrips", f"tree codec a={a}", bad == 0, f"{total} paths"))
    if 2 in a_values:
        got = set()
        ok = True
        for p in enumeration.enumerate_pyramids(2, 3):
            s = bijections.pyramid_to_string_a2(p)
            got.add(tuple(bijections.split_signed_excursions(s)))
            ok &= bijections.string_to_pyramid_a2(s) == p and recompose(decompose(p)) == p
        out.append(Check("roundtrips", "dimer size-3 table", ok and got == DIMER_SIZE3_SEGMENTS,
                         f"{len(got)} strings"))
        bad = 0
        for m in range(1, 7):
            for p in enumeration.enumerate_pyramids(2, m):
                bad += bijections.string_to_pyramid_a2(bijections.pyramid_to_string_a2(p)) != p
        out.append(Check("roundtrips", "dimer full codec m<=6", bad == 0))
    return out


def factorization(a_values=(3, 4), max_length=12):
    out = []
    for a in a_values:
        total = bad = 0
        for m in range(1, max_length // a + 1):
            for bits in admissible.closed_walks(a, m):
                total += 1
                try:
                    fs = admissible.factorize_walk(bits, a)
                    admissible.check_composition(fs, a)
                    ok = admissible.compose_admissible(fs, a) == bits
                except ValueError:
                    ok = False
                ok = ok and admissible.all_compositions(bits, a) == [fs]
                bad += not ok
        out.append(Check("factorization", f"a={a} am<={max_length}", bad == 0, f"{total} walks, {bad} bad"))
    return out


def transfer_suite(a_values=range(3, 9), r_max=12):
    out = []
    for a in a_values:
        vals = [transfer.compute_a_r(a, r) for r in range(1, r_max + 1)]
        out.append(Check("transfer", f"a_r a={a}", vals == [(a - 1) ** (r - 1) for r in range(1, r_max + 1)]))
        out.append(Check("transfer", f"char poly a={a}", transfer.verify_char_poly(a)))
        for name, ok in transfer.spectral_checks(a).items():
            out.append(Check("transfer", f"{name} a={a}", ok))
    if 3 in a_values:
        A = transfer.build_matrices(3).A
        out.append(Check("transfer", "a=3 matrix", A == [[0, 1, 0, 1], [1, 0, 0, 0], [1, 1, 0, 1], [1, 1, 1, 0]]))
        # lambda (lambda - 2) (lambda + 1)^2 = lambda^4 - 3 lambda^2 - 2 lambda
        out.append(Check("transfer", "a=3 char poly", transfer.char_poly(A) == [0, -2, -3, 0, 1]))
        out.append(Check("transfer", "a=3 recursions", transfer.a3_recursion_check(r_max)))
    return out


def series_suite(a_values=(2, 3, 4, 5), M=200, composition_m=30):
    out = []
    for a in a_values:
        A = series.series_A_recursive(a, M)
        out.append(Check("series", f"A recursion a={a}", A.coeffs == [series.count_A(a, m) for m in range(1, M + 1)]))
        out.append(Check("series", f"fixed point a={a}", not any(series.fixed_point_residual(A))))
        B = series.series_B_from_A(A)
        binom = [series.count_B(a, m) for m in range(1, M + 1)]
        out.append(Check("series", f"B from A a={a}", B.coeffs == binom))
        comp = all(series.sum_over_compositions_B(a, m) == binom[m - 1] for m in range(1, min(composition_m, M) + 1))
        out.append(Check("series", f"composition sum a={a}", comp))
        biv = series.series_B_bivariate(a, M, A)
        out.append(Check("series", f"bivariate row sums a={a}", biv.row_sums() == binom))
        C = series.series_C(a, M, B)
        out.append(Check("series", f"first moments a={a}", biv.first_moments() == C.coeffs))
    return out


def width_histograms(limits=None):
    out = []
    for a, mmax in (limits or {2: 9, 3: 7}).items():
        biv = series.series_B_bivariate(a, mmax)
        ok = True
        for m in range(1, mmax + 1):
            hist = Counter(left_width(p) for p in enumeration.enumerate_pyramids(a, m))
            want = {n: c for n, c in enumerate(biv.rows[m - 1]) if c}
            ok &= dict(hist) == want
        out.append(Check("widths", f"left width histogram a={a} m<={mmax}", ok))
    return out


def width_ratios(a_values=(2, 3), m=2000, band=(0.95, 1.05)):
    out = []
    for a in a_values:
        ratio = float(series.average_width_exact(a, m)) / series.average_width_asymptote(a, m)
        out.append(Check("widths", f"average width ratio a={a} m={m}", band[0] <= ratio <= band[1], f"{ratio:.6f}"))
    return out


def asymptotics(a_values=(2, 3), m=10**4, tol=0.01):
    out = []
    for a in a_values:
        err = abs(series.log_count_B(a, m) - series.stirling_asymptote_B(a, m))
        out.append(Check("asymptotics", f"log B_m a={a} m={m}", err < tol, f"{err:.3e}"))
    return out


def lego_suite(limits=None):
    out = []
    for a, mmax in (limits or {2: 6, 3: 5}).items():
        for m in range(1, mmax + 1):
            x = lego.count_flat_exhaustive(a, m, "orderly")
            y = lego.count_flat_exhaustive(a, m, "levels")
            b = series.count_B(a, m)
            out.append(Check("lego", f"a={a} m={m}", x == y and x >= b and (m > 2 or x == b), f"{x} {y} B={b}"))
    out.append(Check("lego", "L^2_2", lego.count_flat_exhaustive(2, 2) == 3))
    return out


SUITES = {
    "counts": lambda a, m, threads: pyramid_counts(_grid(a, m, COUNT_GRID), threads),
    "right": lambda a, m, threads: right_pyramids(_grid(a, m, COUNT_GRID)),
    "roundtrips": lambda a, m, threads: roundtrips(tuple(a or (2, 3, 4))),
    "factorization": lambda a, m, threads: factorization(_at_least(a, 3) or (3, 4), m or 12),
    "transfer": lambda a, m, threads: transfer_suite(_at_least(a, 3) or tuple(range(3, 9)), m or 12),
    "series": lambda a, m, threads: series_suite(tuple(a or (2, 3, 4, 5)), m or 200),
    "widths": lambda a, m, threads: width_histograms(_grid(a, m, {2: 9, 3: 7})) + width_ratios(tuple(a or (2, 3))),
    "asymptotics": lambda a, m, threads: asymptotics(tuple(a or (2, 3)), m or 10**4),
    "lego": lambda a, m, threads: lego_suite(_grid(a, m, {2: 6, 3: 5})),
}


def _at_least(a_values, lo):
    return tuple(x for x in (a_values or ()) if x >= lo)


def _grid(a_values, m, default):
    if not a_values:
        return dict(default)
    return {a: m or default.get(a, 4) for a in a_values}


# names used by existing command lines
ALIASES = {"theorem1": "counts", "cor": "right"}


def run_suite(name, a_values=None, m=None, threads=1):
    name = ALIASES.get(name, name)
    if name == "all":
        # the Stirling comparison is only meaningful at its own large m
        return [c for n in SUITES for c in SUITES[n](a_values, None if n == "asymptotics" else m, threads)]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](a_values, m, threads)
