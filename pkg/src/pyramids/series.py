"""Exact counting series for pyramids and width statistics.

Coefficient tables are plain lists of Python ints indexed from ``m = 1``
(``coeffs[0]`` is ``A_1``).  Asymptotic comparisons are done on a log scale.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ._validation import BudgetExceeded, check_piece_length, check_positive


@dataclass
class SeriesTable:
    a: int
    name: str
    coeffs: list  # coefficient of t^m at index m - 1

    @property
    def order(self):
        return len(self.coeffs)

    def __getitem__(self, m):
        if m < 1:
            raise IndexError("series coefficients start at m = 1")
        return self.coeffs[m - 1]

    def to_bfile(self):
        return "".join(f"{m} {c}\n" for m, c in enumerate(self.coeffs, start=1))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", self.name])
        for m, c in enumerate(self.coeffs, start=1):
            w.writerow([m, c])
        return buf.getvalue()

    def to_json(self):
        return {"schema_version": 1, "a": self.a, "series": self.name,
                "coefficients": [str(c) for c in self.coeffs]}


@dataclass
class BivariateTable:
    """``rows[m - 1][n] = B_{m,n}``, the number of pyramids of size m and left width n."""

    a: int
    rows: list = field(default_factory=list)

    def __getitem__(self, key):
        m, n = key
        row = self.rows[m - 1]
        return row[n] if 0 <= n < len(row) else 0

    @property
    def order(self):
        return len(self.rows)

    def row_sums(self):
        return [sum(r) for r in self.rows]

    def first_moments(self):
        return [sum(n * c for n, c in enumerate(r)) for r in self.rows]

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "n", "B_mn"])
        for m, row in enumerate(self.rows, start=1):
            for n, c in enumerate(row):
                w.writerow([m, n, c])
        return buf.getvalue()


# closed forms

def count_B(a, m):
    """Number of pyramids of size ``m``: ``C(am - 1, m - 1)``."""
    a = check_piece_length(a)
    m = check_positive(m, "m")
    return math.comb(a * m - 1, m - 1)


def count_A(a, m):
    """Number of right 0-pyramids of size ``m`` (Fuss-Catalan)."""
    a = check_piece_length(a)
    m = check_positive(m, "m")
    return math.comb(a * m, m) // ((a - 1) * m + 1)


# series arithmetic

def convolve(x, y, order):
    """Product of two series given from ``t^1`` on, truncated at ``t^order``."""
    out = [0] * order
    for i, xi in enumerate(x[:order]):
        if xi:
            for j, yj in enumerate(y[:order - i - 1]):
                out[i + j + 1] += xi * yj
    return out


def series_A_recursive(a, M):
    """Coefficients ``A_1..A_M`` from ``A_m = [t^(m-1)] (1 + A(t))^a``.

    The powers ``(1 + A)^k`` for ``k = 1..a`` are extended one coefficient at
    a time, so each ``A_m`` only uses ``A_1..A_(m-1)``.
    """
    a = check_piece_length(a)
    M = check_positive(M, "M")
    g = [1]  # coefficients of 1 + A from t^0
    powers = [[] for _ in range(a + 1)]  # powers[k] = (1 + A)^k from t^0
    A = []
    for m in range(1, M + 1):
        n = m - 1
        powers[1].append(g[n])
        for k in range(2, a + 1):
            pk, prev = powers[k], powers[k - 1]
            pk.append(sum(prev[i] * g[n - i] for i in range(n + 1)))
        A.append(powers[a][n])
        g.append(A[-1])
    return SeriesTable(a, "A", A)


def fixed_point_residual(A):
    """Coefficients of ``A(t) - t (1 + A(t))^a`` through the order of ``A``.

    The power is formed by plain repeated multiplication, independently of
    :func:`series_A_recursive`.
    """
    a, M = A.a, A.order
    one_plus = [1] + list(A.coeffs)  # from t^0
    power = [1] + [0] * M
    for _ in range(a):
        power = [sum(power[i] * one_plus[n - i] for i in range(n + 1)) for n in range(M + 1)]
    # t * power has coefficient power[m - 1] at t^m
    return [A.coeffs[m - 1] - power[m - 1] for m in range(1, M + 1)]


def series_B_from_A(A):
    """``B = A / (1 - (a - 1) A)`` via ``B = A + (a - 1) A B``."""
    a = A.a
    c = A.coeffs
    B = []
    for n in range(len(c)):
        B.append(c[n] + (a - 1) * sum(c[k] * B[n - 1 - k] for k in range(n)))
    return SeriesTable(a, "B", B)


def _compositions(m):
    for cuts in product((0, 1), repeat=m - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield parts


def sum_over_compositions_B(a, m, explicit_limit=18):
    """``sum_r (a-1)^(r-1) sum_{m_1+...+m_r = m} A_{m_1} ... A_{m_r}``.

    For ``m <= explicit_limit`` every composition is visited; above that the
    terms are grouped by ``r`` and summed as ``[t^m] A(t)^r``.
    """
    a = check_piece_length(a)
    m = check_positive(m, "m")
    A = [count_A(a, k) for k in range(1, m + 1)]
    if m <= explicit_limit:
        total = 0
        for parts in _compositions(m):
            term = (a - 1) ** (len(parts) - 1)
            for p in parts:
                term *= A[p - 1]
            total += term
        return total
    if explicit_limit < 0:
        raise BudgetExceeded("explicit composition sum disabled")
    total = 0
    power = list(A)  # A^r, from t^1
    for r in range(1, m + 1):
        total += (a - 1) ** (r - 1) * power[m - 1]
        power = convolve(power, A, m)
    return total


def series_B_bivariate(a, M, A=None):
    """Triangular table of ``B_{m,n}`` from ``B(t,v) = A(t) (1 + (v + ... + v^(a-1)) B(t,v))``.

    Row ``m`` has ``(a - 1)(m - 1) + 1`` entries.
    """
    a = check_piece_length(a)
    M = check_positive(M, "M")
    Ac = (A or series_A_recursive(a, M)).coeffs
    rows = []
    shifted = []  # (v + ... + v^(a-1)) * row, per earlier m
    for m in range(1, M + 1):
        length = (a - 1) * (m - 1) + 1
        row = [0] * length
        row[0] = Ac[m - 1]
        for k in range(1, m):
            ak = Ac[k - 1]
            for n, c in enumerate(shifted[m - k - 1]):
                if c:
                    row[n] += ak * c
        rows.append(row)
        # window sum: sh[n] = sum_{d=1}^{a-1} row[n - d]
        sh = [0] * (length + a - 1)
        run = 0
        for n in range(len(sh)):
            if n - 1 >= 0 and n - 1 < length:
                run += row[n - 1]
            if n - a >= 0 and n - a < length:
                run -= row[n - a]
            sh[n] = run
        shifted.append(sh)
    return BivariateTable(a, rows)


def series_C(a, M, B=None):
    """``C_m = (a(a-1)/2) sum_k B_k B_(m-k)``, the total left width over size-m pyramids."""
    a = check_piece_length(a)
    M = check_positive(M, "M")
    Bc = B.coeffs if B is not None else [count_B(a, m) for m in range(1, M + 1)]
    sq = convolve(Bc, Bc, M)
    f = a * (a - 1) // 2
    return SeriesTable(a, "C", [f * x for x in sq])


def count_C(a, m):
    """Single coefficient ``C_m`` from the closed-form ``B_k``."""
    a = check_piece_length(a)
    m = check_positive(m, "m")
    B = [count_B(a, k) for k in range(1, m)]
    return a * (a - 1) // 2 * sum(B[k - 1] * B[m - k - 1] for k in range(1, m))


def average_width_exact(a, m):
    """Average width over pyramids of size m: ``2 C_m / B_m + a``."""
    return Fraction(2 * count_C(a, m), count_B(a, m)) + a


def average_width_asymptote(a, m):
    a = check_piece_length(a)
    m = check_positive(m, "m")
    return math.sqrt(math.pi / 2 * a * (a - 1) * m)


@dataclass(frozen=True)
class SingularityData:
    t0: Fraction
    A_t0: Fraction
    c0_squared: Fraction

    @property
    def c0(self):
        return math.sqrt(self.c0_squared)

    @property
    def growth(self):
        return 1 / self.t0


def singularity_data(a):
    """Dominant singularity ``t0`` of A(t), the value ``A(t0)`` and the square-root amplitude ``c0``."""
    a = check_piece_length(a)
    t0 = Fraction((a - 1) ** (a - 1), a**a)
    return SingularityData(t0, Fraction(1, a - 1), Fraction(2 * a * (a - 1), (a - 1) ** 4))


def log_count_B(a, m):
    return math.log(count_B(a, m))


def stirling_asymptote_B(a, m):
    """Log of ``(2 pi a (a-1) m)^(-1/2) (a^a / (a-1)^(a-1))^m``."""
    a = check_piece_length(a)
    m = check_positive(m, "m")
    return -0.5 * math.log(2 * math.pi * a * (a - 1) * m) + m * (a * math.log(a) - (a - 1) * math.log(a - 1))


def count_Cm_asymptote(a, m):
    """Log of ``t0^(-m) / 4``."""
    a = check_piece_length(a)
    m = check_positive(m, "m")
    return -math.log(4) + m * (a * math.log(a) - (a - 1) * math.log(a - 1))


@dataclass(frozen=True)
class AsymptoticReport:
    m: int
    log_exact: float
    log_asymptote: float

    @property
    def ratio(self):
        return math.exp(self.log_exact - self.log_asymptote)


def asymptotic_report(a, ms, which="B"):
    rows = []
    for m in ms:
        if which == "B":
            rows.append(AsymptoticReport(m, log_count_B(a, m), stirling_asymptote_B(a, m)))
        elif which == "C":
            rows.append(AsymptoticReport(m, math.log(count_C(a, m)), count_Cm_asymptote(a, m)))
        else:
            raise ValueError(f"unknown sequence {which!r}")
    return rows


def width_ratio_table(a, M, step=1):
    """Rows ``(m, exact average width, asymptote, ratio)`` for ``m = 1, 1 + step, ..., M``."""
    B = [count_B(a, k) for k in range(1, M + 1)]
    ms = list(range(1, M + 1, step))
    if ms and ms[-1] != M:
        ms.append(M)
    f = a * (a - 1) // 2
    out = []
    for m in ms:
        C = f * sum(B[k - 1] * B[m - k - 1] for k in range(1, m))
        exact = Fraction(2 * C, B[m - 1]) + a
        asym = average_width_asymptote(a, m)
        out.append((m, exact, asym, float(exact) / asym))
    return out


def dumps_table(rows, header, fmt="csv"):
    if fmt == "json":
        return json.dumps({"schema_version": 1, "columns": header,
                           "rows": [[str(x) if isinstance(x, (int, Fraction)) and not isinstance(x, bool) else x
                                     for x in r] for r in rows]}, indent=1)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
