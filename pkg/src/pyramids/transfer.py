"""Transfer matrices counting admissible compositions.

For ``b = a - 1`` the matrices act on the ``2b`` double indices ordered
``0P, 0N, 1P, 1N, ..., (a-2)P, (a-2)N``; index ``iR`` sits at position
``2 i + (0 if R == 'P' else 1)``.  All arithmetic is exact (ints and
``Fraction``); matrices are lists of row lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from ._validation import check_piece_length, check_positive


def kron(x, y):
    return [[xi * yj for xi in xrow for yj in yrow] for xrow in x for yrow in y]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_add(*ms):
    return [[sum(vals) for vals in zip(*rows)] for rows in zip(*ms)]


def mat_mul(x, y):
    cols = list(zip(*y))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in x]


def mat_vec(x, v):
    return [sum(a * b for a, b in zip(row, v)) for row in x]


def mat_pow(x, k):
    result = identity(len(x))
    base = x
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def index_labels(a):
    return [f"{i}{r}" for i in range(a - 1) for r in "PN"]


@dataclass(frozen=True)
class TransferMatrices:
    a: int
    E: list
    T: list
    U: list

    @property
    def b(self):
        return self.a - 1

    @property
    def A(self):
        return mat_add(self.E, self.T, self.U)

    def to_json(self):
        return {"schema_version": 1, "a": self.a, "index_order": index_labels(self.a),
                "E": self.E, "T": self.T, "U": self.U, "A": self.A}


def build_matrices(a):
    """``E = I_b (x) [[0,1],[1,0]]``, ``T = L (x) [[1,1],[1,1]]``, ``U = L^T (x) [[0,1],[0,0]]``.

    ``L`` is the ``b x b`` matrix with ones strictly below the diagonal.
    """
    a = check_piece_length(a, minimum=3)
    b = a - 1
    lower = [[int(i > j) for j in range(b)] for i in range(b)]
    upper = [list(r) for r in zip(*lower)]
    E = kron(identity(b), [[0, 1], [1, 0]])
    T = kron(lower, [[1, 1], [1, 1]])
    U = kron(upper, [[0, 1], [0, 0]])
    return TransferMatrices(a, E, T, U)


def compute_a_r(a, r):
    """``(1, 0, ..., 0) A^(r-1) (1, ..., 1)^T``."""
    r = check_positive(r, "r")
    A = build_matrices(a).A
    v = [1] * len(A)
    for _ in range(r - 1):
        v = mat_vec(A, v)
    return v[0]


def det(m):
    """Determinant by fraction-free (Bareiss) elimination."""
    m = [list(row) for row in m]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def interpolate(xs, ys):
    """Coefficients (lowest degree first) of the polynomial through the points."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j != i:
                basis = poly_mul(basis, [-xs[j], 1])
                denom *= xs[i] - xs[j]
        for k, c in enumerate(basis):
            coeffs[k] += ys[i] * c / denom
    return coeffs


def char_poly(matrix):
    """``det(lambda I - M)`` as integer coefficients, lowest degree first.

    Evaluated at ``n + 1`` integer points and interpolated exactly.
    """
    n = len(matrix)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        shifted = [[(x if i == j else 0) - matrix[i][j] for j in range(n)] for i in range(n)]
        ys.append(det(shifted))
    coeffs = interpolate(xs, ys)
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("non-integral characteristic polynomial")
    return [int(c) for c in coeffs]


def expected_char_poly(a):
    """``lambda^(b-1) (lambda - b) (lambda + 1)^b``, lowest degree first."""
    b = a - 1
    p = [0] * (b - 1) + [1]
    p = poly_mul(p, [-b, 1])
    for _ in range(b):
        p = poly_mul(p, [1, 1])
    return p


def verify_char_poly(a):
    return char_poly(build_matrices(a).A) == expected_char_poly(a)


@dataclass(frozen=True)
class SpectralWitness:
    a: int
    zeta: Fraction
    e: list
    f: list  # f[i - 1] is f_i

    def to_json(self):
        s = lambda v: [str(x) for x in v]  # noqa: E731
        return {"schema_version": 1, "a": self.a, "zeta": str(self.zeta),
                "e": s(self.e), "f": [s(v) for v in self.f]}


def spectral_witness(a):
    """Eigenvector ``e`` (first coordinate ``b``) and the kernel chain ``f_1..f_(b-1)``."""
    a = check_piece_length(a, minimum=3)
    b = a - 1
    zeta = 1 + Fraction(1, b)
    e = []
    for i in range(b):
        e += [b * zeta**i, (i + 1) * zeta**i]
    f = []
    for i in range(1, b):
        pos = 2 * (b - i) - 1  # 0-based position of the entry -i
        f.append([Fraction(0)] * pos + [Fraction(-i)] + [Fraction(1)] * (2 * b - pos - 1))
    return SpectralWitness(a, zeta, e, f)


def verify_spectral_witness(a):
    """Check ``A e = b e``, ``A f_1 = 0``, ``A f_i = f_1 + ... + f_(i-1)`` and the all-ones identity."""
    return all(spectral_checks(a).values())


def spectral_checks(a):
    A = build_matrices(a).A
    w = spectral_witness(a)
    b = a - 1
    n = 2 * b
    out = {"eigenvector": mat_vec(A, w.e) == [b * x for x in w.e],
           "e_first_coordinate": w.e[0] == b}
    chain = True
    for i, fi in enumerate(w.f, start=1):
        target = [sum(w.f[j][k] for j in range(i - 1)) for k in range(n)]
        chain &= mat_vec(A, fi) == target
    out["kernel_chain"] = chain
    combo = list(w.e)
    for i, fi in enumerate(w.f, start=1):
        coef = w.zeta ** (b - 1 - i)
        combo = [c - coef * x for c, x in zip(combo, fi)]
    out["ones_decomposition"] = [c / b for c in combo] == [1] * n
    return out


def a3_recursion_check(r_max=10):
    """Iterate ``v_r = A^(r-1) 1`` for a = 3 and check the component recursions."""
    A = build_matrices(3).A
    vs = [None, [1, 1, 1, 1]]
    for _ in range(r_max):
        vs.append(mat_vec(A, vs[-1]))
    ok = True
    for r in range(1, r_max):
        a_r, a2_r, b_r, b2_r = vs[r]
        a_n, a2_n, b_n, b2_n = vs[r + 1]
        ok &= b_n - a_n == a_r
        ok &= b2_n - a2_n == a2_r + b_r
        ok &= b2_n - b_n == b_r - b2_r
        ok &= a2_n == a_r
        ok &= b_r == b2_r
        ok &= a_n + a_r == 3 * 2 ** (r - 1)
        if r >= 2:
            ok &= b_r == a_r + a2_r
            ok &= b_r == 3 * 2 ** (r - 2)
        ok &= a_r == 2 ** (r - 1)
    return bool(ok)


def dump_json(a):
    m = build_matrices(a)
    return json.dumps({"schema_version": 1, "matrices": m.to_json(), "witness": spectral_witness(a).to_json(),
                       "char_poly": char_poly(m.A)}, indent=1)
