"""Exact polynomial and small linear-algebra helpers.

Polynomials are coefficient sequences in ascending order (index = power),
trailing zeros allowed. Every routine is polymorphic over the scalar type:
fractions.Fraction coefficients give exact results, floats give the usual
approximate ones. Nothing here imports numpy; numeric callers convert at
their own boundary.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence


def ptrim(f: Sequence) -> list:
    """Drop trailing zero coefficients (keep at least the constant term)."""
    out = list(f)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def padd(f: Sequence, g: Sequence) -> list:
    n = max(len(f), len(g))
    return [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)]


def psub(f: Sequence, g: Sequence) -> list:
    n = max(len(f), len(g))
    return [(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)]


def pscale(c, f: Sequence) -> list:
    return [c * a for a in f]


def pmul(f: Sequence, g: Sequence) -> list:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def ppow(f: Sequence, k: int) -> list:
    out = [1]
    for _ in range(k):
        out = pmul(out, f)
    return out


def pderiv(f: Sequence) -> list:
    if len(f) <= 1:
        return [0 * f[0]] if f else [0]
    return [i * f[i] for i in range(1, len(f))]


def peval(f: Sequence, x):
    """Horner evaluation; exact when both f and x are exact."""
    acc = 0 * x
    for a in reversed(list(f)):
        acc = acc * x + a
    return acc


def pfrom_roots(roots: Sequence, lead=1) -> list:
    """lead * prod (x - r) over the given roots."""
    out = [lead]
    for r in roots:
        out = pmul(out, [-r, 1])
    return out


def elementary_symmetric(values: Sequence) -> list:
    """All elementary symmetric functions [e_0, e_1, ..., e_n] of the values."""
    es = [1] + [0] * len(values)
    k = 0
    for v in values:
        k += 1
        for r in range(k, 0, -1):
            es[r] = es[r] + v * es[r - 1]
    return es


def solve_linear(A: Sequence[Sequence], b: Sequence) -> list:
    """Solve A x = b by Gaussian elimination with partial pivoting.

    Exact on Fraction input. Raises ValueError on a singular matrix.
    """
    n = len(A)
    M = [list(row) + [bv] for row, bv in zip(A, b)]
    for col in range(n):
        piv = None
        best = None
        for r in range(col, n):
            v = M[r][col]
            if v != 0:
                mag = abs(v)
                if piv is None or mag > best:
                    piv, best = r, mag
        if piv is None:
            raise ValueError("singular linear system")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        for r in range(col + 1, n):
            if M[r][col] == 0:
                continue
            factor = M[r][col] / pv
            for c in range(col, n + 1):
                M[r][c] = M[r][c] - factor * M[col][c]
    x = [0] * n
    for r in range(n - 1, -1, -1):
        acc = M[r][n]
        for c in range(r + 1, n):
            acc = acc - M[r][c] * x[c]
        x[r] = acc / M[r][r]
    return x


def mat_vec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def mat_transpose(A: Sequence[Sequence]) -> list:
    return [list(row) for row in zip(*A)]


def mat_inv(A: Sequence[Sequence]) -> list:
    """Inverse by solving against unit vectors; exact on Fraction input."""
    n = len(A)
    cols = []
    for j in range(n):
        e = [Fraction(0)] * n if isinstance(A[0][0], Fraction) else [0] * n
        e[j] = Fraction(1) if isinstance(A[0][0], Fraction) else 1
        cols.append(solve_linear(A, e))
    return [list(row) for row in zip(*cols)]


def mat_det(A: Sequence[Sequence]):
    """Determinant by fraction-free recursion (fine for the small sizes here)."""
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    total = 0
    for j in range(n):
        if A[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in A[1:]]
        sign = 1 if j % 2 == 0 else -1
        total += sign * A[0][j] * mat_det(minor)
    return total


def gcd_of_maximal_minors(rows: Sequence[Sequence[int]], dim: int) -> int:
    """gcd of the absolute values of all dim x dim minors of an integer matrix."""
    assert all(len(r) == dim for r in rows)
    g = 0
    for subset in combinations(range(len(rows)), dim):
        d = mat_det([list(rows[i]) for i in subset])
        g = gcd(g, abs(int(d)))
    return g
