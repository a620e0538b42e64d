"""Exact rational linear algebra over lists of Fractions.

Everything in here is deliberately dependency-free: the Lie-algebra
calculator needs series stabilization decided exactly, so no floats are
allowed anywhere near these routines.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = list[Fraction]
Mat = list[list[Fraction]]


def vec(entries: Iterable) -> Vec:
    return [Fraction(e) for e in entries]


def zeros(n: int) -> Vec:
    return [Fraction(0)] * n


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def mat_vec(m: Mat, v: Sequence[Fraction]) -> Vec:
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in m]


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, k = len(a), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(len(b))), Fraction(0))
             for j in range(k)] for i in range(n)]


def mat_trace(m: Mat) -> Fraction:
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def row_echelon(rows: Iterable[Sequence[Fraction]]) -> Mat:
    """Reduced row echelon form with deterministic lowest-index pivoting.

    Returns only the nonzero rows, each scaled to a leading 1.  The input
    is copied; ties and orderings are fully deterministic so span bases
    are reproducible.
    """
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    piv_r = 0
    for piv_c in range(ncols):
        row = next((i for i in range(piv_r, len(m)) if m[i][piv_c] != 0), None)
        if row is None:
            continue
        m[piv_r], m[row] = m[row], m[piv_r]
        lead = m[piv_r][piv_c]
        m[piv_r] = [x / lead for x in m[piv_r]]
        for i in range(len(m)):
            if i != piv_r and m[i][piv_c] != 0:
                f = m[i][piv_c]
                m[i] = [a - f * b for a, b in zip(m[i], m[piv_r])]
        piv_r += 1
        if piv_r == len(m):
            break
    return [r for r in m[:piv_r] if not is_zero_vec(r)]


def rank(rows: Iterable[Sequence[Fraction]]) -> int:
    return len(row_echelon(rows))


def in_span(basis: Mat, v: Sequence[Fraction]) -> bool:
    """Exact membership test: does v lie in the row span of basis?"""
    if is_zero_vec(v):
        return True
    if not basis:
        return False
    return len(row_echelon(list(basis) + [list(v)])) == len(basis)


def span_contains(outer: Mat, inner: Mat) -> bool:
    return all(in_span(outer, v) for v in inner)


def det(m: Mat) -> Fraction:
    """Determinant by fraction-free-style Gaussian elimination (exact)."""
    a = [list(map(Fraction, r)) for r in m]
    n = len(a)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        row = next((i for i in range(c, n) if a[i][c] != 0), None)
        if row is None:
            return Fraction(0)
        if row != c:
            a[c], a[row] = a[row], a[c]
            sign = -sign
        out *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * out
