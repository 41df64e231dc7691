"""Exact linear algebra over Q: just rank and inverse, by Gaussian elimination."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list[Fraction]]


def _copy(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rank(rows: Sequence[Sequence]) -> int:
    m = _copy(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][col]
        for i in range(r + 1, len(m)):
            f = m[i][col]
            if f:
                f /= pv
                row_r = m[r]
                m[i] = [a - f * b for a, b in zip(m[i], row_r)]
        r += 1
        if r == len(m):
            break
    return r


def inverse(rows: Sequence[Sequence]) -> Optional[Matrix]:
    """Inverse of a square matrix, or None when it is singular."""
    n = len(rows)
    m = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(_copy(rows))]
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col]), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [row[n:] for row in m]
