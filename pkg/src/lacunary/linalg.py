"""Exact Gaussian elimination over Q on Fraction matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a private copy; returns (matrix, pivot columns)."""
    a = [list(map(Fraction, r)) for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][col]
        row = [v * inv for v in a[r]]
        a[r] = row
        nz = [j for j in range(col, ncols) if row[j] != 0]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                factor = a[i][col]
                target = a[i]
                for j in nz:
                    target[j] -= factor * row[j]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a, pivots


def kernel_vector(columns: Sequence[Sequence[Fraction]]) -> list[Fraction] | None:
    """A nonzero v with sum_j v_j * columns[j] = 0, or None if the columns are independent.

    ``columns`` are given as lists of equal length (one per unknown).
    """
    n = len(columns)
    if n == 0:
        return None
    height = len(columns[0])
    matrix = [[columns[j][i] for j in range(n)] for i in range(height)]
    red, pivots = rref(matrix)
    free = [j for j in range(n) if j not in set(pivots)]
    if not free:
        return None
    f = free[0]
    v = [Fraction(0)] * n
    v[f] = Fraction(1)
    for row, pc in zip(red, pivots):
        v[pc] = -row[f]
    return v


def solve(columns: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Some x with sum_j x_j * columns[j] = rhs (free variables set to 0), or None."""
    n = len(columns)
    height = len(rhs)
    matrix = [[columns[j][i] for j in range(n)] + [Fraction(rhs[i])] for i in range(height)]
    red, pivots = rref(matrix)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return x
