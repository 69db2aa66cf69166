"""Exact Gaussian elimination over Q or Q(i).

Entries may be ints, Fractions or GaussQ; anything closed under ``+ - * /``
with an exact zero test works.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def row_echelon(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(matrix, pivots)`` where ``matrix`` is a new list of lists and
    ``pivots`` lists the pivot column of each nonzero row, in order.
    """
    mat = [list(r) for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        lead = mat[r][c]
        if isinstance(lead, int):
            lead = Fraction(lead)
        mat[r] = [v / lead for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat, pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(row_echelon(rows, ncols)[1])


def solve(a: Sequence[Sequence], b: Sequence, zero=0):
    """One exact solution of ``a @ x = b``, or None when inconsistent.

    Free variables are set to ``zero``.
    """
    n = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    mat, pivots = row_echelon(aug, n + 1)
    if n in pivots:
        return None
    x = [zero] * n
    for row, c in zip(mat, pivots):
        x[c] = row[n]
    return x
