"""
Exact linear algebra over the rationals (or any exact field whose elements
support + - * / and a zero test).
"""
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from .scalars import is_zero

Matrix = List[List[Any]]


def row_echelon(m: Matrix, t: Optional[List[Any]] = None) -> List[int]:
    """
    In-place forward elimination with row swaps.

    Args:
        m: Matrix rows, modified in place
        t: Optional right-hand side, permuted and reduced alongside m

    Returns:
        Indices of the free (pivotless) columns
    """
    free_vars: List[int] = []
    n_rows = len(m)
    if n_rows == 0:
        return free_vars
    n_cols = len(m[0])
    piv_r = 0
    for piv_c in range(n_cols):
        i_row = next((r for r in range(piv_r, n_rows) if not is_zero(m[r][piv_c])), None)
        if i_row is None:
            free_vars.append(piv_c)
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
            if t is not None:
                t[piv_r], t[i_row] = t[i_row], t[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if is_zero(fr):
                continue
            frp = fr / fp
            for c in range(piv_c, n_cols):
                m[r][c] = m[r][c] - m[piv_r][c] * frp
            if t is not None:
                t[r] = t[r] - t[piv_r] * frp
        piv_r += 1
        if piv_r == n_rows:
            free_vars.extend(range(piv_c + 1, n_cols))
            break
    return free_vars


def back_substitution(m: Matrix, t: List[Any], free_vars: Sequence[int], zero=Fraction(0)) -> Optional[List[Any]]:
    """
    Solve an echelon system, free variables set to zero.

    Returns:
        A solution, or None if the system is inconsistent
    """
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    rank = n_cols - len(free_vars)
    for r in range(rank, n_rows):
        if not is_zero(t[r]):
            return None
    free = set(free_vars)
    piv_cols = [c for c in range(n_cols) if c not in free]
    sol: List[Any] = [zero] * n_cols
    for r in range(len(piv_cols) - 1, -1, -1):
        piv_c = piv_cols[r]
        s = -t[r]
        for c in range(piv_c + 1, n_cols):
            s = s + m[r][c] * sol[c]
        sol[piv_c] = -s / m[r][piv_c]
    return sol


def solve_exact(matrix: Sequence[Sequence[Any]], rhs: Sequence[Any], zero=Fraction(0)) -> Tuple[Optional[List[Any]], int]:
    """
    Solve matrix @ x = rhs exactly.

    Returns:
        (solution or None when inconsistent, nullity)
    """
    m = [list(row) for row in matrix]
    t = list(rhs)
    free_vars = row_echelon(m, t)
    if not m:
        return [], 0
    return back_substitution(m, t, free_vars, zero), len(free_vars)


def rank(matrix: Sequence[Sequence[Any]]) -> int:
    m = [list(row) for row in matrix]
    if not m:
        return 0
    return len(m[0]) - len(row_echelon(m))


def is_psd_exact(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """
    Positive semidefiniteness of a symmetric rational matrix by symmetric
    elimination. A zero pivot is only allowed on an all-zero row.
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    remaining = list(range(len(a)))
    while remaining:
        piv = next((i for i in remaining if a[i][i] != 0), None)
        if piv is None:
            return all(a[i][j] == 0 for i in remaining for j in remaining)
        p = a[piv][piv]
        if p < 0:
            return False
        remaining.remove(piv)
        for i in remaining:
            if a[i][piv] == 0:
                continue
            f = a[i][piv] / p
            for j in remaining:
                a[i][j] -= f * a[piv][j]
        for i in remaining:
            if a[i][i] < 0:
                return False
            if a[i][i] == 0 and any(a[i][j] != 0 for j in remaining):
                # A zero diagonal with a nonzero row can never be repaired
                return False
    return True


def min_eigenvalue(matrix: Sequence[Sequence[Fraction]]) -> float:
    """Smallest eigenvalue in floating point, for reports."""
    if not matrix:
        return 0.0
    arr = np.array([[float(x) for x in row] for row in matrix], dtype=float)
    return float(np.linalg.eigvalsh((arr + arr.T) / 2).min())


def invert_exact(matrix: Sequence[Sequence[Any]], one, zero) -> List[List[Any]]:
    """
    Gauss-Jordan inverse over an exact field.

    Raises:
        SingularityError: if the matrix is singular
    """
    from ..exceptions import SingularityError

    n = len(matrix)
    a = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(a[r][col])), None)
        if piv is None:
            raise SingularityError(f"matrix is singular at column {col}")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r == col or is_zero(a[r][col]):
                continue
            f = a[r][col]
            a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]
