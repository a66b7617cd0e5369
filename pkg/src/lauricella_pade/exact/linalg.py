"""Exact linear algebra: fraction-free determinants and rational nullspaces."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence, TypeVar

from .poly import Poly

R = TypeVar("R")


def bareiss_det(
    matrix: Sequence[Sequence[R]],
    exact_div: Callable[[R, R], R],
    zero: R,
    one: R,
    is_zero: Callable[[R], bool],
) -> R:
    """Fraction-free Bareiss elimination over an integral domain.

    Every division performed is exact by Sylvester's identity; a non-exact
    division raises inside ``exact_div``.
    """
    n = len(matrix)
    if n == 0:
        return one
    M = [list(row) for row in matrix]
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero(M[k][k]):
            swap = next((i for i in range(k + 1, n) if not is_zero(M[i][k])), None)
            if swap is None:
                return zero
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_div(M[i][j] * pivot - M[i][k] * M[k][j], prev)
            M[i][k] = zero
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def det_poly(matrix: Sequence[Sequence[Poly]]) -> Poly:
    return bareiss_det(
        matrix,
        exact_div=lambda a, b: a.exact_div(b),
        zero=Poly(),
        one=Poly([1]),
        is_zero=lambda p: p.is_zero(),
    )


def det_rational(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    def div(a: Fraction, b: Fraction) -> Fraction:
        return a / b

    return bareiss_det(
        [[Fraction(x) for x in row] for row in matrix],
        exact_div=div,
        zero=Fraction(0),
        one=Fraction(1),
        is_zero=lambda x: x == 0,
    )


def nullspace(matrix: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel of ``matrix`` by reduced row echelon form."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis
