"""Small exact linear solvers.

``bareiss_solve`` works on polynomial matrices without ever forming
fractions; ``rational_inverse`` is plain Gauss-Jordan over ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .qt_arith import Poly


class SingularMatrixError(ArithmeticError):
    pass


def bareiss_solve(
    matrix: Sequence[Sequence[Poly]], rhs: Sequence[Sequence[Poly]]
) -> tuple[Poly, list[list[Poly]]]:
    """Solve ``matrix @ X = rhs`` fraction-free.

    ``rhs`` is a list of rows (one column per right-hand side).  Returns
    ``(det, Y)`` with ``X = Y / det`` and every entry of ``Y`` a polynomial.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if len(rhs) != n:
        raise ValueError("rhs has the wrong number of rows")
    m = len(rhs[0]) if n else 0
    a = [list(matrix[i]) + list(rhs[i]) for i in range(n)]
    sign = 1
    prev = Poly.const(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if not a[r][k].is_zero()), None)
        if piv is None:
            raise SingularMatrixError("singular matrix")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n + m):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]).divexact(prev)
            row_i[k] = Poly.const(0)
        prev = akk
    det = a[n - 1][n - 1] * sign if n else Poly.const(1)
    y = [[Poly.const(0)] * m for _ in range(n)]
    for c in range(m):
        for i in range(n - 1, -1, -1):
            s = det * a[i][n + c]
            for j in range(i + 1, n):
                if not a[i][j].is_zero():
                    s = s - a[i][j] * y[j][c]
            y[i][c] = s.divexact(a[i][i])
    return det, y


def rational_inverse(matrix: Sequence[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]
