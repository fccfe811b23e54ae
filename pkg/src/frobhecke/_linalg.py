"""Exact linear algebra over Q, backed by sympy's sparse DomainMatrix.

Matrices are passed around as lists of rows of ``Fraction``; sparse
systems as lists of ``{column: Fraction}`` dicts.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = list[list[Fraction]]


def _to_qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _dense(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> DomainMatrix:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    data = {}
    for i, row in enumerate(rows):
        r = {j: _to_qq(Fraction(v)) for j, v in enumerate(row) if v}
        if r:
            data[i] = r
    return DomainMatrix(data, (nrows, ncols), QQ)


def _sparse(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> DomainMatrix:
    data = {}
    for i, row in enumerate(rows):
        r = {j: _to_qq(v) for j, v in row.items() if v}
        if r:
            data[i] = r
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _back(M: DomainMatrix) -> Matrix:
    return [[_from_qq(x) for x in row] for row in M.to_list()]


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return _dense(rows).rank()


def sparse_rank(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return _sparse(rows, ncols).rank()


def inverse(rows: Sequence[Sequence[Fraction]]) -> Matrix | None:
    """Inverse of a square matrix, or None when singular."""
    M = _dense(rows)
    if M.rank() < len(rows):
        return None
    return _back(M.inv())


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Some solution of ``rows @ x = rhs``, or None."""
    ncols = len(rows[0])
    cols = [{j: v for j, v in enumerate(r) if v} for r in rows]
    return sparse_solve(cols, ncols, dict(enumerate(rhs)))


def sparse_solve(rows: Sequence[Mapping[int, Fraction]], ncols: int,
                 rhs: Mapping[int, Fraction]) -> list[Fraction] | None:
    """Solve a sparse system ``rows @ x = rhs`` (rhs indexed by row)."""
    aug = [dict(r) for r in rows]
    for i, v in rhs.items():
        if v:
            aug[i][ncols] = Fraction(v)
    R, pivots = _sparse(aug, ncols + 1).rref()
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    Rl = R.to_sdm()
    for r, c in enumerate(pivots):
        row = Rl.get(r, {})
        if ncols in row:
            x[c] = _from_qq(row[ncols])
    return x


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[sum((A[i][t] * B[t][j] for t in range(k)), Fraction(0)) for j in range(m)]
            for i in range(n)]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
