"""Exact linear algebra over the rationals.

Everything returns Fractions; pivoting is deterministic (first nonzero), so
kernels and reduced forms are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


class Matrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        self.data = [[Fraction(v) for v in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, r: int, c: int) -> "Matrix":
        return cls([[Fraction(0)] * c for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.data == other.data

    def row(self, i: int) -> list[Fraction]:
        return list(self.data[i])

    def col(self, j: int) -> list[Fraction]:
        return [self.data[i][j] for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            return Matrix(
                [
                    [
                        sum((self.data[i][k] * other.data[k][j] for k in range(self.cols)), Fraction(0))
                        for j in range(other.cols)
                    ]
                    for i in range(self.rows)
                ]
            )
        c = Fraction(other)
        return Matrix([[v * c for v in row] for row in self.data])

    __rmul__ = __mul__

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [
            sum((self.data[i][j] * Fraction(vec[j]) for j in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        ]

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = [row[:] for row in self.data]
        n = self.rows
        det = Fraction(1)
        for j in range(n):
            piv = next((i for i in range(j, n) if a[i][j]), None)
            if piv is None:
                return Fraction(0)
            if piv != j:
                a[j], a[piv] = a[piv], a[j]
                det = -det
            det *= a[j][j]
            inv = 1 / a[j][j]
            for i in range(j + 1, n):
                if a[i][j]:
                    f = a[i][j] * inv
                    for k in range(j, n):
                        a[i][k] -= f * a[j][k]
        return det

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = [self.data[i][:] + Matrix.identity(n).data[i] for i in range(n)]
        r, piv_cols = _rref_inplace(a)
        if r < n:
            raise ValueError("matrix is singular")
        return Matrix([row[n:] for row in a])

    def adjugate(self) -> "Matrix":
        """Classical adjugate; exact for any square size via cofactors."""
        if self.rows != self.cols:
            raise ValueError("adjugate of a non-square matrix")
        n = self.rows
        if n == 1:
            return Matrix([[Fraction(1)]])
        out = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [
                    [self.data[r][c] for c in range(n) if c != j]
                    for r in range(n)
                    if r != i
                ]
                out[j][i] = Fraction(-1) ** (i + j) * Matrix(minor).det()
        return Matrix(out)

    def __repr__(self):
        return f"Matrix({self.data!r})"


def _rref_inplace(a: list[list[Fraction]]) -> tuple[int, list[int]]:
    rows = len(a)
    cols = len(a[0]) if a else 0
    r = 0
    piv_cols = []
    for j in range(cols):
        piv = next((i for i in range(r, rows) if a[i][j]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][j]
        a[r] = [v * inv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][j]:
                f = a[i][j]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        piv_cols.append(j)
        r += 1
        if r == rows:
            break
    return r, piv_cols


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    a = [row[:] for row in m.data]
    _, piv = _rref_inplace(a)
    return Matrix(a), piv


def rank(m: Matrix) -> int:
    a = [row[:] for row in m.data]
    r, _ = _rref_inplace(a)
    return r


def nullspace(m: Matrix) -> list[list[Fraction]]:
    """Exact kernel basis; [] means the kernel is trivial.

    Basis vectors are in the standard free-variable form from the RREF, so the
    output is deterministic and each vector has a 1 in its free coordinate.
    """
    if m.rows == 0:
        return [[Fraction(int(i == j)) for j in range(m.cols)] for i in range(m.cols)]
    a = [row[:] for row in m.data]
    _, piv = _rref_inplace(a)
    pivset = set(piv)
    free = [j for j in range(m.cols) if j not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r_i, p in enumerate(piv):
            v[p] = -a[r_i][f]
        basis.append(v)
    return basis


def solve(m: Matrix, rhs: Sequence) -> Optional[list[Fraction]]:
    """One exact solution of m*x = rhs, or None if inconsistent."""
    aug = [m.data[i][:] + [Fraction(rhs[i])] for i in range(m.rows)]
    _, piv = _rref_inplace(aug)
    for row in aug:
        if all(v == 0 for v in row[:-1]) and row[-1]:
            return None
    x = [Fraction(0)] * m.cols
    for r_i, p in enumerate(piv):
        if p < m.cols:
            x[p] = aug[r_i][-1]
        elif aug[r_i][-1]:
            return None
    return x
