"""Exact dense linear algebra over arbitrary-precision integers and rationals.

Every entry is a Python ``int`` or a reduced ``fractions.Fraction``; no
floating point appears anywhere.  Matrices are immutable and hashable, so
they can be shared freely between concurrent workers.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch, SingularMatrixError

Scalar = int | Fraction
Vector = tuple[int, ...]


def as_exact(value) -> Scalar:
    """Coerce to an exact scalar; Fractions with denominator 1 become ints."""
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    try:
        return operator.index(value)
    except TypeError:
        raise TypeError(f"exact integer or Fraction required, got {value!r}") from None


def as_int(value) -> int:
    v = as_exact(value)
    if isinstance(v, Fraction):
        raise TypeError(f"integer required, got {value!r}")
    return v


def dot(u, v) -> Scalar:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot product of lengths {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(u, s) -> tuple:
    return tuple(s * a for a in u)


def vec_gcd(u) -> int:
    g = 0
    for a in u:
        g = gcd(g, abs(a))
    return g


class Matrix:
    """Immutable exact matrix with int or Fraction entries."""

    __slots__ = ("_rows", "_shape")

    def __init__(self, rows):
        normalized = tuple(tuple(as_exact(x) for x in row) for row in rows)
        if not normalized or not normalized[0]:
            raise DimensionMismatch("matrix must have at least one row and column")
        width = len(normalized[0])
        if any(len(row) != width for row in normalized):
            raise DimensionMismatch("ragged rows in matrix literal")
        self._rows = normalized
        self._shape = (len(normalized), width)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns) -> "Matrix":
        columns = [tuple(c) for c in columns]
        return cls(list(zip(*columns)))

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def n_rows(self) -> int:
        return self._shape[0]

    @property
    def n_cols(self) -> int:
        return self._shape[1]

    @property
    def rows(self) -> tuple[tuple[Scalar, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> tuple[tuple[Scalar, ...], ...]:
        return tuple(zip(*self._rows))

    def __getitem__(self, index):
        i, j = index
        return self._rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = ", ".join(repr(list(row)) for row in self._rows)
        return f"Matrix([{body}])"

    @property
    def is_square(self) -> bool:
        return self._shape[0] == self._shape[1]

    def is_integral(self) -> bool:
        """True iff every entry is an integer (denominator 1)."""
        return all(isinstance(x, int) for row in self._rows for x in row)

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._rows))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.n_cols != other.n_rows:
            raise DimensionMismatch(
                f"cannot multiply {self._shape} by {other._shape}"
            )
        cols = other.columns()
        return Matrix(
            [[dot(row, col) for col in cols] for row in self._rows]
        )

    def __mul__(self, scalar) -> "Matrix":
        s = as_exact(scalar)
        return Matrix([[s * x for x in row] for row in self._rows])

    __rmul__ = __mul__

    def __neg__(self) -> "Matrix":
        return self * -1

    def apply(self, vector) -> tuple:
        """Matrix-vector product, returning a tuple."""
        v = tuple(vector)
        if len(v) != self.n_cols:
            raise DimensionMismatch(
                f"matrix {self._shape} applied to vector of length {len(v)}"
            )
        return tuple(dot(row, v) for row in self._rows)

    def permute_columns(self, perm) -> "Matrix":
        """Column i of the result is column perm[i] of self."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.n_cols)):
            raise ValueError(f"not a permutation of 0..{self.n_cols - 1}: {perm}")
        return Matrix([tuple(row[p] for p in perm) for row in self._rows])

    def det(self) -> Scalar:
        """Exact determinant.

        Integer matrices use fraction-free (Bareiss) elimination, which keeps
        all intermediates integral; rational matrices are scaled row-wise to
        integers first.
        """
        if not self.is_square:
            raise DimensionMismatch(f"determinant of non-square {self._shape}")
        if self.is_integral():
            return _det_bareiss([list(row) for row in self._rows])
        scale = Fraction(1)
        int_rows = []
        for row in self._rows:
            denom = 1
            for x in row:
                if isinstance(x, Fraction):
                    denom = denom * x.denominator // gcd(denom, x.denominator)
            scale /= denom
            int_rows.append([int(x * denom) for x in row])
        return as_exact(scale * _det_bareiss(int_rows))

    def inv(self) -> "Matrix":
        """Exact inverse via Gauss-Jordan elimination over Fractions."""
        if not self.is_square:
            raise DimensionMismatch(f"inverse of non-square {self._shape}")
        n = self.n_rows
        work = [
            [Fraction(x) for x in row]
            + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i, row in enumerate(self._rows)
        ]
        for col in range(n):
            pivot_row = next(
                (r for r in range(col, n) if work[r][col] != 0), None
            )
            if pivot_row is None:
                raise SingularMatrixError()
            work[col], work[pivot_row] = work[pivot_row], work[col]
            pivot = work[col][col]
            work[col] = [x / pivot for x in work[col]]
            for r in range(n):
                if r != col and work[r][col] != 0:
                    factor = work[r][col]
                    work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
        return Matrix([row[n:] for row in work])

    def adjugate(self) -> "Matrix":
        """Integer adjugate of an integer matrix: adj(M) = det(M) * M^-1."""
        if not self.is_integral():
            raise TypeError("adjugate is defined here for integer matrices only")
        d = self.det()
        if d == 0:
            raise SingularMatrixError()
        adj = self.inv() * d
        if not adj.is_integral():
            raise AssertionError("adjugate of an integer matrix must be integral")
        return adj


def _det_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; mutates and consumes `rows`."""
    n = len(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Exact division: Bareiss guarantees divisibility by prev.
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1]


def det(matrix: Matrix) -> Scalar:
    return matrix.det()


def invert(matrix: Matrix) -> Matrix:
    return matrix.inv()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def is_integral(matrix: Matrix) -> bool:
    return matrix.is_integral()


def rank(rows) -> int:
    """Exact rank of a matrix given as an iterable of rows."""
    work = [[Fraction(as_exact(x)) for x in row] for row in rows]
    if not work:
        return 0
    n_cols = len(work[0])
    r = 0
    for col in range(n_cols):
        pivot_row = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pivot = work[r][col]
        for i in range(r + 1, len(work)):
            if work[i][col] != 0:
                factor = work[i][col] / pivot
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def solve_linear(a_rows, b) -> tuple[Fraction, ...] | None:
    """Solve A x = b exactly; None if inconsistent.

    Works for any shape.  When the system is underdetermined the free
    variables are set to zero, so callers that need uniqueness must pass a
    full-column-rank A.
    """
    rows = [
        [Fraction(as_exact(x)) for x in row] + [Fraction(as_exact(rhs))]
        for row, rhs in zip(a_rows, b, strict=True)
    ]
    if not rows:
        return ()
    n_vars = len(rows[0]) - 1
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(n_vars):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][col]
        rows[r] = [x / pivot for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][n_vars] != 0:
            return None
    solution = [Fraction(0)] * n_vars
    for row_idx, col in pivots:
        solution[col] = rows[row_idx][n_vars]
    return tuple(solution)
