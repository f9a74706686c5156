"""Exact integer matrices and Hermite normal form.

HNF convention: the column lattice is spanned by an upper-triangular square
matrix with positive pivots, and every entry to the right of a pivot is
reduced into [0, pivot). This form is unique for a given lattice.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy
from sympy.matrices.normalforms import hermite_normal_form

from src.errors import DimensionMismatch, RankDeficient

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegerMatrix:
    """Exact integer matrix stored row-major.

    Example:
        m = IntegerMatrix.from_rows([[2, 1], [0, 1]])
        m.det()           # 2
        m.hnf() == m      # True, already in HNF
    """

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("all rows must have the same length")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntegerMatrix":
        if not columns:
            raise DimensionMismatch("at least one column required")
        n = len(columns[0])
        if any(len(c) != n for c in columns):
            raise DimensionMismatch("all columns must have the same length")
        return cls(tuple(tuple(c[i] for c in columns) for i in range(n)))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.shape[1])]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_columns(self.rows)

    def entries(self) -> List[int]:
        return [v for row in self.rows for v in row]

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.rows)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        r, c = self.shape
        if r != c:
            raise DimensionMismatch(f"determinant needs a square matrix, got {r}x{c}")
        if r == 0:
            return 1
        return int(self.to_sympy().det(method="bareiss"))

    def rank(self) -> int:
        return int(self.to_sympy().rank())

    def hnf(self) -> "IntegerMatrix":
        return hnf(self)

    def is_hnf(self) -> bool:
        """True if the matrix already satisfies the HNF convention."""
        r, c = self.shape
        if r != c:
            return False
        for j in range(c):
            pivot = self.rows[j][j]
            if pivot <= 0:
                return False
            if any(self.rows[i][j] != 0 for i in range(j + 1, r)):
                return False
            if any(not 0 <= self.rows[j][k] < pivot for k in range(j + 1, c)):
                return False
        return True

    def __str__(self) -> str:
        return "\n".join("[" + " ".join(str(v) for v in row) + "]" for row in self.rows)


def hnf(matrix: IntegerMatrix) -> IntegerMatrix:
    """Hermite normal form of the lattice spanned by the columns of ``matrix``.

    The input may have more columns than rows; its columns must span a
    lattice of full rank (rank equal to the number of rows).

    Args:
        matrix: r x c integer matrix with rank r

    Returns:
        r x r upper-triangular HNF basis of the same column lattice

    Raises:
        RankDeficient: If the column lattice has rank below r
    """
    n, _ = matrix.shape
    result = hermite_normal_form(matrix.to_sympy())
    if result.shape != (n, n):
        raise RankDeficient(f"column lattice has rank {result.shape[1]}, below {n}")
    logger.debug(f"HNF computed for {matrix.shape[0]}x{matrix.shape[1]} matrix")
    return IntegerMatrix.from_rows(result.tolist())


def rational_inverse(rows: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Exact inverse of a square rational matrix.

    Raises:
        RankDeficient: If the matrix is singular
    """
    m = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in rows])
    if m.det() == 0:
        raise RankDeficient("matrix is singular")
    inv = m.inv()
    return [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(m.cols)] for i in range(m.rows)]


def rational_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    m = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in rows])
    d = m.det(method="bareiss")
    return Fraction(int(d.p), int(d.q))


def common_denominator(values: Sequence[Fraction]) -> int:
    """Least common multiple of the denominators."""
    d = 1
    for v in values:
        d = d * v.denominator // math.gcd(d, v.denominator)
    return d


def dual_lattice(rows: Sequence[Sequence[Fraction]], n: int) -> List[List[Fraction]]:
    """Basis of {x in Q^n : r.x in Z for every row r}.

    The rows must span Q^n. Returns the basis as a list of column vectors.
    """
    flat = [v for row in rows for v in row]
    e = common_denominator(flat)
    scaled = [[int(v * e) for v in row] for row in rows]
    h = hnf(IntegerMatrix.from_columns(scaled))
    # dual basis = e * (H^T)^(-1)
    ht = [[Fraction(h[j, i]) for j in range(n)] for i in range(n)]
    inv = rational_inverse(ht)
    return [[inv[i][j] * e for i in range(n)] for j in range(n)]
