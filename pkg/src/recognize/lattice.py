"""LLL reduction of integer lattice bases.

Reduction runs in exact arithmetic through sympy's DomainMatrix over ZZ;
the helpers here wrap it in a row-basis type and expose the Gram-Schmidt
data the reduction conditions are stated on.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from src.errors import RankDeficient
from src.nfield.matrix import IntegerMatrix

logger = logging.getLogger(__name__)

DEFAULT_DELTA = Fraction(99, 100)


@dataclass(frozen=True)
class LatticeBasis:
    """Lattice spanned by the rows of an integer matrix.

    Example:
        b = LatticeBasis.from_rows([[1, 10**6], [0, 10**6]])
        lll(b).rows          # contains (1, 0) up to sign
    """

    matrix: IntegerMatrix

    def __post_init__(self) -> None:
        r, c = self.matrix.shape
        if r == 0:
            raise RankDeficient("lattice basis must have at least one row")
        if r > c:
            raise RankDeficient(f"{r} rows cannot be independent in dimension {c}")
        if self.matrix.rank() < r:
            raise RankDeficient(f"lattice basis rows are linearly dependent (rank < {r})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "LatticeBasis":
        return cls(IntegerMatrix.from_rows(rows))

    @property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return self.matrix.rows

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def gram_schmidt(self) -> Tuple[List[List[Fraction]], List[Fraction]]:
        return gram_schmidt(self.rows)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def gram_schmidt(rows: Sequence[Sequence[int]]) -> Tuple[List[List[Fraction]], List[Fraction]]:
    """Exact Gram-Schmidt coefficients mu[i][j] and squared norms |b*_i|^2."""
    ortho: List[List[Fraction]] = []
    norms: List[Fraction] = []
    mu = [[Fraction(0)] * len(rows) for _ in rows]
    for i, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for j in range(i):
            mu[i][j] = _dot(row, ortho[j]) / norms[j]
            v = [a - mu[i][j] * b for a, b in zip(v, ortho[j])]
        ortho.append(v)
        norms.append(_dot(v, v))
    return mu, norms


def is_lll_reduced(basis: LatticeBasis, delta: Fraction = DEFAULT_DELTA) -> bool:
    """Check size reduction |mu_ij| <= 1/2 and the Lovasz condition."""
    mu, norms = basis.gram_schmidt()
    n = basis.dimension
    for i in range(n):
        if any(abs(mu[i][j]) > Fraction(1, 2) for j in range(i)):
            return False
    for k in range(1, n):
        if norms[k] < (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            return False
    return True


def lll(basis: LatticeBasis, delta: Fraction = DEFAULT_DELTA) -> LatticeBasis:
    """LLL-reduce a lattice basis.

    Args:
        basis: Full-rank row basis
        delta: Lovasz parameter in (1/4, 1)

    Returns:
        Reduced basis of the same lattice

    Raises:
        ValueError: If delta is out of range
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError(f"delta must lie in (1/4, 1), got {delta}")

    dm = DomainMatrix([[ZZ(v) for v in row] for row in basis.rows], basis.matrix.shape, ZZ)
    reduced = dm.lll(delta=QQ(delta.numerator, delta.denominator))
    rows = [[int(v) for v in row] for row in reduced.to_list()]
    logger.debug(f"LLL reduced a {basis.matrix.shape[0]}x{basis.matrix.shape[1]} basis")
    return LatticeBasis.from_rows(rows)
