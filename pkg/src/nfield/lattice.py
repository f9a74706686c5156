"""Lattice points of half-open parallelepipeds (cone decomposition residues)."""

import itertools
import logging
import math
from fractions import Fraction
from typing import List, Sequence, Tuple

from src.errors import DegenerateCone, DimensionMismatch
from .matrix import IntegerMatrix, hnf, rational_inverse

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


def _to_lattice_coordinates(
    vectors: Sequence[Sequence[int]],
    basis_inverse: Sequence[Sequence[Fraction]]
) -> List[List[int]]:
    coords = []
    for v in vectors:
        c = [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in basis_inverse]
        if any(x.denominator != 1 for x in c):
            raise ValueError(f"vector {list(v)} does not lie in the lattice")
        coords.append([int(x) for x in c])
    return coords


def parallelepiped_points(
    alphas: Sequence[Sequence[int]],
    line_gen: Sequence[int],
    lattice_basis: IntegerMatrix
) -> List[Vector]:
    """Lattice points in the half-open parallelepiped spanned by the cone generators.

    The points are coset representatives of L modulo the sublattice spanned
    by alphas and line_gen, each written with all coordinates (relative to
    alphas and line_gen) in [0, 1). Their number is |det(alphas, line_gen)|
    measured in the lattice L.

    Args:
        alphas: n-1 lattice vectors in ambient coordinates
        line_gen: Generator of the line contained in the cone
        lattice_basis: n x n matrix whose columns are a basis of L

    Returns:
        List of points in ambient coordinates, the origin first

    Raises:
        DimensionMismatch: On inconsistent sizes
        DegenerateCone: If the generators are linearly dependent
    """
    n = lattice_basis.shape[0]
    if lattice_basis.shape != (n, n):
        raise DimensionMismatch(f"lattice basis must be square, got {lattice_basis.shape}")
    if len(alphas) != n - 1:
        raise DimensionMismatch(f"need {n - 1} cone generators, got {len(alphas)}")
    generators = [list(a) for a in alphas] + [list(line_gen)]
    if any(len(g) != n for g in generators):
        raise DimensionMismatch(f"generators must have length {n}")

    basis_rows = [[Fraction(v) for v in row] for row in lattice_basis.rows]
    basis_inverse = rational_inverse(basis_rows)
    coords = _to_lattice_coordinates(generators, basis_inverse)

    m = IntegerMatrix.from_columns(coords)
    volume = abs(m.det())
    if volume == 0:
        raise DegenerateCone("cone generators are linearly dependent")

    # Z^n / M Z^n has the box prod [0, h_ii) as coset representatives
    h = hnf(m)
    m_inverse = rational_inverse([[Fraction(v) for v in row] for row in m.rows])
    points: List[Vector] = []
    for rep in itertools.product(*(range(h[i, i]) for i in range(n))):
        mu = [sum((m_inverse[i][j] * rep[j] for j in range(n)), Fraction(0)) for i in range(n)]
        fractional = [x - math.floor(x) for x in mu]
        local = [sum((m[i, j] * fractional[j] for j in range(n)), Fraction(0)) for i in range(n)]
        ambient = tuple(
            int(sum((lattice_basis[i, j] * local[j] for j in range(n)), Fraction(0)))
            for i in range(n)
        )
        points.append(ambient)

    points.sort(key=lambda p: (any(p), p))
    logger.debug(f"Parallelepiped enumeration: {len(points)} points (volume {volume})")
    return points
