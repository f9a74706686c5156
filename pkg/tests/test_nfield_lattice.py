"""Tests for parallelepiped point enumeration."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from src.errors import DegenerateCone, DimensionMismatch
from src.nfield.lattice import parallelepiped_points
from src.nfield.matrix import IntegerMatrix, rational_inverse


def brute_force_count(generators):
    """Count integer points with all generator coordinates in [0, 1) by box scan."""
    n = len(generators)
    cols = [[Fraction(v) for v in g] for g in generators]
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    inv = rational_inverse(rows)
    bound = [sum(abs(g[i]) for g in generators) for i in range(n)]
    count = 0
    for p in itertools.product(*(range(-b, b + 1) for b in bound)):
        mu = [sum((inv[i][j] * p[j] for j in range(n)), Fraction(0)) for i in range(n)]
        if all(0 <= m < 1 for m in mu):
            count += 1
    return count


class TestParallelepipedPoints:
    """Test residual point enumeration."""

    def test_unimodular(self):
        """Test unimodular generators give only the origin."""
        points = parallelepiped_points([(1, 0, 0), (1, 1, 0)], (0, 3, 1), IntegerMatrix.identity(3))
        assert points == [(0, 0, 0)]

    def test_plane_example(self):
        """Test alpha = (2,0), line (0,1) in Z^2."""
        points = parallelepiped_points([(2, 0)], (0, 1), IntegerMatrix.identity(2))
        assert sorted(points) == [(0, 0), (1, 0)]

    def test_sublattice(self):
        """Test determinant is measured in the lattice, not the ambient space."""
        basis = IntegerMatrix.from_rows([[2, 0], [0, 2]])
        points = parallelepiped_points([(4, 0)], (0, 2), basis)
        assert sorted(points) == [(0, 0), (2, 0)]

    def test_random_counts(self):
        """Test counts equal |det| and agree with a box scan."""
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 50:
            gens = rng.integers(-3, 4, size=(3, 3)).tolist()
            m = IntegerMatrix.from_columns(gens)
            d = abs(m.det())
            if d == 0 or d > 20:
                continue
            points = parallelepiped_points(gens[:2], gens[2], IntegerMatrix.identity(3))
            assert len(points) == d
            assert len(set(points)) == d
            if checked < 10:
                assert brute_force_count(gens) == d
            checked += 1

    def test_points_in_half_open_box(self):
        """Test every point has generator coordinates in [0, 1)."""
        gens = [(3, 1, 0), (0, 2, 1), (1, 0, 2)]
        points = parallelepiped_points(gens[:2], gens[2], IntegerMatrix.identity(3))
        rows = [[Fraction(gens[j][i]) for j in range(3)] for i in range(3)]
        inv = rational_inverse(rows)
        for p in points:
            mu = [sum((inv[i][j] * p[j] for j in range(3)), Fraction(0)) for i in range(3)]
            assert all(0 <= m < 1 for m in mu)

    def test_degenerate(self):
        """Test error on dependent generators."""
        with pytest.raises(DegenerateCone):
            parallelepiped_points([(1, 2)], (2, 4), IntegerMatrix.identity(2))

    def test_wrong_count(self):
        """Test error on wrong number of generators."""
        with pytest.raises(DimensionMismatch):
            parallelepiped_points([(1, 0, 0)], (0, 0, 1), IntegerMatrix.identity(3))

    def test_vector_outside_lattice(self):
        """Test error when a generator is not in the lattice."""
        basis = IntegerMatrix.from_rows([[2, 0], [0, 2]])
        with pytest.raises(ValueError, match="does not lie in the lattice"):
            parallelepiped_points([(1, 0)], (0, 2), basis)
