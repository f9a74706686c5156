"""Tests for the center-strip sum and the truncated product."""

import mpmath
import numpy as np
import pytest

from src.errors import ConvergenceTooSlow, OutsideCenterStrip
from src.gammaeval.oracle import gr_product
from src.gammaeval.point import GammaPoint, GammaSettings
from src.gammaeval.series import center_decay, gr_center
from src.gammaeval.theta import theta
from src.mpnum.bigcomplex import digits_to_prec

PREC = digits_to_prec(40)
TOL = mpmath.mpf(10) ** -30


def rel_err(a, b) -> mpmath.mpf:
    with mpmath.workprec(PREC):
        return abs(a.value - b.value) / abs(b.value)


def center_point(rng, r: int, low: float = 0.2, high: float = 1.0, prec: int = PREC) -> GammaPoint:
    """Random point with Im(z) in the middle 90% of the center strip."""
    ims = rng.uniform(low, high, r + 1)
    taus = [complex(rng.uniform(-1, 1), t) for t in ims]
    z_im = rng.uniform(0.05, 0.95) * ims.sum()
    return GammaPoint.from_values(complex(rng.uniform(-1, 1), z_im), taus, prec)


class TestCenterAgainstTheta:
    """Test r = 0 agrees with the Jacobi sum."""

    def test_random(self):
        """Test gr_center(z, tau) = theta(z, tau) on the center strip."""
        rng = np.random.default_rng(10)
        for _ in range(20):
            p = center_point(rng, 0)
            assert rel_err(gr_center(p, PREC), theta(p.z, p.taus[0], PREC)) < TOL


class TestCenterAgainstProduct:
    """Test the sum against the truncated defining product."""

    def test_gamma_example(self):
        """Test r = 1 at (0.2+0.1i, 0.3i, 0.5i) with a double-precision product."""
        p = GammaPoint.from_values("0.2+0.1i", ["0.3i", "0.5i"], 2 * PREC)
        reference = gr_product(p, 2 * PREC).with_prec(PREC)
        assert rel_err(gr_center(p, PREC), reference) < TOL

    def test_random_r1(self):
        """Test random r = 1 points with Im(tau) >= 0.2."""
        rng = np.random.default_rng(11)
        for _ in range(10):
            p = center_point(rng, 1)
            assert rel_err(gr_center(p, PREC), gr_product(p, PREC)) < TOL

    def test_random_r2(self):
        """Test random r = 2 points with Im(tau) >= 0.4."""
        rng = np.random.default_rng(12)
        for _ in range(10):
            p = center_point(rng, 2, low=0.4, high=1.0)
            assert rel_err(gr_center(p, PREC), gr_product(p, PREC)) < TOL

    @pytest.mark.slow
    def test_random_r2_wide(self):
        """Test 20 r = 2 points with Im(tau) down to 0.2."""
        rng = np.random.default_rng(13)
        for _ in range(20):
            p = center_point(rng, 2)
            assert rel_err(gr_center(p, PREC), gr_product(p, PREC)) < TOL


class TestCenterIdentities:
    """Test identities that stay inside the strip."""

    def test_periodic_in_z(self):
        """Test G_r(z + 1) = G_r(z)."""
        rng = np.random.default_rng(14)
        for r in (1, 2):
            for _ in range(5):
                p = center_point(rng, r)
                shifted = GammaPoint(p.z + 1, p.taus)
                assert rel_err(gr_center(shifted, PREC), gr_center(p, PREC)) < TOL

    def test_periodic_in_tau(self):
        """Test G_r(z, tau_0 + 1, ...) = G_r(z, tau)."""
        rng = np.random.default_rng(15)
        for r in (1, 2):
            for _ in range(5):
                p = center_point(rng, r)
                shifted = GammaPoint(p.z, (p.taus[0] + 1,) + p.taus[1:])
                assert rel_err(gr_center(shifted, PREC), gr_center(p, PREC)) < TOL

    def test_pseudo_periodic(self):
        """Test G_r(z + tau_j) / G_r(z) = G_{r-1}(z, tau without tau_j)."""
        rng = np.random.default_rng(16)
        for r in (1, 2):
            for _ in range(5):
                ims = rng.uniform(0.3, 1.0, r + 1)
                taus = [complex(rng.uniform(-1, 1), t) for t in ims]
                j = int(rng.integers(0, r + 1))
                room = ims.sum() - ims[j]
                z = complex(rng.uniform(-1, 1), rng.uniform(0.1, 0.9) * room)
                p = GammaPoint.from_values(z, taus, PREC)
                moved = GammaPoint(p.z + p.taus[j], p.taus)
                lower = GammaPoint(p.z, p.taus[:j] + p.taus[j + 1:])
                lhs = gr_center(moved, PREC) / gr_center(p, PREC)
                rhs = theta(lower.z, lower.taus[0], PREC) if r == 1 else gr_center(lower, PREC)
                assert rel_err(lhs, rhs) < TOL

    def test_symmetric_in_parameters(self):
        """Test permuting the parameters leaves G_r unchanged."""
        rng = np.random.default_rng(17)
        p = center_point(rng, 2)
        swapped = GammaPoint(p.z, (p.taus[2], p.taus[0], p.taus[1]))
        assert rel_err(gr_center(swapped, PREC), gr_center(p, PREC)) < TOL


class TestCenterErrors:
    """Test error paths."""

    def test_below_strip(self):
        """Test error for Im(z) <= 0."""
        p = GammaPoint.from_values("0.2-0.1i", ["0.3i", "0.5i"], PREC)
        with pytest.raises(OutsideCenterStrip):
            gr_center(p, PREC)

    def test_above_strip(self):
        """Test error for Im(z) >= sum Im(tau)."""
        p = GammaPoint.from_values("0.2+0.9i", ["0.3i", "0.5i"], PREC)
        with pytest.raises(OutsideCenterStrip):
            gr_center(p, PREC)

    def test_lower_parameter(self):
        """Test error for a parameter in the lower half-plane."""
        p = GammaPoint.from_values("0.2+0.1i", ["0.3i", "-0.5i"], PREC)
        with pytest.raises(OutsideCenterStrip, match="upper half-plane"):
            gr_center(p, PREC)

    def test_slow_decay(self):
        """Test error when Im(z) hugs the strip edge."""
        p = GammaPoint.from_values("0.2+1e-9i", ["0.3i", "0.5i"], PREC)
        with pytest.raises(ConvergenceTooSlow):
            gr_center(p, PREC)

    def test_term_cap(self):
        """Test error when the series needs more than max_terms."""
        p = GammaPoint.from_values("0.2+0.01i", ["0.3i", "0.5i"], PREC)
        with pytest.raises(ConvergenceTooSlow, match="exceeded"):
            gr_center(p, PREC, GammaSettings(max_terms=10))

    def test_decay_rate(self):
        """Test the decay rate is 2 pi times the distance to the nearer edge."""
        p = GammaPoint.from_values("0.2+0.1i", ["0.3i", "0.5i"], PREC)
        rate = center_decay(p.z.value, [t.value for t in p.taus])
        assert abs(rate - 2 * mpmath.pi * 0.1) < 1e-12
