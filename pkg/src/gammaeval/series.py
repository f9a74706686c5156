"""Center-strip exponential sum for G_r.

For Im(tau_k) > 0 and 0 < Im(z) < sum Im(tau_k),

    log G_r(z, tau) = -sum_{j>=1} (w^j + (-1)^r x^j) / (j prod_k (1 - q_k^j))

with x = e(z), q_k = e(tau_k) and w = q_0 ... q_r / x. The j-th term is bounded
by M_j = (|w|^j + |x|^j) / (j prod (1 - |q_k|^j)) and the tail decays
geometrically with ratio e^-y, y = 2 pi min(Im z, sum Im tau - Im z).
"""

import logging
import math
from typing import Sequence

import mpmath

from src.errors import ConvergenceTooSlow, OutsideCenterStrip
from src.mpnum.bigcomplex import BigComplex, e2pi_mpc
from .point import DEFAULT_SETTINGS, GammaPoint, GammaSettings

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi


def _log_term_bound(j: int, a: float, b: float, cs: Sequence[float]) -> float:
    """log M_j in floating point, safe against underflow."""
    lo, hi = min(a, b), max(a, b)
    value = -j * lo + math.log1p(math.exp(-j * (hi - lo))) - math.log(j)
    for c in cs:
        value -= math.log(-math.expm1(-j * c))
    return value


def center_decay(z: mpmath.mpc, taus: Sequence[mpmath.mpc]) -> float:
    """Decay rate y of the center-strip sum (non-positive outside the strip)."""
    total = sum(float(mpmath.im(t)) for t in taus)
    zi = float(mpmath.im(z))
    return TWO_PI * min(zi, total - zi)


def center_log_sum(
    z: mpmath.mpc,
    taus: Sequence[mpmath.mpc],
    settings: GammaSettings = DEFAULT_SETTINGS
) -> mpmath.mpc:
    """Sum of the center-strip series, i.e. -log G_r, at the current precision.

    Precision is raised internally by the bits the largest term can cost, so
    the returned sum has absolute error near 2^-prec.

    Raises:
        OutsideCenterStrip: If a parameter is not in the upper half-plane or
            Im(z) is not strictly inside (0, sum Im tau)
        ConvergenceTooSlow: If the decay rate is below settings.min_decay or
            the series needs more than settings.max_terms terms
    """
    r = len(taus) - 1
    tau_ims = [mpmath.im(t) for t in taus]
    if any(t <= 0 for t in tau_ims):
        raise OutsideCenterStrip("all parameters must lie in the upper half-plane")
    strip = sum(tau_ims)
    zi = mpmath.im(z)
    if not 0 < zi < strip:
        raise OutsideCenterStrip(
            f"Im(z) = {mpmath.nstr(zi, 8)} outside (0, {mpmath.nstr(strip, 8)})"
        )

    a = TWO_PI * float(strip - zi)
    b = TWO_PI * float(zi)
    cs = [TWO_PI * float(t) for t in tau_ims]
    y = min(a, b)
    if y < settings.min_decay:
        raise ConvergenceTooSlow(f"decay rate y = {y:.3g} below floor {settings.min_decay}")

    wp = mpmath.mp.prec
    target = -wp * math.log(2)
    tail = -math.log(-math.expm1(-y))
    loss = max(0.0, _log_term_bound(1, a, b, cs) / math.log(2))
    estimate = wp * math.log(2) / y
    extra = int(math.ceil(loss + math.log2(estimate + 1))) + 8

    with mpmath.workprec(wp + extra):
        x = e2pi_mpc(z)
        qs = [e2pi_mpc(t) for t in taus]
        w = mpmath.fprod(qs) / x
        sign = -1 if r % 2 else 1

        xj = mpmath.mpc(1)
        wj = mpmath.mpc(1)
        qj = [mpmath.mpc(1)] * len(qs)
        total = mpmath.mpc(0)
        for j in range(1, settings.max_terms + 1):
            xj *= x
            wj *= w
            qj = [p * q for p, q in zip(qj, qs)]
            den = mpmath.fprod(1 - p for p in qj)
            total += (wj + sign * xj) / (j * den)
            if _log_term_bound(j, a, b, cs) + tail < target:
                break
        else:
            raise ConvergenceTooSlow(f"center series exceeded {settings.max_terms} terms (y = {y:.3g})")

    logger.debug(f"center series r={r}: {j} terms, y={y:.4g}, {extra} extra bits")
    return +total


def gr_center(
    p: GammaPoint,
    prec: int,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> BigComplex:
    """Evaluate G_r directly from the center-strip sum.

    Args:
        p: Point with all Im(tau_k) > 0 and 0 < Im(z) < sum Im(tau_k)
        prec: Target precision in bits
        settings: Evaluator settings

    Returns:
        G_r(z, tau) with relative error below 2^(-prec+16)

    Raises:
        OutsideCenterStrip: If p is not in the center strip
        ConvergenceTooSlow: If the decay rate is below the configured floor
    """
    with mpmath.workprec(settings.working_prec(prec)):
        total = center_log_sum(p.z.value, [t.value for t in p.taus], settings)
        return BigComplex.from_mpc(mpmath.exp(-total), prec)
