"""G_2 with one real parameter via the trigonometric series.

For Im(tau_0) > 0, tau_1 real and Im(tau_2) < 0,

    log G_2(z, tau) = (i/4) sum_{j>=1} cos(pi j (2z - tau_0 - tau_1 - tau_2))
                      / (j sin(pi j tau_0) sin(pi j tau_1) sin(pi j tau_2))

which converges while Im(tau_2) < Im(z) < Im(tau_0). Where all three
parameters are non-real the same series is the center-strip sum rewritten
with 1 - e(tau) = -2i e(tau/2) sin(pi tau).
"""

import logging
import math
from typing import Sequence

import mpmath

from src.errors import ConvergenceTooSlow, OutsideCenterStrip, SmallDenominator
from src.mpnum.bigcomplex import BigComplex, Scalar, to_mpc
from .hierarchy import is_real_parameter
from .point import DEFAULT_SETTINGS, GammaSettings

logger = logging.getLogger(__name__)


def _order_parameters(taus: Sequence[mpmath.mpc]):
    """Sort into (upper, real, lower) and snap the real one onto R."""
    real = [t for t in taus if is_real_parameter(t)]
    upper = [t for t in taus if not is_real_parameter(t) and mpmath.im(t) > 0]
    lower = [t for t in taus if not is_real_parameter(t) and mpmath.im(t) < 0]
    if len(real) != 1 or len(upper) != 1 or len(lower) != 1:
        raise ValueError(
            "real variant needs one parameter in each half-plane and one real parameter, "
            f"got {len(upper)} upper, {len(real)} real, {len(lower)} lower"
        )
    return upper[0], mpmath.mpc(mpmath.re(real[0])), lower[0]


def _log_sum(
    z: mpmath.mpc,
    t0: mpmath.mpc,
    t1: mpmath.mpc,
    t2: mpmath.mpc,
    rho: float,
    small: mpmath.mpf,
    settings: GammaSettings
):
    """Partial sums of the trigonometric series until the tail estimate drops.

    Returns (total, sum of |terms|, number of terms).
    """
    wp = mpmath.mp.prec
    target = -wp * math.log(2)
    tail = -math.log(-math.expm1(-rho))
    a0 = 2 * math.pi * float(mpmath.im(t0))
    a2 = -2 * math.pi * float(mpmath.im(t2))
    w = 2 * z - t0 - t1 - t2

    total = mpmath.mpc(0)
    magnitude = mpmath.mpf(0)
    worst = 1.0
    for j in range(1, settings.max_terms + 1):
        s1 = mpmath.sinpi(j * t1)
        if abs(s1) < small:
            raise SmallDenominator(
                f"|sin(pi j tau_1)| = {mpmath.nstr(abs(s1), 5)} at j = {j} below 2^-(prec/2)"
            )
        term = mpmath.cospi(j * w) / (j * mpmath.sinpi(j * t0) * s1 * mpmath.sinpi(j * t2))
        total += term
        magnitude += abs(term)

        # 1/|sin(pi j tau_1)| grows at most linearly in j for quadratic
        # irrationals; the largest observed ratio stands in for the constant
        worst = max(worst, 1.0 / (j * float(abs(s1))))
        bound = (
            -j * rho + math.log(4 * worst)
            - math.log(-math.expm1(-j * a0)) - math.log(-math.expm1(-j * a2))
        )
        if bound + tail < target:
            break
    else:
        raise ConvergenceTooSlow(f"real-variant series exceeded {settings.max_terms} terms")

    return total, magnitude, j


def gr_real_variant_mpc(
    z: mpmath.mpc,
    taus: Sequence[mpmath.mpc],
    prec: int,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> mpmath.mpc:
    """G_2 with one real parameter on raw values at the current working precision.

    Raises:
        ValueError: If there are not exactly three parameters with the
            required half-plane pattern
        OutsideCenterStrip: If Im(z) is not strictly between Im(tau_2) and Im(tau_0)
        ConvergenceTooSlow: If the decay rate is below settings.min_decay
        SmallDenominator: If some |sin(pi j tau_1)| falls below 2^(-prec/2)
    """
    if len(taus) != 3:
        raise ValueError(f"real variant needs exactly three parameters, got {len(taus)}")
    t0, t1, t2 = _order_parameters(taus)

    zi = mpmath.im(z)
    if not mpmath.im(t2) < zi < mpmath.im(t0):
        raise OutsideCenterStrip(
            f"Im(z) = {mpmath.nstr(zi, 8)} outside "
            f"({mpmath.nstr(mpmath.im(t2), 8)}, {mpmath.nstr(mpmath.im(t0), 8)})"
        )

    w_im = float(2 * zi - mpmath.im(t0) - mpmath.im(t2))
    rho = math.pi * (float(mpmath.im(t0) - mpmath.im(t2)) - abs(w_im))
    if rho < settings.min_decay:
        raise ConvergenceTooSlow(f"decay rate {rho:.3g} below floor {settings.min_decay}")

    small = mpmath.ldexp(1, -(prec // 2))
    wp = mpmath.mp.prec
    # sin(pi j tau_1) loses up to prec/2 bits near integers
    extra = prec // 2 + 16
    with mpmath.workprec(wp + extra):
        total, magnitude, terms = _log_sum(z, t0, t1, t2, rho, small, settings)
        lost = int(mpmath.ceil(mpmath.log(magnitude, 2))) if magnitude > 1 else 0
    if lost > 8:
        logger.warning(f"real-variant sum lost {lost} bits to cancellation; raising precision")
        with mpmath.workprec(wp + extra + lost + 8):
            total, magnitude, terms = _log_sum(z, t0, t1, t2, rho, small, settings)

    logger.debug(f"real-variant series: {terms} terms, decay {rho:.4g}")
    with mpmath.workprec(wp + 8):
        return +mpmath.exp(mpmath.mpc(0, 1) / 4 * total)


def gr_real_variant(
    z: Scalar,
    taus: Sequence[Scalar],
    prec: int,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> BigComplex:
    """Evaluate G_2(z, tau_0, tau_1, tau_2) when exactly one parameter is real.

    The parameters may be given in any order; they are sorted into the
    upper, real and lower one.

    Args:
        z: Argument with Im(tau_lower) < Im(z) < Im(tau_upper)
        taus: Three parameters, one in each half-plane and one real
        prec: Target precision in bits
        settings: Evaluator settings

    Returns:
        G_2 value with relative error below 2^(-prec+16)
    """
    with mpmath.workprec(settings.working_prec(prec)):
        value = gr_real_variant_mpc(to_mpc(z), [to_mpc(t) for t in taus], prec, settings)
        return BigComplex.from_mpc(value, prec)
