"""Theta function G_0 via the Jacobi triple product.

theta(z, tau) = prod_{n>=0} (1 - x q^n)(1 - x^-1 q^(n+1)), x = e(z), q = e(tau),
is evaluated as the bilateral sum sum_n (-1)^n x^n q^(n(n-1)/2) divided by
the Euler function (q; q)_inf.
"""

import logging
import math

import mpmath

from src.errors import ConvergenceTooSlow
from src.mpnum.bigcomplex import BigComplex, e2pi_mpc
from .point import DEFAULT_SETTINGS, GammaSettings

logger = logging.getLogger(__name__)


def _jacobi_sum(x: mpmath.mpc, q: mpmath.mpc, max_terms: int) -> mpmath.mpc:
    """Bilateral sum for 0 <= Im z < Im tau, where every term is at most 1."""
    eps = mpmath.ldexp(1, -mpmath.mp.prec - 4)
    total = mpmath.mpc(1)

    term = mpmath.mpc(1)
    qn = mpmath.mpc(1)
    for n in range(max_terms):
        term *= -x * qn
        qn *= q
        total += term
        if abs(term) < eps:
            break
    else:
        raise ConvergenceTooSlow(f"theta series exceeded {max_terms} terms")

    xinv = 1 / x
    term = mpmath.mpc(1)
    qn = q
    for m in range(max_terms):
        term *= -xinv * qn
        qn *= q
        total += term
        if abs(term) < eps:
            break
    else:
        raise ConvergenceTooSlow(f"theta series exceeded {max_terms} terms")

    return total


def theta_mpc(
    z: mpmath.mpc,
    tau: mpmath.mpc,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> mpmath.mpc:
    """theta(z, tau) on raw values at the current working precision.

    Raises:
        ValueError: If Im(tau) <= 0
        ConvergenceTooSlow: If 2 pi Im(tau) is below settings.min_decay
    """
    t_im = mpmath.im(tau)
    if t_im <= 0:
        raise ValueError(f"Im(tau) must be > 0, got {mpmath.nstr(t_im, 8)}")
    if 2 * math.pi * float(t_im) < settings.min_decay:
        raise ConvergenceTooSlow(
            f"decay 2*pi*Im(tau) = {2 * math.pi * float(t_im):.3g} below floor {settings.min_decay}"
        )

    z = z - mpmath.floor(mpmath.re(z))
    n = int(mpmath.floor(mpmath.im(z) / t_im))
    z0 = z - n * tau
    if z0 == 0:
        return mpmath.mpc(0)

    # theta(z0 + n tau) = (-1)^n x0^-n q^(-n(n-1)/2) theta(z0)
    factor = mpmath.mpc(1)
    if n:
        factor = e2pi_mpc(-n * z0 - mpmath.mpf(n * (n - 1)) / 2 * tau)
        if n % 2:
            factor = -factor

    wp = mpmath.mp.prec
    x = e2pi_mpc(z0)
    q = e2pi_mpc(tau)
    total = _jacobi_sum(x, q, settings.max_terms)

    # cancellation near a zero of theta: redo with the lost bits added
    if total != 0:
        lost = min(wp, -int(mpmath.floor(mpmath.log(abs(total), 2))))
        if lost > 8:
            logger.warning(f"theta lost {lost} bits to cancellation; raising precision")
            with mpmath.workprec(wp + lost + 8):
                total = _jacobi_sum(e2pi_mpc(z0), e2pi_mpc(tau), settings.max_terms)

    return factor * total / mpmath.qp(q)


def theta(
    z: BigComplex,
    tau: BigComplex,
    prec: int,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> BigComplex:
    """Evaluate theta(z, tau) = G_0(z, tau).

    Args:
        z: Elliptic argument (any imaginary part)
        tau: Parameter with Im(tau) > 0
        prec: Target precision in bits
        settings: Evaluator settings

    Returns:
        theta(z, tau) with relative error below 2^(-prec+16)

    Raises:
        ValueError: If Im(tau) <= 0
        ConvergenceTooSlow: If 2 pi Im(tau) is below the decay floor
    """
    with mpmath.workprec(settings.working_prec(prec)):
        value = theta_mpc(z.value, tau.value, settings)
        return BigComplex.from_mpc(value, prec)
