"""Truncated defining products, used as independent cross-checks.

    theta(z, tau)  = prod_{n>=0} (1 - x q^n)(1 - x^-1 q^(n+1))
    G_r(z, tau)    = prod_{j in N^(r+1)} (1 - x^-1 q^(j+1)) (1 - x q^j)^((-1)^r)

Factors are dropped once |x q^j| and |x^-1 q^(j+1)| are both below
2^-(prec+20). Only meant for moderate Im(tau_k); the number of factors grows
like (prec / min Im tau)^(r+1).
"""

import logging
import math
from typing import List, Sequence

import mpmath

from src.errors import OutsideCenterStrip
from src.mpnum.bigcomplex import BigComplex, e2pi_mpc
from .point import GammaPoint

logger = logging.getLogger(__name__)


def _exponent_vectors(cs: Sequence[float], budget: float) -> List[List[int]]:
    """All j in N^len(cs) with sum j_k c_k <= budget."""
    if not cs:
        return [[]]
    head, rest = cs[0], cs[1:]
    out = []
    for j in range(int(budget / head) + 1):
        for tail in _exponent_vectors(rest, budget - j * head):
            out.append([j] + tail)
    return out


def estimate_factors(z: mpmath.mpc, taus: Sequence[mpmath.mpc]) -> float:
    """Approximate number of factors gr_product_mpc would multiply at the working precision."""
    ims = [float(mpmath.im(t)) for t in taus]
    if any(t <= 0 for t in ims):
        return math.inf
    zi = float(mpmath.im(z))
    lead = -2 * math.pi * max(0.0, min(zi, sum(ims) - zi))
    budget = max(0.0, (mpmath.mp.prec + 20) * math.log(2) + lead)
    r1 = len(ims)
    volume = budget ** r1 / math.factorial(r1)
    for t in ims:
        volume /= 2 * math.pi * t
    return volume + 1


def gr_product_mpc(z: mpmath.mpc, taus: Sequence[mpmath.mpc]) -> mpmath.mpc:
    """Truncated product for G_r at the current working precision.

    Raises:
        OutsideCenterStrip: If some parameter is not in the upper half-plane
            or Im(z) is outside [0, sum Im tau]
    """
    ims = [mpmath.im(t) for t in taus]
    if any(t <= 0 for t in ims):
        raise OutsideCenterStrip("product oracle needs every Im(tau_k) > 0")
    zi = mpmath.im(z)
    if not 0 <= zi <= sum(ims):
        raise OutsideCenterStrip(f"product oracle needs 0 <= Im(z) <= sum Im(tau), got {mpmath.nstr(zi, 8)}")

    wp = mpmath.mp.prec
    cs = [2 * math.pi * float(t) for t in ims]
    # log of the larger of |x| and |w|
    lead = -2 * math.pi * min(float(zi), float(sum(ims) - zi))
    budget = max(0.0, (wp + 20) * math.log(2) + lead)
    vectors = _exponent_vectors(cs, budget)
    logger.debug(f"product oracle r={len(taus) - 1}: {len(vectors)} factors")

    with mpmath.workprec(wp + 20):
        x = e2pi_mpc(z)
        xinv = 1 / x
        qs = [e2pi_mpc(t) for t in taus]
        total_q = mpmath.fprod(qs)
        odd = (len(taus) - 1) % 2 == 1
        tops = [max((j[k] for j in vectors), default=0) for k in range(len(qs))]
        powers = [[q ** e for e in range(top + 1)] for q, top in zip(qs, tops)]
        value = mpmath.mpc(1)
        for j in vectors:
            qj = mpmath.fprod(table[e] for table, e in zip(powers, j))
            value *= 1 - xinv * qj * total_q
            lower = 1 - x * qj
            value = value / lower if odd else value * lower
    return +value


def gr_product(p: GammaPoint, prec: int) -> BigComplex:
    """G_r(z, tau) from the truncated defining product.

    Args:
        p: Point with every Im(tau_k) > 0 and 0 <= Im(z) <= sum Im(tau_k)
        prec: Target precision in bits

    Returns:
        Product value at prec bits
    """
    with mpmath.workprec(prec + 16):
        return BigComplex.from_mpc(gr_product_mpc(p.z.value, [t.value for t in p.taus]), prec)


def theta_product(z: BigComplex, tau: BigComplex, prec: int) -> BigComplex:
    """theta(z, tau) from the truncated triple product."""
    return gr_product(GammaPoint(z, (tau,)), prec)
