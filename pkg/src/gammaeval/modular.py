"""Numerical check of the modular property of G_{n-2}.

    prod_j G_{n-2}(z / omega_j, (omega_k / omega_j)_{k != j})
        = exp(-(2 pi i / n!) B_{n,n}(z, omega))

holds whenever no ratio omega_k / omega_j is real.
"""

import logging
import math
from typing import Sequence

import mpmath

from src.errors import DimensionMismatch, RealRatio, ZeroOmega
from src.mpnum.bigcomplex import BigComplex, Scalar, to_mpc
from .bernoulli import bernoulli_nn
from .hierarchy import GammaEvaluator, is_real_parameter
from .point import DEFAULT_SETTINGS, GammaSettings

logger = logging.getLogger(__name__)


def modular_check(
    z: Scalar,
    omegas: Sequence[Scalar],
    prec: int,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> mpmath.mpf:
    """Relative residual |LHS - RHS| / |RHS| of the modular property.

    Args:
        z: Argument
        omegas: n >= 2 nonzero periods with pairwise non-real ratios
        prec: Precision in bits
        settings: Evaluator settings

    Returns:
        Nonnegative residual, near 2^-prec when the identity holds

    Raises:
        RealRatio: If some omega_k / omega_j is real to working precision
        ZeroOmega: If some omega is zero
    """
    n = len(omegas)
    if n < 2:
        raise DimensionMismatch(f"modular check needs at least 2 omegas, got {n}")

    evaluator = GammaEvaluator(prec, settings)
    with mpmath.workprec(evaluator.wp):
        zz = to_mpc(z)
        ws = [to_mpc(w) for w in omegas]
        if any(w == 0 for w in ws):
            raise ZeroOmega("all omegas must be nonzero")

        lhs = mpmath.mpc(1)
        for j, wj in enumerate(ws):
            ratios = [wk / wj for k, wk in enumerate(ws) if k != j]
            for ratio in ratios:
                if is_real_parameter(ratio):
                    raise RealRatio(f"ratio {mpmath.nstr(ratio, 10)} of periods is real")
            lhs *= evaluator.evaluate(zz / wj, ratios)

        bern = bernoulli_nn(n, BigComplex.from_mpc(zz, evaluator.wp),
                            [BigComplex.from_mpc(w, evaluator.wp) for w in ws], evaluator.wp)
        rhs = mpmath.exp(-2j * mpmath.pi / math.factorial(n) * bern.value)
        residual = abs(lhs - rhs) / abs(rhs)

    logger.debug(f"modular check n={n}: residual {mpmath.nstr(residual, 5)}, "
                 f"cache {evaluator.get_cache_stats()}")
    return residual
