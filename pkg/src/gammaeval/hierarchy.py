"""G_r on C x (C - R)^(r+1) by reorientation and translation.

Reorientation uses the inversion property

    G_r(z, ..., -tau_k, ...) G_r(z + tau_k, tau) = 1

to move every parameter into the upper half-plane. Translation then uses the
pseudo-periodicity

    G_r(z + tau_k, tau) = G_{r-1}(z, tau without tau_k) G_r(z, tau)

to bring Im(z) into the center strip, where the exponential sum converges.
"""

import logging
from typing import Dict, List, Sequence, Tuple

import mpmath

from src.errors import DepthExceeded, DivisionByZero, RealParameter
from src.mpnum.bigcomplex import BigComplex
from .point import DEFAULT_SETTINGS, GammaPoint, GammaSettings
from .series import center_log_sum
from .theta import theta_mpc

logger = logging.getLogger(__name__)


def is_real_parameter(tau: mpmath.mpc) -> bool:
    """True if tau is real to half the current working precision."""
    bound = mpmath.ldexp(1, -(mpmath.mp.prec // 2)) * max(1, abs(tau))
    return abs(mpmath.im(tau)) < bound


def reorient(
    z: mpmath.mpc,
    taus: Sequence[mpmath.mpc]
) -> Tuple[mpmath.mpc, List[mpmath.mpc], int]:
    """Flip every parameter in the lower half-plane.

    Returns:
        Tuple (z', taus', flips) with G_r(z, taus) = G_r(z', taus')^((-1)^flips)
        and every Im(tau'_k) > 0

    Raises:
        RealParameter: If some parameter is real to working precision
    """
    flips = 0
    out = []
    for k, tau in enumerate(taus):
        if is_real_parameter(tau):
            raise RealParameter(f"parameter tau_{k} = {mpmath.nstr(tau, 10)} is real")
        if mpmath.im(tau) < 0:
            z = z - tau
            tau = -tau
            flips += 1
        out.append(tau)
    return z, out, flips


class GammaEvaluator:
    """Evaluates G_r at one precision with a call-local memo cache.

    Sub-values G_{r-1} produced by translation are cached per argument and
    parameter multiset, so repeated sub-calls are computed once.

    Example:
        evaluator = GammaEvaluator(prec=200)
        value = evaluator.evaluate(z, [tau, sigma])
        evaluator.get_cache_stats()   # {'hits': ..., 'misses': ..., ...}
    """

    def __init__(self, prec: int, settings: GammaSettings = DEFAULT_SETTINGS) -> None:
        """Initialize evaluator.

        Args:
            prec: Target precision in bits
            settings: Evaluator settings
        """
        self.prec = prec
        self.settings = settings
        self.wp = settings.working_prec(prec)

        self._cache: Dict[tuple, mpmath.mpc] = {}

        # Cache statistics
        self.hits = 0
        self.misses = 0
        self.translations = 0

    def evaluate(self, z: mpmath.mpc, taus: Sequence[mpmath.mpc]) -> mpmath.mpc:
        """G_r(z, taus) rounded to the working precision.

        Raises:
            RealParameter: If some parameter is real
            DepthExceeded: If the translation budget is exhausted
            DivisionByZero: If a translation divides by a zero of G_{r-1}
        """
        with mpmath.workprec(self.wp):
            try:
                return self._gr(mpmath.mpc(z), [mpmath.mpc(t) for t in taus])
            except ZeroDivisionError as exc:
                raise DivisionByZero("translation hit a zero of a lower-level G") from exc

    def _gr(self, z: mpmath.mpc, taus: List[mpmath.mpc]) -> mpmath.mpc:
        z = z - mpmath.floor(mpmath.re(z))
        key = (z.real, z.imag, tuple(sorted((t.imag, t.real) for t in taus)))
        if key in self._cache:
            self.hits += 1
            return self._cache[key]
        self.misses += 1

        z_up, taus_up, flips = reorient(z, taus)
        if len(taus_up) == 1:
            value = theta_mpc(z_up, taus_up[0], self.settings)
        else:
            value = self._translated(z_up, taus_up)
        if flips % 2:
            value = 1 / value

        self._cache[key] = value
        return value

    def _translated(self, z: mpmath.mpc, taus: List[mpmath.mpc]) -> mpmath.mpc:
        """G_r for upper half-plane parameters, r >= 1."""
        ims = [mpmath.im(t) for t in taus]
        largest = self.settings.translation_order == "largest"
        k = max(range(len(taus)), key=lambda i: ims[i]) if largest \
            else min(range(len(taus)), key=lambda i: ims[i])
        step = taus[k]
        rest = taus[:k] + taus[k + 1:]
        mid = sum(ims) / 2
        half = ims[k] / 2

        factor = mpmath.mpc(1)
        while mpmath.im(z) - mid > half:
            z = z - step
            factor *= self._gr(z, rest)
            self._count_translation()
        while mid - mpmath.im(z) > half:
            factor /= self._gr(z, rest)
            z = z + step
            self._count_translation()

        return factor * mpmath.exp(-center_log_sum(z, taus, self.settings))

    def _count_translation(self) -> None:
        self.translations += 1
        if self.translations > self.settings.max_translations:
            raise DepthExceeded(
                f"translation budget of {self.settings.max_translations} steps exhausted"
            )

    def clear_cache(self) -> None:
        """Clear the memo cache."""
        self._cache.clear()

    def get_cache_stats(self) -> Dict[str, int]:
        """Get cache performance statistics.

        Returns:
            Dict with keys: 'hits', 'misses', 'size', 'translations'
        """
        return {
            'hits': self.hits,
            'misses': self.misses,
            'size': len(self._cache),
            'translations': self.translations,
        }


def gr(
    p: GammaPoint,
    prec: int,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> BigComplex:
    """Evaluate G_r(z, tau_0, ..., tau_r) for non-real parameters.

    Args:
        p: Point with every Im(tau_k) != 0; Im(z) arbitrary
        prec: Target precision in bits
        settings: Evaluator settings

    Returns:
        G_r value with relative error below 2^(-prec+16)

    Raises:
        RealParameter: If some tau_k is real
        ConvergenceTooSlow: If a series decays too slowly
        DepthExceeded: If more than settings.max_translations steps are needed
    """
    evaluator = GammaEvaluator(prec, settings)
    with mpmath.workprec(evaluator.wp):
        value = evaluator.evaluate(p.z.value, [t.value for t in p.taus])
        logger.debug(f"G_{p.r} evaluated: {evaluator.get_cache_stats()}")
        return BigComplex.from_mpc(value, prec)
