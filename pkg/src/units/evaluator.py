"""Evaluate smoothed G_r products and their log-absolute values."""

import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import mpmath

from src.errors import CenterStripViolation, OutsideCenterStrip, ZeroValue
from src.gammaeval.hierarchy import GammaEvaluator, reorient
from src.gammaeval.oracle import estimate_factors, gr_product_mpc
from src.gammaeval.point import DEFAULT_SETTINGS, GammaSettings
from src.gammaeval.real_variant import gr_real_variant_mpc
from src.gammaeval.series import center_decay
from src.mpnum.bigcomplex import BigComplex, digits_to_prec
from src.nfield.field import NumberFieldElement
from .spec import UnitSpec, UnitTermSpec

logger = logging.getLogger(__name__)

ORACLE_DIGITS = 20
ORACLE_MAX_FACTORS = 2e5


@dataclass(frozen=True)
class UnitValue:
    """Result of eval_unit.

    Attributes:
        value: The product u
        term_values: Value of each signed term, in spec order
        timings: Wall time of each term in seconds
        k: Class index of the spec
        label: Ideal class label of the spec
    """

    value: BigComplex
    term_values: Tuple[BigComplex, ...]
    timings: Tuple[float, ...]
    k: int
    label: str

    @property
    def total_time(self) -> float:
        return sum(self.timings)


def term_point(t: UnitTermSpec, prec: int) -> Tuple[mpmath.mpc, List[mpmath.mpc]]:
    """Embedded first argument and parameters at the current working precision."""
    field = t.field
    z = mpmath.mpf(t.arg_rational.numerator) / t.arg_rational.denominator
    z = mpmath.mpc(z)
    if t.arg_delta is not None:
        z += field.embed(t.arg_delta, prec).value / t.level
    taus = [field.embed(tau, prec).value / t.level for tau in t.taus]
    return z, taus


def check_center_strip(z: mpmath.mpc, taus: List[mpmath.mpc]) -> None:
    """Raise CenterStripViolation unless the reoriented z lies in the open strip."""
    z_up, taus_up, _ = reorient(z, taus)
    if center_decay(z_up, taus_up) <= 0:
        raise CenterStripViolation(
            f"reoriented argument Im(z) = {mpmath.nstr(mpmath.im(z_up), 8)} "
            f"outside (0, {mpmath.nstr(sum(mpmath.im(t) for t in taus_up), 8)})"
        )


def eval_term(
    t: UnitTermSpec,
    prec: int,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> BigComplex:
    """Evaluate G(z, tau/l)^(nu N) / G(N z, N tau/l)^nu.

    Args:
        t: Term specification
        prec: Target precision in bits
        settings: Evaluator settings

    Returns:
        Term value with relative error below 2^(-prec+24)

    Raises:
        CenterStripViolation: If the term's argument does not lie in the
            center strip after reorientation (r >= 1, general path)
        RealParameter: If an embedded parameter is real on the general path
    """
    n = t.smoothing_n
    # the N-th power multiplies the relative error by N
    inner = prec + n.bit_length() + 8
    evaluator = GammaEvaluator(inner, settings)
    start = time.perf_counter()

    with mpmath.workprec(evaluator.wp):
        z, taus = term_point(t, evaluator.wp)
        scaled_z = n * z
        scaled = [n * tau for tau in taus]

        if t.real_variant:
            g = gr_real_variant_mpc(z, taus, inner, settings)
            g_scaled = gr_real_variant_mpc(scaled_z, scaled, inner, settings)
        else:
            if t.r >= 1:
                check_center_strip(z, taus)
            g = evaluator.evaluate(z, taus)
            g_scaled = evaluator.evaluate(scaled_z, scaled)

        value = (g ** n / g_scaled) ** t.nu

    elapsed = time.perf_counter() - start
    logger.debug(
        f"term r={t.r} level={t.level} nu={t.nu:+d}: {elapsed:.2f}s, "
        f"cache {evaluator.get_cache_stats()}"
    )
    return BigComplex.from_mpc(value, prec)


def eval_unit(
    u: UnitSpec,
    prec: int,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> UnitValue:
    """Evaluate the product of all terms of a unit.

    Args:
        u: Unit specification
        prec: Target precision in bits
        settings: Evaluator settings

    Returns:
        UnitValue with the product, the term values and per-term timings
    """
    values = []
    timings = []
    product = BigComplex.from_value(1, prec)
    for t in u.terms:
        start = time.perf_counter()
        v = eval_term(t, prec + 8, settings)
        timings.append(time.perf_counter() - start)
        values.append(v.with_prec(prec))
        product = product * v
    product = product.with_prec(prec)

    logger.info(
        f"unit {u.label} k={u.k}: {product.to_string(12)} "
        f"({len(u.terms)} terms, {sum(timings):.2f}s)"
    )
    return UnitValue(product, tuple(values), tuple(timings), u.k, u.label)


def log_abs_sq(u: BigComplex) -> mpmath.mpf:
    """log|u|^2 at the precision of u.

    Raises:
        ZeroValue: If u is zero
    """
    if u.is_zero():
        raise ZeroValue("log|u|^2 of zero")
    with mpmath.workprec(u.prec):
        return 2 * mpmath.log(abs(u.value))


def polynomial_residual(
    coeffs: Sequence[NumberFieldElement],
    u: BigComplex,
    prec: Optional[int] = None
) -> mpmath.mpf:
    """Relative residual |P(u)| / (||P|| max(1, |u|)^deg) of a polynomial over K.

    Args:
        coeffs: Coefficients lowest degree first, all in one field
        u: Candidate root
        prec: Precision of the embedding, defaults to the precision of u

    Returns:
        Residual as an mpf, zero for an exact root
    """
    if not coeffs:
        raise ValueError("polynomial must have at least one coefficient")
    prec = prec or u.prec
    field = coeffs[0].field
    with mpmath.workprec(prec + 16):
        embedded = [field.embed(c, prec + 16).value for c in coeffs]
        x = u.value
        total = mpmath.mpc(0)
        for c in reversed(embedded):
            total = total * x + c
        norm = max(abs(c) for c in embedded)
        scale = norm * max(mpmath.mpf(1), abs(x)) ** (len(coeffs) - 1)
        return abs(total) / scale


def oracle_check_term(
    t: UnitTermSpec,
    digits: int = ORACLE_DIGITS,
    max_factors: float = ORACLE_MAX_FACTORS,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> Optional[mpmath.mpf]:
    """Compare both G_r values of a term with the truncated defining product.

    Each point is reoriented first, so the product is taken with every
    parameter in the upper half-plane.

    Returns:
        Largest relative difference, or None if the term uses the real
        variant or the product would need more than max_factors factors
    """
    if t.real_variant:
        return None
    evaluator = GammaEvaluator(digits_to_prec(digits), settings)
    with mpmath.workprec(evaluator.wp):
        z, taus = term_point(t, evaluator.wp)
        n = t.smoothing_n
        points = [reorient(z, taus), reorient(n * z, [n * tau for tau in taus])]
        for z_up, taus_up, _ in points:
            count = estimate_factors(z_up, taus_up)
            if count > max_factors:
                logger.debug(f"oracle skipped for level {t.level}: about {count:.3g} factors")
                return None

        worst = mpmath.mpf(0)
        for z_up, taus_up, _ in points:
            try:
                expected = gr_product_mpc(z_up, taus_up)
            except OutsideCenterStrip as e:
                logger.debug(f"oracle skipped for level {t.level}: {e}")
                return None
            got = evaluator.evaluate(z_up, taus_up)
            worst = max(worst, abs(got - expected) / abs(expected))
    logger.debug(f"oracle for level {t.level}: relative difference {mpmath.nstr(worst, 5)}")
    return worst
