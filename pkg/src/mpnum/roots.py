"""Complex root isolation for defining polynomials.

Roots are seeded in double precision by Aberth-Ehrlich iteration and then
polished one by one with Newton's method in mpmath at the requested
precision.
"""

import functools
import logging
import math
from typing import List, Tuple

import mpmath
import numpy as np
from numpy.typing import NDArray

from src.errors import NoUpperRoot
from .bigcomplex import BigComplex, guard_bits
from .polynomial import IntPolynomial

logger = logging.getLogger(__name__)


def aberth_seeds(
    poly: IntPolynomial,
    tol: float = 1e-13,
    max_iter: int = 500
) -> NDArray[np.complex128]:
    """Approximate all complex roots in double precision.

    Starts from a perturbed circle whose radius is the geometric mean of the
    root moduli and applies Aberth corrections in place.

    Args:
        poly: Polynomial of degree >= 1
        tol: Stop once every correction is below tol * max(1, |root|)
        max_iter: Iteration cap

    Returns:
        Array of ``poly.degree`` complex approximations
    """
    n = poly.degree
    if n < 1:
        raise ValueError(f"polynomial degree must be >= 1, got {n}")

    coeffs = np.array([float(c) for c in reversed(poly.coeffs)], dtype=np.float64)
    coeffs = coeffs / coeffs[0]
    deriv = np.polyder(coeffs)

    radius = abs(coeffs[-1]) ** (1.0 / n) if coeffs[-1] != 0 else 1.0
    angles = 2 * math.pi * np.arange(n) / n + 0.4
    x = radius * np.exp(1j * angles)

    for iteration in range(max_iter):
        converged = True
        for i in range(n):
            xi = x[i]
            pv = np.polyval(coeffs, xi)
            dpv = np.polyval(deriv, xi)
            others = np.delete(x, i)
            sum_term = np.sum(1.0 / (xi - others)) if n > 1 else 0.0
            denom = dpv - pv * sum_term
            if denom == 0:
                continue
            delta = pv / denom
            if abs(delta) > tol * max(1.0, abs(xi)):
                converged = False
            x[i] = xi - delta
        if converged:
            logger.debug(f"Aberth converged after {iteration + 1} iterations (degree {n})")
            break
    else:
        logger.debug(f"Aberth stopped at iteration cap {max_iter} (degree {n})")

    return x


def newton_polish(
    poly: IntPolynomial,
    seed: complex,
    prec: int,
    max_iter: int = 200
) -> Tuple[mpmath.mpc, List[mpmath.mpf]]:
    """Refine one root with Newton's method at ``prec`` bits.

    Returns:
        Tuple of (root, residual history |P(z)| per iteration)
    """
    dpoly = poly.derivative()
    residuals: List[mpmath.mpf] = []
    with mpmath.workprec(prec):
        z = mpmath.mpc(seed)
        tiny = mpmath.ldexp(1, -prec + 4)
        for _ in range(max_iter):
            value = poly.evaluate(z)
            residuals.append(abs(value))
            slope = dpoly.evaluate(z)
            if slope == 0:
                break
            step = value / slope
            z -= step
            if abs(step) <= tiny * max(1, abs(z)):
                residuals.append(abs(poly.evaluate(z)))
                break
    return z, residuals


@functools.lru_cache(maxsize=128)
def _upper_root(coeffs: Tuple[int, ...], prec: int) -> BigComplex:
    poly = IntPolynomial(coeffs)
    wp = prec + guard_bits(prec)
    seeds = aberth_seeds(poly)

    candidates: List[mpmath.mpc] = []
    with mpmath.workprec(wp):
        threshold = mpmath.ldexp(1, -(prec // 2))
        for seed in seeds:
            root, _ = newton_polish(poly, complex(seed), wp)
            if mpmath.im(root) <= threshold * max(1, abs(root)):
                continue
            if any(abs(root - c) <= threshold * max(1, abs(c)) for c in candidates):
                continue
            candidates.append(root)

        if not candidates:
            raise NoUpperRoot(f"all roots of {poly} are real at {prec} bits")
        if len(candidates) > 1:
            logger.warning(
                f"{len(candidates)} roots of {poly} lie in the upper half-plane; "
                f"taking the one with largest imaginary part"
            )
        root = max(candidates, key=lambda c: mpmath.im(c))

        residual = abs(poly.evaluate(root))
        bound = mpmath.ldexp(poly.norm, -prec + 16) * max(1, abs(root)) ** poly.degree
        if residual > bound:
            logger.warning(f"upper root residual {mpmath.nstr(residual, 5)} above bound for {poly}")

        logger.debug(f"Upper root of {poly}: {mpmath.nstr(root, 15)}")
        return BigComplex.from_mpc(root, prec)


def upper_root(poly: IntPolynomial, prec: int) -> BigComplex:
    """Return the root of ``poly`` with positive imaginary part.

    The polynomial is expected to have exactly one conjugate pair of
    non-real roots; this is not verified. If several roots lie in the upper
    half-plane the one with the largest imaginary part is returned.

    Args:
        poly: Irreducible integer polynomial
        prec: Precision in bits

    Returns:
        The upper root with |P(root)| <= 2^(-prec+16) * ||P||

    Raises:
        NoUpperRoot: If every root is real at the working precision
    """
    return _upper_root(poly.coeffs, prec)
