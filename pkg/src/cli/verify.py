"""Verification of example configurations against their printed data."""

import logging
import os
import time
from typing import List, Optional, Sequence, Tuple

import mpmath

from src.errors import ConfigError, EllipticGammaError, NoRelation
from src.gammaeval.point import DEFAULT_SETTINGS, GammaSettings
from src.mpnum.bigcomplex import BigComplex, digits_to_prec
from src.recognize.relations import elementary_symmetric, relative_polynomial
from src.units.evaluator import eval_unit, log_abs_sq, oracle_check_term, polynomial_residual
from src.units.signs import printed_tolerance, sign_search
from src.units.spec import UnitReference, UnitSpec
from .config import ConfigStorage, ExampleConfig, UnitEntry
from .report import CheckResult, ExampleResult, printed_complex, printed_difference

logger = logging.getLogger(__name__)

THREADS_ENV = "ELLIPGAMMA_THREADS"

# digits kept back from the working precision in identity checks
RESIDUAL_GUARD_DIGITS = 20

ORACLE_TOLERANCE = mpmath.mpf(10) ** -15


def thread_cap() -> int:
    """Worker count from ELLIPGAMMA_THREADS, defaulting to the CPU count.

    Raises:
        ConfigError: If the variable is set but not a positive integer
    """
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def residual_tolerance(digits: int) -> mpmath.mpf:
    """10^-(digits - 20), never looser than 10^-(digits/2)."""
    return mpmath.mpf(10) ** -max(digits - RESIDUAL_GUARD_DIGITS, digits // 2)


def klf_reference(reference: UnitReference) -> Optional[Tuple[mpmath.mpf, mpmath.mpf]]:
    """Reference log|u|^2 and its tolerance.

    The printed klf value is used when present, else 2 log|printed u| with
    the tolerance that one unit in each printed component induces.
    """
    if reference.klf_value is not None:
        return mpmath.mpf(reference.klf_value), printed_tolerance(reference.klf_value)
    if reference.value is not None:
        printed, tol_re, tol_im = printed_complex(reference.value)
        return 2 * mpmath.log(abs(printed)), 3 * max(tol_re, tol_im) / abs(printed)
    return None


def resolve_signs(
    entry: UnitEntry,
    prec: int,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> UnitSpec:
    """The entry's unit, with signs from a search when the configuration asks for one.

    Raises:
        ConfigError: If a search is requested without any reference
        NoMatch, Ambiguous: From the sign search
    """
    spec = entry.spec
    if not entry.search_signs:
        return spec
    with mpmath.workprec(prec):
        target = klf_reference(spec.reference)
    if target is None:
        raise ConfigError(f"unit {spec.label} k={spec.k} asks for a sign search but has no reference")
    reference, tolerance = target
    signs = sign_search(spec.terms, reference, prec, tolerance, settings)
    return spec.with_signs(signs)


def unit_checks(spec: UnitSpec, u: BigComplex, digits: int) -> List[CheckResult]:
    """Printed value, reference polynomial and log|u|^2 comparisons of one unit."""
    tag = f"{spec.label} k={spec.k}"
    ref = spec.reference
    tol = residual_tolerance(digits)
    checks = []
    with mpmath.workprec(u.prec):
        if ref.value is not None:
            diff, ok = printed_difference(u, ref.value)
            checks.append(CheckResult(f"value {tag}", ok, f"difference {mpmath.nstr(diff, 3)}"))

        if ref.polynomial is not None:
            residual = polynomial_residual(ref.polynomial, u)
            checks.append(CheckResult(
                f"polynomial {tag}", bool(residual < tol), f"residual {mpmath.nstr(residual, 3)}"
            ))
            if ref.is_palindromic:
                inverse = BigComplex.from_value(1, u.prec) / u
                residual = polynomial_residual(ref.polynomial, inverse)
                checks.append(CheckResult(
                    f"reciprocal root {tag}", bool(residual < tol), f"residual {mpmath.nstr(residual, 3)}"
                ))

        target = klf_reference(ref)
        if target is not None:
            reference, tolerance = target
            diff = abs(log_abs_sq(u) - reference)
            checks.append(CheckResult(
                f"log|u|^2 {tag}", bool(diff <= tolerance), f"difference {mpmath.nstr(diff, 3)}"
            ))
    return checks


def pair_checks(config: ExampleConfig, values: Sequence[BigComplex], digits: int) -> List[CheckResult]:
    """u_i u_j = 1 and u_i = u_j for the configured index pairs."""
    tol = residual_tolerance(digits)
    checks = []
    for i, j in config.checks.reciprocal_pairs:
        with mpmath.workprec(values[i].prec):
            diff = abs(values[i].value * values[j].value - 1)
        checks.append(CheckResult(f"u{i} u{j} = 1", bool(diff < tol), f"difference {mpmath.nstr(diff, 3)}"))
    for i, j in config.checks.equal_pairs:
        with mpmath.workprec(values[i].prec):
            diff = abs(values[i].value - values[j].value) / abs(values[i].value)
        checks.append(CheckResult(f"u{i} = u{j}", bool(diff < tol), f"relative difference {mpmath.nstr(diff, 3)}"))
    return checks


def relative_polynomial_check(
    config: ExampleConfig,
    values: Sequence[BigComplex],
    digits: int
) -> List[CheckResult]:
    """Compare prod (X - u) with its printed coefficients, then recognise it over K.

    Each printed coefficient is embedded and subtracted from the elementary
    symmetric function, and must also be recovered exactly by recognition
    over K. Certification is reported as a detail, since coefficients of
    large height need more digits to certify.
    """
    rel = config.checks.relative_polynomial
    if rel is None:
        return []
    field = config.field
    prec = digits_to_prec(digits)
    tol = residual_tolerance(digits)
    conjugates = [values[i] for i in rel.units]

    with mpmath.workprec(prec + 16):
        sym = elementary_symmetric([v.value for v in conjugates])
        worst = mpmath.mpf(0)
        for degree, expected in rel.expected.items():
            embedded = field.embed(expected, prec + 16).value
            worst = max(worst, abs(sym[degree] - embedded) / max(1, abs(embedded)))
    close = bool(worst < tol)

    try:
        coeffs, results = relative_polynomial(conjugates, field, prec)
        missed = sorted(d for d, expected in rel.expected.items() if coeffs[d] != expected)
        certified = sum(r.certified for r in results)
        recognized = not missed
        detail = f", {certified}/{len(results)} coefficients certified"
        if missed:
            detail += f", degrees {missed} not recovered"
    except NoRelation as e:
        recognized = False
        detail = f", recognition failed: {e}"
    return [CheckResult(
        f"relative polynomial of degree {len(conjugates)}", close and recognized,
        f"max difference {mpmath.nstr(worst, 3)}{detail}",
    )]


def integral_element_checks(config: ExampleConfig) -> List[CheckResult]:
    """Printed elements must have integer coordinates in the integral basis."""
    checks = []
    for x in config.checks.integral_elements:
        coords = config.field.coordinates(x)
        ok = all(c.denominator == 1 for c in coords)
        checks.append(CheckResult(
            f"integral element {x}", ok, f"coordinates {[str(c) for c in coords]}"
        ))
    return checks


def verify_example(
    config: ExampleConfig,
    digits: int = 50,
    oracle: bool = False,
    settings: GammaSettings = DEFAULT_SETTINGS
) -> ExampleResult:
    """Evaluate every unit of an example and run all of its checks.

    Args:
        config: Example configuration
        digits: Decimal digits of the evaluation
        oracle: Also compare each term with the truncated defining products
        settings: Evaluator settings

    Returns:
        ExampleResult; evaluation errors are recorded, not raised
    """
    prec = digits_to_prec(digits)
    start = time.perf_counter()
    checks: List[CheckResult] = []
    timings: List[float] = []
    skipped: List[str] = []
    values: List[BigComplex] = []

    try:
        for entry in config.units:
            spec = resolve_signs(entry, prec, settings)
            uv = eval_unit(spec, prec, settings)
            values.append(uv.value)
            timings.extend(uv.timings)
            checks.extend(unit_checks(spec, uv.value, digits))

            if oracle:
                for index, term in enumerate(spec.terms):
                    tag = f"{spec.label} k={spec.k} term {index}"
                    diff = oracle_check_term(term, settings=settings)
                    if diff is None:
                        skipped.append(f"oracle {tag}")
                        continue
                    checks.append(CheckResult(
                        f"oracle {tag}", bool(diff < ORACLE_TOLERANCE), f"difference {mpmath.nstr(diff, 3)}"
                    ))

        checks.extend(pair_checks(config, values, digits))
        checks.extend(relative_polynomial_check(config, values, digits))
        checks.extend(integral_element_checks(config))
    except EllipticGammaError as e:
        logger.error(f"{config.name}: {type(e).__name__}: {e}")
        return ExampleResult(
            config.name, tuple(checks), tuple(timings), time.perf_counter() - start,
            error=f"{type(e).__name__}: {e}", skipped=tuple(skipped),
        )

    result = ExampleResult(
        config.name, tuple(checks), tuple(timings), time.perf_counter() - start, skipped=tuple(skipped)
    )
    logger.info(
        f"{config.name}: {'passed' if result.passed else 'FAILED'} "
        f"({len(checks)} checks, {result.elapsed:.1f}s)"
    )
    return result


def verify_path(name_or_path: str, digits: int, oracle: bool) -> ExampleResult:
    """Worker entry point: load a configuration in the worker and verify it."""
    return verify_example(ConfigStorage.resolve(name_or_path), digits, oracle)
