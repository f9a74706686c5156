"""Unit reports and verification summaries.

Reports are JSON documents with a top-level ``"schema": 1``. Every number
is written as an ``mpmath.nstr`` string at the requested digits, so a
report read back at that precision reproduces the value it was written
from.
"""

import json
import logging
import re
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np

from src.mpnum.bigcomplex import BigComplex, digits_to_prec
from src.recognize.relations import RecognitionResult
from src.units.evaluator import UnitValue, log_abs_sq, polynomial_residual
from src.units.signs import printed_tolerance
from src.units.spec import UnitSpec

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 1

# relative error of one term, see eval_term
TERM_ERROR_BITS = 24

_PRINTED_COMPLEX = re.compile(r"^\s*([+-]?\s*[\d.]+)\s*([+-])\s*([\d.]+)\s*i\s*$")


def split_printed(text: str) -> Tuple[str, str]:
    """Split a printed value ``"a - bi"`` into signed real and imaginary strings.

    Raises:
        ValueError: If the text is not of that form
    """
    match = _PRINTED_COMPLEX.match(text)
    if match is None:
        raise ValueError(f"printed value must look like 'a + bi', got {text!r}")
    re_text = match.group(1).replace(" ", "")
    im_text = ("-" if match.group(2) == "-" else "") + match.group(3)
    return re_text, im_text


def printed_complex(text: str) -> Tuple[mpmath.mpc, mpmath.mpf, mpmath.mpf]:
    """Printed value with one unit in the last decimal of each component."""
    re_text, im_text = split_printed(text)
    value = mpmath.mpc(mpmath.mpf(re_text), mpmath.mpf(im_text))
    return value, printed_tolerance(re_text), printed_tolerance(im_text)


def printed_difference(u: BigComplex, text: str) -> Tuple[mpmath.mpf, bool]:
    """Largest component difference to a printed value, and whether it is within one unit."""
    with mpmath.workprec(u.prec):
        printed, tol_re, tol_im = printed_complex(text)
        d_re = abs(mpmath.re(u.value) - mpmath.re(printed))
        d_im = abs(mpmath.im(u.value) - mpmath.im(printed))
        return max(d_re, d_im), bool(d_re <= tol_re and d_im <= tol_im)


def error_bound(uv: UnitValue, prec: int) -> mpmath.mpf:
    """Absolute error bound of a product of terms."""
    with mpmath.workprec(prec):
        n_terms = len(uv.term_values)
        return abs(uv.value.value) * (n_terms + 1) * mpmath.ldexp(1, -prec + TERM_ERROR_BITS)


def _pair(x: BigComplex, digits: int) -> Tuple[str, str]:
    return mpmath.nstr(x.re, digits), mpmath.nstr(x.im, digits)


@dataclass(frozen=True)
class Report:
    """Machine-readable result of evaluating one unit.

    Attributes:
        example: Name of the configuration
        k: Class index
        label: Ideal class label
        digits: Requested decimal digits
        signs: Exponent signs used
        value: (re, im) decimal strings
        error_bound: Absolute error bound of the value
        term_values: (re, im) of every signed term
        timings: Wall time per term in seconds
        log_abs_sq: log|u|^2
        reference_value: Printed value, when the configuration has one
        value_difference: Largest component difference to the printed value
        polynomial_residual: Residual of the reference polynomial at u
        klf_value: Printed log|u|^2, when the configuration has one
        klf_difference: |log|u|^2 - klf_value|
        recognized: Minimal polynomial found by algdep, when requested
    """

    example: str
    k: int
    label: str
    digits: int
    signs: Tuple[int, ...]
    value: Tuple[str, str]
    error_bound: str
    term_values: Tuple[Tuple[str, str], ...]
    timings: Tuple[float, ...]
    log_abs_sq: str
    reference_value: Optional[str] = None
    value_difference: Optional[str] = None
    polynomial_residual: Optional[str] = None
    klf_value: Optional[str] = None
    klf_difference: Optional[str] = None
    recognized: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["value"] = list(self.value)
        data["term_values"] = [list(v) for v in self.term_values]
        return data

    def summary_line(self) -> str:
        re_text, im_text = self.value
        sign = "-" if im_text.startswith("-") else "+"
        line = f"{self.example} {self.label} k={self.k}: {re_text} {sign} {im_text.lstrip('-')}i"
        if self.polynomial_residual is not None:
            line += f"  residual {self.polynomial_residual}"
        if self.klf_difference is not None:
            line += f"  klf diff {self.klf_difference}"
        return line


def recognition_dict(result: RecognitionResult, digits: int = 5) -> Dict[str, Any]:
    return {
        "kind": result.kind,
        "coefficients": list(result.coefficients),
        "polynomial": str(result.polynomial),
        "residual": mpmath.nstr(result.residual, digits),
        "certified": result.certified,
    }


def build_report(
    example: str,
    spec: UnitSpec,
    uv: UnitValue,
    digits: int,
    recognized: Optional[RecognitionResult] = None
) -> Report:
    """Collect a unit's value and its comparisons with the printed references."""
    prec = digits_to_prec(digits)
    ref = spec.reference
    with mpmath.workprec(prec):
        log_value = log_abs_sq(uv.value)

        value_difference = None
        if ref.value is not None:
            diff, _ = printed_difference(uv.value, ref.value)
            value_difference = mpmath.nstr(diff, 5)

        residual = None
        if ref.polynomial is not None:
            residual = mpmath.nstr(polynomial_residual(ref.polynomial, uv.value, prec), 5)

        klf_difference = None
        if ref.klf_value is not None:
            klf_difference = mpmath.nstr(abs(log_value - mpmath.mpf(ref.klf_value)), 5)

        bound = mpmath.nstr(error_bound(uv, prec), 5)

    return Report(
        example=example,
        k=spec.k,
        label=spec.label,
        digits=digits,
        signs=tuple(spec.signs),
        value=_pair(uv.value, digits),
        error_bound=bound,
        term_values=tuple(_pair(v, digits) for v in uv.term_values),
        timings=tuple(round(t, 4) for t in uv.timings),
        log_abs_sq=mpmath.nstr(log_value, digits),
        reference_value=ref.value,
        value_difference=value_difference,
        polynomial_residual=residual,
        klf_value=ref.klf_value,
        klf_difference=klf_difference,
        recognized=recognition_dict(recognized) if recognized is not None else None,
    )


def reports_document(
    reports: Sequence[Report],
    extra: Optional[Dict[str, Any]] = None
) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "schema": REPORT_SCHEMA,
        "reports": [r.to_dict() for r in reports],
    }
    if extra:
        document.update(extra)
    return document


def save_document(document: Dict[str, Any], filepath: Union[str, Path]) -> None:
    """Write a report document as JSON.

    Raises:
        IOError: If the file cannot be written
    """
    try:
        with open(filepath, 'w') as f:
            json.dump(document, f, indent=2)
        logger.info(f"Saved report to {filepath}")
    except OSError as e:
        logger.error(f"Failed to save report: {e}")
        raise IOError(f"Failed to save report: {e}")


@dataclass(frozen=True)
class CheckResult:
    """One pass/fail comparison of an example."""

    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ExampleResult:
    """Outcome of verifying one example configuration.

    Attributes:
        name: Configuration name
        checks: Every comparison made, in order
        timings: Wall time of every evaluated term
        elapsed: Total wall time in seconds
        error: "<ClassName>: <message>" if evaluation raised
    """

    name: str
    checks: Tuple[CheckResult, ...] = ()
    timings: Tuple[float, ...] = ()
    elapsed: float = 0.0
    error: Optional[str] = None
    skipped: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.error is None and bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]


def format_summary_table(results: Sequence[ExampleResult]) -> str:
    """Fixed-width pass/fail table, one row per example."""
    header = f"{'example':<24}{'status':<8}{'checks':>8}{'terms':>7}{'slowest':>10}{'total':>10}"
    lines = [header, "-" * len(header)]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        passed = sum(c.passed for c in r.checks)
        slowest = f"{float(np.max(r.timings)):.2f}s" if r.timings else "-"
        lines.append(
            f"{r.name:<24}{status:<8}{f'{passed}/{len(r.checks)}':>8}"
            f"{len(r.timings):>7}{slowest:>10}{r.elapsed:>9.2f}s"
        )
    for r in results:
        if r.error is not None:
            lines.append(f"{r.name}: error: {r.error}")
        for c in r.failures:
            lines.append(f"{r.name}: failed {c.name}: {c.detail}")
        for note in r.skipped:
            lines.append(f"{r.name}: skipped {note}")
    n_passed = sum(r.passed for r in results)
    lines.append(f"{n_passed}/{len(results)} examples passed")
    return "\n".join(lines)
