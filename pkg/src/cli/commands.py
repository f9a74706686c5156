"""Subcommands: gamma, unit, verify-all and nfield.

Every command takes the parsed argparse namespace and returns an exit
code. Domain errors propagate as EllipticGammaError; main() turns them into
exit code 2.
"""

import argparse
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

import mpmath

from src.errors import ConfigError, DimensionMismatch
from src.gammaeval.hierarchy import gr
from src.gammaeval.point import GammaPoint
from src.gammaeval.real_variant import gr_real_variant
from src.mpnum.bigcomplex import BigComplex, digits_to_prec
from src.nfield.field import NumberField
from src.nfield.ideals import different_of_form, lambda_tilde, linear_form_values, t_tilde
from src.nfield.lattice import parallelepiped_points
from src.nfield.matrix import IntegerMatrix
from src.recognize.relations import algdep, relative_polynomial
from src.units.evaluator import eval_unit
from src.units.signs import sign_search
from .config import ConfigStorage, format_element, parse_element, parse_field
from .report import (
    ExampleResult,
    Report,
    build_report,
    format_summary_table,
    recognition_dict,
    reports_document,
    save_document,
)
from .verify import resolve_signs, thread_cap, verify_example, verify_path

logger = logging.getLogger(__name__)

# relative error of gr() and gr_real_variant()
GAMMA_ERROR_BITS = 16


def gamma_value(
    z: str,
    taus: Sequence[str],
    digits: int,
    real_variant: bool = False
) -> Tuple[BigComplex, mpmath.mpf]:
    """G_r(z, taus) and an absolute error bound."""
    prec = digits_to_prec(digits)
    if real_variant:
        value = gr_real_variant(z, list(taus), prec)
    else:
        value = gr(GammaPoint.from_values(z, list(taus), prec), prec)
    with mpmath.workprec(prec):
        bound = abs(value.value) * mpmath.ldexp(1, -prec + GAMMA_ERROR_BITS)
    return value, bound


def cmd_gamma(args: argparse.Namespace) -> int:
    """Print G_r(z, tau_0, ..., tau_r) with its error bound."""
    if args.r is not None and args.r != len(args.taus) - 1:
        raise DimensionMismatch(f"r = {args.r} needs {args.r + 1} parameters, got {len(args.taus)}")
    value, bound = gamma_value(args.z, args.taus, args.digits, args.real_variant)
    print(f"{value.to_string(args.digits)} +/- {mpmath.nstr(bound, 3)}")
    return 0


def cmd_unit(args: argparse.Namespace) -> int:
    """Evaluate the selected units of a configuration and emit their report."""
    config = ConfigStorage.resolve(args.config)
    indices = config.find_units(args.k, args.label)
    if not indices:
        raise ConfigError(f"no unit of {config.name} matches k={args.k} label={args.label}")

    prec = digits_to_prec(args.digits)
    reports: List[Report] = []
    values = []
    for i in indices:
        entry = config.units[i]
        if args.sign_search is not None:
            signs = sign_search(entry.spec.terms, args.sign_search, prec)
            spec = entry.spec.with_signs(signs)
        else:
            spec = resolve_signs(entry, prec)
        uv = eval_unit(spec, prec)
        values.append(uv.value)
        recognized = algdep(uv.value, args.recognize, prec) if args.recognize else None
        reports.append(build_report(config.name, spec, uv, args.digits, recognized))

    extra: Dict[str, Any] = {}
    if args.relative:
        coeffs, results = relative_polynomial(values, config.field, prec)
        extra["relative_polynomial"] = {
            "coefficients": [format_element(c) for c in coeffs],
            "relations": [recognition_dict(r) for r in results],
        }
    document = reports_document(reports, extra)

    if args.output:
        save_document(document, args.output)
        for report in reports:
            print(report.summary_line())
    else:
        print(json.dumps(document, indent=2))
    return 0


def _verify_targets(args: argparse.Namespace) -> List[str]:
    if args.config:
        return list(args.config)
    names = args.examples or ConfigStorage.bundled_names()
    if args.skip_slow:
        names = [n for n in names if not ConfigStorage.load_bundled(n).slow]
    return names


def cmd_verify_all(args: argparse.Namespace) -> int:
    """Verify bundled (or given) configurations; exit 1 if any fails."""
    targets = _verify_targets(args)
    if not targets:
        raise ConfigError("nothing to verify")
    workers = min(thread_cap(), len(targets))
    logger.info(f"verifying {len(targets)} examples at {args.digits} digits with {workers} workers")

    results: List[ExampleResult]
    if workers == 1:
        results = [verify_example(ConfigStorage.resolve(t), args.digits, args.oracle) for t in targets]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(verify_path, t, args.digits, args.oracle) for t in targets]
            results = [f.result() for f in futures]

    print(format_summary_table(results))
    return 0 if all(r.passed for r in results) else 1


def _parse_vectors(text: str) -> List[List[int]]:
    """Integer vectors written as "1,0,0;1,1,0"."""
    try:
        return [[int(v) for v in part.split(",")] for part in text.split(";") if part.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse integer vectors from {text!r}")


def _nfield_field(args: argparse.Namespace) -> NumberField:
    data: Dict[str, Any] = {"polynomial": args.poly}
    if args.basis:
        data["integral_basis"] = [b for b in args.basis.split(";") if b.strip()]
    return parse_field(data)


def _nfield_form(args: argparse.Namespace, field: NumberField) -> List[Fraction]:
    given = [args.units is not None, args.form is not None, args.trace]
    if sum(given) != 1:
        raise ConfigError("give exactly one of --units, --form or --trace")
    if args.trace:
        return [w.trace() for w in field.integral_basis]
    if args.form is not None:
        try:
            return [Fraction(v) for v in args.form.split(",")]
        except ValueError:
            raise ConfigError(f"cannot parse rational form values from {args.form!r}")
    units = [parse_element(field, u) for u in args.units.split(";") if u.strip()]
    return linear_form_values(field, units)


def cmd_nfield(args: argparse.Namespace) -> int:
    """Exact number-field computations: different, lambda, ttilde, parallelepiped."""
    if args.action == "parallelepiped":
        alphas = _parse_vectors(args.alphas)
        line = _parse_vectors(args.line)
        if len(line) != 1:
            raise DimensionMismatch(f"--line must be a single vector, got {len(line)}")
        n = len(line[0])
        lattice = (IntegerMatrix.from_rows(_parse_vectors(args.lattice))
                   if args.lattice else IntegerMatrix.identity(n))
        points = parallelepiped_points(alphas, line[0], lattice)
        for p in points:
            print(" ".join(str(v) for v in p))
        print(f"count: {len(points)}")
        return 0

    if args.poly is None:
        raise ConfigError(f"nfield {args.action} needs --poly")
    field = _nfield_field(args)
    ell = _nfield_form(args, field)
    different = different_of_form(field, ell)
    if args.action == "different":
        print(different)
        print(f"norm: {different.norm()}")
    elif args.action == "lambda":
        print(lambda_tilde(different))
    else:
        print(t_tilde(different))
    return 0