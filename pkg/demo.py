#!/usr/bin/env python3
"""Demo script showing Gamma evaluation, unit computation and recognition."""

import mpmath

from src.cli.config import ConfigStorage, parse_element, parse_field
from src.gammaeval import GammaEvaluator, modular_check, theta
from src.mpnum.bigcomplex import BigComplex, digits_to_prec
from src.nfield.ideals import different_of_form, lambda_tilde, linear_form_values, t_tilde
from src.recognize import algdep
from src.units import eval_unit, log_abs_sq

DIGITS = 40


def main():
    """Run demo of the evaluator and the unit pipeline."""
    prec = digits_to_prec(DIGITS)

    print("=" * 70)
    print("Elliptic Gamma Units - Demo")
    print("=" * 70)

    # Theta and G_1
    print("\n" + "-" * 70)
    print("Evaluating theta and G_1")
    print("-" * 70)
    z = BigComplex.from_value("0.3+0.2i", prec)
    tau = BigComplex.from_value("0.1+0.5i", prec)
    print(f"\ntheta(0.3+0.2i, 0.1+0.5i) = {theta(z, tau, prec).to_string(20)}")

    evaluator = GammaEvaluator(prec)
    with mpmath.workprec(evaluator.wp):
        g1 = evaluator.evaluate(mpmath.mpc("0.3", "0.2"), [mpmath.mpc("0.1", "0.5"), mpmath.mpc("-0.2", "0.7")])
    print(f"G_1(0.3+0.2i, 0.1+0.5i, -0.2+0.7i) = {mpmath.nstr(g1, 20)}")

    stats = evaluator.get_cache_stats()
    print("\nCache Statistics:")
    print(f"  Hits: {stats['hits']}")
    print(f"  Misses: {stats['misses']}")
    print(f"  Translations: {stats['translations']}")

    residual = modular_check("0.3+0.1i", ["1", "0.2+1.1i", "-0.7+0.4i"], prec)
    print(f"\nModular property residual (n = 3): {mpmath.nstr(residual, 3)}")

    # Number field data
    print("\n" + "-" * 70)
    print("Different of a linear form on x^3 - x^2 + 5x - 2")
    print("-" * 70)
    field = parse_field({"polynomial": "x^3 - x^2 + 5x - 2"})
    ell = linear_form_values(field, [parse_element(field, "z^2 + 2z - 1")])
    different = different_of_form(field, ell)
    print(f"\n  D(ell) = {different}")
    print(f"  Norm: {different.norm()}")
    print(f"  lambda = {lambda_tilde(different)}, t = {t_tilde(different)}")

    # Unit and recognition
    print("\n" + "-" * 70)
    print("Smoothed theta unit over Q(sqrt(-3))")
    print("-" * 70)
    config = ConfigStorage.load_bundled("intro-theta")
    for entry in config.units:
        uv = eval_unit(entry.spec, prec)
        recognized = algdep(uv.value, 4, prec)
        with mpmath.workprec(prec):
            klf = log_abs_sq(uv.value)
        print(f"\n  k={entry.spec.k}: u = {uv.value.to_string(20)}")
        print(f"    log|u|^2 = {mpmath.nstr(klf, 15)}")
        print(f"    minimal polynomial: {recognized.polynomial}")
        print(f"    {'certified' if recognized.certified else 'not certified'}, {uv.total_time:.2f}s")

    print("\n" + "=" * 70)
    print("Demo Complete!")
    print("=" * 70)


if __name__ == "__main__":
    main()
