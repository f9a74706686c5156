"""Example configurations: parsing, validation and JSON storage.

A configuration transcribes one worked example: the base field, the
modulus q, the smoothing index N, the units (one per class k and ideal
label) with their terms, printed references, and the cross-checks that
hold between the units.

Field elements are written as expressions in ``z`` (the generator), e.g.
``"-5z^2 - 11z + 5230"``; polynomials over Q as expressions in ``x``.
"""

import json
import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.polyerrors import BasePolynomialError
from sympy.parsing.sympy_parser import (
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from src.errors import ConfigError, EllipticGammaError
from src.mpnum.polynomial import IntPolynomial
from src.nfield.field import NumberField, NumberFieldElement
from src.recognize.relations import palindrome_check
from src.units.spec import UnitReference, UnitSpec, UnitTermSpec

logger = logging.getLogger(__name__)

CONFIG_DIR = Path(__file__).parent / "configs"

_TRANSFORMS = standard_transformations + (implicit_multiplication_application,)
_X = sympy.Symbol("x")
_Z = sympy.Symbol("z")


def _parse(text: Union[str, int], symbol: sympy.Symbol) -> sympy.Poly:
    """Parse an expression in one variable into a polynomial over QQ."""
    try:
        expr = parse_expr(str(text).replace("^", "**"), local_dict={symbol.name: symbol},
                          transformations=_TRANSFORMS)
        return sympy.Poly(expr, symbol, domain="QQ")
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError, BasePolynomialError) as e:
        raise ConfigError(f"cannot parse {text!r} as a polynomial in {symbol}: {e}")


def parse_polynomial(text: Union[str, Sequence[int]]) -> IntPolynomial:
    """Integer polynomial from an expression in x or a coefficient list (lowest first)."""
    if not isinstance(text, str):
        return IntPolynomial.from_list(text)
    coeffs = list(reversed(_parse(text, _X).all_coeffs()))
    if not all(c.is_integer for c in coeffs):
        raise ConfigError(f"polynomial must have integer coefficients, got {text!r}")
    return IntPolynomial.from_list(int(c) for c in coeffs)


def parse_element(field: NumberField, text: Union[str, int]) -> NumberFieldElement:
    """Field element from an expression in z such as ``"(z^3 - 2z^2 - 2z - 4)/5"``."""
    coeffs = reversed(_parse(text, _Z).all_coeffs())
    return field.element([Fraction(int(c.p), int(c.q)) for c in coeffs])


def format_element(x: NumberFieldElement) -> str:
    return str(x)


def parse_field(data: Dict[str, Any]) -> NumberField:
    """Field from ``{"polynomial": ..., "integral_basis": [...]}``."""
    if "polynomial" not in data:
        raise ConfigError("field needs a 'polynomial'")
    poly = parse_polynomial(data["polynomial"])
    power = NumberField(poly)
    basis = data.get("integral_basis")
    if basis is None:
        return power
    try:
        return NumberField(poly, tuple(parse_element(power, b).coeffs for b in basis))
    except (ValueError, EllipticGammaError) as e:
        raise ConfigError(f"invalid integral basis: {e}")


def format_field(field: NumberField) -> Dict[str, Any]:
    data: Dict[str, Any] = {"polynomial": str(field.defining_poly)}
    power = NumberField(field.defining_poly)
    if field.basis_coords != power.basis_coords:
        data["integral_basis"] = [format_element(b) for b in field.integral_basis]
    return data


@dataclass(frozen=True)
class UnitEntry:
    """One unit of an example and whether its signs come from a search."""

    spec: UnitSpec
    search_signs: bool = False


@dataclass(frozen=True)
class RelativePolynomialCheck:
    """prod (X - u) over the listed units must have the expected coefficients.

    Attributes:
        units: Indices of the conjugates in the example's unit list
        expected: Coefficient by degree, for the degrees printed
    """

    units: Tuple[int, ...]
    expected: Dict[int, NumberFieldElement] = dataclass_field(default_factory=dict)


@dataclass(frozen=True)
class ExampleChecks:
    """Identities between the units of an example.

    Attributes:
        reciprocal_pairs: (i, j) with u_i u_j = 1
        equal_pairs: (i, j) with u_i = u_j
        relative_polynomial: Recognition of prod (X - u) over K
        integral_elements: Printed elements that must lie in O_K
    """

    reciprocal_pairs: Tuple[Tuple[int, int], ...] = ()
    equal_pairs: Tuple[Tuple[int, int], ...] = ()
    relative_polynomial: Optional[RelativePolynomialCheck] = None
    integral_elements: Tuple[NumberFieldElement, ...] = ()


@dataclass(frozen=True)
class ExampleConfig:
    """A worked example: field, parameters, references and checks.

    Example:
        config = ConfigStorage.load_bundled("quartic-q2")
        for entry in config.units:
            eval_unit(entry.spec, prec=200)
    """

    name: str
    description: str
    field: NumberField
    q: int
    smoothing_n: int
    units: Tuple[UnitEntry, ...]
    checks: ExampleChecks = ExampleChecks()
    slow: bool = False

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ConfigError(f"q must be >= 1, got {self.q}")
        if not self.units:
            raise ConfigError(f"example {self.name} has no units")
        n = len(self.units)
        pairs = list(self.checks.reciprocal_pairs) + list(self.checks.equal_pairs)
        if self.checks.relative_polynomial is not None:
            pairs.append(tuple(self.checks.relative_polynomial.units))
        for pair in pairs:
            if any(not 0 <= i < n for i in pair):
                raise ConfigError(f"check refers to unit index outside 0..{n - 1}: {list(pair)}")

    def find_units(self, k: Optional[int] = None, label: Optional[str] = None) -> List[int]:
        """Indices of the units matching a class index and/or label."""
        return [
            i for i, entry in enumerate(self.units)
            if (k is None or entry.spec.k == k) and (label is None or entry.spec.label == label)
        ]


def _parse_term(data: Dict[str, Any], field: NumberField, k: int, q: int, n: int) -> Tuple[UnitTermSpec, bool]:
    nu = data.get("nu", 1)
    search = nu == "search"
    m = int(data.get("m", 1))
    delta = data.get("delta")
    term = UnitTermSpec(
        taus=tuple(parse_element(field, t) for t in data["taus"]),
        level=int(data["level"]),
        arg_rational=Fraction(k * m, q),
        arg_delta=parse_element(field, delta) if delta is not None else None,
        nu=1 if search else int(nu),
        smoothing_n=n,
        real_variant=bool(data.get("real_variant", False)),
    )
    return term, search


def _parse_reference(data: Dict[str, Any], field: NumberField) -> UnitReference:
    poly = data.get("polynomial")
    coeffs = tuple(parse_element(field, c) for c in poly) if poly is not None else None
    reference = UnitReference(
        value=data.get("value"),
        polynomial=coeffs,
        klf_value=data.get("klf_value"),
    )
    if data.get("palindromic") and not palindrome_check(list(coeffs or ())):
        raise ConfigError("reference polynomial is claimed palindromic but is not")
    return reference


def config_from_dict(data: Dict[str, Any]) -> ExampleConfig:
    """Build an ExampleConfig from its JSON document.

    Raises:
        ConfigError: If the document is malformed or violates an invariant
    """
    try:
        field = parse_field(data["field"])
        q = int(data["q"])
        n = int(data["smoothing_n"])
        units = []
        for u in data["units"]:
            k = int(u.get("k", 1))
            parsed = [_parse_term(t, field, k, q, n) for t in u["terms"]]
            terms = tuple(t for t, _ in parsed)
            search = any(s for _, s in parsed)
            spec = UnitSpec(
                field, terms, k=k, label=u.get("label", "(1)"),
                reference=_parse_reference(u.get("reference", {}), field),
            )
            units.append(UnitEntry(spec, search))

        checks_data = data.get("checks", {})
        rel = checks_data.get("relative_polynomial")
        relative = None
        if rel is not None:
            relative = RelativePolynomialCheck(
                units=tuple(int(i) for i in rel["units"]),
                expected={int(d): parse_element(field, c) for d, c in rel.get("expected", {}).items()},
            )
        checks = ExampleChecks(
            reciprocal_pairs=tuple(tuple(int(i) for i in p) for p in checks_data.get("reciprocal_pairs", [])),
            equal_pairs=tuple(tuple(int(i) for i in p) for p in checks_data.get("equal_pairs", [])),
            relative_polynomial=relative,
            integral_elements=tuple(parse_element(field, e) for e in checks_data.get("integral_elements", [])),
        )
        return ExampleConfig(
            name=data["name"],
            description=data.get("description", ""),
            field=field,
            q=q,
            smoothing_n=n,
            units=tuple(units),
            checks=checks,
            slow=bool(data.get("slow", False)),
        )
    except KeyError as e:
        raise ConfigError(f"missing key {e} in configuration")
    except ConfigError:
        raise
    except (ValueError, TypeError) as e:
        raise ConfigError(f"invalid configuration: {e}")


def _format_term(t: UnitTermSpec, k: int, q: int, search: bool) -> Dict[str, Any]:
    m = t.arg_rational * q / k
    if m.denominator != 1:
        raise ConfigError(f"argument {t.arg_rational} is not k m / q for k={k}, q={q}")
    data: Dict[str, Any] = {
        "taus": [format_element(tau) for tau in t.taus],
        "level": t.level,
        "m": int(m),
        "nu": "search" if search else t.nu,
    }
    if t.arg_delta is not None:
        data["delta"] = format_element(t.arg_delta)
    if t.real_variant:
        data["real_variant"] = True
    return data


def config_to_dict(config: ExampleConfig) -> Dict[str, Any]:
    """JSON document of an ExampleConfig (inverse of config_from_dict)."""
    units = []
    for entry in config.units:
        spec = entry.spec
        reference: Dict[str, Any] = {}
        if spec.reference.value is not None:
            reference["value"] = spec.reference.value
        if spec.reference.polynomial is not None:
            reference["polynomial"] = [format_element(c) for c in spec.reference.polynomial]
            reference["palindromic"] = spec.reference.is_palindromic
        if spec.reference.klf_value is not None:
            reference["klf_value"] = spec.reference.klf_value
        units.append({
            "k": spec.k,
            "label": spec.label,
            "terms": [_format_term(t, spec.k, config.q, entry.search_signs) for t in spec.terms],
            "reference": reference,
        })

    checks: Dict[str, Any] = {}
    c = config.checks
    if c.reciprocal_pairs:
        checks["reciprocal_pairs"] = [list(p) for p in c.reciprocal_pairs]
    if c.equal_pairs:
        checks["equal_pairs"] = [list(p) for p in c.equal_pairs]
    if c.relative_polynomial is not None:
        checks["relative_polynomial"] = {
            "units": list(c.relative_polynomial.units),
            "expected": {str(d): format_element(x) for d, x in c.relative_polynomial.expected.items()},
        }
    if c.integral_elements:
        checks["integral_elements"] = [format_element(x) for x in c.integral_elements]

    return {
        "schema": ConfigStorage.SCHEMA,
        "name": config.name,
        "description": config.description,
        "field": format_field(config.field),
        "q": config.q,
        "smoothing_n": config.smoothing_n,
        "slow": config.slow,
        "units": units,
        "checks": checks,
    }


class ConfigStorage:
    """Save and load example configurations.

    Example:
        config = ConfigStorage.load("configs/quartic-q2.json")
        ConfigStorage.save(config, "copy.json")
        ConfigStorage.bundled_names()      # ["cubic-q11", "intro-cubic", ...]
    """

    SCHEMA = 1

    @staticmethod
    def save(config: ExampleConfig, filepath: Union[str, Path]) -> None:
        """Write a configuration as JSON.

        Raises:
            IOError: If the file cannot be written
        """
        data = config_to_dict(config)
        try:
            with open(filepath, 'w') as f:
                json.dump(data, f, indent=2)
            logger.info(f"Saved configuration {config.name} to {filepath}")
        except OSError as e:
            logger.error(f"Failed to save configuration: {e}")
            raise IOError(f"Failed to save configuration: {e}")

    @staticmethod
    def load(filepath: Union[str, Path]) -> ExampleConfig:
        """Read a configuration from JSON.

        Raises:
            IOError: If the file cannot be read
            ConfigError: If the document is malformed
        """
        try:
            with open(filepath, 'r') as f:
                data = json.load(f)
        except OSError as e:
            logger.error(f"Failed to load configuration: {e}")
            raise IOError(f"Failed to load configuration: {e}")
        except json.JSONDecodeError as e:
            raise ConfigError(f"{filepath} is not valid JSON: {e}")

        schema = data.get("schema", 0)
        if schema != ConfigStorage.SCHEMA:
            logger.warning(f"Loading configuration with schema {schema} (current: {ConfigStorage.SCHEMA})")

        config = config_from_dict(data)
        logger.info(f"Loaded configuration {config.name} ({len(config.units)} units) from {filepath}")
        return config

    @staticmethod
    def bundled_names() -> List[str]:
        return sorted(p.stem for p in CONFIG_DIR.glob("*.json"))

    @staticmethod
    def bundled_path(name: str) -> Path:
        path = CONFIG_DIR / f"{name}.json"
        if not path.exists():
            raise ConfigError(f"no bundled configuration named {name!r}; choose from {ConfigStorage.bundled_names()}")
        return path

    @staticmethod
    def load_bundled(name: str) -> ExampleConfig:
        return ConfigStorage.load(ConfigStorage.bundled_path(name))

    @staticmethod
    def resolve(name_or_path: str) -> ExampleConfig:
        """Load a bundled configuration by name, or any configuration by path."""
        if Path(name_or_path).suffix == ".json" or Path(name_or_path).exists():
            return ConfigStorage.load(name_or_path)
        return ConfigStorage.load_bundled(name_or_path)
