"""Tests for example configurations and their storage."""

import json
import logging
from fractions import Fraction

import pytest

from src.cli.config import (
    ConfigStorage,
    ExampleConfig,
    ExampleChecks,
    UnitEntry,
    config_from_dict,
    config_to_dict,
    parse_element,
    parse_field,
    parse_polynomial,
)
from src.errors import ConfigError
from src.mpnum.polynomial import IntPolynomial
from src.nfield.field import NumberField


def theta_document():
    """Minimal document modelled on the bundled theta example."""
    return {
        "schema": 1,
        "name": "theta-test",
        "field": {"polynomial": "x^2 + x + 1"},
        "q": 13,
        "smoothing_n": 7,
        "units": [{
            "k": 1,
            "terms": [{"taus": ["z + 10"], "level": 91, "m": 1, "nu": 1}],
            "reference": {"polynomial": ["13", "0", "32", "3", "1"]},
        }],
    }


class TestParsing:
    """Test polynomial, element and field parsing."""

    def test_polynomial_from_string(self):
        """Test implicit multiplication and ^ for powers."""
        assert parse_polynomial("x^3 - x^2 + 5x - 2") == IntPolynomial.from_list([-2, 5, -1, 1])

    def test_polynomial_from_list(self):
        """Test a coefficient list, lowest degree first."""
        assert parse_polynomial([1, -3, -1, -6, 1]) == parse_polynomial("x^4 - 6x^3 - x^2 - 3x + 1")

    def test_polynomial_rational_rejected(self):
        """Test error on a non-integer coefficient."""
        with pytest.raises(ConfigError, match="integer coefficients"):
            parse_polynomial("x^2 + x/2")

    def test_element(self):
        """Test a rational element of the quartic field."""
        field = NumberField(parse_polynomial("x^4 - x^3 - 4x^2 - 11x + 16"))
        x = parse_element(field, "(z^3 - 2z^2 - 2z - 4)/5")
        assert x.coeffs == (Fraction(-4, 5), Fraction(-2, 5), Fraction(-2, 5), Fraction(1, 5))

    def test_element_reduced(self):
        """Test powers beyond the degree are reduced modulo the defining polynomial."""
        field = NumberField(parse_polynomial("x^3 - 10"))
        assert parse_element(field, "z^3 + 1") == field.element([11])

    def test_malformed_element(self):
        """Test error on a syntax error."""
        field = NumberField(parse_polynomial("x^2 + 1"))
        with pytest.raises(ConfigError, match="cannot parse"):
            parse_element(field, "z +* 2")

    def test_wrong_symbol(self):
        """Test error on an expression in another variable."""
        field = NumberField(parse_polynomial("x^2 + 1"))
        with pytest.raises(ConfigError):
            parse_element(field, "y + 1")

    def test_field_with_basis(self):
        """Test an explicit integral basis."""
        field = parse_field({
            "polynomial": "x^4 - x^3 - 4x^2 - 11x + 16",
            "integral_basis": ["1", "z", "(z^3 - 2z^2 - 2z - 4)/5", "(2z^3 + z^2 - 9z - 23)/5"],
        })
        assert field.integral_basis[2] == parse_element(field, "(z^3 - 2z^2 - 2z - 4)/5")

    def test_field_missing_polynomial(self):
        """Test error on a field without polynomial."""
        with pytest.raises(ConfigError, match="polynomial"):
            parse_field({})


class TestConfigFromDict:
    """Test document validation."""

    def test_theta_document(self):
        """Test a one-term theta example."""
        config = config_from_dict(theta_document())
        term = config.units[0].spec.terms[0]
        assert term.arg_rational == Fraction(1, 13)
        assert term.level == 91
        assert term.r == 0
        assert not config.units[0].search_signs

    def test_search_marker(self):
        """Test "nu": "search" marks the entry and starts from +1."""
        data = theta_document()
        data["units"][0]["terms"][0]["nu"] = "search"
        entry = config_from_dict(data).units[0]
        assert entry.search_signs
        assert entry.spec.signs == [1]

    def test_missing_key(self):
        """Test error on a missing required key."""
        data = theta_document()
        del data["q"]
        with pytest.raises(ConfigError, match="missing key"):
            config_from_dict(data)

    def test_invalid_term(self):
        """Test term validation surfaces as ConfigError."""
        data = theta_document()
        data["smoothing_n"] = 13
        with pytest.raises(ConfigError, match="coprime"):
            config_from_dict(data)

    def test_false_palindrome_claim(self):
        """Test error when a non-palindromic polynomial is claimed palindromic."""
        data = theta_document()
        data["units"][0]["reference"]["palindromic"] = True
        with pytest.raises(ConfigError, match="palindromic"):
            config_from_dict(data)

    def test_check_index_out_of_range(self):
        """Test error on a pair check naming a missing unit."""
        data = theta_document()
        data["checks"] = {"reciprocal_pairs": [[0, 1]]}
        with pytest.raises(ConfigError, match="outside"):
            config_from_dict(data)

    def test_find_units(self):
        """Test selection by class index and label."""
        config = ConfigStorage.load_bundled("pure-cubic-q3")
        assert config.find_units(k=2) == [1, 3]
        assert config.find_units(label="P59") == [2, 3]
        assert config.find_units(k=1, label="(1)") == [0]

    def test_no_units(self):
        """Test error on an example without units."""
        field = NumberField(parse_polynomial("x^2 + 1"))
        with pytest.raises(ConfigError, match="no units"):
            ExampleConfig("empty", "", field, 3, 2, (), ExampleChecks())


class TestBundled:
    """Test the bundled example configurations."""

    def test_all_present(self):
        """Test every worked example is bundled."""
        assert ConfigStorage.bundled_names() == [
            "cubic-q11", "intro-cubic", "intro-theta", "pure-cubic-q3",
            "quartic-q2", "quartic-q7", "quartic-real-subfield", "quintic",
        ]

    @pytest.mark.parametrize("name", ConfigStorage.bundled_names())
    def test_round_trip(self, name):
        """Test parse, serialize and parse again gives the same configuration."""
        config = ConfigStorage.load_bundled(name)
        data = config_to_dict(config)
        assert data["schema"] == ConfigStorage.SCHEMA
        assert config_from_dict(json.loads(json.dumps(data))) == config

    @pytest.mark.parametrize("name", ConfigStorage.bundled_names())
    def test_palindromic_references(self, name):
        """Test every reference polynomial marked palindromic is one."""
        for entry in ConfigStorage.load_bundled(name).units:
            poly = entry.spec.reference.polynomial
            if entry.spec.reference.is_palindromic:
                assert list(poly) == list(reversed(poly))

    def test_quintic_parameters(self):
        """Test the six quintic levels and signs."""
        spec = ConfigStorage.load_bundled("quintic").units[0].spec
        assert [t.level for t in spec.terms] == [1170939, 54219, 16203, 3531, 33, 4806021]
        assert spec.signs == [-1, 1, -1, 1, -1, 1]
        assert all(t.r == 3 for t in spec.terms)

    def test_cubic_classes(self):
        """Test the ten classes of the cubic q = 11 example."""
        config = ConfigStorage.load_bundled("cubic-q11")
        assert [e.spec.k for e in config.units] == list(range(1, 11))
        assert all(e.spec.signs == [-1] for e in config.units)
        assert config.units[3].spec.terms[0].arg_rational == Fraction(4, 11)

    def test_quartic_q7_integral_coefficient(self):
        """Test the printed coefficient has integer coordinates in the integral basis."""
        config = ConfigStorage.load_bundled("quartic-q7")
        (x,) = config.checks.integral_elements
        coords = config.field.coordinates(x)
        assert coords == (18874324715, -8351065208, -2227150790, 2282032049)

    def test_real_subfield_flags(self):
        """Test the real-subfield terms use the trigonometric variant."""
        spec = ConfigStorage.load_bundled("quartic-real-subfield").units[0].spec
        assert all(t.real_variant for t in spec.terms)

    def test_unknown_name(self):
        """Test error on an unknown bundled name."""
        with pytest.raises(ConfigError, match="no bundled configuration"):
            ConfigStorage.bundled_path("sextic")


class TestConfigStorage:
    """Test saving and loading files."""

    def test_save_load(self, tmp_path):
        """Test a saved configuration loads back equal."""
        config = config_from_dict(theta_document())
        path = tmp_path / "theta.json"
        ConfigStorage.save(config, path)
        assert ConfigStorage.load(path) == config
        assert ConfigStorage.resolve(str(path)) == config

    def test_missing_file(self, tmp_path):
        """Test IOError on a missing file."""
        with pytest.raises(IOError):
            ConfigStorage.load(tmp_path / "missing.json")

    def test_invalid_json(self, tmp_path):
        """Test ConfigError on malformed JSON."""
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError, match="not valid JSON"):
            ConfigStorage.load(path)

    def test_schema_mismatch_warns(self, tmp_path, caplog):
        """Test a different schema loads with a warning."""
        data = theta_document()
        data["schema"] = 0
        path = tmp_path / "old.json"
        path.write_text(json.dumps(data))
        with caplog.at_level(logging.WARNING):
            ConfigStorage.load(path)
        assert "schema 0" in caplog.text

    def test_entry_default(self):
        """Test entries default to fixed signs."""
        config = config_from_dict(theta_document())
        assert UnitEntry(config.units[0].spec) == config.units[0]
