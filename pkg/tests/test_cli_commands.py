"""Tests for the command-line subcommands."""

import json

import mpmath
import pytest

from src.cli.config import ConfigStorage, parse_element
from src.cli.main import build_parser, main, protect_negative_values
from src.cli.report import split_printed
from src.cli.verify import thread_cap
from src.errors import ConfigError
from src.gammaeval.hierarchy import gr
from src.gammaeval.point import GammaPoint
from src.gammaeval.theta import theta
from src.mpnum.bigcomplex import BigComplex, digits_to_prec


@pytest.fixture
def single_worker(monkeypatch):
    monkeypatch.setenv("ELLIPGAMMA_THREADS", "1")


def printed_value(line: str) -> mpmath.mpc:
    """Value part of "a + bi +/- bound"."""
    re_text, im_text = split_printed(line.split("+/-")[0])
    return mpmath.mpc(mpmath.mpf(re_text), mpmath.mpf(im_text))


class TestGamma:
    """Test the gamma subcommand."""

    def test_theta_dispatch(self, capsys):
        """Test r = 0 agrees with theta()."""
        assert main(["gamma", "0.3+0.2i", "0.1+0.5i", "--digits", "30"]) == 0
        out = capsys.readouterr().out
        prec = digits_to_prec(30)
        expected = theta(BigComplex.from_value("0.3+0.2i", prec), BigComplex.from_value("0.1+0.5i", prec), prec)
        with mpmath.workprec(prec):
            assert abs(printed_value(out) - expected.value) < mpmath.mpf(10) ** -25
        assert "+/-" in out

    def test_negative_parameter(self, capsys):
        """Test a parameter with a negative real part is read as a value."""
        assert main(["gamma", "0.3+0.2i", "0.1+0.5i", "-0.2+0.7i", "--r", "1", "--digits", "30"]) == 0
        out = capsys.readouterr().out
        prec = digits_to_prec(30)
        expected = gr(GammaPoint.from_values("0.3+0.2i", ["0.1+0.5i", "-0.2+0.7i"], prec), prec)
        with mpmath.workprec(prec):
            assert abs(printed_value(out) - expected.value) < mpmath.mpf(10) ** -25 * abs(expected.value)

    def test_negative_argument(self, capsys):
        """Test a negative first argument with a negative exponent is read as a value."""
        assert main(["gamma", "-1e-1+0.2i", "0.1+0.5i", "--digits", "20"]) == 0
        assert "+/-" in capsys.readouterr().out

    def test_real_parameter(self, capsys):
        """Test a real parameter exits 2 with the error name."""
        assert main(["gamma", "0.3+0.2i", "0.5", "--digits", "20"]) == 2
        assert "error: RealParameter" in capsys.readouterr().err

    def test_r_mismatch(self, capsys):
        """Test --r must match the number of parameters."""
        assert main(["gamma", "0.3+0.2i", "0.1+0.5i", "--r", "1"]) == 2
        assert "DimensionMismatch" in capsys.readouterr().err


class TestUnit:
    """Test the unit subcommand on the theta example."""

    def test_report_to_stdout(self, capsys):
        """Test the JSON report of one class."""
        assert main(["unit", "intro-theta", "--class", "1", "--digits", "40"]) == 0
        document = json.loads(capsys.readouterr().out)
        assert document["schema"] == 1
        (report,) = document["reports"]
        assert report["k"] == 1
        assert report["signs"] == [1]
        assert float(report["polynomial_residual"]) < 1e-25
        assert len(report["timings"]) == 1

    def test_recognize(self, tmp_path, capsys):
        """Test algdep recovers the absolute quartic, written to a file."""
        path = tmp_path / "report.json"
        code = main(["unit", "intro-theta", "--class", "2", "--digits", "40",
                     "--recognize", "4", "--output", str(path)])
        assert code == 0
        assert "intro-theta (1) k=2" in capsys.readouterr().out
        recognized = json.loads(path.read_text())["reports"][0]["recognized"]
        assert recognized["coefficients"] == [13, 0, 32, 3, 1]
        assert recognized["certified"]

    def test_relative(self, capsys):
        """Test the two classes give X^2 + (7z + 5) X + z - 3 over Q(sqrt(-3))."""
        assert main(["unit", "intro-theta", "--digits", "40", "--relative"]) == 0
        document = json.loads(capsys.readouterr().out)
        field = ConfigStorage.load_bundled("intro-theta").field
        coeffs = [parse_element(field, c) for c in document["relative_polynomial"]["coefficients"]]
        assert coeffs == [
            parse_element(field, "z - 3"),
            parse_element(field, "7z + 5"),
            field.one(),
        ]

    def test_no_matching_unit(self, capsys):
        """Test an unknown label exits 2."""
        assert main(["unit", "intro-theta", "--label", "P59"]) == 2
        assert "ConfigError" in capsys.readouterr().err

    def test_missing_config(self, tmp_path, capsys):
        """Test a missing config file exits 2."""
        assert main(["unit", str(tmp_path / "missing.json")]) == 2


class TestVerifyAll:
    """Test the verify-all subcommand."""

    def test_theta_example_passes(self, single_worker, capsys):
        """Test the theta example passes at 30 digits."""
        assert main(["verify-all", "--digits", "30", "--examples", "intro-theta"]) == 0
        out = capsys.readouterr().out
        assert "intro-theta" in out
        assert "PASS" in out
        assert "1/1 examples passed" in out

    def test_oracle(self, single_worker, capsys):
        """Test the truncated-product cross-check runs on the theta example."""
        assert main(["verify-all", "--digits", "30", "--examples", "intro-theta", "--oracle"]) == 0
        assert "skipped oracle" not in capsys.readouterr().out

    def test_corrupted_config_fails(self, single_worker, tmp_path, capsys):
        """Test a flipped sign makes the example fail with exit 1."""
        data = json.loads(ConfigStorage.bundled_path("intro-theta").read_text())
        data["units"][0]["terms"][0]["nu"] = -1
        path = tmp_path / "corrupted.json"
        path.write_text(json.dumps(data))
        assert main(["verify-all", "--digits", "30", "--config", str(path)]) == 1
        out = capsys.readouterr().out
        assert "FAIL" in out
        assert "failed polynomial (1) k=1" in out

    def test_skip_slow(self, single_worker, capsys):
        """Test --skip-slow leaves only the fast examples."""
        assert main(["verify-all", "--digits", "30", "--skip-slow"]) == 0
        out = capsys.readouterr().out
        assert "intro-theta" in out
        assert "quintic" not in out

    def test_thread_cap(self, monkeypatch):
        """Test the worker cap from the environment."""
        monkeypatch.setenv("ELLIPGAMMA_THREADS", "3")
        assert thread_cap() == 3
        monkeypatch.setenv("ELLIPGAMMA_THREADS", "0")
        with pytest.raises(ConfigError):
            thread_cap()


class TestNfield:
    """Test the nfield subcommand."""

    CUBIC = ["--poly", "x^3 - x^2 + 5x - 2", "--units", "z^2 + 2z - 1"]

    def test_cubic_different(self, capsys):
        """Test the different of the cubic form has norm 31."""
        assert main(["nfield", "different"] + self.CUBIC) == 0
        assert "norm: 31" in capsys.readouterr().out

    def test_cubic_lambda_and_t(self, capsys):
        """Test lambda = 1 and t = 31."""
        assert main(["nfield", "lambda"] + self.CUBIC) == 0
        assert capsys.readouterr().out.strip() == "1"
        assert main(["nfield", "ttilde"] + self.CUBIC) == 0
        assert capsys.readouterr().out.strip() == "31"

    def test_trace_on_gaussian(self, capsys):
        """Test the trace form on Q(i) has different (2)."""
        assert main(["nfield", "different", "--poly", "x^2 + 1", "--trace"]) == 0
        assert "norm: 4" in capsys.readouterr().out
        assert main(["nfield", "lambda", "--poly", "x^2 + 1", "--trace"]) == 0
        assert capsys.readouterr().out.strip() == "2"

    def test_explicit_form(self, capsys):
        """Test form values given directly."""
        assert main(["nfield", "different", "--poly", "x^2 + 1", "--form", "2,0"]) == 0
        assert "norm: 4" in capsys.readouterr().out

    def test_unimodular_parallelepiped(self, capsys):
        """Test a unimodular cone has only the origin."""
        assert main(["nfield", "parallelepiped", "--alphas", "1,0,0;1,1,0", "--line", "0,3,1"]) == 0
        assert capsys.readouterr().out.split("\n")[:2] == ["0 0 0", "count: 1"]

    def test_form_required(self, capsys):
        """Test exactly one form source must be given."""
        assert main(["nfield", "different", "--poly", "x^2 + 1"]) == 2
        assert "ConfigError" in capsys.readouterr().err

    def test_singular_form(self, capsys):
        """Test the zero form exits 2."""
        assert main(["nfield", "different", "--poly", "x^2 + 1", "--form", "0,0"]) == 2
        assert "SingularForm" in capsys.readouterr().err


class TestParser:
    """Test argument parsing."""

    def test_defaults(self):
        """Test the default digits and log level."""
        args = build_parser().parse_args(["unit", "quartic-q2"])
        assert args.digits == 50
        assert args.log_level == "WARNING"
        assert args.k is None

    def test_command_required(self):
        """Test a subcommand is required."""
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_negative_literals_protected(self):
        """Test only negative literals after gamma are shielded from option parsing."""
        argv = ["--log-level", "INFO", "gamma", "-0.2+0.7i", "-i", "--digits", "30", "--r", "-1"]
        protected = protect_negative_values(argv)
        assert protected == ["--log-level", "INFO", "gamma", " -0.2+0.7i", " -i", "--digits", "30", "--r", " -1"]
        assert protect_negative_values(["unit", "quartic-q2", "--sign-search", "-3.75"]) == [
            "unit", "quartic-q2", "--sign-search", "-3.75"]
        args = build_parser().parse_args(protect_negative_values(["gamma", "-0.3-0.2i", "-0.1+0.5i"]))
        assert [t.strip() for t in args.taus] == ["-0.1+0.5i"]
        assert args.z.strip() == "-0.3-0.2i"
