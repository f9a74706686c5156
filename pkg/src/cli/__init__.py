"""Command line, example configurations and reports.

Key components:
- ConfigStorage / ExampleConfig: bundled and user JSON configurations
- verify_example: every printed check of one example
- Report: machine-readable result of one unit
- main: argparse entry point (python -m src.cli)
"""

from .config import (
    ConfigStorage,
    ExampleConfig,
    ExampleChecks,
    RelativePolynomialCheck,
    UnitEntry,
    config_from_dict,
    config_to_dict,
    parse_element,
    parse_field,
    parse_polynomial,
)
from .report import CheckResult, ExampleResult, Report, build_report, format_summary_table
from .verify import thread_cap, verify_example
from .main import build_parser, main

__all__ = [
    # Configuration
    'ConfigStorage',
    'ExampleConfig',
    'ExampleChecks',
    'RelativePolynomialCheck',
    'UnitEntry',
    'config_from_dict',
    'config_to_dict',
    'parse_element',
    'parse_field',
    'parse_polynomial',

    # Reports
    'CheckResult',
    'ExampleResult',
    'Report',
    'build_report',
    'format_summary_table',

    # Verification
    'thread_cap',
    'verify_example',

    # Entry point
    'build_parser',
    'main',
]
