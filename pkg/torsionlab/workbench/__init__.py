"""
TorsionLab - Workbench Package
"""

from .executors import WorkbenchExecutor, to_plain
from .fixtures import FixtureSpec, gen_complex, gen_spectrum, single_class_spectrum, toy_complex
from .schemas import (
    ComplexDocument,
    ModelDocument,
    SpectrumDocument,
    load_complex,
    load_document,
    load_model,
    load_spectrum,
    parse_document,
    save_document,
)
from .suites import SUITES, CheckResult, SuiteReport, run_suite, suite_names
from .tables import to_csv, zeta_grid

__all__ = [
    'CheckResult', 'ComplexDocument', 'FixtureSpec', 'ModelDocument', 'SUITES', 'SpectrumDocument',
    'SuiteReport', 'WorkbenchExecutor', 'gen_complex', 'gen_spectrum', 'load_complex', 'load_document',
    'load_model', 'load_spectrum', 'parse_document', 'run_suite', 'save_document', 'single_class_spectrum',
    'suite_names', 'to_csv', 'to_plain', 'toy_complex', 'zeta_grid',
]
