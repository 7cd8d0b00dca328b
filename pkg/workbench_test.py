#!/usr/bin/env python3
"""
TorsionLab - Workbench tests: documents, fixtures, suites, executor and CLI
"""

import json

import numpy as np
import pytest
from click.testing import CliRunner
from pydantic import ValidationError

from torsionlab.config import Settings, SpectralSettings, Tolerances, load_settings, parse_seeds, setup_logging
from torsionlab.det_line import refined_torsion
from torsionlab.errors import FixtureError, SchemaError, UnknownSuiteError
from torsionlab.workbench import (
    ComplexDocument,
    FixtureSpec,
    ModelDocument,
    SpectrumDocument,
    WorkbenchExecutor,
    gen_complex,
    gen_spectrum,
    load_complex,
    load_spectrum,
    parse_document,
    run_suite,
    save_document,
    suite_names,
    suites,
    to_plain,
    zeta_grid,
)
from torsionlab.workbench.cli import main
from torsionlab.zeta_engine import ModelSpectralData, Truncation, convergence_abscissa, log_ruelle

QUIET = {"TORSIONLAB_LOG_LEVEL": "ERROR"}


@pytest.fixture
def runner():
    yield CliRunner()
    setup_logging("WARNING")


@pytest.fixture
def executor():
    yield WorkbenchExecutor()
    setup_logging("WARNING")


def test_complex_document_round_trip(random_complex, tmp_path):
    """Test a complex survives the JSON document unchanged"""
    path = tmp_path / "complex.json"
    save_document(ComplexDocument.from_complex(random_complex), path)
    loaded = load_complex(path)
    assert loaded.dims == random_complex.dims
    for a, b in zip(loaded.partial + loaded.gamma, random_complex.partial + random_complex.gamma):
        np.testing.assert_array_equal(a, b)


def test_spectrum_document_round_trip(spectrum_d5, tmp_path):
    """Test a length spectrum survives the JSON document unchanged"""
    path = tmp_path / "spectrum.json"
    save_document(SpectrumDocument.from_spectrum(spectrum_d5), path)
    loaded = load_spectrum(path)
    assert loaded.growth_abscissa == spectrum_d5.growth_abscissa
    np.testing.assert_array_equal(loaded.lengths, spectrum_d5.lengths)
    s = convergence_abscissa(spectrum_d5, "ruelle") + 3.0
    assert log_ruelle(s, loaded).value == log_ruelle(s, spectrum_d5).value


def test_model_document_round_trip():
    """Test model data keeps eigenvalues and kernel dimensions"""
    model = ModelSpectralData(3, ([0.0, 2.0], [3.0 + 1.0j], [3.0 - 1.0j], [0.0, 2.0]))
    restored = ModelDocument.model_validate_json(ModelDocument.from_model(model).model_dump_json()).to_model()
    assert restored.d_chi == (1, 0, 0, 1)
    np.testing.assert_array_equal(restored.eigenvalues[1], model.eigenvalues[1])


@pytest.mark.parametrize(
    "text, path",
    [
        ("{", "$"),
        ('{"d": "three", "dims": [1, 1], "partial": [], "gamma": []}', "d"),
        ('{"d": 1, "dims": [1, 1], "partial": [], "gamma": "none"}', "gamma"),
    ],
)
def test_schema_error_paths(text, path):
    """Test malformed documents report the offending location"""
    with pytest.raises(SchemaError) as info:
        parse_document(text, ComplexDocument)
    assert info.value.path == path


def test_complex_document_shape_errors():
    """Test block shapes are checked against the declared dimensions"""
    document = ComplexDocument(d=1, dims=[1, 1], partial=[[[(1.0, 0.0), (2.0, 0.0)]]],
                               gamma=[[[(1.0, 0.0)]], [[(1.0, 0.0)]]])
    with pytest.raises(SchemaError) as info:
        document.to_complex()
    assert info.value.path == "partial.0"
    lopsided = ComplexDocument(d=1, dims=[1, 2], partial=[[]], gamma=[[], []])
    with pytest.raises(SchemaError) as info:
        lopsided.to_complex()
    assert info.value.path == "dims"


def test_missing_file_is_schema_error(tmp_path):
    """Test unreadable files are input errors"""
    with pytest.raises(SchemaError):
        load_complex(tmp_path / "missing.json")


def test_fixtures_are_deterministic():
    """Test equal seeds give equal fixtures and different seeds differ"""
    spec = FixtureSpec(kind="hermitian-model-complex", d=5, seed=3, epsilon=0.1)
    a, b = gen_complex(spec), gen_complex(spec)
    for x, y in zip(a.partial, b.partial):
        np.testing.assert_array_equal(x, y)
    other = gen_complex(spec.model_copy(update={"seed": 4}))
    assert not np.allclose(a.partial[0], other.partial[0])
    first = gen_spectrum(FixtureSpec(kind="synthetic-spectrum", seed=9))
    second = gen_spectrum(FixtureSpec(kind="synthetic-spectrum", seed=9))
    np.testing.assert_array_equal(first.lengths, second.lengths)


def test_fixture_errors():
    """Test malformed fixture requests are rejected with their seed"""
    with pytest.raises(FixtureError) as info:
        gen_complex(FixtureSpec(kind="random-acyclic-complex", d=3, dims=[1, 2, 1, 1], seed=17))
    assert info.value.seed == 17
    with pytest.raises(FixtureError):
        gen_complex(FixtureSpec(kind="hermitian-model-complex", betti=[0, 1, 1, 0]))
    with pytest.raises(FixtureError):
        gen_complex(FixtureSpec(kind="random-acyclic-complex", betti=[1, 0, 0, 0]))
    with pytest.raises(FixtureError):
        gen_spectrum(FixtureSpec(kind="synthetic-spectrum", d=4))
    with pytest.raises(ValidationError):
        FixtureSpec(kind="unknown")


def test_toy_fixture_family():
    """Test the toy fixture family"""
    toy = gen_complex(FixtureSpec(kind="toy-d1"))
    assert refined_torsion(toy).coeff == pytest.approx(2.0)


def test_zeta_grid(spectrum_d3):
    """Test the evaluation grid columns and values"""
    s = convergence_abscissa(spectrum_d3, "ruelle") + 3.0
    frame = zeta_grid(spectrum_d3, [s, s + 1.0j], Truncation())
    assert list(frame.columns) == ["s_re", "s_im", "log_R_re", "log_R_im", "tail_bound"]
    assert frame["s_im"].tolist() == [0.0, 1.0]
    assert frame["log_R_re"][0] == log_ruelle(s, spectrum_d3).value.real


def test_run_suite_single():
    """Test one suite on one seed passes"""
    report = run_suite(["exponent-identity"], [1])
    assert report.passed
    assert [(r.name, r.seed, r.status) for r in report.results] == [("exponent-identity", 1, "PASS")]


def test_run_suite_empty():
    """Test an empty selection gives an empty report"""
    report = run_suite([], [1])
    assert report.results == []
    assert report.passed
    assert report.to_csv() == "name,seed,status,max_residual,tolerance,cases,detail\n"


def test_run_suite_unknown():
    """Test unknown suite names are input errors"""
    with pytest.raises(UnknownSuiteError):
        run_suite(["no-such-suite"], [1])


def test_suite_csv_is_reproducible():
    """Test two runs with the same seeds give byte-identical reports"""
    names = ["exponent-identity", "singularity-order", "c-sigma", "eta-counts"]
    cases = {"eta-counts": 10}
    first = run_suite(names, [1, 2], cases=cases)
    second = run_suite(names, [1, 2], cases=cases)
    assert first.to_csv() == second.to_csv()
    assert [r.name for r in first.results] == [n for n in names for _ in (1, 2)]
    assert "runtime" in first.to_frame(timings=True).columns
    assert "runtime" not in first.to_frame().columns


@pytest.mark.parametrize("name", suite_names())
def test_every_suite_passes_on_a_small_run(name):
    """Test each registered suite with a reduced case count"""
    report = run_suite([name], [1], cases={name: 3})
    assert report.passed, report.failures


def test_agmon_independence_without_two_angles_is_skipped(monkeypatch):
    """Test fixtures admitting a single Agmon angle give a SKIP row rather than a pass"""
    monkeypatch.setattr(suites, "admissible_angles", lambda *args, **kwargs: [-np.pi / 2])
    report = run_suite(["agmon-independence"], [1], cases={"agmon-independence": 2})
    [result] = report.results
    assert result.status == "SKIP"
    assert result.cases == 0
    assert result.detail == "fixtures without a second admissible angle: 2"
    assert report.passed
    assert report.skipped == [result]
    assert "agmon-independence,1,SKIP" in report.to_csv()


def test_settings_from_yaml(tmp_path, monkeypatch):
    """Test YAML settings, malformed files and environment overrides"""
    monkeypatch.setenv("TORSIONLAB_SEED", "")
    path = tmp_path / "workbench.yaml"
    path.write_text("zeta:\n  n_max: 12\nsuite:\n  seeds: [7]\n")
    settings = load_settings(str(path))
    assert settings.zeta.n_max == 12
    assert settings.suite.seeds == [7]
    monkeypatch.setenv("TORSIONLAB_SEED", "4,5")
    assert load_settings(str(path)).suite.seeds == [4, 5]
    path.write_text("zeta: [unclosed\n")
    assert load_settings(str(path)).zeta.n_max == 60
    assert parse_seeds("1, 2,3") == [1, 2, 3]


def test_settings_tolerances(tmp_path):
    """Test every configured tolerance reaches the tolerance bundle"""
    assert Settings().tolerances() == Tolerances()
    assert Tolerances().commute_tol == 1e-10
    assert Tolerances().projection_tol == 1e-8
    assert "branch_tol" not in SpectralSettings.model_fields
    path = tmp_path / "workbench.yaml"
    path.write_text(
        "spectral:\n  cluster_tol: 1.0e-7\n  axis_tol: 1.0e-9\n  agmon_epsilon: 1.0e-6\n"
        "detline:\n  rank_tol: 1.0e-11\n"
        "torsion:\n  assumption2_tol: 1.0e-7\n  chain_tol: 1.0e-9\n  commute_tol: 1.0e-12\n"
        "  projection_tol: 1.0e-9\n  zero_tol: 1.0e-5\n"
    )
    tols = load_settings(str(path)).tolerances()
    assert tols == Tolerances(cluster_tol=1e-7, axis_tol=1e-9, agmon_epsilon=1e-6, rank_tol=1e-11,
                              assumption2_tol=1e-7, chain_tol=1e-9, commute_tol=1e-12, projection_tol=1e-9,
                              zero_tol=1e-5)


def test_executor_forwards_agmon_epsilon(tmp_path, toy):
    """Test a configured exclusion half-width wider than every gap leaves no Agmon angle"""
    path = tmp_path / "workbench.yaml"
    path.write_text("spectral:\n  agmon_epsilon: 2.0\n")
    result = WorkbenchExecutor(str(path)).execute("torsion", complex=toy)
    setup_logging("WARNING")
    assert not result["success"]
    assert result["error_kind"] == "numerical"
    assert "Agmon angle" in result["error"]


def test_executor_forwards_commute_tol(tmp_path, random_complex):
    """Test the configured commutation tolerance reaches the spectral split of the torsion operation"""
    path = tmp_path / "workbench.yaml"
    path.write_text("torsion:\n  commute_tol: -1.0\n")
    result = WorkbenchExecutor(str(path)).execute("torsion", complex=random_complex)
    setup_logging("WARNING")
    assert not result["success"]
    assert "commute with B^2" in result["error"]


def test_executor_unknown_operation(executor):
    """Test unknown operations come back as input errors"""
    result = executor.execute("bogus")
    assert not result["success"]
    assert result["error_kind"] == "input"


def test_executor_torsion(executor, toy):
    """Test the torsion operation on the toy complex"""
    result = executor.execute("torsion", complex=toy)
    assert result["success"]
    assert result["rho_gamma"] == pytest.approx(2.0)
    assert result["cappell_miller"] == pytest.approx(4.0)
    assert result["det_gr"] == pytest.approx(2.0)
    assert result["eta"] == 0.5


def test_executor_identities(executor, random_complex):
    """Test the identities operation reports passing checks and chain links"""
    result = executor.execute("identities", complex=random_complex)
    assert result["success"]
    assert result["passed"]
    assert {link["name"] for link in result["chain"]} >= {"ruelle-cm", "ruelle-modulus"}


def test_executor_missing_file(executor, tmp_path):
    """Test a missing input file is an input error"""
    result = executor.execute("validate", path=str(tmp_path / "missing.json"))
    assert result["error_kind"] == "input"


def test_executor_ruelle_zero_singular(executor):
    """Test a kernel yields the singularity order instead of a value"""
    model = ModelSpectralData(3, ([0.0, 2.0], [3.0], [3.0], [0.0, 2.0]))
    result = executor.execute("ruelle-zero", model=model)
    assert result["success"]
    assert not result["regular"]
    assert result["order"] == 4


def test_executor_convergence_error(executor, spectrum_d3):
    """Test evaluation left of the abscissa is reported as a numerical error"""
    result = executor.execute("zeta-eval", spectrum=spectrum_d3, points=[0.1])
    assert not result["success"]
    assert result["error_kind"] == "numerical"


def test_executor_fixtures_gen(executor, tmp_path):
    """Test generated fixtures are written and load back identically"""
    path = tmp_path / "fixture.json"
    result = executor.execute("fixtures-gen", kind="random-acyclic-complex", seed=42, d=3, output=str(path))
    assert result["success"]
    loaded = load_complex(path)
    expected = gen_complex(FixtureSpec(kind="random-acyclic-complex", d=3, seed=42))
    np.testing.assert_array_equal(loaded.partial[1], expected.partial[1])


def test_to_plain():
    """Test complex values become [re, im] pairs"""
    assert to_plain({"a": [1 + 2j, np.float64(3.0)], "b": (np.complex128(1j),)}) == {
        "a": [[1.0, 2.0], 3.0],
        "b": [[0.0, 1.0]],
    }


def test_cli_toy_torsion(runner, tmp_path):
    """Test fixture generation and torsion through the command line"""
    path = tmp_path / "toy.json"
    result = runner.invoke(main, ["fixtures", "gen", "--kind", "toy-d1", "-o", str(path)], env=QUIET)
    assert result.exit_code == 0
    result = runner.invoke(main, ["complex", "torsion", str(path)], env=QUIET)
    assert result.exit_code == 0
    output = json.loads(result.stdout)
    assert output["cappell_miller"] == pytest.approx([4.0, 0.0])
    assert output["rho_gamma"] == pytest.approx([2.0, 0.0])


def test_cli_identities(runner, tmp_path):
    """Test the identities command exits cleanly on the toy complex"""
    path = tmp_path / "toy.json"
    runner.invoke(main, ["fixtures", "gen", "--kind", "toy-d1", "-o", str(path)], env=QUIET)
    result = runner.invoke(main, ["complex", "identities", str(path)], env=QUIET)
    assert result.exit_code == 0
    assert json.loads(result.stdout)["passed"]


def test_cli_malformed_input(runner, tmp_path):
    """Test malformed JSON exits with code 2"""
    path = tmp_path / "broken.json"
    path.write_text("{")
    result = runner.invoke(main, ["complex", "validate", str(path)], env=QUIET)
    assert result.exit_code == 2


def test_cli_bad_point(runner, tmp_path):
    """Test an unparsable evaluation point is a usage error"""
    path = tmp_path / "spec.json"
    save_document(SpectrumDocument.from_spectrum(gen_spectrum(FixtureSpec(kind="synthetic-spectrum"))), path)
    result = runner.invoke(main, ["zeta", "eval", str(path), "--s", "one,two"], env=QUIET)
    assert result.exit_code == 2


def test_cli_suite_run(runner, tmp_path):
    """Test the suite command prints or writes the CSV report"""
    result = runner.invoke(main, ["suite", "run", "--names", "exponent-identity", "--seeds", "1"], env=QUIET)
    assert result.exit_code == 0
    assert result.stdout.startswith("name,seed,status,max_residual,tolerance,cases,detail\n")
    assert "exponent-identity,1,PASS" in result.stdout
    path = tmp_path / "suite.csv"
    result = runner.invoke(main, ["suite", "run", "--names", "c-sigma", "--seeds", "1", "--csv", str(path),
                                  "--timings"], env=QUIET)
    assert result.exit_code == 0
    assert path.read_text().splitlines()[0] == "name,seed,status,max_residual,tolerance,cases,runtime,detail"


def test_cli_unknown_suite(runner):
    """Test an unknown suite name exits with code 2"""
    result = runner.invoke(main, ["suite", "run", "--names", "nope"], env=QUIET)
    assert result.exit_code == 2
