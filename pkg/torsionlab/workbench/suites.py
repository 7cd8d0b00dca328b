"""
TorsionLab - Verification suites

Each registered check draws its own seeded fixtures and reports the largest
residual against its tolerance. Checks run concurrently; the report keeps
registry order and seed order regardless of completion order.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger

from ..complexes import GradedComplex
from ..config import Settings, Tolerances
from ..det_line import fuse, line, phi, random_split, refined_torsion, reorder, reorder_sign
from ..errors import TorsionLabError, UnknownSuiteError
from ..spectral_core import Spectrum, admissible_angles, det_theta, eta, spectral_decompose
from ..torsion_complex import (
    cappell_miller,
    check_identities,
    cut_levels,
    eta_Bev,
    graded_det_Bev,
    low_part_torsion,
    odd_signature,
    pm_split,
    split_with,
    xi,
)
from ..zeta_engine import (
    SelbergMode,
    Truncation,
    c_sigma,
    c_sigma_p,
    convergence_abscissa,
    exponent_identity_residual,
    factorization_abscissa,
    factorization_residual,
    log_selberg,
    model_from_complex,
    rho_m,
    rho_norm,
    ruelle_at_zero_model,
    sigma_p_weights,
    singularity_order,
    torsion_bridge,
)
from .fixtures import FixtureSpec, gen_complex, gen_spectrum, toy_complex
from .tables import to_csv

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"

# (d, kernel dimensions) -> order of the Ruelle zeta at zero
SINGULARITY_TABLE = {
    (3, (0, 0)): 0,
    (3, (1, 2)): 0,
    (3, (0, 1)): -2,
    (3, (1, 0)): 4,
    (5, (1, 0, 0)): 6,
    (5, (0, 1, 0)): -4,
    (5, (0, 0, 1)): 2,
    (5, (1, 1, 1)): 4,
    (7, (0, 0, 0, 1)): -2,
}


@dataclass
class CheckContext:
    seed: int
    cases: int
    settings: Settings
    rng: np.random.Generator

    def trunc(self) -> Truncation:
        z = self.settings.zeta
        return Truncation(z.l_max, z.n_max, z.k_max, z.tail_tol)

    @property
    def tols(self) -> Tolerances:
        return self.settings.tolerances()


@dataclass(frozen=True)
class CheckOutcome:
    max_residual: float
    passed: bool
    cases: int
    detail: str = ""
    skipped: bool = False


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[CheckContext], CheckOutcome]
    tolerance: float
    cases: int


@dataclass(frozen=True)
class CheckResult:
    name: str
    seed: int
    status: str
    max_residual: float
    tolerance: float
    cases: int
    runtime: float
    detail: str = ""


@dataclass
class SuiteReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """No check failed; skipped checks do not count as failures"""
        return all(r.status != FAIL for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    @property
    def skipped(self) -> List[CheckResult]:
        return [r for r in self.results if r.status == SKIP]

    def to_frame(self, timings: bool = False) -> pd.DataFrame:
        columns = ["name", "seed", "status", "max_residual", "tolerance", "cases", "detail"]
        if timings:
            columns.insert(6, "runtime")
        rows = [{c: getattr(r, c) for c in columns} for r in self.results]
        return pd.DataFrame(rows, columns=columns)

    def to_csv(self, path: Optional[str] = None, timings: bool = False) -> str:
        return to_csv(self.to_frame(timings), path)


SUITES: Dict[str, Check] = {}


def register(name: str, tolerance: float, cases: int):
    def decorator(fn: Callable[[CheckContext], CheckOutcome]):
        SUITES[name] = Check(name, fn, tolerance, cases)
        return fn
    return decorator


def _outcome(residuals: Iterable[float], tolerance: float, extra_ok: bool = True, detail: str = "") -> CheckOutcome:
    residuals = list(residuals)
    worst = float(max(residuals)) if residuals else 0.0
    return CheckOutcome(worst, bool(extra_ok and worst <= tolerance), len(residuals), detail)


def _relative(a: complex, b: complex) -> float:
    return float(abs(a - b) / max(abs(b), np.finfo(float).tiny))


def _gaussian(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def _fixture(ctx: CheckContext, i: int, betti: Optional[List[int]] = None) -> GradedComplex:
    """Alternates random and Hermitian-model families over d = 3, 5"""
    d = 3 if i % 4 < 2 else 5
    kind = "random-acyclic-complex" if i % 2 == 0 or betti else "hermitian-model-complex"
    epsilon = 0.1 if i % 8 >= 4 else 0.0
    spec = FixtureSpec(kind=kind, d=d, seed=ctx.seed * 100003 + i, betti=betti, epsilon=epsilon)
    return gen_complex(spec, ctx.settings.fixtures)


@register("det-theta", tolerance=1e-9, cases=200)
def _det_theta(ctx: CheckContext) -> CheckOutcome:
    residuals = []
    for _ in range(ctx.cases):
        n = int(ctx.rng.integers(2, 21))
        m = _gaussian(ctx.rng, n)
        spec = spectral_decompose(m, ctx.settings.spectral.cluster_tol)
        plain = complex(np.linalg.det(m))
        for theta in admissible_angles([spec], -np.pi, np.pi)[:3]:
            residuals.append(_relative(det_theta(spec, theta), plain))
    return _outcome(residuals, 1e-9)


@register("eta-counts", tolerance=0.0, cases=100)
def _eta_counts(ctx: CheckContext) -> CheckOutcome:
    residuals = []
    for _ in range(ctx.cases):
        right, left, up, down = (int(x) for x in ctx.rng.integers(0, 4, 4))
        radii = ctx.rng.uniform(0.5, 3.0, right + left + up + down)
        angles = ctx.rng.uniform(-0.45 * np.pi, 0.45 * np.pi, right + left)
        values = list(radii[:right] * np.exp(1j * angles[:right]))
        values += list(-radii[right:right + left] * np.exp(1j * angles[right:]))
        values += list(1j * radii[right + left:right + left + up])
        values += list(-1j * radii[right + left + up:])
        expected = 0.5 * (right - left + up - down)

        spec = Spectrum.from_eigenvalues(values)
        theta = admissible_angles([spec], -np.pi, np.pi)[0]
        residuals.append(abs(eta(spec, theta).eta - expected))

        symmetric = Spectrum.from_eigenvalues(values + [-z for z in values])
        theta = admissible_angles([symmetric], -np.pi, np.pi)[0]
        residuals.append(abs(eta(symmetric, theta).eta))
    return _outcome(residuals, 0.0)


def _permutation_sign(dims: Sequence[int], order: Sequence[int]) -> int:
    offsets = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    index = np.concatenate([np.arange(offsets[i], offsets[i + 1]) for i in order]).astype(int)
    size = int(offsets[-1])
    if size == 0:
        return 1
    return int(round(np.linalg.det(np.eye(size)[:, index]).real))


@register("fusion-phi", tolerance=1e-9, cases=100)
def _fusion_phi(ctx: CheckContext) -> CheckOutcome:
    betti_options = [[0, 0, 0, 0], [0, 1, 1, 0], [1, 1, 1, 1]]
    residuals = []
    mismatches = 0
    for i in range(ctx.cases):
        complex_ = _fixture(ctx, 4 * i, betti_options[i % 3])
        first = phi(complex_, random_split(complex_, ctx.rng)).coeff
        second = phi(complex_, random_split(complex_, ctx.rng)).coeff
        residuals.append(_relative(first, second))

        dims = [int(x) for x in ctx.rng.integers(0, 4, 3)]
        order = [int(x) for x in ctx.rng.permutation(3)]
        element = fuse(fuse(line("V0", dims[0], 1.5), line("V1", dims[1])), line("V2", dims[2]))
        moved = reorder(element, [f"V{k}" for k in order])
        sign = reorder_sign(dims, order)
        if sign != _permutation_sign(dims, order) or moved.coeff != 1.5 * sign:
            mismatches += 1
    return _outcome(residuals, 1e-9, mismatches == 0, f"sign mismatches: {mismatches}")


@register("lambda-split", tolerance=1e-8, cases=50)
def _lambda_split(ctx: CheckContext) -> CheckOutcome:
    residuals = []
    tols = ctx.tols
    for i in range(ctx.cases):
        complex_ = _fixture(ctx, i)
        rho = refined_torsion(complex_).coeff
        for level in cut_levels(complex_, 3):
            parts = split_with(complex_, level, tols)
            high = odd_signature(parts.high, tols.cluster_tol)
            predicted = graded_det_Bev(high, epsilon=tols.agmon_epsilon) * low_part_torsion(complex_, parts).coeff
            residuals.append(_relative(predicted, rho))
    return _outcome(residuals, 1e-8)


@register("modulus-identities", tolerance=1e-8, cases=100)
def _modulus_identities(ctx: CheckContext) -> CheckOutcome:
    residuals = []
    offsets = set()
    skipped = 0
    for i in range(ctx.cases):
        report = check_identities(complex_=_fixture(ctx, i), levels=[], tols=ctx.tols)
        if report.skipped:
            skipped += 1
            continue
        for check in report.checks:
            residuals.append(check.modulus_residual)
            if check.offset is not None:
                offsets.add((check.name, check.offset))
    stable = skipped == 0 and all(offset == 0 for _, offset in offsets)
    return _outcome(residuals, 1e-8, stable, f"phase offsets {sorted(offsets)}, skipped {skipped}")


@register("cm-lambda", tolerance=1e-8, cases=50)
def _cm_lambda(ctx: CheckContext) -> CheckOutcome:
    residuals = []
    for i in range(ctx.cases):
        complex_ = _fixture(ctx, i)
        levels = cut_levels(complex_, 2)
        values = [cappell_miller(complex_, level, tols=ctx.tols).value for level in levels]
        residuals.append(_relative(values[1], values[0]))
    return _outcome(residuals, 1e-8)


@register("agmon-independence", tolerance=1e-9, cases=50)
def _agmon_independence(ctx: CheckContext) -> CheckOutcome:
    residuals = []
    tols = ctx.tols
    epsilon = tols.agmon_epsilon
    single = 0
    for i in range(ctx.cases):
        osig = odd_signature(_fixture(ctx, i), tols.cluster_tol)
        split = pm_split(osig, tols.rank_tol)
        spectra = [osig.ev_spectrum, split.spec_plus, split.spec_minus.negated()]
        angles = admissible_angles(spectra, -np.pi, 0.0, doubled=osig.sq_spectra, epsilon=epsilon)[:2]
        if len(angles) < 2:
            single += 1
            logger.warning(f"agmon-independence fixture {i}: fewer than two admissible angles")
            continue
        a, b = angles
        det_a, det_b = (graded_det_Bev(osig, t, split, epsilon) for t in (a, b))
        eta_a, eta_b = (eta_Bev(osig, t, tols.axis_tol, epsilon).eta for t in (a, b))
        residuals.append(_relative(det_a, det_b))
        residuals.append(abs(eta_a - eta_b))
        shift = xi(osig, a, epsilon) - xi(osig, b, epsilon)
        turns = shift.imag / np.pi
        residuals.append(abs(shift.real) + np.pi * abs(turns - round(turns)))
    outcome = _outcome(residuals, 1e-9, detail=f"fixtures without a second admissible angle: {single}")
    return replace(outcome, skipped=not residuals)


def _synthetic(ctx: CheckContext, i: int):
    d = 3 if i % 2 == 0 else 5
    return gen_spectrum(FixtureSpec(kind="synthetic-spectrum", d=d, classes=5, seed=ctx.seed * 100003 + i,
                                    l_max=ctx.settings.fixtures.l_max))


@register("zeta-modes", tolerance=1e-8, cases=20)
def _zeta_modes(ctx: CheckContext) -> CheckOutcome:
    residuals = []
    within_tails = True
    trunc = ctx.trunc()
    margin, bound = ctx.settings.zeta.margin, ctx.settings.zeta.abscissa_bound
    for i in range(ctx.cases):
        spec = _synthetic(ctx, i)
        s = convergence_abscissa(spec, "selberg", margin, bound) + 3.0
        sym = log_selberg(s, spec, trunc, SelbergMode.SYM, margin=margin, bound=bound)
        closed = log_selberg(s, spec, trunc, SelbergMode.CLOSED, margin=margin, bound=bound)
        residual = abs(sym.value - closed.value)
        within_tails = within_tails and residual <= sym.tail_bound + closed.tail_bound + 1e-12
        residuals.append(residual)
    return _outcome(residuals, 1e-8, within_tails, f"within tail bounds: {within_tails}")


@register("factorization", tolerance=1e-8, cases=20)
def _factorization(ctx: CheckContext) -> CheckOutcome:
    residuals = []
    trunc = ctx.trunc()
    margin, bound = ctx.settings.zeta.margin, ctx.settings.zeta.abscissa_bound
    for i in range(ctx.cases):
        spec = _synthetic(ctx, i)
        s = factorization_abscissa(spec, margin, bound) + 3.0
        residuals.append(float(factorization_residual(s, spec, trunc, margin, bound)))
    return _outcome(residuals, 1e-8)


@register("ruelle-torsion", tolerance=1e-9, cases=50)
def _ruelle_torsion(ctx: CheckContext) -> CheckOutcome:
    toy = ruelle_at_zero_model(model_from_complex(toy_complex())).dual_form
    residuals = [_relative(toy, 4.0)]
    skipped = 0
    for i in range(ctx.cases):
        report = torsion_bridge(_fixture(ctx, i), eta_tr=ctx.settings.torsion.eta_tr, rank=ctx.settings.torsion.rank,
                                tols=ctx.tols)
        skipped += bool(report.skipped)
        residuals.extend(link.residual for link in report.links if link.name in ("ruelle-cm", "ruelle-modulus"))
    return _outcome(residuals, 1e-9, skipped == 0, f"toy R(0) = {toy.real!r}, skipped {skipped}")


@register("exponent-identity", tolerance=1e-12, cases=100)
def _exponent_identity(ctx: CheckContext) -> CheckOutcome:
    residuals = []
    for i in range(ctx.cases):
        d = (3, 5, 7)[i % 3]
        half = ctx.rng.normal(size=(d + 1) // 2)
        log_x = np.concatenate([half, half[::-1]])
        residuals.append(exponent_identity_residual(log_x, d))
    return _outcome(residuals, 1e-12)


@register("singularity-order", tolerance=0.0, cases=len(SINGULARITY_TABLE))
def _singularity_order(ctx: CheckContext) -> CheckOutcome:
    residuals = [float(abs(singularity_order(d, kernel) - order)) for (d, kernel), order in SINGULARITY_TABLE.items()]
    return _outcome(residuals, 0.0)


@register("c-sigma", tolerance=1e-12, cases=3)
def _c_sigma(ctx: CheckContext) -> CheckOutcome:
    residuals = []
    for d in (3, 5, 7):
        rho = rho_norm(d)
        for p in range(d):
            target = -(rho - p) ** 2
            residuals.append(abs(c_sigma_p(d, p) - target))
            for weight in sigma_p_weights(d, p):
                residuals.append(abs(c_sigma(weight, rho_m(d), rho) - target))
    return _outcome(residuals, 1e-12, detail="c(sigma_p) = -(|rho| - p)^2")


def suite_names() -> List[str]:
    return list(SUITES)


def _run_one(check: Check, seed: int, index: int, settings: Settings, cases: int) -> CheckResult:
    ctx = CheckContext(seed, cases, settings, np.random.default_rng([seed, index]))
    start = time.perf_counter()
    try:
        outcome = check.run(ctx)
    except (TorsionLabError, np.linalg.LinAlgError) as e:
        outcome = CheckOutcome(float("inf"), False, 0, f"{type(e).__name__}: {e}")
    runtime = time.perf_counter() - start
    status = SKIP if outcome.skipped else PASS if outcome.passed else FAIL
    logger.info(f"{check.name} seed={seed}: {status} max residual {outcome.max_residual:.3e}")
    return CheckResult(check.name, seed, status, outcome.max_residual, check.tolerance,
                       outcome.cases, runtime, outcome.detail)


def run_suite(names: Optional[Sequence[str]] = None, seeds: Optional[Sequence[int]] = None,
              settings: Optional[Settings] = None, cases: Optional[Dict[str, int]] = None) -> SuiteReport:
    """Run the named checks (all when names is None) once per seed"""
    settings = settings or Settings()
    selected = suite_names() if names is None else list(names)
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise UnknownSuiteError(f"unknown suite(s): {', '.join(unknown)}; known: {', '.join(SUITES)}")
    seeds = list(seeds) if seeds is not None else list(settings.suite.seeds)
    overrides = dict(settings.suite.cases)
    overrides.update(cases or {})

    order = list(SUITES)
    tasks = [(SUITES[n], seed) for n in selected for seed in seeds]
    if not tasks:
        return SuiteReport()

    workers = max(1, settings.suite.parallel_workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_run_one, check, seed, order.index(check.name), settings,
                        overrides.get(check.name, check.cases))
            for check, seed in tasks
        ]
        results = [f.result() for f in futures]
    report = SuiteReport(results)
    passed = len(results) - len(report.failures) - len(report.skipped)
    logger.info(f"Suite finished: {passed}/{len(results)} passed, {len(report.skipped)} skipped")
    return report
