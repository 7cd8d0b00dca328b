"""
TorsionLab - Executors Module
Contains the main execution logic for the workbench
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from ..complexes import GradedComplex
from ..config import load_settings, setup_logging
from ..det_line import betti_numbers, refined_torsion
from ..errors import InputError, ModelSingularError, TorsionLabError
from ..torsion_complex import (
    cappell_miller,
    check_identities,
    default_theta,
    eta_Bev,
    graded_det_Bev,
    odd_signature,
    pm_split,
    refined_T,
    refined_T_prime,
    refined_torsion_element,
    rho_invariant,
    validate,
    xi,
)
from ..zeta_engine import (
    LengthSpectrum,
    ModelSpectralData,
    SelbergMode,
    Truncation,
    det_formula_eval,
    factorization_residual,
    ruelle_at_zero_model,
    singularity_order,
    torsion_bridge,
)
from .fixtures import FixtureSpec, gen_complex, gen_spectrum
from .schemas import ComplexDocument, SpectrumDocument, load_complex, load_model, load_spectrum, save_document
from .suites import run_suite
from .tables import to_csv, zeta_grid


class WorkbenchExecutor:
    """Main executor class for workbench operations"""

    def __init__(self, config_path: Optional[str] = None):
        self.settings = load_settings(config_path)
        setup_logging(self.settings.logging.level)
        self._operations = {
            "validate": self._execute_validate,
            "torsion": self._execute_torsion,
            "identities": self._execute_identities,
            "zeta-eval": self._execute_zeta_eval,
            "zeta-factorize": self._execute_zeta_factorize,
            "ruelle-zero": self._execute_ruelle_zero,
            "det-formula": self._execute_det_formula,
            "fixtures-gen": self._execute_fixtures_gen,
            "suite": self._execute_suite,
        }

    @property
    def operations(self) -> List[str]:
        return list(self._operations)

    def execute(self, operation: str, **kwargs) -> Dict[str, Any]:
        """Execute a specific operation"""
        logger.info(f"Executing operation: {operation}")

        try:
            if operation not in self._operations:
                raise InputError(f"Unknown operation: {operation}")
            return self._operations[operation](**kwargs)
        except TorsionLabError as e:
            logger.error(f"Error executing operation {operation}: {e}")
            return {"success": False, "operation": operation, "error": str(e), "error_kind": e.kind}
        except Exception as e:
            logger.error(f"Error executing operation {operation}: {e}")
            return {"success": False, "operation": operation, "error": str(e), "error_kind": "numerical"}

    def _complex(self, kwargs: Dict[str, Any]) -> GradedComplex:
        if kwargs.get("complex") is not None:
            return kwargs["complex"]
        if not kwargs.get("path"):
            raise InputError("a complex file is required")
        return load_complex(kwargs["path"])

    def _spectrum(self, kwargs: Dict[str, Any]) -> LengthSpectrum:
        if kwargs.get("spectrum") is not None:
            return kwargs["spectrum"]
        if not kwargs.get("path"):
            raise InputError("a spectrum file is required")
        return load_spectrum(kwargs["path"])

    def _model(self, kwargs: Dict[str, Any]) -> ModelSpectralData:
        if kwargs.get("model") is not None:
            return kwargs["model"]
        if not kwargs.get("path"):
            raise InputError("a model file is required")
        return load_model(kwargs["path"])

    def _truncation(self, text: Optional[str]) -> Truncation:
        if text:
            try:
                return Truncation.parse(text)
            except (ValueError, IndexError) as e:
                raise InputError(f"malformed truncation {text!r}: {e}")
        z = self.settings.zeta
        return Truncation(z.l_max, z.n_max, z.k_max, z.tail_tol)

    def _execute_validate(self, **kwargs) -> Dict[str, Any]:
        complex_ = self._complex(kwargs)
        t = self.settings.torsion
        report = validate(complex_, self.settings.detline.rank_tol, t.assumption2_tol, t.chain_tol)
        logger.info(f"Validated {complex_.describe()}")
        return {
            "success": True,
            "operation": "validate",
            "passed": report.well_formed,
            "dims": list(complex_.dims.dims),
            "betti": list(betti_numbers(complex_, self.settings.detline.rank_tol)),
            **report.as_dict(),
        }

    def _execute_torsion(self, **kwargs) -> Dict[str, Any]:
        complex_ = self._complex(kwargs)
        theta = kwargs.get("theta")
        eta_tr = kwargs.get("eta_tr", self.settings.torsion.eta_tr)
        rank = kwargs.get("rank", self.settings.torsion.rank)
        level = kwargs.get("level", 0.0)
        tols = self.settings.tolerances()
        epsilon = tols.agmon_epsilon

        osig = odd_signature(complex_, tols.cluster_tol)
        split = pm_split(osig, tols.rank_tol)
        theta = default_theta(osig, split, epsilon) if theta is None else theta
        eta_value = eta_Bev(osig, theta, tols.axis_tol, epsilon).eta
        result = {
            "success": True,
            "operation": "torsion",
            "theta": theta,
            "rho_gamma": refined_torsion(complex_, tol=tols.rank_tol).coeff,
            "det_gr": graded_det_Bev(osig, theta, split, epsilon),
            "T": refined_T(osig, theta, eta_tr, rank, epsilon),
            "T_prime": refined_T_prime(osig, theta, kwargs.get("L_integral", 0.0), rank, epsilon),
            "cappell_miller": cappell_miller(complex_, level, tols=tols).value,
            "refined_element": refined_torsion_element(complex_, level, None, eta_tr, rank, tols).coeff,
            "xi": xi(osig, theta, epsilon),
            "eta": eta_value,
            "rho_invariant": rho_invariant(eta_value, eta_tr, rank),
        }
        logger.info(f"Torsion of {complex_.describe()}: tau={result['cappell_miller']}")
        return result

    def _execute_identities(self, **kwargs) -> Dict[str, Any]:
        complex_ = self._complex(kwargs)
        eta_tr = kwargs.get("eta_tr", self.settings.torsion.eta_tr)
        rank = kwargs.get("rank", self.settings.torsion.rank)
        tols = self.settings.tolerances()
        report = check_identities(complex_, kwargs.get("theta"), eta_tr, rank, kwargs.get("levels"), tols)
        bridge = torsion_bridge(complex_, kwargs.get("theta"), eta_tr, rank, kwargs.get("L_integral", 0.0), tols)
        checks = [
            {
                "name": c.name,
                "lhs": c.lhs,
                "rhs": c.rhs,
                "modulus_residual": c.modulus_residual,
                "nu": c.nu,
                "nu_expected": c.nu_expected,
                "offset": c.offset,
                "passed": c.passed,
            }
            for c in report.checks
        ]
        links = [
            {"name": link.name, "lhs": link.lhs, "rhs": link.rhs, "residual": link.residual,
             "nu": link.nu, "passed": link.passed}
            for link in bridge.links
        ]
        return {
            "success": True,
            "operation": "identities",
            "passed": report.passed and bridge.passed and not report.skipped,
            "theta": report.theta,
            "eta": report.eta,
            "xi": report.xi,
            "rho_invariant": report.rho_invariant,
            "checks": checks,
            "chain": links,
            "skipped": report.skipped + bridge.skipped,
        }

    def _execute_zeta_eval(self, **kwargs) -> Dict[str, Any]:
        spec = self._spectrum(kwargs)
        points: Sequence[complex] = kwargs.get("points") or [kwargs.get("s", 0.0)]
        function = kwargs.get("function", "ruelle")
        mode = SelbergMode(kwargs.get("mode", "sym"))
        frame = zeta_grid(spec, points, self._truncation(kwargs.get("trunc")), function, mode,
                          self.settings.zeta.margin, self.settings.zeta.abscissa_bound)
        if kwargs.get("csv"):
            to_csv(frame, kwargs["csv"])
            logger.info(f"Wrote {len(frame)} rows to {kwargs['csv']}")
        rows = [
            {"s": complex(r.s_re, r.s_im), "log": complex(r.log_R_re, r.log_R_im), "tail_bound": r.tail_bound}
            for r in frame.itertuples()
        ]
        return {"success": True, "operation": "zeta-eval", "function": function, "values": rows,
                "declared_abscissa": True, "abscissa_bound": self.settings.zeta.abscissa_bound}

    def _execute_zeta_factorize(self, **kwargs) -> Dict[str, Any]:
        spec = self._spectrum(kwargs)
        s = complex(kwargs.get("s", 0.0))
        result = factorization_residual(s, spec, self._truncation(kwargs.get("trunc")), self.settings.zeta.margin,
                                        self.settings.zeta.abscissa_bound)
        return {
            "success": True,
            "operation": "zeta-factorize",
            "s": s,
            "residual": result.residual,
            "tail_bound": result.tail_bound,
            "passed": result.residual <= max(self.settings.zeta.tail_tol, result.tail_bound),
        }

    def _execute_ruelle_zero(self, **kwargs) -> Dict[str, Any]:
        model = self._model(kwargs)
        order = singularity_order(model.d, model.d_chi)
        try:
            value = ruelle_at_zero_model(model)
        except ModelSingularError as e:
            logger.warning(f"{e}")
            return {"success": True, "operation": "ruelle-zero", "regular": False, "order": order}
        return {
            "success": True,
            "operation": "ruelle-zero",
            "regular": True,
            "order": order,
            "value": value.dual_form,
            "degree_form": value.degree_form,
            "residual": value.residual,
        }

    def _execute_det_formula(self, **kwargs) -> Dict[str, Any]:
        model = self._model(kwargs)
        value = det_formula_eval(complex(kwargs.get("s", 0.0)), model, kwargs.get("convention", "degree"),
                                 kwargs.get("volume"))
        return {
            "success": True,
            "operation": "det-formula",
            "value": value.value,
            "order": value.order,
            "singular_factors": [list(f) for f in value.singular_factors],
        }

    def _execute_fixtures_gen(self, **kwargs) -> Dict[str, Any]:
        spec = FixtureSpec(**{k: v for k, v in kwargs.items() if k in FixtureSpec.model_fields and v is not None})
        if spec.kind == "synthetic-spectrum":
            document = SpectrumDocument.from_spectrum(gen_spectrum(spec))
        else:
            document = ComplexDocument.from_complex(gen_complex(spec, self.settings.fixtures))
        output = kwargs.get("output")
        if output:
            save_document(document, output)
            logger.info(f"Wrote {spec.kind} fixture (seed {spec.seed}) to {Path(output)}")
        return {"success": True, "operation": "fixtures-gen", "kind": spec.kind, "seed": spec.seed,
                "output": output, "document": document.model_dump()}

    def _execute_suite(self, **kwargs) -> Dict[str, Any]:
        timings = kwargs.get("timings", self.settings.suite.timings)
        report = run_suite(kwargs.get("names"), kwargs.get("seeds"), self.settings)
        text = report.to_csv(kwargs.get("csv"), timings)
        return {
            "success": True,
            "operation": "suite",
            "passed": report.passed,
            "failures": [f"{r.name} (seed {r.seed})" for r in report.failures],
            "csv": text,
        }


def to_plain(value: Any) -> Any:
    """Complex numbers as [re, im] pairs, numpy scalars as Python numbers"""
    if isinstance(value, dict):
        return {k: to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.generic):
        return value.item()
    return value
