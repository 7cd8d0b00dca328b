"""
TorsionLab - Bridge between zeta-engine models and complexes

The model Laplacians are the B^2 blocks of a complex, so the value at zero of
the model Ruelle function can be compared with the Cappell-Miller torsion and
with the refined torsions of the same complex.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import scipy.linalg as lin
from loguru import logger

from ..complexes import GradedComplex
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import NumericalError
from ..torsion_complex import (
    cappell_miller,
    default_theta,
    eta_Bev,
    graded_det_Bev,
    odd_signature,
    pm_split,
    quarter_turns,
    validate,
    xi,
)
from .model import ModelSpectralData, ruelle_at_zero_model

BRIDGE_TOL = 1e-9


def model_from_complex(complex_: GradedComplex, dim_V_chi: int = 1, vol_ratio: float = 1.0) -> ModelSpectralData:
    """Eigenvalues of B^2 per degree as model Laplacian spectra"""
    osig = odd_signature(complex_)
    eigs = tuple(lin.eigvals(b) if b.size else np.zeros(0, dtype=complex) for b in osig.B_sq_per_degree)
    return ModelSpectralData(complex_.d, eigs, dim_V_chi, vol_ratio)


@dataclass(frozen=True)
class ChainLink:
    name: str
    lhs: complex
    rhs: complex
    residual: float
    nu: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.residual <= BRIDGE_TOL


@dataclass
class BridgeReport:
    ruelle_zero: Optional[complex] = None
    cappell_miller: Optional[complex] = None
    links: List[ChainLink] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.skipped and all(link.passed for link in self.links)


def _relative(a: complex, b: complex) -> float:
    return float(abs(a - b) / max(abs(b), np.finfo(float).tiny))


def torsion_bridge(complex_: GradedComplex, theta: Optional[float] = None, eta_tr: float = 0.0,
                   rank: int = 1, L_integral: float = 0.0, tols: Tolerances = DEFAULT_TOLERANCES) -> BridgeReport:
    """R(0) = tau, |R(0)| = e^{2 Re xi}, and the phase chains through T and T'"""
    report = BridgeReport()
    status = validate(complex_, tols.rank_tol, tols.assumption2_tol, tols.chain_tol)
    if not (status.assumption1 and status.assumption2):
        report.skipped.append("complex is not acyclic with bijective odd signature operator")
        return report

    epsilon = tols.agmon_epsilon
    try:
        r0 = ruelle_at_zero_model(model_from_complex(complex_)).dual_form
        tau = cappell_miller(complex_, 0.0, tols=tols).value
        osig = odd_signature(complex_, tols.cluster_tol)
        split = pm_split(osig, tols.rank_tol)
        theta = default_theta(osig, split, epsilon) if theta is None else theta
        det_gr = graded_det_Bev(osig, theta, split, epsilon)
        xi_value = xi(osig, theta, epsilon)
        eta_value = eta_Bev(osig, theta, tols.axis_tol, epsilon).eta
    except NumericalError as e:
        report.skipped.append(str(e))
        logger.warning(f"Bridge skipped on {complex_.describe()}: {e}")
        return report

    report.ruelle_zero = r0
    report.cappell_miller = tau
    report.links.append(ChainLink("ruelle-cm", r0, tau, _relative(r0, tau)))

    rs = np.exp(2.0 * xi_value.real)
    report.links.append(ChainLink("ruelle-modulus", abs(r0), rs, _relative(abs(r0), rs)))

    t = det_gr * np.exp(1j * np.pi * rank * eta_tr)
    rhs = t ** 2 * np.exp(2j * np.pi * (eta_value - rank * eta_tr))
    nu, _ = quarter_turns(r0, rhs)
    report.links.append(ChainLink("ruelle-refined", abs(r0), abs(rhs), _relative(abs(r0), abs(rhs)), nu))

    t_prime = det_gr * np.exp(1j * np.pi * 0.5 * rank * L_integral)
    rhs = t_prime ** 2 * np.exp(2j * np.pi * (eta_value - 0.5 * rank * L_integral))
    nu, _ = quarter_turns(r0, rhs)
    report.links.append(ChainLink("ruelle-refined-prime", abs(r0), abs(rhs), _relative(abs(r0), abs(rhs)), nu))
    return report
