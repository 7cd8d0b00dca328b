"""
TorsionLab - Comparison identities on a finite complex

Moduli are compared exactly. Phases are reported as e^{i pi nu / 2}: the
quarter-turn integer nu, the value predicted for a finite complex and the
offset between the two, which is 0 on the toy complex.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

from ..complexes import GradedComplex
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..det_line import refined_torsion
from ..errors import NumericalError
from .signature import default_theta, eta_Bev, graded_det_Bev, odd_signature, pm_split, rho_invariant, xi
from .subcomplex import cut_levels, split_with
from .torsion import cappell_miller, low_part_torsion
from .validation import validate

MODULUS_TOL = 1e-8
SPLIT_TOL = 1e-8
PHASE_TOL = 1e-6


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: complex
    rhs: complex
    modulus_residual: float
    nu: Optional[int] = None
    nu_expected: Optional[int] = None
    phase_residual: Optional[float] = None
    passed: bool = True
    note: str = ""

    @property
    def offset(self) -> Optional[int]:
        if self.nu is None or self.nu_expected is None:
            return None
        return (self.nu - self.nu_expected) % 4


@dataclass
class IdentityReport:
    theta: Optional[float]
    checks: List[IdentityCheck] = field(default_factory=list)
    eta: Optional[float] = None
    xi: Optional[complex] = None
    rho_invariant: Optional[float] = None
    skipped: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def get(self, name: str) -> IdentityCheck:
        return next(c for c in self.checks if c.name == name)


def quarter_turns(lhs: complex, rhs: complex):
    """Nearest nu with lhs/rhs ~ |lhs/rhs| e^{i pi nu/2}, and the distance to it"""
    x = float(np.angle(lhs / rhs)) / (0.5 * np.pi)
    nearest = int(np.round(x))
    return nearest % 4, abs(x - nearest)


def _relative(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), np.finfo(float).tiny)


def _phase_check(name: str, lhs: complex, rhs: complex, nu_expected: int) -> IdentityCheck:
    modulus = _relative(abs(lhs), abs(rhs))
    nu, residual = quarter_turns(lhs, rhs)
    passed = modulus <= MODULUS_TOL and residual <= PHASE_TOL and nu == nu_expected % 4
    return IdentityCheck(name, complex(lhs), complex(rhs), modulus, nu, nu_expected % 4, residual, passed)


def check_identities(complex_: GradedComplex, theta: Optional[float] = None, eta_tr: float = 0.0,
                     rank: int = 1, levels: Optional[Sequence[float]] = None,
                     tols: Tolerances = DEFAULT_TOLERANCES) -> IdentityReport:
    """det_gr = e^xi e^{-i pi eta}, tau = T^2 e^{2 pi i (eta - rank eta_tr)} and the lambda-split of rho"""
    report = IdentityReport(theta)
    status = validate(complex_, tols.rank_tol, tols.assumption2_tol, tols.chain_tol)
    if not (status.assumption1 and status.assumption2):
        report.skipped.append(
            f"assumptions fail (acyclic={status.assumption1}, bijective={status.assumption2})"
        )
        logger.warning(f"Skipping identities on {complex_.describe()}: {report.skipped[-1]}")
        return report

    epsilon = tols.agmon_epsilon
    try:
        osig = odd_signature(complex_, tols.cluster_tol)
        split = pm_split(osig, tols.rank_tol)
        theta = default_theta(osig, split, epsilon) if theta is None else theta
        report.theta = theta
        det_gr = graded_det_Bev(osig, theta, split, epsilon)
        xi_value = xi(osig, theta, epsilon)
        eta_value = eta_Bev(osig, theta, tols.axis_tol, epsilon).eta
    except NumericalError as e:
        report.skipped.append(str(e))
        return report

    n_ev = osig.even_dim
    n_minus = split.minus_basis.shape[1]
    report.eta = eta_value
    report.xi = xi_value
    report.rho_invariant = rho_invariant(eta_value, eta_tr, rank)

    rhs = np.exp(xi_value) * np.exp(-1j * np.pi * eta_value)
    report.checks.append(_phase_check("det-gr-xi", det_gr, rhs, n_ev + 2 * n_minus))

    tau = cappell_miller(complex_, 0.0, tols=tols).value
    t_value = det_gr * np.exp(1j * np.pi * rank * eta_tr)
    rhs = t_value ** 2 * np.exp(2j * np.pi * (eta_value - rank * eta_tr))
    report.checks.append(_phase_check("cm-refined", tau, rhs, 2 * n_ev))

    modulus = _relative(abs(tau), np.exp(2.0 * xi_value.real))
    report.checks.append(IdentityCheck("cm-xi-modulus", tau, np.exp(2.0 * xi_value.real), modulus,
                                       passed=modulus <= MODULUS_TOL))

    rho = refined_torsion(complex_, tol=tols.rank_tol).coeff
    for level in (levels if levels is not None else cut_levels(complex_)):
        try:
            parts = split_with(complex_, level, tols)
            high = odd_signature(parts.high, tols.cluster_tol)
            predicted = graded_det_Bev(high, epsilon=epsilon) * low_part_torsion(complex_, parts).coeff
        except NumericalError as e:
            report.skipped.append(f"lambda-split at {level}: {e}")
            continue
        residual = abs(rho - predicted) / abs(rho)
        report.checks.append(IdentityCheck(f"lambda-split@{level:.6g}", rho, predicted, residual,
                                           passed=residual <= SPLIT_TOL))
    return report
