"""
TorsionLab - Zeta-regularized determinants and eta invariants of finite spectra

For finite spectra the zeta and eta series are finite sums, so no analytic
continuation is involved.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..config import AGMON_EPSILON, AXIS_TOL, BRANCH_TOL
from ..errors import AgmonAngleError, InvertibilityError
from .angles import branch_log, is_agmon
from .spectrum import Spectrum


class GradedConvention(str, Enum):
    PLAIN = "plain"
    NEGATE_MINUS = "negate-minus"


@dataclass(frozen=True)
class EtaResult:
    eta0: int
    m_plus: int
    m_minus: int

    @property
    def eta(self) -> float:
        return 0.5 * (self.eta0 + self.m_plus - self.m_minus)


def _check(spec: Spectrum, theta: float, epsilon: float) -> None:
    if spec.has_zero():
        raise InvertibilityError("spectrum contains zero")
    if not is_agmon(spec, theta, epsilon):
        raise AgmonAngleError(f"{theta} is not an Agmon angle for the spectrum")


def zeta_theta(spec: Spectrum, theta: float, s: complex,
               epsilon: float = AGMON_EPSILON, branch_tol: float = BRANCH_TOL) -> complex:
    _check(spec, theta, epsilon)
    s = complex(s)
    terms = np.array([e.mult * np.exp(-s * branch_log(e.value, theta, branch_tol)) for e in spec.entries],
                     dtype=complex)
    return complex(np.sum(terms))


def ldet_theta(spec: Spectrum, theta: float,
               epsilon: float = AGMON_EPSILON, branch_tol: float = BRANCH_TOL) -> complex:
    """Sum of m_k log_theta(lambda_k), i.e. minus the derivative of zeta_theta at 0"""
    _check(spec, theta, epsilon)
    terms = np.array([e.mult * branch_log(e.value, theta, branch_tol) for e in spec.entries], dtype=complex)
    return complex(np.sum(terms))


def det_theta(spec: Spectrum, theta: float,
              epsilon: float = AGMON_EPSILON, branch_tol: float = BRANCH_TOL) -> complex:
    return complex(np.exp(ldet_theta(spec, theta, epsilon, branch_tol)))


def eta(spec: Spectrum, theta: float,
        axis_tol: float = AXIS_TOL, epsilon: float = AGMON_EPSILON) -> EtaResult:
    """Half-plane count plus imaginary-axis correction"""
    _check(spec, theta, epsilon)
    eta0 = m_plus = m_minus = 0
    for e in spec.entries:
        z = e.value
        if abs(z.real) <= axis_tol * max(1.0, abs(z)):
            if z.imag > 0:
                m_plus += e.mult
            else:
                m_minus += e.mult
        elif z.real > 0:
            eta0 += e.mult
        else:
            eta0 -= e.mult
    return EtaResult(eta0, m_plus, m_minus)


def graded_det(spec_plus: Spectrum, spec_minus: Spectrum, theta: float,
               convention: GradedConvention = GradedConvention.PLAIN,
               epsilon: float = AGMON_EPSILON) -> complex:
    convention = GradedConvention(convention)
    minus = spec_minus.negated() if convention is GradedConvention.NEGATE_MINUS else spec_minus
    numerator = det_theta(spec_plus, theta, epsilon)
    denominator = det_theta(minus, theta, epsilon) if minus.entries else 1.0
    return complex(numerator / denominator)
