"""
TorsionLab - Refined analytic torsion and Cappell-Miller torsion at model level
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from ..complexes import GradedComplex
from ..config import AGMON_EPSILON, DEFAULT_TOLERANCES, Tolerances
from ..det_line import DetLineElement, cohomology_frame, embedded_frame, refined_torsion
from ..spectral_core import choose_agmon_angle, det_theta
from .signature import OddSignature, graded_det_Bev, odd_signature
from .subcomplex import SpectralSplit, split_with

CM_PREFERRED_THETA = np.pi


def refined_T(osig: OddSignature, theta: Optional[float], eta_tr: float, rank: int,
              epsilon: float = AGMON_EPSILON) -> complex:
    """det_gr,theta(B^ev) * exp(i pi rank eta_tr)"""
    return complex(graded_det_Bev(osig, theta, epsilon=epsilon) * np.exp(1j * np.pi * rank * eta_tr))


def refined_T_prime(osig: OddSignature, theta: Optional[float], L_integral: float, rank: int,
                    epsilon: float = AGMON_EPSILON) -> complex:
    """det_gr,theta(B^ev) * exp(i pi (rank/2) L_integral)

    The L-polynomial integral depends on the bounding manifold only up to an
    integer, so the phase is defined up to a power of i^rank.
    """
    return complex(graded_det_Bev(osig, theta, epsilon=epsilon) * np.exp(1j * np.pi * 0.5 * rank * L_integral))


@dataclass(frozen=True)
class CappellMillerTorsion:
    scalar: complex
    finite: Tuple[DetLineElement, DetLineElement]
    theta: float
    level: float

    @property
    def value(self) -> complex:
        """Scalar part times the coordinate of rho (x) rho in the ambient cohomology frame"""
        return complex(self.scalar * self.finite[0].coeff * self.finite[1].coeff)


def low_part_torsion(complex_: GradedComplex, split: SpectralSplit) -> DetLineElement:
    """rho of C_[0,lambda] in the ambient cohomology frame"""
    frame = embedded_frame(cohomology_frame(complex_), split.low_frames)
    return refined_torsion(split.low, frame=frame)


def cappell_miller(complex_: GradedComplex, level: float = 0.0, theta: Optional[float] = None,
                   tols: Tolerances = DEFAULT_TOLERANCES) -> CappellMillerTorsion:
    """tau_Gamma[0,lambda] times prod_k det_theta(B^2 on Lambda^k_(lambda,inf))^(k (-1)^(k+1))"""
    split = split_with(complex_, level, tols)
    high = odd_signature(split.high, tols.cluster_tol)
    epsilon = tols.agmon_epsilon
    spectra = high.sq_spectra
    if theta is None:
        theta = choose_agmon_angle(spectra, CM_PREFERRED_THETA, 0.0, 2.0 * np.pi, epsilon=epsilon)

    scalar = 1.0 + 0.0j
    for k, spec in enumerate(spectra):
        if k == 0 or spec.dim == 0:
            continue
        scalar *= det_theta(spec, theta, epsilon) ** (k * (-1) ** (k + 1))

    rho = low_part_torsion(complex_, split)
    logger.debug(f"Cappell-Miller torsion at level {level}: scalar={scalar}, rho={rho.coeff}")
    return CappellMillerTorsion(complex(scalar), (rho, rho), float(theta), float(level))


def refined_torsion_element(complex_: GradedComplex, level: float = 0.0, theta: Optional[float] = None,
                            eta_tr: float = 0.0, rank: int = 1,
                            tols: Tolerances = DEFAULT_TOLERANCES) -> DetLineElement:
    """rho of C_[0,lambda] times det_gr(B^ev on C_(lambda,inf)) e^{i pi rank eta_tr}, in det H*

    Independent of lambda whenever the split law holds.
    """
    split = split_with(complex_, level, tols)
    rho = low_part_torsion(complex_, split)
    high = graded_det_Bev(odd_signature(split.high, tols.cluster_tol), theta, epsilon=tols.agmon_epsilon)
    return DetLineElement(rho.coeff * high * np.exp(1j * np.pi * rank * eta_tr), rho.tag)
