"""
TorsionLab - Spectral Core Package
"""

from .angles import AgmonAngle, admissible_angles, angular_distance, branch_log, choose_agmon_angle, is_agmon
from .determinants import EtaResult, GradedConvention, det_theta, eta, graded_det, ldet_theta, zeta_theta
from .spectrum import SpectralEntry, Spectrum, root_projectors, spectral_decompose

__all__ = [
    'AgmonAngle', 'EtaResult', 'GradedConvention', 'SpectralEntry', 'Spectrum',
    'admissible_angles', 'angular_distance', 'branch_log', 'choose_agmon_angle',
    'det_theta', 'eta', 'graded_det', 'is_agmon', 'ldet_theta', 'root_projectors',
    'spectral_decompose', 'zeta_theta',
]
