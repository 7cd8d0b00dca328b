"""
TorsionLab - Torsion Complex Package
"""

from .identities import IdentityCheck, IdentityReport, check_identities, quarter_turns
from .signature import (
    OddSignature,
    PMSplit,
    commutation_residual,
    default_theta,
    eta_Bev,
    graded_det_Bev,
    odd_signature,
    pm_split,
    rho_invariant,
    sharp_laplacian,
    sharp_residual,
    xi,
)
from .subcomplex import SpectralSplit, cut_levels, spectral_split, split_with
from .torsion import (
    CappellMillerTorsion,
    cappell_miller,
    low_part_torsion,
    refined_T,
    refined_T_prime,
    refined_torsion_element,
)
from .validation import ValidationReport, require_well_formed, validate

__all__ = [
    'CappellMillerTorsion', 'IdentityCheck', 'IdentityReport', 'OddSignature', 'PMSplit',
    'SpectralSplit', 'ValidationReport', 'cappell_miller', 'check_identities', 'commutation_residual',
    'cut_levels', 'default_theta', 'eta_Bev', 'graded_det_Bev', 'low_part_torsion', 'odd_signature',
    'pm_split', 'quarter_turns', 'refined_T', 'refined_T_prime', 'refined_torsion_element', 'require_well_formed',
    'rho_invariant', 'sharp_laplacian', 'sharp_residual', 'spectral_split', 'split_with', 'validate', 'xi',
]
