"""
TorsionLab - Determinant Line Package
"""

from .lines import DetLineElement, LineTag, fuse, inverse, line, reorder, reorder_sign
from .refined import (
    SplitChoice,
    betti_numbers,
    c_gamma,
    cohomology_frame,
    default_split,
    embedded_frame,
    harmonic_basis,
    is_acyclic,
    phi,
    random_split,
    refined_torsion,
    sign_N,
    sign_R,
    validate_split,
)

__all__ = [
    'DetLineElement', 'LineTag', 'SplitChoice', 'betti_numbers', 'c_gamma', 'cohomology_frame',
    'default_split', 'embedded_frame', 'fuse', 'harmonic_basis', 'inverse', 'is_acyclic', 'line',
    'phi', 'random_split', 'refined_torsion', 'reorder', 'reorder_sign', 'sign_N', 'sign_R',
    'validate_split',
]
