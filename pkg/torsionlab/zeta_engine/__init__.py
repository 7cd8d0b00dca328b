"""
TorsionLab - Zeta Engine Package
"""

from .bridge import BridgeReport, ChainLink, model_from_complex, torsion_bridge
from .euler import (
    AbscissaBound,
    FactorizationResidual,
    SelbergMode,
    ZetaValue,
    convergence_abscissa,
    factorization_abscissa,
    factorization_residual,
    log_ruelle,
    log_selberg,
    ruelle,
)
from .lengths import LengthSpectrum, PrimitiveClass, Truncation
from .model import (
    DetFormulaValue,
    ModelSpectralData,
    RuelleAtZero,
    c_sigma,
    c_sigma_p,
    det_formula_eval,
    exponent_identity_residual,
    rho_m,
    ruelle_at_zero_model,
    sigma_p_weights,
    singularity_order,
    vol_sphere,
)
from .traces import (
    complete_homogeneous,
    elementary_symmetric,
    ext_power_trace,
    rho_norm,
    rotation_eigenvalues,
    sym_power_trace,
)

__all__ = [
    'AbscissaBound', 'BridgeReport', 'ChainLink', 'DetFormulaValue', 'FactorizationResidual',
    'LengthSpectrum', 'ModelSpectralData', 'PrimitiveClass', 'RuelleAtZero', 'SelbergMode', 'Truncation',
    'ZetaValue', 'c_sigma', 'c_sigma_p', 'complete_homogeneous', 'convergence_abscissa', 'det_formula_eval',
    'elementary_symmetric', 'exponent_identity_residual', 'ext_power_trace', 'factorization_abscissa',
    'factorization_residual', 'log_ruelle', 'log_selberg', 'model_from_complex', 'rho_m', 'rho_norm',
    'rotation_eigenvalues', 'ruelle', 'ruelle_at_zero_model', 'sigma_p_weights', 'singularity_order',
    'sym_power_trace', 'torsion_bridge', 'vol_sphere',
]
