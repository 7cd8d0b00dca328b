"""
TorsionLab - Odd signature operator

B = Gamma partial + partial Gamma preserves the parity of degrees; its square
is the flat Laplacian partial partial# + partial# partial with the dual
differential partial# = Gamma partial Gamma.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from ..complexes import GradedComplex
from ..config import AGMON_EPSILON, AXIS_TOL, CLUSTER_TOL, RANK_TOL
from ..errors import AssumptionError
from ..linalg import norm, null_space, rank
from ..spectral_core import (
    EtaResult,
    GradedConvention,
    Spectrum,
    choose_agmon_angle,
    eta,
    graded_det,
    ldet_theta,
    spectral_decompose,
)
from .validation import odd_signature_matrix

DEFAULT_THETA = -np.pi / 2


@dataclass(frozen=True, eq=False)
class OddSignature:
    complex: GradedComplex
    B: np.ndarray
    B_ev: np.ndarray
    B_sq_per_degree: Tuple[np.ndarray, ...]
    cluster_tol: float = CLUSTER_TOL

    @cached_property
    def ev_spectrum(self) -> Spectrum:
        return spectral_decompose(self.B_ev, self.cluster_tol)

    @cached_property
    def sq_spectra(self) -> Tuple[Spectrum, ...]:
        return tuple(spectral_decompose(block, self.cluster_tol) for block in self.B_sq_per_degree)

    @property
    def even_dim(self) -> int:
        return self.B_ev.shape[0]


@dataclass(frozen=True, eq=False)
class PMSplit:
    """Lambda^ev_+ = Ker(partial Gamma) and Lambda^ev_- = Ker(Gamma partial) in even coordinates"""

    plus_basis: np.ndarray
    minus_basis: np.ndarray
    plus_dims: Tuple[int, ...]
    minus_dims: Tuple[int, ...]
    B_plus: np.ndarray
    B_minus: np.ndarray
    cluster_tol: float = CLUSTER_TOL

    @cached_property
    def spec_plus(self) -> Spectrum:
        return spectral_decompose(self.B_plus, self.cluster_tol)

    @cached_property
    def spec_minus(self) -> Spectrum:
        return spectral_decompose(self.B_minus, self.cluster_tol)


def odd_signature(complex_: GradedComplex, cluster_tol: float = CLUSTER_TOL) -> OddSignature:
    b = odd_signature_matrix(complex_)
    ev = complex_.dims.even_index
    b_sq = b @ b
    blocks = tuple(complex_.block(b_sq, k, k) for k in range(complex_.d + 1))
    return OddSignature(complex_, b, b[np.ix_(ev, ev)], blocks, cluster_tol)


def sharp_laplacian(complex_: GradedComplex) -> np.ndarray:
    """partial partial# + partial# partial assembled from the dual differential"""
    p = complex_.partial_matrix()
    sharp = complex_.sharp_matrix()
    return p @ sharp + sharp @ p


def sharp_residual(osig: OddSignature) -> float:
    """Relative distance between B^2 and the flat Laplacian"""
    b_sq = osig.B @ osig.B
    scale = max(norm(b_sq), 1.0)
    return norm(b_sq - sharp_laplacian(osig.complex)) / scale


def commutation_residual(osig: OddSignature) -> float:
    """Largest relative commutator of B^2 with B, partial and Gamma"""
    b_sq = osig.B @ osig.B
    worst = 0.0
    for op in (osig.B, osig.complex.partial_matrix(), osig.complex.gamma_matrix()):
        scale = max(norm(op) * norm(b_sq), 1.0)
        worst = max(worst, norm(op @ b_sq - b_sq @ op) / scale)
    return worst


def _even_embedding(complex_: GradedComplex, per_degree) -> Tuple[np.ndarray, Tuple[int, ...]]:
    dims = complex_.dims.dims
    even = list(range(0, complex_.d + 1, 2))
    n_ev = sum(dims[k] for k in even)
    cols = sum(per_degree[k].shape[1] for k in even)
    basis = np.zeros((n_ev, cols), dtype=complex)
    row = col = 0
    for k in even:
        block = per_degree[k]
        basis[row:row + dims[k], col:col + block.shape[1]] = block
        row += dims[k]
        col += block.shape[1]
    return basis, tuple(per_degree[k].shape[1] for k in even)


def pm_split(osig: OddSignature, tol: float = RANK_TOL) -> PMSplit:
    """Certified direct sum C^ev = Lambda_+ + Lambda_- with B^ev restricted to each part"""
    complex_ = osig.complex
    d, dims = complex_.d, complex_.dims.dims
    plus, minus = {}, {}
    for k in range(0, d + 1, 2):
        gamma_k = complex_.gamma[k]
        if d - k < d:
            plus[k] = null_space(complex_.partial[d - k] @ gamma_k, tol)
        else:
            plus[k] = np.eye(dims[k], dtype=complex)
        minus[k] = null_space(complex_.gamma[k + 1] @ complex_.partial[k], tol)

    plus_basis, plus_dims = _even_embedding(complex_, plus)
    minus_basis, minus_dims = _even_embedding(complex_, minus)
    n_ev = osig.even_dim
    if plus_basis.shape[1] + minus_basis.shape[1] != n_ev or rank(np.hstack([plus_basis, minus_basis]), tol) != n_ev:
        raise AssumptionError(
            f"Lambda_+ ({plus_basis.shape[1]}) and Lambda_- ({minus_basis.shape[1]}) "
            f"do not split the even part of dimension {n_ev}"
        )
    b_plus = plus_basis.conj().T @ osig.B_ev @ plus_basis
    b_minus = minus_basis.conj().T @ osig.B_ev @ minus_basis
    logger.debug(f"Even split dims: plus={plus_dims}, minus={minus_dims}")
    return PMSplit(plus_basis, minus_basis, plus_dims, minus_dims, b_plus, b_minus, osig.cluster_tol)


def default_theta(osig: OddSignature, split: Optional[PMSplit] = None,
                  epsilon: float = AGMON_EPSILON) -> float:
    """-pi/2 when admissible for B^ev, B^ev_+, -B^ev_- and (doubled) B^2; else the widest gap in (-pi, 0)"""
    split = split if split is not None else pm_split(osig)
    spectra = [osig.ev_spectrum, split.spec_plus, split.spec_minus.negated()]
    return choose_agmon_angle(spectra, DEFAULT_THETA, -np.pi, 0.0, doubled=osig.sq_spectra, epsilon=epsilon)


def graded_det_Bev(osig: OddSignature, theta: Optional[float] = None, split: Optional[PMSplit] = None,
                   epsilon: float = AGMON_EPSILON) -> complex:
    """det_theta(B^ev_+) / det_theta(-B^ev_-)"""
    split = split if split is not None else pm_split(osig)
    theta = default_theta(osig, split, epsilon) if theta is None else theta
    return graded_det(split.spec_plus, split.spec_minus, theta, GradedConvention.NEGATE_MINUS, epsilon)


def xi(osig: OddSignature, theta: Optional[float] = None, epsilon: float = AGMON_EPSILON) -> complex:
    """1/2 sum_k (-1)^(k+1) k Ldet_{2 theta}(B^2 on degree k)"""
    theta = default_theta(osig, epsilon=epsilon) if theta is None else theta
    total = 0.0 + 0.0j
    for k, spec in enumerate(osig.sq_spectra):
        if k == 0 or spec.dim == 0:
            continue
        total += 0.5 * (-1) ** (k + 1) * k * ldet_theta(spec, 2.0 * theta, epsilon)
    return complex(total)


def eta_Bev(osig: OddSignature, theta: Optional[float] = None,
            axis_tol: float = AXIS_TOL, epsilon: float = AGMON_EPSILON) -> EtaResult:
    theta = default_theta(osig, epsilon=epsilon) if theta is None else theta
    return eta(osig.ev_spectrum, theta, axis_tol, epsilon)


def rho_invariant(eta_value: float, eta_tr: float, rank_: int) -> float:
    """eta(B^ev) - rank * eta_tr"""
    return float(eta_value - rank_ * eta_tr)
