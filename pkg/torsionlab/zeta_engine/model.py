"""
TorsionLab - Model evaluation of the determinant formula

Regularized determinants of the flat Hodge Laplacians are replaced by finite
products over user-supplied eigenvalue lists. Weight arithmetic for Spin(d-1)
uses the standard ladder rho_M = (m-1, ..., 1, 0) with m = (d-1)/2.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gamma as gamma_fn

from ..errors import InputError, ModelSingularError
from .traces import rho_norm

ZERO_EIGENVALUE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ModelSpectralData:
    d: int
    eigenvalues: Tuple[np.ndarray, ...]
    dim_V_chi: int = 1
    vol_ratio: float = 1.0
    d_chi: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.d < 1 or self.d % 2 == 0:
            raise InputError(f"model dimension must be odd, got {self.d}")
        eigs = tuple(np.asarray(e, dtype=complex).reshape(-1) for e in self.eigenvalues)
        if len(eigs) != self.d + 1:
            raise InputError(f"expected eigenvalue lists for degrees 0..{self.d}, got {len(eigs)}")
        object.__setattr__(self, "eigenvalues", eigs)
        counted = tuple(int(np.sum(np.abs(e) <= ZERO_EIGENVALUE_TOL)) for e in eigs)
        if self.d_chi is None:
            object.__setattr__(self, "d_chi", counted)
        elif tuple(self.d_chi) != counted[: len(self.d_chi)]:
            raise InputError(f"kernel dimensions {list(self.d_chi)} disagree with zero counts {list(counted)}")

    def log_det(self, k: int) -> complex:
        """Principal log of the plain product of degree-k eigenvalues"""
        e = self.eigenvalues[k]
        if np.any(np.abs(e) <= ZERO_EIGENVALUE_TOL):
            raise ModelSingularError(f"degree {k} Laplacian has a kernel; use singularity_order")
        return complex(np.sum(np.log(e)))


@dataclass(frozen=True)
class DetFormulaValue:
    value: complex
    order: int
    singular_factors: Tuple[Tuple[int, int, int], ...] = ()

    @property
    def regular(self) -> bool:
        return not self.singular_factors


@dataclass(frozen=True)
class RuelleAtZero:
    degree_form: complex
    dual_form: complex

    @property
    def residual(self) -> float:
        return abs(self.degree_form - self.dual_form) / max(abs(self.dual_form), np.finfo(float).tiny)


def c_sigma(nu: Sequence[float], rho_m: Sequence[float], rho_norm_value: float) -> float:
    """c(sigma) = -|rho|^2 - |rho_M|^2 + |nu + rho_M|^2

    For sigma_p (see c_sigma_p) nu = (1^q, 0, ..., 0) with q = min(p, d-1-p), and
    rho_M = (m-1, ..., 0) gives |nu + rho_M|^2 - |rho_M|^2 = sum_{i<q} (2(m-1-i) + 1)
    = q(2m - q). With |rho| = m this is c(sigma_p) = -(m - q)^2 = -(|rho| - p)^2,
    so s(s + 2(|rho| - p)) = (s + |rho| - p)^2 + c(sigma_p).
    The c-sigma suite checks it for every p.
    """
    nu = np.asarray(nu, dtype=float)
    rho_m = np.asarray(rho_m, dtype=float)
    if nu.shape != rho_m.shape:
        raise InputError(f"weight lengths differ: {nu.size} and {rho_m.size}")
    return float(-rho_norm_value ** 2 - np.dot(rho_m, rho_m) + np.dot(nu + rho_m, nu + rho_m))


def rho_m(d: int) -> np.ndarray:
    """Half-sum of positive roots of Spin(d-1), d odd"""
    m = int(rho_norm(d))
    return np.arange(m - 1, -1, -1, dtype=float)


def sigma_p_weights(d: int, p: int) -> List[np.ndarray]:
    """Highest weights of the irreducible pieces of Lambda^p C^{d-1}; two pieces in the middle degree"""
    m = int(rho_norm(d))
    if not 0 <= p <= 2 * m:
        raise InputError(f"p must lie in 0..{2 * m}, got {p}")
    q = min(p, 2 * m - p)
    weight = np.zeros(m)
    weight[:q] = 1.0
    if q < m:
        return [weight]
    lowered = weight.copy()
    lowered[-1] = -1.0
    return [weight, lowered]


def c_sigma_p(d: int, p: int) -> float:
    return c_sigma(sigma_p_weights(d, p)[0], rho_m(d), rho_norm(d))


def vol_sphere(d: int) -> float:
    """Volume of the unit sphere S^d"""
    return float(2.0 * np.pi ** ((d + 1) / 2.0) / gamma_fn((d + 1) / 2.0))


def volume_exponent(d: int, dim_V_chi: int, vol_ratio: float) -> float:
    """Coefficient of s in the exponential factor of the determinant formula"""
    sign = (-1) ** ((d - 1) // 2 + 1)
    return sign * np.pi * (d + 1) * dim_V_chi * vol_ratio


def det_formula_eval(s: complex, model: ModelSpectralData, convention: str = "degree",
                     volume: Optional[float] = None, tol: float = ZERO_EIGENVALUE_TOL) -> DetFormulaValue:
    """prod_k prod_{p=k}^{d-1} det(Delta_k + s(s + 2(|rho| - p)))^{e(k,p)} * exp(c s)

    convention "degree" uses e(k,p) = (-1)^k, "literal" uses (-1)^p.
    """
    if convention not in ("degree", "literal"):
        raise InputError(f"unknown sign convention {convention!r}")
    s = complex(s)
    d = model.d
    rho = 0.5 * (d - 1)
    ratio = volume / vol_sphere(d) if volume is not None else model.vol_ratio

    log_value = volume_exponent(d, model.dim_V_chi, ratio) * s
    order = 0
    singular = []
    for k in range(d):
        eigs = model.eigenvalues[k]
        for p in range(k, d):
            exponent = (-1) ** k if convention == "degree" else (-1) ** p
            factors = eigs + s * (s + 2.0 * (rho - p))
            vanishing = np.abs(factors) <= tol * np.maximum(1.0, np.abs(eigs))
            if np.any(vanishing):
                # double zero in s where the derivative 2s + 2(|rho| - p) also vanishes
                double = abs(2.0 * (s + rho - p)) <= tol * max(1.0, abs(s), rho)
                count = int(np.sum(vanishing)) * (2 if double else 1)
                singular.append((k, p, exponent * count))
                order += exponent * count
            log_value += exponent * np.sum(np.log(factors[~vanishing]))
    return DetFormulaValue(complex(np.exp(log_value)), order, tuple(singular))


def ruelle_at_zero_model(model: ModelSpectralData) -> RuelleAtZero:
    """prod_{k<d} det(Delta_k)^((d-k)(-1)^k) and prod_{k>=1} det(Delta_k)^(k(-1)^(k-1))"""
    d = model.d
    logs = [model.log_det(k) for k in range(d + 1)]
    degree_form = sum((d - k) * (-1) ** k * logs[k] for k in range(d))
    dual_form = sum(k * (-1) ** (k - 1) * logs[k] for k in range(1, d + 1))
    return RuelleAtZero(complex(np.exp(degree_form)), complex(np.exp(dual_form)))


def exponent_identity_residual(log_x: Sequence[float], d: int) -> float:
    """Log-space gap between the two exponent forms on duality-symmetric data"""
    log_x = np.asarray(log_x, dtype=float)
    lhs = sum((d - k) * (-1) ** k * log_x[k] for k in range(d))
    rhs = sum(k * (-1) ** (k - 1) * log_x[k] for k in range(1, d + 1))
    return float(abs(lhs - rhs))


def singularity_order(d: int, d_chi: Sequence[int]) -> int:
    """sum_{k=0}^{(d-1)/2} (d+1-2k) (-1)^k d_k"""
    half = (d - 1) // 2
    if len(d_chi) < half + 1:
        raise InputError(f"need kernel dimensions for degrees 0..{half}, got {len(d_chi)}")
    return sum((d + 1 - 2 * k) * (-1) ** k * int(d_chi[k]) for k in range(half + 1))
