"""
TorsionLab - Symmetric and exterior power traces of holonomy rotations

On n-bar the holonomy acts as e^{-l} times a rotation with eigenvalues
e^{+-i phi_j}; traces of S^k and Lambda^p are complete homogeneous and
elementary symmetric polynomials of those eigenvalues, obtained from power
sums through Newton's identities.
"""

from typing import Sequence

import numpy as np

from ..errors import InputError


def rho_norm(d: int) -> float:
    """|rho| = (d-1)/2 for the single restricted root of so(d,1)"""
    if d < 3 or d % 2 == 0:
        raise InputError(f"rho_norm needs an odd d >= 3, got {d}")
    return 0.5 * (d - 1)


def rotation_eigenvalues(angles: Sequence[float], n: int = 1) -> np.ndarray:
    """Eigenvalues of R(angles)^n, each angle contributing e^{+i n phi} and e^{-i n phi}"""
    phases = n * np.asarray(angles, dtype=float)
    return np.concatenate([np.exp(1j * phases), np.exp(-1j * phases)])


def power_sums(eigs: np.ndarray, k_max: int) -> np.ndarray:
    """p_i = sum x^i for i = 1..k_max (index 0 unused)"""
    sums = np.zeros(k_max + 1, dtype=complex)
    power = np.ones_like(eigs, dtype=complex)
    for i in range(1, k_max + 1):
        power = power * eigs
        sums[i] = np.sum(power)
    return sums


def complete_homogeneous(eigs: np.ndarray, k_max: int) -> np.ndarray:
    """h_0..h_{k_max} from k h_k = sum_{i=1}^k p_i h_{k-i}"""
    p = power_sums(np.asarray(eigs, dtype=complex), k_max)
    h = np.zeros(k_max + 1, dtype=complex)
    h[0] = 1.0
    for k in range(1, k_max + 1):
        h[k] = np.dot(p[1:k + 1], h[k - 1::-1]) / k
    return h


def elementary_symmetric(eigs: np.ndarray, p_max: int) -> np.ndarray:
    """e_0..e_{p_max} from k e_k = sum_{i=1}^k (-1)^(i-1) p_i e_{k-i}"""
    p = power_sums(np.asarray(eigs, dtype=complex), p_max)
    e = np.zeros(p_max + 1, dtype=complex)
    e[0] = 1.0
    signs = np.array([(-1) ** (i - 1) for i in range(1, p_max + 1)], dtype=float)
    for k in range(1, p_max + 1):
        e[k] = np.dot(signs[:k] * p[1:k + 1], e[k - 1::-1]) / k
    return e


def sym_power_trace(angles: Sequence[float], length: float, n: int, k: int) -> complex:
    """tr S^k(e^{-n l} R(angles)^n)"""
    if n < 0 or k < 0:
        raise InputError("n and k must be nonnegative")
    h = complete_homogeneous(rotation_eigenvalues(angles, n), k)
    return complex(np.exp(-n * k * length) * h[k])


def ext_power_trace(angles: Sequence[float], n: int, p: int) -> complex:
    """tr Lambda^p(R(angles)^n) for 0 <= p <= d-1"""
    eigs = rotation_eigenvalues(angles, n)
    if not 0 <= p <= eigs.size:
        raise InputError(f"exterior power {p} out of range 0..{eigs.size}")
    return complex(elementary_symmetric(eigs, p)[p])
