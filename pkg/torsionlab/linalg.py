"""
TorsionLab - Dense linear algebra helpers

Every helper accepts empty (0-row or 0-column) matrices; spaces of dimension
zero appear constantly in graded complexes.
"""

from typing import Callable, Sequence, Tuple

import numpy as np
import scipy.linalg as lin

from .config import RANK_TOL
from .errors import ShapeError, SpectralDecompositionError


def as_matrix(data, rows: int = None, cols: int = None) -> np.ndarray:
    """Coerce to a complex 2-d array, optionally checking its shape"""
    m = np.asarray(data, dtype=complex)
    if m.ndim != 2:
        if m.size == 0 and rows is not None and cols is not None:
            return np.zeros((rows, cols), dtype=complex)
        raise ShapeError(f"expected a matrix, got an array with {m.ndim} dimensions")
    if rows is not None and cols is not None and m.shape != (rows, cols):
        if m.size == 0 and rows * cols == 0:
            return np.zeros((rows, cols), dtype=complex)
        raise ShapeError(f"expected shape {(rows, cols)}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ShapeError("matrix has non-finite entries")
    return m


def require_square(m: np.ndarray) -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got {m.shape}")
    return m


def norm(m: np.ndarray) -> float:
    """Spectral norm, 0 for empty matrices"""
    if m.size == 0:
        return 0.0
    return float(lin.norm(m, 2))


def rank(m: np.ndarray, tol: float = RANK_TOL) -> int:
    """Numerical rank with singular values above tol times the largest one"""
    if m.size == 0:
        return 0
    s = lin.svdvals(m)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def drop_below(m: np.ndarray, floor: float) -> np.ndarray:
    """Remove singular values at or below an absolute floor"""
    if m.size == 0 or floor <= 0.0:
        return m
    u, s, vh = lin.svd(m, full_matrices=False)
    if s[0] <= floor:
        return np.zeros_like(m)
    keep = s > floor
    if np.all(keep):
        return m
    return (u[:, keep] * s[keep]) @ vh[keep]


def smallest_singular_value(m: np.ndarray) -> float:
    if m.size == 0:
        return float("inf")
    return float(lin.svdvals(m)[-1]) if m.shape[0] == m.shape[1] else 0.0


def null_space(m: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the kernel as columns"""
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=complex)
    if rows == 0 or not np.any(m):
        return np.eye(cols, dtype=complex)
    return lin.null_space(m.astype(complex), rcond=tol)


def orth(m: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the column space"""
    rows, cols = m.shape
    if rows == 0 or cols == 0 or not np.any(m):
        return np.zeros((rows, 0), dtype=complex)
    return lin.orth(m.astype(complex), rcond=tol)


def complement(basis: np.ndarray, n: int, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of span(basis) in C^n"""
    if basis.shape[1] == 0:
        return np.eye(n, dtype=complex)
    return null_space(basis.conj().T, tol)


def intersect_with_complement(kernel_of: np.ndarray, avoid: np.ndarray, n: int,
                              tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of Ker(kernel_of) intersected with span(avoid)^perp"""
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    stacked = np.vstack([kernel_of.reshape(-1, n), avoid.conj().T.reshape(-1, n)])
    return null_space(stacked, tol)


def det(m: np.ndarray) -> complex:
    if m.shape[0] == 0:
        return 1.0 + 0.0j
    return complex(np.linalg.det(m))


def invariant_subspace(m: np.ndarray, select: Callable[[complex], bool]) -> np.ndarray:
    """Orthonormal basis of the invariant subspace for the selected eigenvalues

    Uses a sorted complex Schur form so the selected eigenvalues lead.
    """
    n = m.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    try:
        _, z, sdim = lin.schur(m.astype(complex), output="complex", sort=select)
    except (lin.LinAlgError, ValueError) as e:
        raise SpectralDecompositionError(f"Schur reordering failed: {e}")
    return z[:, :sdim]


def block_projector(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Projector onto span(left) along span(right); the spans must be complementary"""
    n = left.shape[0]
    s = np.hstack([left, right])
    if s.shape[1] != n or rank(s) < n:
        raise SpectralDecompositionError("invariant subspaces are not complementary")
    e = np.zeros((n, n), dtype=complex)
    k = left.shape[1]
    e[:k, :k] = np.eye(k)
    return s @ e @ lin.inv(s)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = lin.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_invertible(rng: np.random.Generator, n: int,
                      spread: Tuple[float, float] = (0.5, 2.0)) -> np.ndarray:
    """Random matrix with singular values drawn from spread"""
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    s = rng.uniform(spread[0], spread[1], n)
    return random_unitary(rng, n) @ np.diag(s) @ random_unitary(rng, n)


def random_hermitian(rng: np.random.Generator, n: int,
                     spread: Tuple[float, float] = (0.5, 2.0)) -> np.ndarray:
    """Random invertible Hermitian matrix with mixed-sign eigenvalues"""
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    values = rng.uniform(spread[0], spread[1], n) * rng.choice([-1.0, 1.0], n)
    u = random_unitary(rng, n)
    return u @ np.diag(values) @ u.conj().T


def block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    if not blocks:
        return np.zeros((0, 0), dtype=complex)
    return lin.block_diag(*blocks).astype(complex)
