"""
TorsionLab - Spectra with algebraic multiplicities

Eigenvalues are clustered by single linkage; every cluster becomes one entry
whose multiplicity is the algebraic multiplicity of the root subspace.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

import numpy as np
import scipy.linalg as lin
from loguru import logger
from scipy.cluster.hierarchy import fcluster, linkage

from ..config import CLUSTER_TOL
from ..errors import SpectralDecompositionError
from ..linalg import block_projector, invariant_subspace, norm, require_square


@dataclass(frozen=True)
class SpectralEntry:
    value: complex
    mult: int


@dataclass(frozen=True, eq=False)
class Spectrum:
    entries: Tuple[SpectralEntry, ...] = ()
    projectors: Optional[Tuple[np.ndarray, ...]] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return sum(e.mult for e in self.entries)

    @property
    def values(self) -> np.ndarray:
        """Eigenvalues repeated by multiplicity"""
        if not self.entries:
            return np.zeros(0, dtype=complex)
        return np.concatenate([np.full(e.mult, e.value, dtype=complex) for e in self.entries])

    def det(self) -> complex:
        return complex(np.prod([e.value ** e.mult for e in self.entries])) if self.entries else 1.0 + 0.0j

    def negated(self) -> "Spectrum":
        return Spectrum(tuple(SpectralEntry(-e.value, e.mult) for e in self.entries))

    def has_zero(self, tol: float = 0.0) -> bool:
        return any(abs(e.value) <= tol for e in self.entries)

    @classmethod
    def from_eigenvalues(cls, values: Iterable[complex], tol: float = 0.0) -> "Spectrum":
        """Group raw eigenvalues whose single-linkage distance is within tol"""
        values = np.asarray(list(values), dtype=complex)
        labels = _cluster(values, tol)
        entries = []
        for label in np.unique(labels):
            members = values[labels == label]
            entries.append(SpectralEntry(complex(np.mean(members)), int(members.size)))
        entries.sort(key=lambda e: (e.value.real, e.value.imag))
        return cls(tuple(entries))


def _cluster(values: np.ndarray, tol: float) -> np.ndarray:
    if values.size == 0:
        return np.zeros(0, dtype=int)
    if values.size == 1 or tol <= 0.0:
        _, labels = np.unique(values, return_inverse=True)
        return labels.reshape(-1)
    points = np.column_stack([values.real, values.imag])
    tree = linkage(points, method="single")
    return fcluster(tree, t=tol, criterion="distance")


def spectral_decompose(m: np.ndarray, tol: float = CLUSTER_TOL, projectors: bool = False) -> Spectrum:
    """Eigenvalues of m grouped within tol * ||m||, with root-subspace projectors on request"""
    m = require_square(m)
    n = m.shape[0]
    if n == 0:
        return Spectrum((), () if projectors else None)

    try:
        raw = lin.eigvals(m)
    except lin.LinAlgError as e:
        raise SpectralDecompositionError(f"eigenvalue iteration did not converge: {e}")
    if not np.all(np.isfinite(raw)):
        raise SpectralDecompositionError("eigenvalue iteration produced non-finite values")

    scale = max(norm(m), np.finfo(float).tiny)
    spectrum = Spectrum.from_eigenvalues(raw, tol * scale)
    logger.debug(f"Decomposed {n}x{n} matrix into {len(spectrum.entries)} clusters")
    if not projectors:
        return spectrum
    return Spectrum(spectrum.entries, root_projectors(m, spectrum))


def root_projectors(m: np.ndarray, spectrum: Spectrum) -> Tuple[np.ndarray, ...]:
    """Spectral projectors onto the root subspaces, one per entry"""
    centers = np.array([e.value for e in spectrum.entries], dtype=complex)
    result = []
    for index, entry in enumerate(spectrum.entries):

        def nearest(z, index=index):
            return int(np.argmin(np.abs(centers - z))) == index

        inside = invariant_subspace(m, nearest)
        outside = invariant_subspace(m, lambda z, index=index: not nearest(z, index))
        if inside.shape[1] != entry.mult:
            raise SpectralDecompositionError(
                f"root subspace of {entry.value} has dimension {inside.shape[1]}, expected {entry.mult}"
            )
        result.append(block_projector(inside, outside))
    return tuple(result)
