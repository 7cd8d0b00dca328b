"""
TorsionLab - Length spectrum data for Euler products
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..config import K_MAX, N_MAX, TAIL_TOL
from ..errors import InputError, ShapeError
from ..linalg import as_matrix, norm, rank

UNIT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PrimitiveClass:
    length: float
    holonomy_angles: Tuple[float, ...]
    chi: np.ndarray
    sigma_m_eigs: Tuple[complex, ...] = (1.0 + 0.0j,)

    def __post_init__(self):
        object.__setattr__(self, "holonomy_angles", tuple(float(a) for a in self.holonomy_angles))
        object.__setattr__(self, "sigma_m_eigs", tuple(complex(z) for z in self.sigma_m_eigs))
        chi = as_matrix(np.atleast_2d(self.chi))
        object.__setattr__(self, "chi", chi)
        if not self.length > 0:
            raise InputError(f"class length must be positive, got {self.length}")
        if chi.shape[0] != chi.shape[1] or rank(chi) < chi.shape[0]:
            raise ShapeError(f"chi must be an invertible square matrix, got shape {chi.shape}")
        if any(abs(abs(z) - 1.0) > UNIT_TOL for z in self.sigma_m_eigs):
            raise InputError("eigenvalues of sigma(m) must have unit modulus")

    @property
    def rank(self) -> int:
        return self.chi.shape[0]

    @property
    def chi_norm(self) -> float:
        return norm(self.chi)

    def chi_power_traces(self, n_max: int) -> np.ndarray:
        """tr chi^n for n = 1..n_max"""
        eigs = np.linalg.eigvals(self.chi)
        powers = np.arange(1, n_max + 1)[:, None]
        return np.sum(eigs[None, :] ** powers, axis=1)

    def sigma_power_traces(self, n_max: int) -> np.ndarray:
        eigs = np.asarray(self.sigma_m_eigs, dtype=complex)
        powers = np.arange(1, n_max + 1)[:, None]
        return np.sum(eigs[None, :] ** powers, axis=1)


@dataclass(frozen=True, eq=False)
class LengthSpectrum:
    d: int
    classes: Tuple[PrimitiveClass, ...] = ()
    growth_abscissa: float = 0.0

    def __post_init__(self):
        if self.d < 3 or self.d % 2 == 0:
            raise InputError(f"length spectra need odd d >= 3, got {self.d}")
        expected = (self.d - 1) // 2
        for c in self.classes:
            if len(c.holonomy_angles) != expected:
                raise ShapeError(f"each class needs {expected} rotation angles for d={self.d}")
        object.__setattr__(self, "classes", tuple(sorted(self.classes, key=lambda c: c.length)))

    @property
    def lengths(self) -> np.ndarray:
        return np.array([c.length for c in self.classes])


@dataclass(frozen=True)
class Truncation:
    l_max: float = float("inf")
    n_max: int = N_MAX
    k_max: int = K_MAX
    tail_tol: float = TAIL_TOL

    def __post_init__(self):
        if not (self.l_max > 0 and self.n_max > 0 and self.k_max > 0 and self.tail_tol > 0):
            raise InputError("truncation parameters must be positive")

    @classmethod
    def parse(cls, text: str) -> "Truncation":
        """n,k[,lmax[,tol]]"""
        parts = [p.strip() for p in text.split(",")]
        values = {"n_max": int(parts[0]), "k_max": int(parts[1])}
        if len(parts) > 2 and parts[2]:
            values["l_max"] = float(parts[2])
        if len(parts) > 3 and parts[3]:
            values["tail_tol"] = float(parts[3])
        return cls(**values)
