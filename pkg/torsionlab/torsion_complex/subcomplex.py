"""
TorsionLab - Spectral subcomplexes

C_[0,lambda] and C_(lambda,inf) are the sums of root subspaces of B^2 per
degree with |eigenvalue| at most / above lambda. Both partial and Gamma
commute with B^2, so each part is again a complex with chirality.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg as lin
from loguru import logger

from ..complexes import GradedComplex
from ..config import COMMUTE_TOL, DEFAULT_TOLERANCES, PROJECTION_TOL, ZERO_TOL, Tolerances
from ..det_line import is_acyclic
from ..errors import SpectralGapError
from ..linalg import invariant_subspace, norm
from .signature import commutation_residual, odd_signature

GAP_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SpectralSplit:
    level: float
    low: GradedComplex
    high: GradedComplex
    low_frames: Tuple[np.ndarray, ...]
    high_frames: Tuple[np.ndarray, ...]
    commutation_residual: float
    high_acyclic: bool


def _leak(op: np.ndarray, source: np.ndarray, target: np.ndarray) -> float:
    """Part of op(span source) outside span target, relative to ||op||"""
    if op.size == 0 or source.shape[1] == 0:
        return 0.0
    image = op @ source
    outside = image - target @ (target.conj().T @ image)
    return norm(outside) / max(norm(op), 1.0)


def spectral_split(complex_: GradedComplex, level: float, zero_tol: float = ZERO_TOL,
                   commute_tol: float = COMMUTE_TOL, projection_tol: float = PROJECTION_TOL,
                   gap_tol: float = GAP_TOL) -> SpectralSplit:
    """Split at |spec B^2| = level; level 0 means the generalized kernel of B^2

    partial and Gamma must commute with B^2 within commute_tol; the computed
    projections must then carry each part into itself within projection_tol.
    """
    if level < 0:
        raise SpectralGapError(f"cut level must be nonnegative, got {level}")
    osig = odd_signature(complex_)
    operator = commutation_residual(osig)
    if operator > commute_tol:
        raise SpectralGapError(f"partial and Gamma do not commute with B^2 ({operator:.3e})")
    scale = max(norm(osig.B @ osig.B), 1.0)
    cutoff = zero_tol * scale if level == 0 else float(level)

    low_frames: List[np.ndarray] = []
    high_frames: List[np.ndarray] = []
    for k, block in enumerate(osig.B_sq_per_degree):
        if block.shape[0] == 0:
            low_frames.append(np.zeros((0, 0), dtype=complex))
            high_frames.append(np.zeros((0, 0), dtype=complex))
            continue
        moduli = np.abs(lin.eigvals(block))
        if level > 0 and np.any(np.abs(moduli - level) <= gap_tol * scale):
            raise SpectralGapError(f"level {level} meets the spectrum of B^2 in degree {k}")
        expected = int(np.sum(moduli <= cutoff))
        low = invariant_subspace(block, lambda z: abs(z) <= cutoff)
        high = invariant_subspace(block, lambda z: abs(z) > cutoff)
        if low.shape[1] != expected or low.shape[1] + high.shape[1] != block.shape[0]:
            raise SpectralGapError(f"degree {k}: Schur reordering disagrees with the eigenvalue count")
        low_frames.append(low)
        high_frames.append(high)

    residual = _commutation(complex_, low_frames, high_frames)
    if residual > projection_tol:
        raise SpectralGapError(f"spectral projection does not commute with partial and Gamma ({residual:.3e})")

    low_part = complex_.restricted(low_frames)
    high_part = complex_.restricted(high_frames)
    acyclic = is_acyclic(high_part)
    logger.debug(
        f"Split at level {level}: low dims {list(low_part.dims.dims)}, "
        f"high dims {list(high_part.dims.dims)}, residual {residual:.2e}"
    )
    return SpectralSplit(float(level), low_part, high_part, tuple(low_frames), tuple(high_frames),
                         residual, acyclic)


def split_with(complex_: GradedComplex, level: float, tols: Tolerances = DEFAULT_TOLERANCES) -> SpectralSplit:
    """spectral_split with the zero, commutation and projection tolerances of a bundle"""
    return spectral_split(complex_, level, zero_tol=tols.zero_tol, commute_tol=tols.commute_tol,
                          projection_tol=tols.projection_tol)


def _commutation(complex_: GradedComplex, *frame_sets: Sequence[np.ndarray]) -> float:
    d = complex_.d
    worst = 0.0
    for frames in frame_sets:
        for j, p in enumerate(complex_.partial):
            worst = max(worst, _leak(p, frames[j], frames[j + 1]))
        for j, g in enumerate(complex_.gamma):
            worst = max(worst, _leak(g, frames[j], frames[d - j]))
    return worst


def cut_levels(complex_: GradedComplex, count: int = 3, rel_tol: float = 1e-6) -> List[float]:
    """Admissible cut levels: 0, midpoints of gaps in |spec B^2|, and one level above the spectrum"""
    osig = odd_signature(complex_)
    moduli = np.sort(np.concatenate([np.abs(lin.eigvals(b)) for b in osig.B_sq_per_degree if b.size]
                                    or [np.zeros(0)]))
    levels = [0.0]
    if moduli.size:
        scale = max(moduli[-1], 1.0)
        distinct = [moduli[0]]
        for m in moduli[1:]:
            if m - distinct[-1] > rel_tol * scale:
                distinct.append(m)
        levels.extend(0.5 * (a + b) for a, b in zip(distinct[:-1], distinct[1:]))
        top = 2.0 * distinct[-1] + 1.0
        levels = levels[: count - 1] + [top]
    return levels[:count]
