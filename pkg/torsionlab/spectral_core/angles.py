"""
TorsionLab - Agmon angles and branch logarithms
"""

from dataclasses import dataclass
from typing import Iterable, List, Sequence

import numpy as np
from loguru import logger

from ..config import AGMON_EPSILON, BRANCH_TOL
from ..errors import AgmonAngleError, BranchCutError, InvertibilityError
from .spectrum import Spectrum

TWO_PI = 2.0 * np.pi


def angular_distance(a: float, b: float) -> float:
    """Distance between two directions on the circle, in [0, pi]"""
    return abs((a - b + np.pi) % TWO_PI - np.pi)


def branch_log(z: complex, theta: float, tol: float = BRANCH_TOL) -> complex:
    """Logarithm with imaginary part in (theta, theta + 2 pi)"""
    z = complex(z)
    if z == 0:
        raise InvertibilityError("logarithm of zero")
    arg = float(np.angle(z))
    if angular_distance(arg, theta) <= tol:
        raise BranchCutError(f"{z} lies on the cut ray at angle {theta}")
    phase = theta + (arg - theta) % TWO_PI
    return complex(np.log(abs(z)), phase)


def is_agmon(spec: Spectrum, theta: float, epsilon: float = AGMON_EPSILON) -> bool:
    """True iff no nonzero eigenvalue lies in the closed sector [theta - eps, theta + eps]"""
    return all(
        angular_distance(float(np.angle(e.value)), theta) > epsilon
        for e in spec.entries
        if e.value != 0
    )


@dataclass(frozen=True)
class AgmonAngle:
    theta: float
    epsilon: float = AGMON_EPSILON

    def __post_init__(self):
        if self.epsilon <= 0:
            raise AgmonAngleError(f"exclusion half-width must be positive, got {self.epsilon}")

    def admits(self, *spectra: Spectrum) -> bool:
        return all(is_agmon(s, self.theta, self.epsilon) for s in spectra)

    def require(self, *spectra: Spectrum) -> "AgmonAngle":
        for s in spectra:
            if not is_agmon(s, self.theta, self.epsilon):
                raise AgmonAngleError(f"{self.theta} is not an Agmon angle for the spectrum")
        return self

    @property
    def doubled(self) -> "AgmonAngle":
        return AgmonAngle(2.0 * self.theta, self.epsilon)


def _forbidden(spectra: Iterable[Spectrum], doubled: Iterable[Spectrum]) -> List[float]:
    angles = [float(np.angle(e.value)) for s in spectra for e in s.entries if e.value != 0]
    for s in doubled:
        for e in s.entries:
            if e.value != 0:
                half = float(np.angle(e.value)) / 2.0
                angles.extend([half, half + np.pi])
    return angles


def admissible_angles(
    spectra: Sequence[Spectrum],
    lower: float,
    upper: float,
    doubled: Sequence[Spectrum] = (),
    epsilon: float = AGMON_EPSILON,
) -> List[float]:
    """Midpoints of the angular gaps inside (lower, upper), widest gap first

    Angles in `doubled` spectra forbid theta whenever 2 theta hits them.
    """
    cuts = [lower, upper]
    for a in _forbidden(spectra, doubled):
        shifted = lower + (a - lower) % TWO_PI
        if lower < shifted < upper:
            cuts.append(shifted)
    cuts.sort()
    gaps = [(hi - lo, 0.5 * (lo + hi)) for lo, hi in zip(cuts[:-1], cuts[1:]) if hi - lo > 2.0 * epsilon]
    gaps.sort(key=lambda g: -g[0])
    return [mid for _, mid in gaps]


def choose_agmon_angle(
    spectra: Sequence[Spectrum],
    preferred: float,
    lower: float,
    upper: float,
    doubled: Sequence[Spectrum] = (),
    epsilon: float = AGMON_EPSILON,
    margin: float = 1e-8,
) -> float:
    """The preferred angle when it clears every forbidden direction, else the widest gap's midpoint"""
    forbidden = _forbidden(spectra, doubled)
    if lower < preferred < upper and all(angular_distance(a, preferred) > epsilon + margin for a in forbidden):
        return preferred
    candidates = admissible_angles(spectra, lower, upper, doubled, epsilon)
    if not candidates:
        raise AgmonAngleError(f"no Agmon angle in ({lower}, {upper})")
    logger.debug(f"Preferred angle {preferred} rejected, using {candidates[0]}")
    return candidates[0]
