"""
TorsionLab - Seeded fixture families

Complexes are built in a scaffold C^j = B^j + H^j + A^j where the
differential maps A^j isomorphically onto B^{j+1}, then moved into random
coordinates. The seed fully determines every fixture.
"""

from typing import List, Literal, Optional, Sequence

import numpy as np
import scipy.linalg as lin
from loguru import logger
from pydantic import BaseModel

from ..complexes import GradedComplex
from ..config import FixtureSettings
from ..errors import FixtureError
from ..linalg import random_hermitian, random_invertible, random_unitary
from ..torsion_complex import validate
from ..zeta_engine import LengthSpectrum, PrimitiveClass

FixtureKind = Literal["random-acyclic-complex", "hermitian-model-complex", "toy-d1", "synthetic-spectrum"]

DEFAULT_DIMS = {1: (1, 1), 3: (1, 2, 2, 1), 5: (1, 2, 2, 2, 2, 1)}
TOY_A = 2.0


class FixtureSpec(BaseModel):
    kind: FixtureKind
    d: int = 3
    dims: Optional[List[int]] = None
    betti: Optional[List[int]] = None
    classes: int = 5
    seed: int = 0
    epsilon: float = 0.0
    l_max: float = 3.0
    chi_rank: int = 1


def default_dims(d: int) -> List[int]:
    if d in DEFAULT_DIMS:
        return list(DEFAULT_DIMS[d])
    return [1] + [2] * (d - 1) + [1]


def toy_complex(a: float = TOY_A) -> GradedComplex:
    """0 -> C --a--> C -> 0 with Gamma the identity between the two degrees"""
    return GradedComplex.from_blocks(1, (1, 1), [[[a]]], [[[1.0]], [[1.0]]])


def _ranks(dims: Sequence[int], betti: Sequence[int]) -> List[int]:
    """a_j = dim A^j from n_j = a_{j-1} + h_j + a_j"""
    a = []
    previous = 0
    for j, (n, h) in enumerate(zip(dims, betti)):
        a_j = n - h - previous
        if a_j < 0:
            raise FixtureError(f"dims {list(dims)} cannot carry betti numbers {list(betti)} at degree {j}")
        a.append(a_j)
        previous = a_j
    if a[-1] != 0:
        raise FixtureError(f"dims {list(dims)} and betti {list(betti)} violate the Euler characteristic")
    return a


def _scaffold_block(rng: np.random.Generator, rows: int, cols: int, a: int) -> np.ndarray:
    """A^j (last a columns) onto B^{j+1} (first a rows)"""
    block = np.zeros((rows, cols), dtype=complex)
    if a:
        block[:a, cols - a:] = random_invertible(rng, a)
    return block


def _conjugate(target: np.ndarray, block: np.ndarray, source: np.ndarray) -> np.ndarray:
    """target @ block @ source^-1, tolerating empty degrees"""
    if source.shape[0] == 0:
        return block
    return target @ block @ lin.inv(source)


def _check_dims(spec: FixtureSpec) -> List[int]:
    dims = list(spec.dims) if spec.dims is not None else default_dims(spec.d)
    if len(dims) != spec.d + 1:
        raise FixtureError(f"expected {spec.d + 1} dimensions for d={spec.d}, got {dims}", spec.seed)
    if dims != dims[::-1]:
        raise FixtureError(f"dimensions must be palindromic, got {dims}", spec.seed)
    return dims


def _random_complex(rng: np.random.Generator, d: int, dims: List[int], betti: List[int]) -> GradedComplex:
    a = _ranks(dims, betti)
    coords = [random_invertible(rng, n) for n in dims]
    partial = [_conjugate(coords[j + 1], _scaffold_block(rng, dims[j + 1], dims[j], a[j]), coords[j])
               for j in range(d)]
    gamma: List[Optional[np.ndarray]] = [None] * (d + 1)
    for j in range((d + 1) // 2):
        g = random_invertible(rng, dims[j])
        gamma[j] = g
        gamma[d - j] = lin.inv(g) if dims[j] else g
    return GradedComplex.from_blocks(d, dims, partial, gamma)


def _hermitian_complex(rng: np.random.Generator, d: int, dims: List[int], epsilon: float) -> GradedComplex:
    """Unitary Gamma and a differential whose upper half is the Gamma-conjugated adjoint of the lower half

    With epsilon > 0 the differential is conjugated by I + epsilon E per degree.
    """
    r = (d + 1) // 2
    a = _ranks(dims, [0] * (d + 1))
    frames = [random_unitary(rng, n) for n in dims[:r]]
    partial: List[Optional[np.ndarray]] = [None] * d
    for j in range(r - 1):
        block = _scaffold_block(rng, dims[j + 1], dims[j], a[j])
        partial[j] = frames[j + 1] @ block @ frames[j].conj().T

    n, k = dims[r - 1], a[r - 1]
    middle = np.zeros((n, n), dtype=complex)
    middle[n - k:, n - k:] = random_hermitian(rng, k)
    middle = frames[r - 1] @ middle @ frames[r - 1].conj().T

    gamma: List[Optional[np.ndarray]] = [None] * (d + 1)
    for j in range(r):
        u = random_unitary(rng, dims[j])
        gamma[j] = u
        gamma[d - j] = u.conj().T
    partial[r - 1] = gamma[r - 1] @ middle
    for j in range(r - 1):
        partial[d - j - 1] = gamma[j] @ partial[j].conj().T @ gamma[j + 1].conj().T

    if epsilon:
        shifts = [np.eye(m) + epsilon * _unit_gaussian(rng, m) for m in dims]
        partial = [_conjugate(shifts[j + 1], p, shifts[j]) for j, p in enumerate(partial)]
    return GradedComplex.from_blocks(d, dims, partial, gamma)


def _unit_gaussian(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    scale = np.linalg.norm(z, 2) if n else 1.0
    return z / scale


def gen_complex(spec: FixtureSpec, settings: Optional[FixtureSettings] = None) -> GradedComplex:
    """Seeded complex with chirality of the requested family"""
    settings = settings or FixtureSettings()
    if spec.kind == "toy-d1":
        return toy_complex()
    if spec.kind not in ("random-acyclic-complex", "hermitian-model-complex"):
        raise FixtureError(f"fixture kind {spec.kind!r} does not produce a complex", spec.seed)

    dims = _check_dims(spec)
    betti = list(spec.betti) if spec.betti is not None else [0] * (spec.d + 1)
    if len(betti) != spec.d + 1 or betti != betti[::-1]:
        raise FixtureError(f"betti numbers must be palindromic of length {spec.d + 1}, got {betti}", spec.seed)
    if spec.kind == "hermitian-model-complex" and any(betti):
        raise FixtureError("hermitian models are acyclic", spec.seed)

    rng = np.random.default_rng(spec.seed)
    for attempt in range(settings.max_redraws):
        if spec.kind == "random-acyclic-complex":
            complex_ = _random_complex(rng, spec.d, dims, betti)
        else:
            complex_ = _hermitian_complex(rng, spec.d, dims, spec.epsilon)
        if any(betti):
            return complex_
        report = validate(complex_)
        if report.assumption1 and report.assumption2:
            if attempt:
                logger.debug(f"Fixture seed {spec.seed} accepted after {attempt} redraws")
            return complex_
        logger.debug(f"Fixture seed {spec.seed}: redraw {attempt + 1}, odd signature operator not bijective")
    raise FixtureError(f"odd signature operator not bijective after {settings.max_redraws} draws", spec.seed)


def gen_spectrum(spec: FixtureSpec) -> LengthSpectrum:
    """Synthetic length spectrum: sorted lengths in [0.5, l_max], uniform angles, chi = U exp(eps X)"""
    if spec.d < 3 or spec.d % 2 == 0:
        raise FixtureError(f"length spectra need odd d >= 3, got {spec.d}", spec.seed)
    rng = np.random.default_rng(spec.seed)
    lengths = np.sort(rng.uniform(0.5, spec.l_max, spec.classes))
    half = (spec.d - 1) // 2
    classes = []
    worst = 0.0
    for length in lengths:
        angles = rng.uniform(0.0, 2.0 * np.pi, half)
        chi = random_unitary(rng, spec.chi_rank)
        if spec.epsilon:
            chi = chi @ lin.expm(spec.epsilon * _unit_gaussian(rng, spec.chi_rank))
        cls = PrimitiveClass(float(length), tuple(angles), chi)
        worst = max(worst, np.log(max(cls.chi_norm, 1.0)) / cls.length)
        classes.append(cls)
    growth = float(worst + np.log1p(spec.classes))
    return LengthSpectrum(spec.d, tuple(classes), growth)


def single_class_spectrum(d: int = 3) -> LengthSpectrum:
    """One class of length 1 with rotation angles pi/3, pi/5, ... and trivial twist"""
    angles = tuple(np.pi / (2 * j + 3) for j in range((d - 1) // 2))
    return LengthSpectrum(d, (PrimitiveClass(1.0, angles, np.eye(1)),), 1.0)
