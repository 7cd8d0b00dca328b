"""
TorsionLab - Refined torsion of a complex with chirality

phi maps det C* to det H* through a split C^j = B^j + H^j + A^j, c_gamma is
the chirality-built element of det C*, and the refined torsion is their
composition. Coordinates on det H^j come from a cohomology frame: functionals
on C^j vanishing on the image of the previous differential.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..complexes import GradedComplex
from ..config import RANK_TOL
from ..errors import ChiralityError, SplitChoiceError
from ..linalg import as_matrix, det, intersect_with_complement, norm, null_space, orth, rank
from .lines import DetLineElement, LineTag

INVOLUTION_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SplitChoice:
    """Bases of A^j and H^j per degree; B^j is the image of A^{j-1}"""

    A: Tuple[np.ndarray, ...]
    H: Tuple[np.ndarray, ...]

    def B(self, complex_: GradedComplex, j: int) -> np.ndarray:
        if j == 0:
            return np.zeros((complex_.dims.dims[0], 0), dtype=complex)
        return complex_.partial[j - 1] @ self.A[j - 1]

    def frame_matrix(self, complex_: GradedComplex, j: int) -> np.ndarray:
        return np.hstack([self.B(complex_, j), self.H[j], self.A[j]])


def _differential(complex_: GradedComplex, j: int) -> np.ndarray:
    """partial[j], or the zero map out of the top degree"""
    if j < complex_.d:
        return complex_.partial[j]
    return np.zeros((0, complex_.dims.dims[j]), dtype=complex)


def _image(complex_: GradedComplex, j: int, tol: float) -> np.ndarray:
    """Orthonormal basis of the image of partial[j-1] inside C^j"""
    if j == 0:
        return np.zeros((complex_.dims.dims[0], 0), dtype=complex)
    return orth(complex_.partial[j - 1], tol)


def harmonic_basis(complex_: GradedComplex, j: int, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of Ker partial[j] orthogonal to Im partial[j-1]"""
    n = complex_.dims.dims[j]
    return intersect_with_complement(_differential(complex_, j), _image(complex_, j, tol), n, tol)


def betti_numbers(complex_: GradedComplex, tol: float = RANK_TOL) -> Tuple[int, ...]:
    ranks = [rank(p, tol) for p in complex_.partial] + [0]
    return tuple(
        complex_.dims.dims[j] - ranks[j] - (ranks[j - 1] if j else 0) for j in range(complex_.d + 1)
    )


def is_acyclic(complex_: GradedComplex, tol: float = RANK_TOL) -> bool:
    return all(b == 0 for b in betti_numbers(complex_, tol))


def cohomology_frame(complex_: GradedComplex, tol: float = RANK_TOL) -> Tuple[np.ndarray, ...]:
    """Default coordinates on H^j: the adjoint of the harmonic basis"""
    return tuple(harmonic_basis(complex_, j, tol).conj().T for j in range(complex_.d + 1))


def embedded_frame(frame: Sequence[np.ndarray], embedding: Sequence[np.ndarray]) -> Tuple[np.ndarray, ...]:
    """Pull an ambient cohomology frame back to a subcomplex along its embedding"""
    return tuple(f @ q for f, q in zip(frame, embedding))


def default_split(complex_: GradedComplex, tol: float = RANK_TOL) -> SplitChoice:
    """A^j the orthogonal complement of the kernel, H^j the harmonic part"""
    A = []
    H = []
    for j in range(complex_.d + 1):
        A.append(orth(_differential(complex_, j).conj().T, tol))
        H.append(harmonic_basis(complex_, j, tol))
    return SplitChoice(tuple(A), tuple(H))


def random_split(complex_: GradedComplex, rng: np.random.Generator, tol: float = RANK_TOL) -> SplitChoice:
    """A random valid split: default bases mixed and shifted by kernel and image vectors"""
    base = default_split(complex_, tol)
    A = []
    H = []
    for j in range(complex_.d + 1):
        kernel = null_space(_differential(complex_, j), tol)
        image = _image(complex_, j, tol)
        a, h = base.A[j], base.H[j]
        A.append(a @ _gaussian(rng, a.shape[1], a.shape[1]) + kernel @ _gaussian(rng, kernel.shape[1], a.shape[1]))
        H.append(h @ _gaussian(rng, h.shape[1], h.shape[1]) + image @ _gaussian(rng, image.shape[1], h.shape[1]))
    return SplitChoice(tuple(A), tuple(H))


def _gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def validate_split(complex_: GradedComplex, choice: SplitChoice, tol: float = RANK_TOL) -> None:
    """Rank tests for C^j = B^j + H^j + A^j with B^j + H^j = Ker partial[j]"""
    d = complex_.d
    if len(choice.A) != d + 1 or len(choice.H) != d + 1:
        raise SplitChoiceError(f"expected {d + 1} degrees in the split")
    if choice.A[d].shape[1] != 0:
        raise SplitChoiceError("A^d must be zero")
    for j in range(d + 1):
        n = complex_.dims.dims[j]
        diff = _differential(complex_, j)
        a, h = choice.A[j], choice.H[j]
        if a.shape[0] != n or h.shape[0] != n:
            raise SplitChoiceError(f"degree {j}: bases must live in C^{j} of dimension {n}")
        if a.shape[1] != rank(diff, tol) or rank(diff @ a, tol) != a.shape[1]:
            raise SplitChoiceError(f"degree {j}: A^{j} is not a complement of the kernel")
        if h.shape[1] and norm(diff @ h) > 1e2 * tol * max(norm(diff) * norm(h), 1.0):
            raise SplitChoiceError(f"degree {j}: H^{j} is not inside the kernel")
        full = choice.frame_matrix(complex_, j)
        if full.shape[1] != n or rank(full, tol) != n:
            raise SplitChoiceError(f"degree {j}: B + H + A does not span C^{j}")


def sign_N(a_dims: Sequence[int]) -> int:
    """N(C*) = 1/2 sum_j a_j (a_j + (-1)^(j+1)), exact"""
    return sum(a * (a + (-1) ** (j + 1)) for j, a in enumerate(a_dims)) // 2


def sign_R(dims: Sequence[int], r: int) -> int:
    """R(C*) = 1/2 sum_{j<r} n_j (n_j + (-1)^(r+j)), exact"""
    return sum(n * (n + (-1) ** (r + j)) for j, n in enumerate(dims[:r])) // 2


def cohomology_tag(complex_: GradedComplex, frame: Sequence[np.ndarray]) -> LineTag:
    return LineTag("det H*", tuple((f"H{j}", f.shape[0]) for j, f in enumerate(frame)))


def chain_tag(complex_: GradedComplex) -> LineTag:
    return LineTag("det C*", tuple((f"C{j}", n) for j, n in enumerate(complex_.dims.dims)))


def phi(complex_: GradedComplex, choice: Optional[SplitChoice] = None,
        frame: Optional[Sequence[np.ndarray]] = None, tol: float = RANK_TOL) -> DetLineElement:
    """Image of c_0 (x) c_1^{-1} (x) ... under phi, in frame coordinates on det H*"""
    choice = choice if choice is not None else default_split(complex_, tol)
    validate_split(complex_, choice, tol)
    frame = tuple(frame) if frame is not None else cohomology_frame(complex_, tol)

    coeff = complex(1.0)
    for j in range(complex_.d + 1):
        h = choice.H[j]
        f = frame[j]
        if f.shape[0] != h.shape[1]:
            raise SplitChoiceError(f"degree {j}: frame has {f.shape[0]} functionals for {h.shape[1]} classes")
        factor = det(f @ h) / det(choice.frame_matrix(complex_, j))
        coeff *= factor if j % 2 == 0 else 1.0 / factor

    n_sign = sign_N([a.shape[1] for a in choice.A])
    coeff *= (-1) ** n_sign
    logger.debug(f"phi on {complex_.describe()}: N={n_sign}, coeff={coeff}")
    return DetLineElement(coeff, cohomology_tag(complex_, frame))


def c_gamma(complex_: GradedComplex, tol: float = INVOLUTION_TOL,
            bases: Optional[Sequence[np.ndarray]] = None) -> DetLineElement:
    """The element (-1)^R c_0 (x) ... (x) c_{r-1}^{+-1} (x) (Gamma c_{r-1})^{-+1} (x) ... of det C*

    bases holds c_j for j < r as square matrices whose columns span C^j, the
    standard bases by default. The coordinate does not depend on them.
    """
    residual = complex_.involution_residual()
    if residual > tol:
        raise ChiralityError(f"chirality is not an involution (residual {residual:.3e})")
    d, r = complex_.d, complex_.r
    dims = complex_.dims.dims
    bases = list(bases) if bases is not None else [np.eye(dims[j]) for j in range(r)]
    if len(bases) != r:
        raise SplitChoiceError(f"expected bases for degrees 0..{r - 1}, got {len(bases)}")
    coeff = complex(1.0)
    for j in range(r):
        c = as_matrix(bases[j], dims[j], dims[j])
        own = det(c)
        if own == 0:
            raise SplitChoiceError(f"degree {j}: c_{j} is not a basis of C^{j}")
        mirrored = det(complex_.gamma[j] @ c)
        coeff *= own if j % 2 == 0 else 1.0 / own
        coeff *= mirrored if (d - j) % 2 == 0 else 1.0 / mirrored
    coeff *= (-1) ** sign_R(dims, r)
    return DetLineElement(coeff, chain_tag(complex_))


def refined_torsion(complex_: GradedComplex, choice: Optional[SplitChoice] = None,
                    frame: Optional[Sequence[np.ndarray]] = None, tol: float = RANK_TOL) -> DetLineElement:
    """rho_Gamma = phi(c_Gamma) as an element of det H*"""
    gamma_part = c_gamma(complex_)
    image = phi(complex_, choice, frame, tol)
    return DetLineElement(gamma_part.coeff * image.coeff, image.tag)
