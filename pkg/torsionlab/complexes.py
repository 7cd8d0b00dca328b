"""
TorsionLab - Graded complexes with chirality

A complex 0 -> C^0 -> C^1 -> ... -> C^d -> 0 of odd length d, with
differential blocks partial[j]: C^j -> C^{j+1} and chirality blocks
gamma[j]: C^j -> C^{d-j}. Block matrices act on column vectors.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from .config import RANK_TOL
from .errors import ChiralityError, ShapeError
from .linalg import as_matrix, drop_below, norm


@dataclass(frozen=True)
class GradedDims:
    d: int
    dims: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        if self.d < 1 or self.d % 2 == 0:
            raise ShapeError(f"complex length d must be odd and positive, got {self.d}")
        if len(self.dims) != self.d + 1:
            raise ShapeError(f"expected {self.d + 1} dimensions, got {len(self.dims)}")
        if any(n < 0 for n in self.dims):
            raise ShapeError(f"dimensions must be nonnegative: {self.dims}")

    @property
    def r(self) -> int:
        return (self.d + 1) // 2

    @property
    def total(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> Tuple[int, ...]:
        return tuple(int(x) for x in np.concatenate([[0], np.cumsum(self.dims)]))

    def span(self, j: int) -> slice:
        off = self.offsets
        return slice(off[j], off[j + 1])

    @property
    def even_index(self) -> np.ndarray:
        """Positions of even-degree coordinates inside the total space"""
        return np.concatenate(
            [np.arange(self.span(k).start, self.span(k).stop) for k in range(0, self.d + 1, 2)]
        ).astype(int)

    @property
    def is_palindromic(self) -> bool:
        return all(self.dims[j] == self.dims[self.d - j] for j in range(self.d + 1))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** j * n for j, n in enumerate(self.dims))


@dataclass(frozen=True, eq=False)
class GradedComplex:
    dims: GradedDims
    partial: Tuple[np.ndarray, ...]
    gamma: Tuple[np.ndarray, ...]

    def __post_init__(self):
        d, n = self.dims.d, self.dims.dims
        if len(self.partial) != d:
            raise ShapeError(f"expected {d} differential blocks, got {len(self.partial)}")
        if len(self.gamma) != d + 1:
            raise ShapeError(f"expected {d + 1} chirality blocks, got {len(self.gamma)}")
        partial = tuple(as_matrix(p, n[j + 1], n[j]) for j, p in enumerate(self.partial))
        try:
            gamma = tuple(as_matrix(g, n[d - j], n[j]) for j, g in enumerate(self.gamma))
        except ShapeError as e:
            raise ChiralityError(f"chirality must map degree j to degree d-j: {e}")
        object.__setattr__(self, "partial", partial)
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def from_blocks(cls, d: int, dims: Sequence[int], partial: Iterable, gamma: Iterable) -> "GradedComplex":
        return cls(GradedDims(d, tuple(dims)), tuple(partial), tuple(gamma))

    @classmethod
    def zero(cls, d: int = 1) -> "GradedComplex":
        dims = GradedDims(d, (0,) * (d + 1))
        return cls(dims, tuple(np.zeros((0, 0)) for _ in range(d)), tuple(np.zeros((0, 0)) for _ in range(d + 1)))

    @property
    def d(self) -> int:
        return self.dims.d

    @property
    def r(self) -> int:
        return self.dims.r

    def _assemble(self, blocks: Sequence[Tuple[int, int, np.ndarray]]) -> np.ndarray:
        total = self.dims.total
        m = np.zeros((total, total), dtype=complex)
        for target, source, block in blocks:
            m[self.dims.span(target), self.dims.span(source)] = block
        return m

    def partial_matrix(self) -> np.ndarray:
        return self._assemble([(j + 1, j, p) for j, p in enumerate(self.partial)])

    def gamma_matrix(self) -> np.ndarray:
        return self._assemble([(self.d - j, j, g) for j, g in enumerate(self.gamma)])

    def sharp_matrix(self) -> np.ndarray:
        """The dual differential Gamma o partial o Gamma"""
        g = self.gamma_matrix()
        return g @ self.partial_matrix() @ g

    def block(self, m: np.ndarray, target: int, source: int) -> np.ndarray:
        return m[self.dims.span(target), self.dims.span(source)]

    def scaled(self, t: complex) -> "GradedComplex":
        return GradedComplex(self.dims, tuple(t * p for p in self.partial), self.gamma)

    @property
    def partial_scale(self) -> float:
        """Largest norm of a differential block"""
        return max((norm(p) for p in self.partial), default=0.0)

    def restricted(self, frames: Sequence[np.ndarray], tol: float = RANK_TOL) -> "GradedComplex":
        """Restriction to a subcomplex spanned by orthonormal frames invariant under partial and gamma

        Compressed differential blocks keep only singular values above tol times
        the ambient differential scale; the rest is roundoff from the frames.
        """
        d = self.d
        floor = tol * self.partial_scale
        sub = GradedDims(d, tuple(f.shape[1] for f in frames))
        partial = [drop_below(frames[j + 1].conj().T @ p @ frames[j], floor) for j, p in enumerate(self.partial)]
        gamma = [frames[d - j].conj().T @ g @ frames[j] for j, g in enumerate(self.gamma)]
        return GradedComplex(sub, tuple(partial), tuple(gamma))

    def chain_residual(self, tol: float = RANK_TOL) -> float:
        """Largest relative size of partial[j+1] o partial[j]

        Blocks below tol times the largest differential block count as zero.
        """
        floor = tol * self.partial_scale
        worst = 0.0
        for j in range(self.d - 1):
            a, b = self.partial[j], self.partial[j + 1]
            na, nb = norm(a), norm(b)
            if na > floor and nb > floor:
                worst = max(worst, norm(b @ a) / (na * nb))
        return worst

    def involution_residual(self) -> float:
        """Largest deviation of gamma[d-j] o gamma[j] from the identity"""
        worst = 0.0
        for j, g in enumerate(self.gamma):
            if g.size == 0:
                continue
            back = self.gamma[self.d - j]
            worst = max(worst, norm(back @ g - np.eye(g.shape[1])))
        return worst

    def describe(self) -> str:
        return f"GradedComplex(d={self.d}, dims={list(self.dims.dims)})"
