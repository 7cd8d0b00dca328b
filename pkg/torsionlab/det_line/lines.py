"""
TorsionLab - Determinant lines in coordinates

An element of det(V_1 + ... + V_r) is stored as one scalar against the wedge
of the standard bases of the summands, taken in the declared order.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

from ..errors import InvertibilityError, TagMismatchError


@dataclass(frozen=True)
class LineTag:
    name: str
    summands: Tuple[Tuple[str, int], ...] = ()
    dual: bool = False

    @property
    def dim(self) -> int:
        return sum(n for _, n in self.summands)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(label for label, _ in self.summands)

    @property
    def is_ground_field(self) -> bool:
        return self.dim == 0


@dataclass(frozen=True)
class DetLineElement:
    coeff: complex
    tag: LineTag

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))

    def ratio(self, other: "DetLineElement") -> complex:
        """Scalar c with self = c * other"""
        if other.tag.summands != self.tag.summands or other.tag.dual != self.tag.dual:
            raise TagMismatchError(f"cannot compare {self.tag.name} with {other.tag.name}")
        return self.coeff / other.coeff


def line(label: str, dim: int, coeff: complex = 1.0) -> DetLineElement:
    return DetLineElement(coeff, LineTag(label, ((label, int(dim)),)))


def fuse(a: DetLineElement, b: DetLineElement) -> DetLineElement:
    """mu_{V,W}(a wedge b), coordinates multiply under basis concatenation"""
    if set(a.tag.labels) & set(b.tag.labels):
        raise TagMismatchError(f"summands overlap: {a.tag.labels} and {b.tag.labels}")
    if a.tag.dual != b.tag.dual and not (a.tag.is_ground_field or b.tag.is_ground_field):
        raise TagMismatchError("cannot fuse a line with a dual line")
    dual = a.tag.dual if not a.tag.is_ground_field else b.tag.dual
    tag = LineTag(f"{a.tag.name}+{b.tag.name}", a.tag.summands + b.tag.summands, dual)
    return DetLineElement(a.coeff * b.coeff, tag)


def inverse(a: DetLineElement) -> DetLineElement:
    """The dual element a^{-1} with a^{-1}(a) = 1"""
    if a.coeff == 0:
        raise InvertibilityError(f"zero element of {a.tag.name} has no inverse")
    return DetLineElement(1.0 / a.coeff, LineTag(a.tag.name, a.tag.summands, not a.tag.dual))


def reorder_sign(dims: Sequence[int], order: Sequence[int]) -> int:
    """Sign of re-wedging blocks of the given dimensions into a new block order"""
    parity = 0
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                parity += dims[order[i]] * dims[order[j]]
    return -1 if parity % 2 else 1


def reorder(a: DetLineElement, labels: Sequence[str]) -> DetLineElement:
    """Express a against the summands permuted into the given label order"""
    current = a.tag.labels
    if sorted(labels) != sorted(current):
        raise TagMismatchError(f"{list(labels)} is not a permutation of {list(current)}")
    order = [current.index(label) for label in labels]
    dims = [n for _, n in a.tag.summands]
    summands = tuple(a.tag.summands[i] for i in order)
    return DetLineElement(reorder_sign(dims, order) * a.coeff, LineTag(a.tag.name, summands, a.tag.dual))
