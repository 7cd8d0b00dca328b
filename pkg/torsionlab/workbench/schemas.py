"""
TorsionLab - JSON documents

Complex numbers are [re, im] pairs; matrices are lists of rows of pairs and
are reshaped using the declared dimensions, so empty blocks round-trip.
"""

from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Type, TypeVar

import numpy as np
from pydantic import BaseModel, ValidationError

from ..complexes import GradedComplex
from ..errors import SchemaError
from ..zeta_engine import LengthSpectrum, ModelSpectralData, PrimitiveClass

Pair = Tuple[float, float]
MatrixDoc = List[List[Pair]]

DocumentT = TypeVar("DocumentT", bound=BaseModel)


def matrix_to_doc(m: np.ndarray) -> MatrixDoc:
    return [[(float(z.real), float(z.imag)) for z in row] for row in np.asarray(m, dtype=complex)]


def doc_to_matrix(doc: MatrixDoc, rows: int, cols: int, path: str) -> np.ndarray:
    if len(doc) != rows or any(len(row) != cols for row in doc):
        got = (len(doc), len(doc[0]) if doc else 0)
        raise SchemaError(f"expected a {rows}x{cols} matrix, got {got[0]}x{got[1]}", path)
    if rows * cols == 0:
        return np.zeros((rows, cols), dtype=complex)
    arr = np.asarray(doc, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def pairs_to_complex(pairs: Sequence[Pair]) -> np.ndarray:
    if not pairs:
        return np.zeros(0, dtype=complex)
    arr = np.asarray(pairs, dtype=float)
    return arr[:, 0] + 1j * arr[:, 1]


def complex_to_pairs(values) -> List[Pair]:
    return [(float(z.real), float(z.imag)) for z in np.asarray(values, dtype=complex).reshape(-1)]


class ComplexDocument(BaseModel):
    d: int
    dims: List[int]
    partial: List[MatrixDoc]
    gamma: List[MatrixDoc]

    def to_complex(self) -> GradedComplex:
        d, n = self.d, self.dims
        if len(n) != d + 1:
            raise SchemaError(f"expected {d + 1} entries", "dims")
        if len(self.partial) != d:
            raise SchemaError(f"expected {d} blocks", "partial")
        if len(self.gamma) != d + 1:
            raise SchemaError(f"expected {d + 1} blocks", "gamma")
        if any(n[j] != n[d - j] for j in range(d + 1)):
            raise SchemaError(f"dimensions must be palindromic, got {n}", "dims")
        partial = [doc_to_matrix(m, n[j + 1], n[j], f"partial.{j}") for j, m in enumerate(self.partial)]
        gamma = [doc_to_matrix(m, n[d - j], n[j], f"gamma.{j}") for j, m in enumerate(self.gamma)]
        return GradedComplex.from_blocks(d, n, partial, gamma)

    @classmethod
    def from_complex(cls, complex_: GradedComplex) -> "ComplexDocument":
        return cls(
            d=complex_.d,
            dims=list(complex_.dims.dims),
            partial=[matrix_to_doc(p) for p in complex_.partial],
            gamma=[matrix_to_doc(g) for g in complex_.gamma],
        )


class ClassDocument(BaseModel):
    length: float
    holonomy_angles: List[float]
    chi: MatrixDoc
    sigma_m_eigs: List[Pair] = [(1.0, 0.0)]


class SpectrumDocument(BaseModel):
    d: int
    growth_abscissa: float
    classes: List[ClassDocument] = []

    def to_spectrum(self) -> LengthSpectrum:
        classes = []
        for i, c in enumerate(self.classes):
            size = len(c.chi)
            chi = doc_to_matrix(c.chi, size, size, f"classes.{i}.chi")
            classes.append(PrimitiveClass(c.length, tuple(c.holonomy_angles), chi,
                                          tuple(pairs_to_complex(c.sigma_m_eigs))))
        return LengthSpectrum(self.d, tuple(classes), self.growth_abscissa)

    @classmethod
    def from_spectrum(cls, spec: LengthSpectrum) -> "SpectrumDocument":
        return cls(
            d=spec.d,
            growth_abscissa=spec.growth_abscissa,
            classes=[
                ClassDocument(
                    length=c.length,
                    holonomy_angles=list(c.holonomy_angles),
                    chi=matrix_to_doc(c.chi),
                    sigma_m_eigs=complex_to_pairs(c.sigma_m_eigs),
                )
                for c in spec.classes
            ],
        )


class ModelDocument(BaseModel):
    d: int
    eigenvalues: List[List[Pair]]
    dim_V_chi: int = 1
    vol_ratio: float = 1.0
    d_chi: Optional[List[int]] = None

    def to_model(self) -> ModelSpectralData:
        eigs = tuple(pairs_to_complex(e) for e in self.eigenvalues)
        d_chi = tuple(self.d_chi) if self.d_chi is not None else None
        return ModelSpectralData(self.d, eigs, self.dim_V_chi, self.vol_ratio, d_chi)

    @classmethod
    def from_model(cls, model: ModelSpectralData) -> "ModelDocument":
        return cls(
            d=model.d,
            eigenvalues=[complex_to_pairs(e) for e in model.eigenvalues],
            dim_V_chi=model.dim_V_chi,
            vol_ratio=model.vol_ratio,
            d_chi=list(model.d_chi),
        )


def _error_path(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"]) or "$"


def parse_document(text: str, model: Type[DocumentT]) -> DocumentT:
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise SchemaError(e.errors()[0]["msg"], _error_path(e))


def load_document(path, model: Type[DocumentT]) -> DocumentT:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SchemaError(f"cannot read file: {e}", str(path))
    return parse_document(text, model)


def save_document(document: BaseModel, path) -> None:
    Path(path).write_text(document.model_dump_json(indent=2) + "\n")


def load_complex(path) -> GradedComplex:
    return load_document(path, ComplexDocument).to_complex()


def load_spectrum(path) -> LengthSpectrum:
    return load_document(path, SpectrumDocument).to_spectrum()


def load_model(path) -> ModelSpectralData:
    return load_document(path, ModelDocument).to_model()
