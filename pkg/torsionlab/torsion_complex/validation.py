"""
TorsionLab - Runtime checks for complexes with chirality
"""

from dataclasses import dataclass

from loguru import logger

from ..complexes import GradedComplex
from ..config import ASSUMPTION2_TOL, CHAIN_TOL, RANK_TOL
from ..errors import ChiralityError, ShapeError
from ..linalg import norm, rank, smallest_singular_value

INVOLUTION_TOL = 1e-8


@dataclass(frozen=True)
class ValidationReport:
    assumption1: bool
    assumption2: bool
    chain_residual: float
    involution_residual: float
    smallest_singular_value: float
    palindromic: bool

    @property
    def well_formed(self) -> bool:
        return self.palindromic and self.chain_residual <= CHAIN_TOL and self.involution_residual <= INVOLUTION_TOL

    def as_dict(self) -> dict:
        return {
            "assumption1": self.assumption1,
            "assumption2": self.assumption2,
            "chain_residual": self.chain_residual,
            "involution_residual": self.involution_residual,
            "smallest_singular_value": self.smallest_singular_value,
        }


def odd_signature_matrix(complex_: GradedComplex):
    """B = Gamma partial + partial Gamma on the total space"""
    g = complex_.gamma_matrix()
    p = complex_.partial_matrix()
    return g @ p + p @ g


def validate(complex_: GradedComplex, rank_tol: float = RANK_TOL,
             assumption2_tol: float = ASSUMPTION2_TOL, chain_tol: float = CHAIN_TOL) -> ValidationReport:
    """Acyclicity (exactness in every degree) and bijectivity of B"""
    dims = complex_.dims.dims
    ranks = [rank(p, rank_tol) for p in complex_.partial]
    chain = complex_.chain_residual()
    exact = chain <= chain_tol and all(
        (ranks[j - 1] if j > 0 else 0) + (ranks[j] if j < complex_.d else 0) == dims[j]
        for j in range(complex_.d + 1)
    )

    b = odd_signature_matrix(complex_)
    if b.size == 0:
        sigma, bijective = float("inf"), True
    else:
        sigma = smallest_singular_value(b)
        bijective = sigma > assumption2_tol * norm(b)

    report = ValidationReport(
        assumption1=bool(exact),
        assumption2=bool(bijective),
        chain_residual=chain,
        involution_residual=complex_.involution_residual(),
        smallest_singular_value=sigma,
        palindromic=complex_.dims.is_palindromic,
    )
    logger.debug(f"Validated {complex_.describe()}: {report.as_dict()}")
    return report


def require_well_formed(complex_: GradedComplex) -> ValidationReport:
    report = validate(complex_)
    if not report.palindromic:
        raise ShapeError(f"dimensions are not palindromic: {list(complex_.dims.dims)}")
    if report.chain_residual > CHAIN_TOL:
        raise ShapeError(f"differential does not square to zero (residual {report.chain_residual:.3e})")
    if report.involution_residual > INVOLUTION_TOL:
        raise ChiralityError(f"chirality is not an involution (residual {report.involution_residual:.3e})")
    return report
