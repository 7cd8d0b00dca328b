"""
TorsionLab - Error hierarchy

Input errors map to CLI exit code 2, numerical errors are reported per
operation and never swallowed silently.
"""

from typing import Optional


class TorsionLabError(Exception):
    """Base class for every error raised by the workbench"""

    kind = "numerical"


class InputError(TorsionLabError):
    """Malformed or inconsistent user input"""

    kind = "input"


class SchemaError(InputError):
    """A JSON document does not match its schema"""

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ShapeError(InputError):
    """Non-square or mismatched matrix blocks"""


class FixtureError(InputError):
    """A fixture could not be generated for the requested seed"""

    def __init__(self, message: str, seed: Optional[int] = None):
        self.seed = seed
        super().__init__(f"{message} (seed={seed})" if seed is not None else message)


class UnknownSuiteError(InputError):
    """A suite name is not registered"""


class TagMismatchError(InputError):
    """Determinant-line elements live on incompatible graded spaces"""


class NumericalError(TorsionLabError):
    """A numerical precondition failed"""


class SpectralDecompositionError(NumericalError):
    """Eigen-iteration failed or clusters could not be separated"""


class BranchCutError(NumericalError):
    """A point lies on the cut ray of the logarithm"""


class AgmonAngleError(NumericalError):
    """The angle is not an Agmon angle for the spectrum"""


class InvertibilityError(NumericalError):
    """A zero eigenvalue where an invertible operator is required"""


class SplitChoiceError(NumericalError):
    """A split B + H + A of a complex fails its rank tests"""


class ChiralityError(NumericalError):
    """Chirality blocks violate the degree mapping or the involution law"""


class AssumptionError(NumericalError):
    """Acyclicity or bijectivity of the odd signature operator is violated"""


class SpectralGapError(NumericalError):
    """A cut level meets the spectrum or the spectral projection does not commute"""


class ConvergenceError(NumericalError):
    """Evaluation outside the declared convergence region or tail above tolerance"""


class ModelSingularError(NumericalError):
    """A model Laplacian has a kernel; use singularity_order instead"""
