class IdealDualityException(Exception):
    """Base exception class for the duality engine."""
    pass


class ProblemParseError(IdealDualityException):
    """Exception raised when a problem file, polynomial text or CLI flag cannot be parsed."""
    pass


class RingMismatchError(IdealDualityException):
    """Exception raised when operands live in different rings or free modules of different rank."""
    pass


class VariableMismatchError(IdealDualityException):
    """Exception raised when an operator or binding names a variable outside the ring."""
    pass


class NotAComplexError(IdealDualityException):
    """Exception raised when consecutive differentials do not compose to zero."""

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"f_{step} * f_{step + 1} is not zero")


class InternalAlgebraError(IdealDualityException):
    """Exception raised when an identity that must hold by construction fails."""
    pass


class AnalysisRejected(IdealDualityException):
    """Base class for inputs an analysis refuses to handle."""
    reason = "rejected"


class CodimensionZeroError(AnalysisRejected):
    """Exception raised for modules of codimension zero (no torsion duality applies)."""
    reason = "codim-zero"


class NoetherPositionError(AnalysisRejected):
    """Exception raised when the variable split is not a Noether position for the ideal."""
    reason = "position-not-verified"


class SectionMismatchError(AnalysisRejected):
    """Exception raised when the given section does not cut out the radical of the ideal."""
    reason = "section-mismatch"


class NonGraphSectionError(AnalysisRejected):
    """Exception raised when no graph-form section is available for the radical."""
    reason = "non-graph-section"


class NotZeroDimensionalError(AnalysisRejected):
    """Exception raised when a residue computation gets a positive-dimensional ideal."""
    reason = "not-zero-dimensional"


class IneligibleInputError(AnalysisRejected):
    """Exception raised when a command lacks the hints or shape it requires."""
    reason = "ineligible-input"


class ResolutionLengthError(AnalysisRejected):
    """Exception raised when iterated syzygies do not terminate within the allowed length."""
    reason = "resolution-not-terminating"
