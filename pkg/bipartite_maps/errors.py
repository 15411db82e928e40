class BipartiteMapsError(Exception):
    """Base class for every error raised by the package."""


class ChartMismatchError(BipartiteMapsError, ValueError):
    """Series living in different coordinate systems were combined."""


class TruncationError(BipartiteMapsError):
    """Information beyond the truncation order was requested."""


class DivergentSubstitutionError(BipartiteMapsError):
    """A composition would need infinitely many terms at finite order."""


class StructuralError(BipartiteMapsError):
    """An identity that must hold exactly failed.

    The message always names the identity, so the CLI can report it.
    """


class GradingError(StructuralError):
    """A series flagged as map-graded has a key off the grading plane."""


class NonUnitError(BipartiteMapsError, ZeroDivisionError):
    """Inversion of something that is not a unit."""


class InconsistentSystemError(StructuralError):
    """The linear system of an ansatz fit has no solution."""


class CensusGuardError(BipartiteMapsError, ValueError):
    """Census size outside the guarded range without an override."""


class UnderdeterminedFitError(TruncationError):
    """An ansatz fit agrees with the series but leaves free columns the truncation cannot pin."""

    def __init__(self, message: str, N: int, nullity: int):
        super().__init__(message)
        self.N = N
        self.nullity = nullity
