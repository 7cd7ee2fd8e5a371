"""Exception types raised across the package."""


class ThermalWernerError(Exception):
    """Base class for all package errors."""


class DomainError(ThermalWernerError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class ConstraintError(ThermalWernerError, ValueError):
    """State parameters violate a positivity constraint."""


class StateFormatError(ThermalWernerError, ValueError):
    """A matrix file could not be read as a density matrix."""


class ValidationError(ThermalWernerError, ValueError):
    """A matrix fails the density-matrix invariants."""


class StructureError(ThermalWernerError, ValueError):
    """A matrix does not have the expected sparsity pattern."""


class NotRepresentableError(ThermalWernerError, ValueError):
    """The asymptotic state has no thermal Werner decomposition."""


class SpecSyntaxError(ThermalWernerError, ValueError):
    """Malformed state-spec or range text.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NumericalFailure(ThermalWernerError, RuntimeError):
    """A numerical routine produced a result violating its invariants."""


class DegeneracyError(NumericalFailure):
    """The generator's null space has an unexpected dimension."""
