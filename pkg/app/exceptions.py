class SimulationError(Exception):
    """Base class for every error raised by the simulator."""


class ConfigError(SimulationError):
    """A scenario configuration is missing, malformed or out of range."""

    def __init__(self, message: str, fields: dict[str, str] | None = None):
        super().__init__(message)
        self.fields = fields or {}


class InvalidState(SimulationError, ValueError):
    """A two-qubit state violates density-matrix positivity."""


class DomainError(SimulationError, ValueError):
    """An argument lies outside the domain of a numerical routine."""


class NotDensityMatrix(SimulationError, ValueError):
    """A matrix is not Hermitian, not unit-trace or not positive semidefinite."""


class OrderingViolation(SimulationError):
    """lhs >= Adabi bound >= Berta bound failed; signals an implementation bug."""
