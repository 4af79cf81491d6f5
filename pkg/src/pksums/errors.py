"""Exception hierarchy shared by all pksums modules.

The CLI maps these onto its exit-code contract: domain problems exit 3,
resource-cap violations exit 4, zeros-data problems exit 5.
"""


class PksumsError(Exception):
    """Base class for all pksums errors."""


class DomainError(PksumsError):
    """An argument lies outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """An argument collides with a pole (e.g. a trivial zero of zeta)."""


class ResourceError(PksumsError):
    """A request exceeds a configured resource cap (sieve limit, etc.)."""


class DataError(PksumsError):
    """A problem with external input data (zeros tables)."""


class ZerosFormatError(DataError):
    """A zeros file failed to parse; carries the offending line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ZerosValidationError(DataError):
    """A zeros file parsed but violates ordering/positivity invariants."""


class ZeroCountError(DataError):
    """More zeros were requested than the loaded table provides."""
