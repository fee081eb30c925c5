class InvalidInputError(ValueError):
    """Raised for malformed or out-of-domain inputs (CLI exit code 2)."""


class NumericalError(RuntimeError):
    """Raised when a rank estimate fails its saturation check in strict mode."""
