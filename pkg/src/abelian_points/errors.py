"""Exception types with stable error codes backing the CLI exit-code contract."""

from __future__ import annotations


class InvalidInputError(ValueError):
    """Rejected input (CLI exit code 2)."""

    code = "invalid-argument"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class ParseError(InvalidInputError):
    code = "parse-error"


class TooManyGeneratorsError(InvalidInputError):
    code = "too-many-generators"


class UnsupportedPrimeError(InvalidInputError):
    code = "unsupported-prime"


class InternalInvariantError(RuntimeError):
    """A structural guarantee of the package failed (CLI exit code 3)."""

    code = "internal-invariant-violation"


class DepthExhaustedError(RuntimeError):
    """A lattice search finished without a witness; retry with a larger depth."""

    code = "depth-exhausted"
