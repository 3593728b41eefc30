"""Exception hierarchy shared by all fbptf packages."""

from typing import Optional


class FbptfError(Exception):
    """Base class of all errors raised by this package."""
    pass


class RejectedInputError(FbptfError, ValueError):
    """An argument violates a documented precondition (shape, range, emptiness)."""
    pass


class RejectedStateError(FbptfError):
    """An object is not in a state that allows the requested operation."""
    pass


class ConfigError(RejectedInputError):
    """Invalid configuration file content or override."""
    pass


class SchemaError(RejectedInputError):
    """A dataset or model directory violates its documented schema.

    Args:
        message (str): Description of the violation.
        path (Optional[str]): File the violation was found in.
        line (Optional[int]): 1-based line number within the file.
        column (Optional[int]): 1-based column number within the line.
    """

    def __init__(self, message: str, *, path: Optional[str] = None, line: Optional[int] = None, column: Optional[int] = None):

        self.path = path
        self.line = line
        self.column = column

        location = ":".join(str(part) for part in (path, line, column) if part is not None)

        super().__init__(f"{location}: {message}" if location else message)


class NumericalError(FbptfError):
    """Base class for failures of numerical routines."""
    pass


class DecompositionError(NumericalError):
    """A Cholesky decomposition met a non-positive pivot."""

    def __init__(self, message: str, pivot: int):

        self.pivot = pivot

        super().__init__(f"{message} (failing pivot index: {pivot})")


class SolverBreakdownError(NumericalError):
    """The inner linear solve of the l21 solver failed."""

    def __init__(self, message: str, iteration: int):

        self.iteration = iteration

        super().__init__(f"{message} (iteration: {iteration})")


class SweepError(NumericalError):
    """A numerical failure inside a Gibbs sweep."""

    def __init__(self, cause: NumericalError, sweep: int):

        self.cause = cause
        self.sweep = sweep

        super().__init__(f"Gibbs sweep {sweep} failed: {cause}")
