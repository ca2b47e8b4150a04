"""Exception hierarchy.

Two families matter to callers: :class:`DataError` for bad input (malformed
intervals, files, shapes) and :class:`SolverError` for numerical failures.
The CLI maps them to exit codes 2 and 3.
"""


class IntervalRegressionError(Exception):
    """Base class for every error raised by this package."""


class DataError(IntervalRegressionError, ValueError):
    """Input data violates a contract."""


class SolverError(IntervalRegressionError, ArithmeticError):
    """A numerical routine could not produce a solution."""


class FlippedBounds(DataError):
    """Lower bound exceeds upper bound."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class NonFinite(DataError):
    pass


class DimensionMismatch(DataError):
    pass


class LengthMismatch(DataError):
    pass


class EmptyInput(DataError):
    pass


class UnknownDataset(DataError):
    pass


class UnknownRegressor(DataError):
    pass


class MissingPair(DataError):
    pass


class ParseError(DataError):
    def __init__(self, message, line=None, column=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.column = column


class NonPositiveDomain(DataError):
    """Box-Cox input is not strictly positive after shifting."""


class OutOfImage(DataError):
    """Value cannot be produced by the forward Box-Cox transform."""


class IterationLimit(SolverError):
    pass


class SingularSystem(SolverError):
    pass


class BoxCoxInfeasible(SolverError):
    """No power on the search grid yields nonnegative fitted ranges."""
