"""Exception hierarchy shared by the library and the CLI."""


class SumSymError(Exception):
    """Base class for every error raised by this package."""


class DomainMismatchError(SumSymError, TypeError):
    """Operands come from different scalar domains (or from none)."""


class ScalarParseError(SumSymError, ValueError):
    """A scalar literal does not follow the strict text grammar."""


class MatrixFormatError(SumSymError, ValueError):
    """A matrix file or literal is malformed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NegativeEntryError(SumSymError, ValueError):
    def __init__(self, row, col, value):
        self.row, self.col, self.value = row, col, value
        super().__init__(
            f"entry ({row + 1},{col + 1}) = {value} is negative; matrix must be nonnegative"
        )


class NotSumSymmetricError(SumSymError, ValueError):
    def __init__(self, index, row_sum, col_sum):
        self.index, self.row_sum, self.col_sum = index, row_sum, col_sum
        super().__init__(
            f"matrix is not sum-symmetric: index {index + 1} has row sum "
            f"{row_sum} but column sum {col_sum}"
        )


class UnbalancedMatrixError(SumSymError, ValueError):
    """Row and column sums are not all equal to one common value."""

    def __init__(self, kind, index, value, expected):
        self.kind, self.index, self.value, self.expected = kind, index, value, expected
        super().__init__(
            f"{kind} {index + 1} sums to {value}, expected the common value {expected}"
        )


class NoCycleError(SumSymError, ValueError):
    """The matrix has no positive entry, so there is no cycle to extract."""


class TheoremViolation(SumSymError, RuntimeError):
    """An existence guarantee failed; always an implementation bug."""


class ScenarioError(SumSymError, ValueError):
    """A scenario violates one of its invariants."""


class InfeasibleAllocationError(SumSymError, ValueError):
    """An assignment does not respect the scenario quotas or item set."""


class CapExceededError(SumSymError):
    """An exhaustive oracle refused to run because a size cap was exceeded."""


class InputFormatError(SumSymError, ValueError):
    """A JSON document or record file does not follow its grammar."""

    def __init__(self, message, where=None):
        self.where = where
        if where is not None:
            message = f"{where}: {message}"
        super().__init__(message)
