"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SensingMatrixError(Exception):
    """Base class for all errors raised by sparsecs."""


class ParameterError(SensingMatrixError, ValueError):
    """A construction parameter violates its precondition."""


class RangeError(ParameterError):
    """An index or tuple entry lies outside its admissible range."""


class NotCoveredError(ParameterError):
    """The requested row size is not covered by the row-size construction."""


class MalformedMatrixError(SensingMatrixError, ValueError):
    """A matrix does not have the required block structure."""


class DuplicateColumnError(MalformedMatrixError):
    """Two columns share the same support tuple."""


class FileFormatError(MalformedMatrixError):
    """A matrix file or its metadata sidecar cannot be parsed."""


class UndefinedMetricError(SensingMatrixError, ValueError):
    """A metric was requested on a matrix for which it is undefined."""


class DegenerateSystemError(SensingMatrixError, ArithmeticError):
    """The least-squares subproblem has a rank-deficient active set."""


class VerificationError(SensingMatrixError):
    """A declared property failed re-verification."""
