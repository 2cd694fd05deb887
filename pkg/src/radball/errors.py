"""Exception types shared across the toolkit.

Every error carries an ``exit_code`` used by the CLI: 2 for input problems,
3 for numeric or calibration failures.
"""


class ToolkitError(Exception):
    exit_code = 2


class UnsupportedCardinality(ToolkitError):
    """Anchor count outside the supported range for the requested family."""


class DegenerateSet(ToolkitError):
    """Two anchors coincide, so pairwise angles are ill-defined."""

    exit_code = 3


class NegativeInput(ToolkitError):
    """Radial projection requires nonnegative coordinates."""


class DimensionMismatch(ToolkitError):
    """Vector/matrix dimensions do not agree with the anchor count."""


class InvalidDataset(ToolkitError):
    """Dataset violates its structural invariants (shape, finiteness, names)."""


class InvalidComponent(ToolkitError):
    """Gaussian component with a non-symmetric or non-SPD covariance."""


class SingleClass(ToolkitError):
    """At least two classes are needed for overlap analysis."""


class InvalidSpec(ToolkitError):
    """Simulation specification out of range."""


class InvalidScale(ToolkitError):
    """Covariance scale factor must be positive and finite."""


class TargetUnreachable(ToolkitError):
    """Bisection could not bracket or attain the requested overlap."""

    exit_code = 3


class ParseError(ToolkitError):
    """CSV cell could not be parsed; carries the file line and column name."""

    def __init__(self, message: str, line: int | None = None, column: str | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class MissingColumn(ToolkitError):
    """A requested label/id column is absent from the CSV header."""


class TooFewFeatures(ToolkitError):
    """Fewer than three numeric feature columns."""


class TemplateMissing(ToolkitError):
    """HTML template file not found or lacks the scene placeholder."""


class SchemaError(ToolkitError):
    """Scene payload violates the scene JSON schema."""
