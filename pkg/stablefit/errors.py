"""
Stablefit Errors
Exception hierarchy shared by the library, the CLI and the Streamlit pages
"""


class StableFitError(Exception):
    """Base class. `category` is the machine-readable tag printed by the CLI."""

    category = "stablefit-error"


class InvalidParameterError(StableFitError, ValueError):
    category = "invalid-parameter"


class DegenerateSampleError(StableFitError):
    category = "degenerate-sample"


class InsufficientDataError(StableFitError):
    category = "insufficient-data"


class InsufficientPointsError(StableFitError):
    category = "insufficient-points"


class DegenerateWeightsError(StableFitError):
    category = "degenerate-weights"


class CollinearInputError(StableFitError):
    category = "collinear-input"


class NonConvergenceError(StableFitError):
    category = "non-convergence"


class AccuracyNotMetError(StableFitError):
    category = "accuracy-not-met"

    def __init__(self, message, achieved):
        super().__init__(f"{message} (achieved {achieved:.3g})")
        self.achieved = achieved


class SingularSystemError(StableFitError):
    category = "singular-system"

    def __init__(self, message, condition):
        super().__init__(f"{message} (condition number {condition:.3g})")
        self.condition = condition


class EcfVanishesError(StableFitError):
    category = "ecf-vanishes"


class DimensionMismatchError(StableFitError, ValueError):
    category = "dimension-mismatch"


class UnsupportedAlphaError(StableFitError):
    category = "unsupported-alpha"


class MissingFileError(StableFitError):
    category = "missing-file"


class EmptyInputError(StableFitError):
    category = "empty-input"


class MissingColumnError(StableFitError):
    category = "missing-column"


class ParseFailureError(StableFitError):
    category = "parse-failure"

    def __init__(self, message, row=None, column=None):
        if row is not None:
            message = f"{message} at row {row}, column {column!r}"
        super().__init__(message)
        self.row = row
        self.column = column


class NonPositivePriceError(StableFitError):
    category = "non-positive-price"


class ConfigError(StableFitError):
    category = "config"
