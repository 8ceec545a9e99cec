"""Exception hierarchy shared by the whole pipeline.

The CLI maps these onto exit codes: ValidationError -> 2,
ProcessingError -> 3, FormatError and OSError -> 4.
"""


class DashGridError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(DashGridError, ValueError):
    """An argument or configuration value violates a stated invariant."""


class FormatError(DashGridError):
    """A byte stream (PGM, PNG, CSV, JSON artifact) is malformed."""


class ProcessingError(DashGridError):
    """The pipeline cannot proceed with the data it was given."""


class NoHitsError(ProcessingError):
    """The scan produced no hits, so there is nothing to fit."""


class InsufficientColumnsError(ProcessingError):
    """No row contains two distinct columns; column spacing is undefined."""
