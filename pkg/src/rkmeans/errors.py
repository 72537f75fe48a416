"""Exception types shared across the package.

Each carries the CLI exit code used when it escapes a command.
"""


class RkmeansError(Exception):
    exit_code = 1


class DatasetError(RkmeansError, ValueError):
    """Input file is empty, ragged, or holds a non-numeric feature cell."""

    exit_code = 3


class ParameterError(RkmeansError, ValueError):
    """A parameter is inconsistent with the data (e.g. more clusters than objects)."""

    exit_code = 4


class DegenerateError(RkmeansError, ArithmeticError):
    """Numeric degeneracy: all points identical, coincident centroids, ..."""

    exit_code = 5
