"""Exception types shared across the package."""


class ThomforgeError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ThomforgeError):
    """Raised when a presentation file or expression does not parse.

    Carries the 1-based line and column of the offending token when known.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + loc)


class ValidationError(ThomforgeError):
    """Raised when parsed input violates a structural invariant.

    ``code`` is a stable machine-readable tag such as ``d2_nonzero``,
    ``degree_mismatch``, ``weight_violation``, ``euler_not_closed``,
    ``odd_rank_unsupported``, ``euler_inhomogeneous``, ``not_cohomologous``,
    ``not_simply_connected``, ``euler_not_pure``, ``mixed_presentations``,
    ``non_quadratic``, ``cutoff_exceeded``.
    """

    def __init__(self, code, message):
        self.code = code
        super().__init__(f"{code}: {message}")
