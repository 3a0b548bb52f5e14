"""Exception hierarchy shared by the whole package."""


class GbsError(Exception):
    """Base class for every error raised by this package."""


class InputError(GbsError):
    """Invalid input data or a violated precondition."""


class ParseError(InputError):
    """A text file could not be parsed; carries the offending line number."""

    def __init__(self, line_number: int | None, reason: str):
        self.line_number = line_number
        self.reason = reason
        if line_number is None:
            super().__init__(reason)
        else:
            super().__init__(f"line {line_number}: {reason}")


class InternalError(GbsError):
    """An internal invariant failed; this always indicates a bug."""
