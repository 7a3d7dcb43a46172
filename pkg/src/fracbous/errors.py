"""Exception hierarchy shared by the solver, checkers and command line."""


class FracBousError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(FracBousError, ValueError):
    """Invalid grid, parameter or configuration file content."""


class DomainError(FracBousError, ValueError):
    """A mathematical operation was asked for outside its domain."""


class UsageError(FracBousError, ValueError):
    """Mismatched grids, empty series and similar caller mistakes."""


class FormatError(FracBousError, ValueError):
    """A snapshot or CSV file could not be decoded."""


class BlowUpError(FracBousError, RuntimeError):
    """Non-finite values appeared during time stepping.

    ``state`` holds the last finite State, ``t`` the time at which the
    failing step started.
    """

    def __init__(self, message, t=None, state=None):
        super().__init__(message)
        self.t = t
        self.state = state


class StabilityError(BlowUpError):
    """The advective step-size bound was violated."""
