"""Exception hierarchy shared by the library and the CLI (which maps them to exit codes)."""


class HygreedyError(Exception):
    exit_code = 1


class InputError(HygreedyError, ValueError):
    """Malformed or out-of-range input."""

    exit_code = 2


class HypothesisError(HygreedyError):
    """A mathematical precondition of the requested computation does not hold."""

    exit_code = 3


class ResourceError(HygreedyError):
    """The requested computation exceeds the configured budget."""

    exit_code = 4


class ConfigurationError(InputError):
    pass


class ProcessComplete(HygreedyError):
    """Raised when stepping a process whose open set is already empty."""
