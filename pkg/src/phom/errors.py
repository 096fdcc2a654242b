"""Exception taxonomy shared by all modules.

CLI exit codes map onto these: InputError (and I/O problems) exit 1,
ResourceError and ComputationError exit 2.
"""


class PhomError(Exception):
    """Base class for errors raised by this package."""


class InputError(PhomError, ValueError):
    """Invalid argument, malformed file, or violated precondition."""


class ResourceError(PhomError, RuntimeError):
    """Predicted or encountered resource blow-up (memory budget exceeded)."""


class ComputationError(PhomError, RuntimeError):
    """A numerical routine failed to converge or to meet its residual bound."""
